// Copyright 2026 The psdrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "psdrec/model_io.hpp"
#include "test_util.hpp"

namespace psdrec {
namespace {

namespace fs = std::filesystem;
using testing::Rng;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("psdrec_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::string write(const std::string &name, const std::string &contents) const {
        std::ofstream(path(name)) << contents;
        return path(name);
    }
    // u.data-style file with ids offset by one.
    std::string write_dataset(const std::string &name, const RatingDataset &ds) const {
        std::ostringstream s;
        for (const auto &r : ds.entries()) {
            s << r.user + 1 << '\t' << r.item + 1 << '\t' << r.value << "\t0\n";
        }
        return write(name, s.str());
    }
    std::string random_data(const std::string &name, int users, int items, std::uint64_t seed) const {
        Rng rng(seed);
        return write_dataset(name, testing::random_dataset(users, items, 5, 0.3, rng));
    }

    fs::path dir_;
};

std::string read_file(const std::string &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

double number_after(const std::string &text, const std::string &label) {
    auto pos = text.find(label);
    EXPECT_NE(pos, std::string::npos) << label << " not in:\n" << text;
    return pos == std::string::npos ? -1.0 : std::stod(text.substr(pos + label.size()));
}

// ---------------------------------------------------------------------------

TEST_F(CliTest, DemoReproducesTheWorkedExample) {
    Result r = run({"demo"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(r.out, "tr(rho_u E_i1) = 0.980000000000000  expected 0.980000000000000\n"
                     "tr(rho_u E_i2) = 0.020000000000000  expected 0.020000000000000\n"
                     "demo ok\n");
    EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, DemoFailsOnACorruptedConstant) {
    cli::DemoInputs in = cli::demo_inputs();
    in.like << 0.2, 0.3, 0.3, 0.8;  // still a valid POVM, different numbers
    in.dislike = Eigen::Matrix2cd::Identity() - in.like;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_demo(in, out, err), cli::kFailure);
    EXPECT_NE(err.str().find("differ"), std::string::npos);

    cli::DemoInputs wrong = cli::demo_inputs();
    wrong.expect_like = 0.97;
    EXPECT_EQ(cli::cmd_demo(wrong, out, err), cli::kFailure);

    cli::DemoInputs invalid = cli::demo_inputs();
    invalid.rho(0, 0) = 2.0;  // trace no longer 1
    EXPECT_EQ(cli::cmd_demo(invalid, out, err), cli::kFailure);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"demo", "--bogus"}).code, cli::kUsage);
    EXPECT_EQ(run({"train", "--data", "x"}).code, cli::kUsage);  // --model-out missing
    EXPECT_EQ(run({"histogram", "--data", "x", "--format", "csv"}).code, cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, BadPathExitsTwo) {
    Result r = run({"train", "--data", path("missing.data"), "--model-out", path("m.txt")});
    EXPECT_EQ(r.code, cli::kIoFailure);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
    EXPECT_EQ(run({"histogram", "--data", path("missing.data")}).code, cli::kIoFailure);
    std::string data = random_data("u.data", 8, 6, 1);
    EXPECT_EQ(run({"train", "--data", data, "--max-iter", "0", "--model-out", path("no/such/dir/m.txt")}).code,
              cli::kIoFailure);
}

TEST_F(CliTest, TrainWithZeroSweepsWritesTheInitialModel) {
    std::string data = random_data("u.data", 8, 6, 2);
    Result r = run({"train", "--data", data, "--max-iter", "0", "--model-out", path("m.txt")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::string model = read_file(path("m.txt"));
    EXPECT_EQ(model.substr(0, model.find('\n')), "PSDREC v1 | kind=quantum | D=2 | U=8 | I=6 | Z=2 | field=complex");
    EXPECT_TRUE(fs::exists(path("m.txt.history.tsv")));
    AnyModel back = load_model(path("m.txt"));
    EXPECT_TRUE(std::holds_alternative<QuantumModel>(back));
}

TEST_F(CliTest, TrainFlagsOverrideTheConfigFile) {
    std::string data = random_data("u.data", 10, 8, 3);
    std::string cfg = write("train.cfg", "kind=nnm\ndim=4\nmax_iter=3\n");
    Result r = run({"train", "--data", data, "--config", cfg, "--dim", "3", "--model-out", path("m.txt"),
                    "--history-out", path("h.tsv")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    AnyModel m = load_model(path("m.txt"));
    ASSERT_TRUE(std::holds_alternative<NnmModel>(m));
    EXPECT_EQ(std::get<NnmModel>(m).dim(), 3);
    std::string hist = read_file(path("h.tsv"));
    EXPECT_EQ(std::count(hist.begin(), hist.end(), '\n'), 5);  // header, initial state, 3 sweeps

    std::string bad = write("bad.cfg", "dim=3\nwidth=9\n");
    Result e = run({"train", "--data", data, "--config", bad, "--model-out", path("m2.txt")});
    EXPECT_EQ(e.code, cli::kFailure);
    EXPECT_NE(e.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, EvaluateRejectsAnEmptyMetricList) {
    std::string data = random_data("u.data", 10, 8, 4);
    Result r = run({"evaluate", "--data", data, "--metric", ""});
    EXPECT_EQ(r.code, cli::kFailure);
    EXPECT_NE(r.err.find("empty metric list"), std::string::npos);
    EXPECT_EQ(run({"evaluate", "--data", data, "--metric", "auc"}).code, cli::kFailure);
}

TEST_F(CliTest, EvaluateIsDeterministic) {
    std::string data = random_data("u.data", 30, 20, 5);
    std::vector<std::string> args{"evaluate", "--data", data, "--metric", "mae,rmse", "--folds", "3",
                                  "--max-iter", "2", "--seed", "9", "--records"};
    Result a = run(args), b = run(args);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    // Three folds times two metrics, then the two means.
    std::regex rec("metric=(mae|rmse) value=([0-9.e+-]+) count=");
    auto n = std::distance(std::sregex_iterator(a.out.begin(), a.out.end(), rec), std::sregex_iterator());
    EXPECT_EQ(n, 8);
    EXPECT_NE(a.out.find("mean over 3 folds"), std::string::npos);
}

TEST_F(CliTest, EvaluateASavedModelOnItsHoldout) {
    std::string data = random_data("u.data", 30, 20, 6);
    ASSERT_EQ(run({"train", "--data", data, "--max-iter", "2", "--model-out", path("m.txt")}).code, cli::kOk);
    Result r = run({"evaluate", "--data", data, "--model-in", path("m.txt"), "--fraction", "0.2", "--metric",
                    "mae", "--metric", "recall", "--n", "1", "--n", "5"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("recall@1"), std::string::npos);
    EXPECT_NE(r.out.find("recall@5"), std::string::npos);
    Result nosplit = run({"evaluate", "--data", data, "--model-in", path("m.txt"), "--metric", "mae"});
    EXPECT_EQ(nosplit.code, cli::kFailure);
}

TEST_F(CliTest, RecoverAConjugatedEmbeddedNnm) {
    Rng rng(7);
    NnmModel nnm = testing::random_nnm(3, 3, 9, 3, rng);
    QuantumModel q = embed_nnm(nnm);
    CMatrix w = testing::random_unitary(3, rng);
    std::vector<HermitianMatrix> users;
    for (int u = 0; u < q.num_users(); ++u) {
        users.push_back(testing::conjugate(q.user(u), w));
    }
    std::vector<std::vector<HermitianMatrix>> items;
    for (int i = 0; i < q.num_items(); ++i) {
        std::vector<HermitianMatrix> e;
        for (const auto &x : q.item(i)) {
            e.push_back(testing::conjugate(x, w));
        }
        items.push_back(e);
    }
    save_model(path("q.txt"), QuantumModel(3, 3, Field::Complex, users, items));
    Result r = run({"recover", "--model-in", path("q.txt"), "--model-out", path("n.txt")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_LE(number_after(r.out, "max prediction deviation "), 1e-6);
    EXPECT_TRUE(std::holds_alternative<NnmModel>(load_model(path("n.txt"))));

    save_model(path("rand.txt"), testing::random_quantum(3, 2, 4, 2, rng));
    Result bad = run({"recover", "--model-in", path("rand.txt")});
    EXPECT_EQ(bad.code, cli::kFailure);
    EXPECT_FALSE(bad.err.empty());
}

TEST_F(CliTest, OverfitTinyDatasetHasZeroError) {
    std::string data = write("u.data", "1\t1\t5\t0\n2\t1\t3\t0\n2\t2\t1\t0\n3\t3\t4\t0\n");
    Result r = run({"overfit", "--data", data});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("max training error 0.000e+00"), std::string::npos) << r.out;
    EXPECT_EQ(number_after(r.out, "max rank of outcomes 2..5: "), 1.0);
}

TEST_F(CliTest, HistogramSumsToTheRatingCount) {
    Rng rng(8);
    RatingDataset ds = testing::random_dataset(20, 15, 5, 0.3, rng);
    std::string data = write_dataset("u.data", ds);
    Result r = run({"histogram", "--data", data});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "stars\tcount");
    std::size_t sum = 0;
    for (int z = 1; z <= 5; ++z) {
        std::getline(in, line);
        sum += std::stoul(line.substr(line.find('\t') + 1));
    }
    EXPECT_EQ(sum, ds.size());
    EXPECT_EQ(static_cast<std::size_t>(number_after(r.out, "total\t")), ds.size());
}

TEST_F(CliTest, HierarchyWritesDotMatchingTheEdgeList) {
    std::string ratings = write("ratings.dat", "1::1::5::0\n1::2::3::0\n2::2::4::0\n2::3::2::0\n3::3::5::0\n");
    std::string movies = write("movies.dat", "1::A (1990)::Comedy|Drama\n2::B (1991)::Drama\n"
                                             "3::C (1992)::Comedy|War\n4::D (1993)::Horror\n");
    // Identical like-effects make every pair of tags mutually contained.
    HermitianMatrix e = HermitianMatrix::identity(2);
    std::vector<std::vector<HermitianMatrix>> items(3, {e, 0.0 * e});
    std::vector<HermitianMatrix> users(3, 0.5 * e);
    save_model(path("q.txt"), QuantumModel(2, 2, Field::Complex, users, items));
    Result r = run({"hierarchy", "--data", ratings, "--format", "ml1m", "--genres", movies, "--model-in",
                    path("q.txt"), "--exclude", "War", "--epsilon", "0.2", "--dot-out", path("g.dot")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("2 tags, 2 edges"), std::string::npos) << r.out;
    std::string dot = read_file(path("g.dot"));
    EXPECT_EQ(dot, "digraph {\n  \"Comedy\";\n  \"Drama\";\n  \"Comedy\" -> \"Drama\" [dir=both];\n}\n");

    Result stdout_dot = run({"hierarchy", "--data", ratings, "--format", "ml1m", "--genres", movies, "--model-in",
                             path("q.txt"), "--method", "sdp"});
    ASSERT_EQ(stdout_dot.code, cli::kOk) << stdout_dot.err;
    EXPECT_NE(stdout_dot.out.find("digraph {"), std::string::npos);
    EXPECT_NE(stdout_dot.out.find("3 tags, 6 edges"), std::string::npos) << stdout_dot.out;
}

TEST_F(CliTest, TopnPrintsRecallAgainstTheRandomBaseline) {
    std::string data = random_data("u.data", 40, 30, 9);
    Result r = run({"topn", "--data", data, "--dim", "2", "--max-iter", "2", "--fraction", "0.2", "--n", "5"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("N\trecall\trandom\tp_value\n5\t"), std::string::npos) << r.out;
}

TEST_F(CliTest, MovieLens100kHistogram) {
    const std::string data = PSDREC_ML100K_DEFAULT;
    if (!fs::exists(data)) {
        GTEST_SKIP() << "MovieLens 100K not present at " << data;
    }
    Result r = run({"histogram", "--data", data});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(r.out, "stars\tcount\n1\t6110\n2\t11370\n3\t27145\n4\t34174\n5\t21201\ntotal\t100000\nmode\t4\n");
}

}  // namespace
}  // namespace psdrec
