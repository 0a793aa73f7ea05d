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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "psdrec/data.hpp"
#include "psdrec/error.hpp"
#include "psdrec/eval.hpp"
#include "psdrec/model_io.hpp"
#include "psdrec/models.hpp"
#include "psdrec/tags.hpp"
#include "psdrec/train.hpp"

namespace psdrec::cli {

namespace {

struct DataFlags {
    std::string path;
    std::string format = "ml100k";

    RatingDataset load() const {
        return load_dataset(path, parse_dataset_format(format));
    }
};

void add_data_flags(CLI::App *cmd, DataFlags &f) {
    cmd->add_option("--data", f.path, "Ratings file")->required();
    cmd->add_option("--format", f.format, "Dataset format")->check(CLI::IsMember({"ml100k", "ml1m"}));
}

// Config file first, then individual flags on top of it.
struct TrainFlags {
    std::string config;
    std::optional<std::string> kind, mode, field, zero_fill;
    std::optional<int> dim, max_iter, inner;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    TrainConfig resolve(TrainConfig base = {}) const {
        TrainConfig cfg = config.empty() ? base : load_train_config(config, base);
        if (kind) set_config_value(cfg, "kind", *kind);
        if (mode) set_config_value(cfg, "mode", *mode);
        if (field) set_config_value(cfg, "field", *field);
        if (zero_fill) set_config_value(cfg, "zero_fill_sweeps", *zero_fill);
        if (dim) cfg.dim = *dim;
        if (max_iter) cfg.max_iter = *max_iter;
        if (inner) cfg.inner_iterations = *inner;
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        cfg.validate();
        return cfg;
    }
};

void add_train_flags(CLI::App *cmd, TrainFlags &f) {
    cmd->add_option("--config", f.config, "key=value training config file");
    cmd->add_option("--kind", f.kind, "Model kind")->check(CLI::IsMember({"quantum", "nnm"}));
    cmd->add_option("--mode", f.mode, "Training mode")->check(CLI::IsMember({"mae", "recall"}));
    cmd->add_option("--field", f.field, "Matrix field")->check(CLI::IsMember({"real", "complex"}));
    cmd->add_option("--zero-fill-sweeps", f.zero_fill, "Zero-filled sweeps, or 'auto'");
    cmd->add_option("--dim", f.dim, "Model dimension D");
    cmd->add_option("--max-iter", f.max_iter, "Number of sweeps");
    cmd->add_option("--inner-iterations", f.inner, "Projected-gradient steps per subproblem");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

void write_history(const std::string &path, const TrainHistory &h) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << "sweep\tzero_filled\tobjective\tseconds\tmax_residual\n";
    out << std::setprecision(17) << 0 << "\t-\t" << h.initial_objective << "\t0\t0\n";
    for (const auto &r : h.sweeps) {
        out << r.sweep << '\t' << (r.zero_filled ? 1 : 0) << '\t' << r.objective << '\t' << r.seconds << '\t'
            << r.max_residual << '\n';
    }
}

AnyModel train_model(const RatingDataset &ds, const TrainConfig &cfg, std::ostream *progress, TrainHistory *history) {
    SweepCallback cb;
    if (progress) {
        cb = [progress](const SweepRecord &r) {
            *progress << "sweep " << r.sweep << (r.zero_filled ? " (zero-filled)" : "") << " objective "
                      << std::setprecision(10) << r.objective << " time " << std::setprecision(3) << r.seconds
                      << "s\n";
        };
    }
    if (cfg.kind == ModelKind::Quantum) {
        auto res = train_quantum(ds, cfg, cb);
        if (history) *history = std::move(res.history);
        return std::move(res.model);
    }
    auto res = train_nnm(ds, cfg, cb);
    if (history) *history = std::move(res.history);
    return std::move(res.model);
}

LikeScore score_of(const AnyModel &m) {
    return std::visit([](const auto &model) { return like_score(model); }, m);
}

void check_model_fits(const AnyModel &m, const RatingDataset &ds) {
    auto [users, items] = std::visit([](const auto &x) { return std::pair(x.num_users(), x.num_items()); }, m);
    if (users != ds.num_users() || items != ds.num_items()) {
        throw InvalidInput("model has " + std::to_string(users) + " users / " + std::to_string(items) +
                           " items but the dataset has " + std::to_string(ds.num_users()) + " / " +
                           std::to_string(ds.num_items()));
    }
}

std::vector<std::string> split_list(const std::vector<std::string> &raw) {
    std::vector<std::string> out;
    for (const auto &s : raw) {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) {
                out.push_back(part);
            }
        }
    }
    return out;
}

struct MetricFlags {
    std::vector<std::string> metrics;
    std::vector<int> ns{20};
    std::string rounding = "none";
    bool records = false;
};

void add_metric_flags(CLI::App *cmd, MetricFlags &f, bool require_metric) {
    auto *opt = cmd->add_option("--metric", f.metrics, "mae, rmse and/or recall (repeatable or comma-separated)");
    if (require_metric) {
        opt->required();
    }
    cmd->add_option("--n", f.ns, "Cutoffs N for recall@N");
    cmd->add_option("--round-stars", f.rounding, "Star rounding for mae/rmse")
        ->check(CLI::IsMember({"none", "nearest"}));
    cmd->add_flag("--records", f.records, "Emit key=value records instead of a table");
}

std::vector<std::string> checked_metrics(const MetricFlags &f) {
    auto metrics = split_list(f.metrics);
    if (metrics.empty()) {
        throw InvalidInput("empty metric list");
    }
    for (const auto &m : metrics) {
        if (m != "mae" && m != "rmse" && m != "recall") {
            throw InvalidInput("unknown metric '" + m + "' (expected mae|rmse|recall)");
        }
    }
    return metrics;
}

std::vector<MetricReport> compute_metrics(const LikeScore &score, const RatingDataset &ds, const DataSplit &split,
                                          const std::vector<std::string> &metrics, const MetricFlags &f,
                                          int threads) {
    const StarRounding rounding = parse_rounding(f.rounding);
    std::vector<MetricReport> out;
    std::optional<RecallRanks> ranks;
    for (const auto &m : metrics) {
        if (m == "mae") {
            out.push_back(mae(score, ds, split.test, rounding));
        } else if (m == "rmse") {
            out.push_back(rmse(score, ds, split.test, rounding));
        } else {
            if (!ranks) {
                ranks = recall_ranks(score, ds, split, threads);
            }
            for (int n : f.ns) {
                out.push_back(recall_at_n(*ranks, n));
            }
        }
    }
    return out;
}

void print_reports(std::ostream &out, const std::vector<MetricReport> &reports, bool records) {
    if (records) {
        write_report_records(out, reports);
    } else {
        write_report_text(out, reports);
    }
}

std::string describe(const TrainConfig &cfg) {
    std::ostringstream s;
    s << kind_name(cfg.kind) << " D=" << cfg.dim << " max_iter=" << cfg.max_iter << " mode=" << mode_name(cfg.mode)
      << " seed=" << cfg.seed;
    return s.str();
}

// ---------------------------------------------------------------------------

struct TrainArgs {
    DataFlags data;
    TrainFlags train;
    std::string model_out;
    std::string history_out;
};

int cmd_train(const TrainArgs &a, std::ostream &out) {
    const RatingDataset ds = a.data.load();
    const TrainConfig cfg = a.train.resolve();
    out << "training " << describe(cfg) << " on " << ds.size() << " ratings (" << ds.num_users() << " users, "
        << ds.num_items() << " items)\n";
    TrainHistory history;
    AnyModel model = train_model(ds, cfg, &out, &history);
    save_model(a.model_out, model);
    const std::string hist = a.history_out.empty() ? a.model_out + ".history.tsv" : a.history_out;
    write_history(hist, history);
    out << "wrote " << a.model_out << " and " << hist << '\n';
    return kOk;
}

struct EvaluateArgs {
    DataFlags data;
    TrainFlags train;
    MetricFlags metric;
    std::string model_in;
    std::optional<double> fraction;
    int folds = 5;
    std::optional<int> fold;
};

int cmd_evaluate(const EvaluateArgs &a, std::ostream &out) {
    const auto metrics = checked_metrics(a.metric);
    const RatingDataset ds = a.data.load();
    const TrainConfig cfg = a.train.resolve();

    std::vector<DataSplit> splits;
    std::vector<std::string> labels;
    if (a.fraction) {
        splits.push_back(topn_holdout(ds, *a.fraction, cfg.seed));
        labels.push_back("holdout");
    } else {
        auto all = kfold_split(ds, a.folds, cfg.seed);
        if (a.fold) {
            if (*a.fold < 1 || *a.fold > a.folds) {
                throw InvalidInput("--fold must lie in [1, --folds]");
            }
            splits.push_back(std::move(all[static_cast<std::size_t>(*a.fold - 1)]));
            labels.push_back("fold " + std::to_string(*a.fold));
        } else {
            if (!a.model_in.empty()) {
                throw InvalidInput("--model-in needs a split: --fraction or --folds with --fold");
            }
            splits = std::move(all);
            for (int k = 1; k <= a.folds; ++k) {
                labels.push_back("fold " + std::to_string(k));
            }
        }
    }

    std::optional<AnyModel> given;
    if (!a.model_in.empty()) {
        given = load_model(a.model_in);
        check_model_fits(*given, ds);
    }

    std::map<std::string, std::vector<double>> values;
    std::vector<std::string> order;
    for (std::size_t s = 0; s < splits.size(); ++s) {
        std::optional<AnyModel> trained;
        if (!given) {
            trained = train_model(ds.subset(splits[s].train), cfg, nullptr, nullptr);
        }
        const AnyModel &model = given ? *given : *trained;
        auto reports = compute_metrics(score_of(model), ds, splits[s], metrics, a.metric, cfg.threads);
        for (auto &r : reports) {
            r.config = labels[s] + (given ? " model=" + a.model_in : " " + describe(cfg));
            if (!values.count(r.metric)) {
                order.push_back(r.metric);
            }
            values[r.metric].push_back(r.value);
        }
        print_reports(out, reports, a.metric.records);
    }
    if (splits.size() > 1) {
        std::vector<MetricReport> summary;
        for (const auto &name : order) {
            const auto &v = values[name];
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            double sd = std::sqrt(var / static_cast<double>(v.size() - 1));
            std::ostringstream echo;
            echo << "mean over " << v.size() << " folds, std=" << std::setprecision(6) << sd;
            summary.push_back({name, mean, v.size(), echo.str()});
        }
        out << '\n';
        print_reports(out, summary, a.metric.records);
    }
    return kOk;
}

struct TopnArgs {
    DataFlags data;
    TrainFlags train;
    std::string model_in;
    std::string model_out;
    double fraction = 0.014;
    std::vector<int> ns{20};
};

int cmd_topn(const TopnArgs &a, std::ostream &out) {
    const RatingDataset ds = a.data.load();
    TrainConfig base;
    base.mode = TrainMode::Recall;
    base.dim = 12;
    base.max_iter = 8;
    const TrainConfig cfg = a.train.resolve(base);
    const DataSplit split = topn_holdout(ds, a.fraction, cfg.seed);
    std::optional<AnyModel> model;
    if (!a.model_in.empty()) {
        model = load_model(a.model_in);
        check_model_fits(*model, ds);
    } else {
        out << "training " << describe(cfg) << " on " << split.train.size() << " ratings\n";
        model = train_model(ds.subset(split.train), cfg, &out, nullptr);
        if (!a.model_out.empty()) {
            save_model(a.model_out, *model);
        }
    }
    const RecallRanks ranks = recall_ranks(score_of(*model), ds, split, cfg.threads);
    out << "holdout " << split.test.size() << " ratings, " << ranks.ranks.size() << " relevant\n";
    out << "N\trecall\trandom\tp_value\n";
    for (int n : a.ns) {
        MetricReport r = recall_at_n(ranks, n);
        double p0 = 0.0;
        for (std::size_t c : ranks.candidates) {
            p0 += std::min(1.0, static_cast<double>(n) / static_cast<double>(c));
        }
        p0 /= static_cast<double>(ranks.candidates.size());
        auto hits = static_cast<std::size_t>(std::llround(r.value * static_cast<double>(r.count)));
        out << n << '\t' << std::setprecision(6) << r.value << '\t' << p0 << '\t'
            << binomial_upper_tail(r.count, hits, p0) << '\n';
    }
    return kOk;
}

struct HierarchyArgs {
    DataFlags data;
    TrainFlags train;
    std::string model_in;
    std::string genres;
    double epsilon = 1.0 / 3.0;
    std::string method = "simple";
    std::vector<std::string> exclude;
    std::string dot_out;
};

int cmd_hierarchy(const HierarchyArgs &a, std::ostream &out) {
    const RatingDataset ds = a.data.load();
    const TagCatalog catalog = load_genres_1m(a.genres, ds, split_list(a.exclude));
    QuantumModel model;
    if (!a.model_in.empty()) {
        AnyModel any = load_model(a.model_in);
        check_model_fits(any, ds);
        model = std::holds_alternative<QuantumModel>(any) ? std::get<QuantumModel>(any)
                                                          : embed_nnm(std::get<NnmModel>(any));
    } else {
        TrainConfig cfg = a.train.resolve();
        if (cfg.kind != ModelKind::Quantum) {
            throw InvalidInput("hierarchy trains quantum models only; pass --model-in for an NNM");
        }
        out << "training " << describe(cfg) << '\n';
        model = train_quantum(ds, cfg).model;
    }
    const HierarchyGraph g = build_hierarchy(model, catalog, a.epsilon, parse_method(a.method));
    out << g.vertices.size() << " tags, " << g.edges.size() << " edges (epsilon=" << a.epsilon
        << ", method=" << method_name(g.method) << ")\n";
    for (auto [s, t] : g.edges) {
        out << g.vertices[static_cast<std::size_t>(s)] << " -> " << g.vertices[static_cast<std::size_t>(t)] << '\n';
    }
    if (a.dot_out.empty()) {
        write_dot(out, g);
    } else {
        std::ofstream dot(a.dot_out);
        if (!dot) {
            throw IoError("cannot write '" + a.dot_out + "'");
        }
        write_dot(dot, g);
        out << "wrote " << a.dot_out << '\n';
    }
    return kOk;
}

struct RecoverArgs {
    std::string model_in;
    std::string model_out;
    double tol = 1e-6;
    std::uint64_t seed = 0x5eed;
};

int cmd_recover(const RecoverArgs &a, std::ostream &out) {
    AnyModel any = load_model(a.model_in);
    if (std::holds_alternative<NnmModel>(any)) {
        out << "model is already an NNM\n";
        return kOk;
    }
    const QuantumModel &q = std::get<QuantumModel>(any);
    NnmModel nnm = recover_nnm(q, a.tol, a.seed);
    double worst = 0.0;
    for (int u = 0; u < q.num_users(); ++u) {
        for (int i = 0; i < q.num_items(); ++i) {
            for (int z = 0; z < q.outcomes(); ++z) {
                worst = std::max(worst, std::abs(nnm_predict(nnm, u, i, z) - quantum_predict(q, u, i, z)));
            }
        }
    }
    out << "recovered NNM: D=" << nnm.dim() << " U=" << nnm.num_users() << " I=" << nnm.num_items()
        << " Z=" << nnm.outcomes() << '\n'
        << "max prediction deviation " << std::setprecision(3) << std::scientific << worst << '\n';
    if (!a.model_out.empty()) {
        save_model(a.model_out, nnm);
        out << "wrote " << a.model_out << '\n';
    }
    return kOk;
}

struct OverfitArgs {
    DataFlags data;
    std::string model_out;
};

int cmd_overfit(const OverfitArgs &a, std::ostream &out) {
    const RatingDataset ds = a.data.load();
    const QuantumModel m = overfit_model(ds);
    double worst = 0.0;
    for (const auto &r : ds.entries()) {
        for (int z = 0; z < m.outcomes(); ++z) {
            double delta = (z + 1 == r.value) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(delta - trace_inner(m.user(r.user), m.effect(r.item, z))));
        }
    }
    const RankProfile prof = rank_profile(m, 1e-9);
    int max_rank = 0;
    std::size_t max_ratings = 0;
    for (int i = 0; i < m.num_items(); ++i) {
        const auto &ranks = prof.items[static_cast<std::size_t>(i)].effect_ranks;
        for (std::size_t z = 1; z < ranks.size(); ++z) {
            max_rank = std::max(max_rank, ranks[z]);
        }
        max_ratings = std::max(max_ratings, ds.by_item(i).size());
    }
    out << "overfit model: D=" << m.dim() << " U=" << m.num_users() << " I=" << m.num_items()
        << " Z=" << m.outcomes() << '\n'
        << "max training error " << std::setprecision(3) << std::scientific << worst << '\n'
        << "max rank of outcomes 2.." << m.outcomes() << ": " << max_rank << " (max ratings per item "
        << max_ratings << ")\n";
    if (!a.model_out.empty()) {
        save_model(a.model_out, m);
        out << "wrote " << a.model_out << '\n';
    }
    return kOk;
}

int cmd_histogram(const DataFlags &data, std::ostream &out) {
    const RatingDataset ds = data.load();
    const auto counts = rating_histogram(ds);
    std::size_t total = 0;
    int mode = 1;
    out << "stars\tcount\n";
    for (std::size_t z = 0; z < counts.size(); ++z) {
        out << z + 1 << '\t' << counts[z] << '\n';
        total += counts[z];
        if (counts[z] > counts[static_cast<std::size_t>(mode - 1)]) {
            mode = static_cast<int>(z + 1);
        }
    }
    out << "total\t" << total << '\n' << "mode\t" << mode << '\n';
    return kOk;
}

}  // namespace

DemoInputs demo_inputs() {
    DemoInputs in;
    in.rho.resize(2, 2);
    in.rho << 1, 2, 2, 4;
    in.rho /= 5.0;
    in.like.resize(2, 2);
    in.like << 1, 3, 3, 9;
    in.like /= 10.0;
    in.dislike.resize(2, 2);
    in.dislike << 9, -3, -3, 1;
    in.dislike /= 10.0;
    return in;
}

int cmd_demo(const DemoInputs &in, std::ostream &out, std::ostream &err) {
    try {
        QuantumModel m(2, 2, Field::Real, {HermitianMatrix(in.rho)},
                       {{HermitianMatrix(in.like), HermitianMatrix(in.dislike)}});
        const double p1 = trace_inner(m.user(0), m.effect(0, 0));
        const double p2 = trace_inner(m.user(0), m.effect(0, 1));
        out << std::setprecision(15) << std::fixed;
        out << "tr(rho_u E_i1) = " << p1 << "  expected " << in.expect_like << '\n';
        out << "tr(rho_u E_i2) = " << p2 << "  expected " << in.expect_dislike << '\n';
        out.unsetf(std::ios::floatfield);
        if (std::abs(p1 - in.expect_like) > 1e-12 || std::abs(p2 - in.expect_dislike) > 1e-12) {
            err << "demo: probabilities differ from the expected values\n";
            return kFailure;
        }
        out << "demo ok\n";
        return kOk;
    } catch (const Error &e) {
        err << "demo: " << e.what() << '\n';
        return kFailure;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum and nonnegative models for rating data", "psdrec"};
    app.require_subcommand(1);

    TrainArgs train;
    auto *c_train = app.add_subcommand("train", "Fit a model and write it to disk");
    add_data_flags(c_train, train.data);
    add_train_flags(c_train, train.train);
    c_train->add_option("--model-out", train.model_out, "Output model file")->required();
    c_train->add_option("--history-out", train.history_out, "Per-sweep history (default <model-out>.history.tsv)");

    EvaluateArgs eval;
    auto *c_eval = app.add_subcommand("evaluate", "K-fold or single-split MAE / RMSE / recall");
    add_data_flags(c_eval, eval.data);
    add_train_flags(c_eval, eval.train);
    add_metric_flags(c_eval, eval.metric, true);
    c_eval->add_option("--model-in", eval.model_in, "Evaluate this model instead of training");
    c_eval->add_option("--fraction", eval.fraction, "Random holdout fraction");
    c_eval->add_option("--folds", eval.folds, "Number of folds")->check(CLI::Range(2, 1000));
    c_eval->add_option("--fold", eval.fold, "Only this fold (1-based)");

    TopnArgs topn;
    auto *c_topn = app.add_subcommand("topn", "Recall@N on a small random holdout");
    add_data_flags(c_topn, topn.data);
    add_train_flags(c_topn, topn.train);
    c_topn->add_option("--model-in", topn.model_in, "Rank with this model instead of training");
    c_topn->add_option("--model-out", topn.model_out, "Save the trained model");
    c_topn->add_option("--fraction", topn.fraction, "Holdout fraction");
    c_topn->add_option("--n", topn.ns, "Cutoffs N");

    HierarchyArgs hier;
    auto *c_hier = app.add_subcommand("hierarchy", "Tag containment digraph");
    add_data_flags(c_hier, hier.data);
    add_train_flags(c_hier, hier.train);
    c_hier->add_option("--model-in", hier.model_in, "Model file (trained on --data)");
    c_hier->add_option("--genres", hier.genres, "movies.dat-style genre file")->required();
    c_hier->add_option("--epsilon", hier.epsilon, "Containment slack")->check(CLI::Range(0.0, 0.999999999));
    c_hier->add_option("--method", hier.method, "Containment test")->check(CLI::IsMember({"simple", "sdp"}));
    c_hier->add_option("--exclude", hier.exclude, "Tags to drop (repeatable or comma-separated)");
    c_hier->add_option("--dot-out", hier.dot_out, "DOT output file (default: stdout)");

    auto *c_demo = app.add_subcommand("demo", "Print the two-dimensional worked example");

    RecoverArgs rec;
    auto *c_rec = app.add_subcommand("recover", "Recover an NNM from a commuting quantum model");
    c_rec->add_option("--model-in", rec.model_in, "Quantum model file")->required();
    c_rec->add_option("--model-out", rec.model_out, "Write the recovered NNM");
    c_rec->add_option("--tol", rec.tol, "Commutator / off-diagonal tolerance");
    c_rec->add_option("--seed", rec.seed, "Seed for the random combination");

    OverfitArgs over;
    auto *c_over = app.add_subcommand("overfit", "Build the exact-fit model of a small dataset");
    add_data_flags(c_over, over.data);
    c_over->add_option("--model-out", over.model_out, "Write the model");

    DataFlags hist;
    auto *c_hist = app.add_subcommand("histogram", "Count ratings per star value");
    add_data_flags(c_hist, hist);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*c_train) return cmd_train(train, out);
        if (*c_eval) return cmd_evaluate(eval, out);
        if (*c_topn) return cmd_topn(topn, out);
        if (*c_hier) return cmd_hierarchy(hier, out);
        if (*c_demo) return cmd_demo(demo_inputs(), out, err);
        if (*c_rec) return cmd_recover(rec, out);
        if (*c_over) return cmd_overfit(over, out);
        if (*c_hist) return cmd_histogram(hist, out);
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace psdrec::cli
