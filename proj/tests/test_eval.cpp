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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "psdrec/error.hpp"
#include "psdrec/eval.hpp"
#include "test_util.hpp"

namespace psdrec {
namespace {

using testing::Rng;

std::vector<std::size_t> all_entries(const RatingDataset &ds) {
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

LikeScore constant(double p) {
    return [p](int, int) { return p; };
}

TEST(Mae, PerfectPredictionsScoreZero) {
    RatingDataset ds(2, 2, 5, {{0, 0, 1}, {0, 1, 4}, {1, 1, 5}});
    LikeScore exact = [&](int u, int i) { return *ds.rating(u, i) / 5.0; };
    auto idx = all_entries(ds);
    EXPECT_NEAR(mae(exact, ds, idx).value, 0.0, 1e-15);
    EXPECT_NEAR(rmse(exact, ds, idx).value, 0.0, 1e-15);
    EXPECT_EQ(mae(exact, ds, idx).count, 3u);
    EXPECT_EQ(mae(exact, ds, idx).metric, "mae");
    EXPECT_EQ(rmse(exact, ds, idx).metric, "rmse");
}

TEST(Mae, ConstantThreeAgainstOneAndFive) {
    RatingDataset ds(2, 1, 5, {{0, 0, 1}, {1, 0, 5}});
    auto idx = all_entries(ds);
    EXPECT_NEAR(mae(constant(0.6), ds, idx).value, 2.0, 1e-12);
    EXPECT_NEAR(rmse(constant(0.6), ds, idx).value, 2.0, 1e-12);
}

TEST(Mae, ClampsToTheStarRange) {
    RatingDataset ds(1, 1, 5, {{0, 0, 1}});
    auto idx = all_entries(ds);
    EXPECT_EQ(mae(constant(0.0), ds, idx).value, 0.0);
    EXPECT_NEAR(mae(constant(1.0), ds, idx).value, 4.0, 1e-15);
}

TEST(Mae, NearestRoundingSnapsToWholeStars) {
    RatingDataset ds(1, 2, 5, {{0, 0, 4}, {0, 1, 2}});
    auto idx = all_entries(ds);
    // 0.76 * 5 = 3.8 (rounds to 4), 0.5 * 5 = 2.5 (rounds away to 3).
    LikeScore s = [](int, int i) { return i == 0 ? 0.76 : 0.5; };
    EXPECT_NEAR(mae(s, ds, idx).value, (0.2 + 0.5) / 2.0, 1e-12);
    EXPECT_NEAR(mae(s, ds, idx, StarRounding::Nearest).value, 0.5, 1e-12);
    EXPECT_NEAR(rmse(s, ds, idx, StarRounding::Nearest).value, std::sqrt(0.5), 1e-12);
    EXPECT_EQ(parse_rounding("nearest"), StarRounding::Nearest);
    EXPECT_EQ(parse_rounding("none"), StarRounding::None);
    EXPECT_STREQ(rounding_name(StarRounding::Nearest), "nearest");
    EXPECT_THROW(parse_rounding("floor"), InvalidInput);
}

TEST(Mae, EmptyTestSetIsRejected) {
    RatingDataset ds(1, 1, 5, {{0, 0, 3}});
    std::vector<std::size_t> none;
    EXPECT_THROW(mae(constant(0.5), ds, none), InvalidInput);
    EXPECT_THROW(rmse(constant(0.5), ds, none), InvalidInput);
}

TEST(Mae, ModelOverloadsUseTheLikeEffect) {
    Rng rng(1);
    RatingDataset ds = testing::random_dataset(6, 5, 5, 0.5, rng);
    QuantumModel q = testing::random_quantum(2, 2, 6, 5, rng);
    auto idx = all_entries(ds);
    double expect = 0.0;
    for (std::size_t k : idx) {
        const Rating &r = ds.entry(k);
        expect += std::abs(predicted_star(q, r.user, r.item, 5) - r.value);
    }
    EXPECT_NEAR(mae(q, ds, idx).value, expect / static_cast<double>(idx.size()), 1e-12);
}

TEST(MetricProperties, MaeNeverExceedsRmse) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        RatingDataset ds = testing::random_dataset(10, 8, 5, 0.3, rng);
        QuantumModel q = testing::random_quantum(2, 2, 10, 8, rng);
        auto idx = all_entries(ds);
        for (StarRounding r : {StarRounding::None, StarRounding::Nearest}) {
            EXPECT_LE(mae(q, ds, idx, r).value, rmse(q, ds, idx, r).value + 1e-12);
        }
    }
}

TEST(MetricProperties, InvariantUnderIndexPermutation) {
    Rng rng(3);
    const int users = 12, items = 9;
    RatingDataset ds = testing::random_dataset(users, items, 5, 0.4, rng);
    QuantumModel q = testing::random_quantum(2, 2, users, items, rng);
    std::vector<int> pu(users), pi(items);
    std::iota(pu.begin(), pu.end(), 0);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pu.begin(), pu.end(), rng);
    std::shuffle(pi.begin(), pi.end(), rng);
    std::vector<Rating> moved;
    for (const auto &r : ds.entries()) {
        moved.push_back({pu[static_cast<std::size_t>(r.user)], pi[static_cast<std::size_t>(r.item)], r.value});
    }
    RatingDataset ds2(users, items, 5, moved);
    LikeScore s1 = like_score(q);
    LikeScore s2 = [&](int u, int i) {
        int u0 = static_cast<int>(std::find(pu.begin(), pu.end(), u) - pu.begin());
        int i0 = static_cast<int>(std::find(pi.begin(), pi.end(), i) - pi.begin());
        return s1(u0, i0);
    };
    auto idx = all_entries(ds);
    EXPECT_NEAR(mae(s1, ds, idx).value, mae(s2, ds2, idx).value, 1e-12);
    EXPECT_NEAR(rmse(s1, ds, idx).value, rmse(s2, ds2, idx).value, 1e-12);

    DataSplit split = topn_holdout(ds, 0.3, 4);
    DataSplit split2 = split;  // entry k of ds is entry k of ds2
    RecallRanks a = recall_ranks(s1, ds, split, 1);
    RecallRanks b = recall_ranks(s2, ds2, split2, 1);
    EXPECT_EQ(a.ranks, b.ranks);
    EXPECT_EQ(a.candidates, b.candidates);
}

// ---------------------------------------------------------------------------
// Recall

TEST(Recall, StrictlyHighestScoreIsAHitAtOne) {
    // User 0 rated item 0 in training; item 3 (5 stars) is held out.
    RatingDataset ds(1, 5, 5, {{0, 0, 2}, {0, 3, 5}});
    DataSplit split{{0}, {1}};
    LikeScore s = [](int, int i) { return i == 3 ? 0.9 : 0.1 * i; };
    RecallRanks r = recall_ranks(s, ds, split);
    ASSERT_EQ(r.ranks.size(), 1u);
    EXPECT_EQ(r.ranks[0], 1u);
    EXPECT_EQ(r.candidates[0], 4u);  // items 1..4
    EXPECT_EQ(recall_at_n(r, 1).value, 1.0);
    EXPECT_EQ(recall_at_n(r, 1).metric, "recall@1");
}

TEST(Recall, AllEqualScoresRankLast) {
    const int items = 100;
    RatingDataset ds(1, items, 5, {{0, 42, 5}});
    DataSplit split{{}, {0}};
    RecallRanks r = recall_ranks(constant(0.5), ds, split);
    EXPECT_EQ(r.candidates[0], 100u);
    EXPECT_EQ(r.ranks[0], 100u);
    EXPECT_EQ(recall_at_n(r, 20).value, 0.0);
    EXPECT_EQ(recall_at_n(r, 100).value, 1.0);
}

TEST(Recall, OnlyTopStarEntriesAreRelevant) {
    RatingDataset ds(2, 3, 5, {{0, 0, 5}, {1, 0, 4}, {1, 1, 5}});
    DataSplit split{{}, {0, 1, 2}};
    RecallRanks r = recall_ranks(constant(0.5), ds, split);
    EXPECT_EQ(r.entries, (std::vector<std::size_t>{0, 2}));
    DataSplit none{{0, 2}, {1}};
    EXPECT_THROW(recall_at_n(recall_ranks(constant(0.5), ds, none), 5), InvalidInput);
    EXPECT_THROW(recall_at_n(r, 0), InvalidInput);
}

// Oracle: sort every candidate by score, ties placing the test item last.
std::vector<std::size_t> sort_all_ranks(const LikeScore &score, const RatingDataset &ds, const DataSplit &split) {
    std::vector<std::set<int>> train_items(static_cast<std::size_t>(ds.num_users()));
    for (std::size_t k : split.train) {
        train_items[static_cast<std::size_t>(ds.entry(k).user)].insert(ds.entry(k).item);
    }
    std::vector<std::size_t> ranks;
    for (std::size_t k : split.test) {
        const Rating &r = ds.entry(k);
        if (r.value != ds.z_star()) {
            continue;
        }
        std::vector<std::pair<double, int>> cand;  // (score, is_test)
        for (int i = 0; i < ds.num_items(); ++i) {
            if (i == r.item) {
                cand.emplace_back(score(r.user, i), 1);
            } else if (!train_items[static_cast<std::size_t>(r.user)].count(i)) {
                cand.emplace_back(score(r.user, i), 0);
            }
        }
        std::sort(cand.begin(), cand.end(), [](const auto &a, const auto &b) {
            if (a.first != b.first) {
                return a.first > b.first;
            }
            return a.second < b.second;
        });
        for (std::size_t pos = 0; pos < cand.size(); ++pos) {
            if (cand[pos].second == 1) {
                ranks.push_back(pos + 1);
            }
        }
    }
    return ranks;
}

TEST(Recall, MatchesSortAllOracle) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        RatingDataset ds = testing::random_dataset(20, 30, 5, 0.3, rng);
        QuantumModel q = testing::random_quantum(2, 2, 20, 30, rng);
        LikeScore exact = like_score(q);
        // Coarse scores force ties.
        LikeScore coarse = [&](int u, int i) { return std::round(exact(u, i) * 10.0) / 10.0; };
        DataSplit split = topn_holdout(ds, 0.3, static_cast<std::uint64_t>(trial));
        for (const LikeScore &s : {exact, coarse}) {
            RecallRanks r = recall_ranks(s, ds, split, trial % 2 ? 1 : 3);
            EXPECT_EQ(r.ranks, sort_all_ranks(s, ds, split));
        }
    }
}

TEST(Recall, MonotoneInNAndOneAtCandidateCount) {
    Rng rng(6);
    RatingDataset ds = testing::random_dataset(25, 40, 5, 0.3, rng);
    QuantumModel q = testing::random_quantum(3, 2, 25, 40, rng);
    RecallRanks r = recall_ranks(like_score(q), ds, topn_holdout(ds, 0.25, 1));
    ASSERT_FALSE(r.ranks.empty());
    double prev = 0.0;
    for (int n = 1; n <= 40; ++n) {
        double v = recall_at_n(r, n).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
    std::size_t most = *std::max_element(r.candidates.begin(), r.candidates.end());
    EXPECT_EQ(recall_at_n(r, static_cast<int>(most)).value, 1.0);
    for (std::size_t k = 0; k < r.ranks.size(); ++k) {
        EXPECT_GE(r.ranks[k], 1u);
        EXPECT_LE(r.ranks[k], r.candidates[k]);
    }
}

// ---------------------------------------------------------------------------
// Histogram, binomial tail, reports

TEST(Histogram, CountsPerStar) {
    RatingDataset ds(3, 1, 5, {{0, 0, 3}, {1, 0, 3}, {2, 0, 5}});
    EXPECT_EQ(rating_histogram(ds), (std::vector<std::size_t>{0, 0, 2, 0, 1}));
    Rng rng(7);
    RatingDataset big = testing::random_dataset(40, 40, 5, 0.2, rng);
    auto h = rating_histogram(big);
    EXPECT_EQ(std::accumulate(h.begin(), h.end(), std::size_t{0}), big.size());
}

double exact_tail(int n, int k, double p) {
    double sum = 0.0;
    for (int j = k; j <= n; ++j) {
        double c = 1.0;
        for (int t = 1; t <= j; ++t) {
            c = c * (n - j + t) / t;
        }
        sum += c * std::pow(p, j) * std::pow(1.0 - p, n - j);
    }
    return sum;
}

TEST(Binomial, MatchesDirectSummation) {
    for (int n : {1, 5, 12, 30}) {
        for (int k = 0; k <= n + 1; ++k) {
            for (double p : {0.01, 0.3, 0.5, 0.9}) {
                double expect = k > n ? 0.0 : exact_tail(n, k, p);
                EXPECT_NEAR(binomial_upper_tail(static_cast<std::size_t>(n), static_cast<std::size_t>(k), p), expect,
                            1e-12 * std::max(1.0, expect))
                    << n << " " << k << " " << p;
            }
        }
    }
    EXPECT_EQ(binomial_upper_tail(10, 0, 0.2), 1.0);
    EXPECT_EQ(binomial_upper_tail(10, 3, 0.0), 0.0);
    EXPECT_EQ(binomial_upper_tail(10, 3, 1.0), 1.0);
}

TEST(Reports, RecordLinesAndTable) {
    std::vector<MetricReport> reports{{"mae", 0.5, 12, "fold=1"}, {"recall@20", 0.25, 4, ""}};
    std::ostringstream rec, text;
    write_report_records(rec, reports);
    EXPECT_EQ(rec.str(), "metric=mae value=0.5 count=12 config=\"fold=1\"\n"
                         "metric=recall@20 value=0.25 count=4 config=\"\"\n");
    write_report_text(text, reports);
    EXPECT_EQ(text.str(), "metric     value       count\n"
                          "mae        0.500000    12  fold=1\n"
                          "recall@20  0.250000    4\n");
}

}  // namespace
}  // namespace psdrec
