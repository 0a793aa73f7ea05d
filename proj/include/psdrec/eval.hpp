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

#ifndef PSDREC_EVAL_HPP
#define PSDREC_EVAL_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psdrec/data.hpp"
#include "psdrec/models.hpp"

namespace psdrec {

struct MetricReport {
    std::string metric;
    double value = 0.0;
    std::size_t count = 0;
    std::string config;  // free-form echo of what produced the value
};

/// Like-probability of (u, i), in [0, 1].
using LikeScore = std::function<double(int u, int i)>;
LikeScore like_score(const QuantumModel &m);
LikeScore like_score(const NnmModel &m);

/// Continuous: clamp(z_star * p, 1, z_star). Nearest: that value rounded to
/// the nearest whole star.
enum class StarRounding { None, Nearest };
const char *rounding_name(StarRounding r);
StarRounding parse_rounding(const std::string &name);

// Errors on the star scale. `test` indexes entries of `ds`. Throws
// InvalidInput on an empty test set.
MetricReport mae(const LikeScore &score, const RatingDataset &ds, std::span<const std::size_t> test,
                 StarRounding rounding = StarRounding::None);
MetricReport rmse(const LikeScore &score, const RatingDataset &ds, std::span<const std::size_t> test,
                  StarRounding rounding = StarRounding::None);

template <typename Model>
MetricReport mae(const Model &m, const RatingDataset &ds, std::span<const std::size_t> test,
                 StarRounding rounding = StarRounding::None) {
    return mae(like_score(m), ds, test, rounding);
}
template <typename Model>
MetricReport rmse(const Model &m, const RatingDataset &ds, std::span<const std::size_t> test,
                  StarRounding rounding = StarRounding::None) {
    return rmse(like_score(m), ds, test, rounding);
}

/// Rank of each relevant (top-star) test entry among its candidates: the
/// items the user did not rate in `split.train`, plus the test item itself.
/// Ties count against the test item.
struct RecallRanks {
    std::vector<std::size_t> entries;     // relevant test entry indices
    std::vector<std::size_t> ranks;       // 1-based
    std::vector<std::size_t> candidates;  // candidate-set size per entry
};

RecallRanks recall_ranks(const LikeScore &score, const RatingDataset &ds, const DataSplit &split, int threads = 0);

/// Fraction of relevant test entries ranked within the top n. Throws
/// InvalidInput when no test entry is relevant or n < 1.
MetricReport recall_at_n(const RecallRanks &ranks, int n);

template <typename Model>
MetricReport recall_at_n(const Model &m, const RatingDataset &ds, const DataSplit &split, int n) {
    return recall_at_n(recall_ranks(like_score(m), ds, split), n);
}

/// counts[z - 1] = number of ratings equal to z, for z in [1, z_star].
std::vector<std::size_t> rating_histogram(const RatingDataset &ds);

/// P[X >= k] for X ~ Binomial(n, p).
double binomial_upper_tail(std::size_t n, std::size_t k, double p);

/// Aligned `metric value count` columns.
void write_report_text(std::ostream &out, std::span<const MetricReport> reports);
/// One `metric=... value=... count=... config="..."` line per report.
void write_report_records(std::ostream &out, std::span<const MetricReport> reports);

}  // namespace psdrec

#endif  // PSDREC_EVAL_HPP
