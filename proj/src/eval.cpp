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

#include "psdrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "parallel.hpp"
#include "psdrec/error.hpp"

namespace psdrec {

LikeScore like_score(const QuantumModel &m) {
    return [&m](int u, int i) { return quantum_predict(m, u, i, kLike); };
}

LikeScore like_score(const NnmModel &m) {
    return [&m](int u, int i) { return nnm_predict(m, u, i, kLike); };
}

const char *rounding_name(StarRounding r) {
    return r == StarRounding::None ? "none" : "nearest";
}

StarRounding parse_rounding(const std::string &name) {
    if (name == "none") {
        return StarRounding::None;
    }
    if (name == "nearest") {
        return StarRounding::Nearest;
    }
    throw InvalidInput("unknown star rounding '" + name + "' (expected none|nearest)");
}

namespace {

std::vector<double> star_errors(const LikeScore &score, const RatingDataset &ds, std::span<const std::size_t> test,
                                StarRounding rounding) {
    if (test.empty()) {
        throw InvalidInput("empty test set");
    }
    std::vector<double> err;
    err.reserve(test.size());
    for (std::size_t k : test) {
        const Rating &r = ds.entry(k);
        double star = predicted_star(score(r.user, r.item), ds.z_star());
        if (rounding == StarRounding::Nearest) {
            star = std::round(star);
        }
        err.push_back(star - r.value);
    }
    return err;
}

}  // namespace

MetricReport mae(const LikeScore &score, const RatingDataset &ds, std::span<const std::size_t> test,
                 StarRounding rounding) {
    double sum = 0.0;
    for (double e : star_errors(score, ds, test, rounding)) {
        sum += std::abs(e);
    }
    return {"mae", sum / static_cast<double>(test.size()), test.size(), {}};
}

MetricReport rmse(const LikeScore &score, const RatingDataset &ds, std::span<const std::size_t> test,
                  StarRounding rounding) {
    double sum = 0.0;
    for (double e : star_errors(score, ds, test, rounding)) {
        sum += e * e;
    }
    return {"rmse", std::sqrt(sum / static_cast<double>(test.size())), test.size(), {}};
}

RecallRanks recall_ranks(const LikeScore &score, const RatingDataset &ds, const DataSplit &split, int threads) {
    const int num_users = ds.num_users();
    const int num_items = ds.num_items();
    std::vector<std::vector<int>> trained(static_cast<std::size_t>(num_users));
    for (std::size_t k : split.train) {
        const Rating &r = ds.entry(k);
        trained[static_cast<std::size_t>(r.user)].push_back(r.item);
    }
    std::vector<std::vector<std::size_t>> relevant(static_cast<std::size_t>(num_users));
    for (std::size_t k : split.test) {
        const Rating &r = ds.entry(k);
        if (r.value == ds.z_star()) {
            relevant[static_cast<std::size_t>(r.user)].push_back(k);
        }
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_user(static_cast<std::size_t>(num_users));
    detail::parallel_for(num_users, threads, [&](int u) {
        const auto &rel = relevant[static_cast<std::size_t>(u)];
        if (rel.empty()) {
            return;
        }
        std::vector<char> excluded(static_cast<std::size_t>(num_items), 0);
        for (int i : trained[static_cast<std::size_t>(u)]) {
            excluded[static_cast<std::size_t>(i)] = 1;
        }
        std::vector<double> scores(static_cast<std::size_t>(num_items));
        for (int i = 0; i < num_items; ++i) {
            scores[static_cast<std::size_t>(i)] = score(u, i);
        }
        for (std::size_t k : rel) {
            const int target = ds.entry(k).item;
            const double s = scores[static_cast<std::size_t>(target)];
            std::size_t rank = 1, count = 1;
            for (int i = 0; i < num_items; ++i) {
                if (i == target || excluded[static_cast<std::size_t>(i)]) {
                    continue;
                }
                ++count;
                if (scores[static_cast<std::size_t>(i)] >= s) {
                    ++rank;
                }
            }
            per_user[static_cast<std::size_t>(u)].emplace_back(rank, count);
        }
    });

    RecallRanks out;
    for (int u = 0; u < num_users; ++u) {
        const auto &rel = relevant[static_cast<std::size_t>(u)];
        for (std::size_t j = 0; j < rel.size(); ++j) {
            out.entries.push_back(rel[j]);
            out.ranks.push_back(per_user[static_cast<std::size_t>(u)][j].first);
            out.candidates.push_back(per_user[static_cast<std::size_t>(u)][j].second);
        }
    }
    return out;
}

MetricReport recall_at_n(const RecallRanks &ranks, int n) {
    if (n < 1) {
        throw InvalidInput("recall: N must be >= 1");
    }
    if (ranks.ranks.empty()) {
        throw InvalidInput("recall: no relevant test entries");
    }
    std::size_t hits = 0;
    for (std::size_t r : ranks.ranks) {
        if (r <= static_cast<std::size_t>(n)) {
            ++hits;
        }
    }
    return {"recall@" + std::to_string(n), static_cast<double>(hits) / static_cast<double>(ranks.ranks.size()),
            ranks.ranks.size(), {}};
}

std::vector<std::size_t> rating_histogram(const RatingDataset &ds) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(ds.z_star()), 0);
    for (const auto &r : ds.entries()) {
        ++counts[static_cast<std::size_t>(r.value - 1)];
    }
    return counts;
}

double binomial_upper_tail(std::size_t n, std::size_t k, double p) {
    if (k == 0) {
        return 1.0;
    }
    if (k > n) {
        return 0.0;
    }
    if (p <= 0.0) {
        return 0.0;
    }
    if (p >= 1.0) {
        return 1.0;
    }
    const double lp = std::log(p), lq = std::log1p(-p);
    const double dn = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t j = k; j <= n; ++j) {
        double dj = static_cast<double>(j);
        double log_term = std::lgamma(dn + 1) - std::lgamma(dj + 1) - std::lgamma(dn - dj + 1) + dj * lp + (dn - dj) * lq;
        sum += std::exp(log_term);
    }
    return std::min(1.0, sum);
}

void write_report_text(std::ostream &out, std::span<const MetricReport> reports) {
    std::size_t width = 6;
    for (const auto &r : reports) {
        width = std::max(width, r.metric.size());
    }
    std::ios saved(nullptr);
    saved.copyfmt(out);
    out << std::left << std::setw(static_cast<int>(width)) << "metric" << "  " << std::setw(10) << "value"
        << "  count\n";
    for (const auto &r : reports) {
        out << std::left << std::setw(static_cast<int>(width)) << r.metric << "  " << std::fixed
            << std::setprecision(6) << std::setw(10) << r.value << "  " << r.count;
        if (!r.config.empty()) {
            out << "  " << r.config;
        }
        out << '\n';
    }
    out.copyfmt(saved);
}

void write_report_records(std::ostream &out, std::span<const MetricReport> reports) {
    std::ios saved(nullptr);
    saved.copyfmt(out);
    for (const auto &r : reports) {
        out << "metric=" << r.metric << " value=" << std::setprecision(17) << r.value << " count=" << r.count
            << " config=\"" << r.config << "\"\n";
    }
    out.copyfmt(saved);
}

}  // namespace psdrec
