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

#include "psdrec/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string_view>

#include "psdrec/error.hpp"

namespace psdrec {

int IdMap::intern(const std::string &id) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<int>(ids_.size()));
    if (inserted) {
        ids_.push_back(id);
    }
    return it->second;
}

std::optional<int> IdMap::find(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

std::shared_ptr<const IdMap> decimal_ids(int n) {
    auto m = std::make_shared<IdMap>();
    for (int k = 0; k < n; ++k) {
        m->intern(std::to_string(k));
    }
    return m;
}

// CSR-style grouping of entry indices by `key`, each group ordered by `order`.
template <typename Key, typename Order>
void build_index(const std::vector<Rating> &entries, int groups, Key key, Order order,
                 std::vector<std::size_t> &offsets, std::vector<std::size_t> &index) {
    offsets.assign(static_cast<std::size_t>(groups) + 1, 0);
    for (const auto &r : entries) {
        ++offsets[static_cast<std::size_t>(key(r)) + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    index.assign(entries.size(), 0);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        index[cursor[static_cast<std::size_t>(key(entries[k]))]++] = k;
    }
    for (int g = 0; g < groups; ++g) {
        auto b = index.begin() + static_cast<std::ptrdiff_t>(offsets[static_cast<std::size_t>(g)]);
        auto e = index.begin() + static_cast<std::ptrdiff_t>(offsets[static_cast<std::size_t>(g) + 1]);
        std::sort(b, e, [&](std::size_t x, std::size_t y) { return order(entries[x]) < order(entries[y]); });
    }
}

}  // namespace

RatingDataset::RatingDataset(int num_users, int num_items, int z_star, std::vector<Rating> entries,
                             std::shared_ptr<const IdMap> users, std::shared_ptr<const IdMap> items)
    : num_users_(num_users),
      num_items_(num_items),
      z_star_(z_star),
      entries_(std::move(entries)),
      user_ids_(users ? std::move(users) : decimal_ids(num_users)),
      item_ids_(items ? std::move(items) : decimal_ids(num_items)) {
    if (num_users < 0 || num_items < 0 || z_star < 1) {
        throw InvalidInput("dataset sizes must be nonnegative and z_star >= 1");
    }
    if (user_ids_->size() != num_users || item_ids_->size() != num_items) {
        throw InvalidInput("id map sizes do not match dataset sizes");
    }
    for (const auto &r : entries_) {
        if (r.user < 0 || r.user >= num_users || r.item < 0 || r.item >= num_items) {
            throw InvalidInput("rating references an out-of-range user or item");
        }
        if (r.value < 1 || r.value > z_star) {
            throw InvalidInput("rating value outside [1, z_star]");
        }
    }
    build_index(entries_, num_users_, [](const Rating &r) { return r.user; },
                [](const Rating &r) { return r.item; }, user_offsets_, user_index_);
    build_index(entries_, num_items_, [](const Rating &r) { return r.item; },
                [](const Rating &r) { return r.user; }, item_offsets_, item_index_);
    for (int u = 0; u < num_users_; ++u) {
        auto row = by_user(u);
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (entries_[row[k]].item == entries_[row[k - 1]].item) {
                throw ParseError("duplicate rating for user '" + user_ids_->id(u) + "' and item '" +
                                 item_ids_->id(entries_[row[k]].item) + "'");
            }
        }
    }
}

std::span<const std::size_t> RatingDataset::by_user(int u) const {
    auto b = user_offsets_.at(static_cast<std::size_t>(u));
    auto e = user_offsets_.at(static_cast<std::size_t>(u) + 1);
    return std::span<const std::size_t>(user_index_).subspan(b, e - b);
}

std::span<const std::size_t> RatingDataset::by_item(int i) const {
    auto b = item_offsets_.at(static_cast<std::size_t>(i));
    auto e = item_offsets_.at(static_cast<std::size_t>(i) + 1);
    return std::span<const std::size_t>(item_index_).subspan(b, e - b);
}

std::optional<int> RatingDataset::rating(int u, int i) const {
    auto row = by_user(u);
    auto it = std::lower_bound(row.begin(), row.end(), i,
                               [&](std::size_t k, int item) { return entries_[k].item < item; });
    if (it != row.end() && entries_[*it].item == i) {
        return entries_[*it].value;
    }
    return std::nullopt;
}

RatingDataset RatingDataset::subset(std::span<const std::size_t> entry_indices) const {
    std::vector<Rating> picked;
    picked.reserve(entry_indices.size());
    for (std::size_t k : entry_indices) {
        picked.push_back(entries_.at(k));
    }
    return RatingDataset(num_users_, num_items_, z_star_, std::move(picked), user_ids_, item_ids_);
}

// ---------------------------------------------------------------------------
// MovieLens loaders

DatasetFormat parse_dataset_format(const std::string &name) {
    if (name == "ml100k") {
        return DatasetFormat::Ml100k;
    }
    if (name == "ml1m") {
        return DatasetFormat::Ml1m;
    }
    throw InvalidInput("unknown dataset format '" + name + "' (expected ml100k|ml1m)");
}

namespace {

std::vector<std::string_view> split(std::string_view line, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + sep.size();
    }
}

RatingDataset load_delimited(const std::string &path, std::string_view sep) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    constexpr int kStars = 5;
    auto users = std::make_shared<IdMap>();
    auto items = std::make_shared<IdMap>();
    std::vector<Rating> entries;
    std::set<std::pair<int, int>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split(line, sep);
        if (fields.size() != 4 || fields[0].empty() || fields[1].empty()) {
            throw ParseError("expected 4 fields separated by '" + std::string(sep) + "'", line_no);
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), value);
        if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
            throw ParseError("rating is not an integer", line_no);
        }
        if (value < 1 || value > kStars) {
            throw ParseError("rating " + std::to_string(value) + " outside [1, 5]", line_no);
        }
        Rating r{users->intern(std::string(fields[0])), items->intern(std::string(fields[1])), value};
        if (!seen.emplace(r.user, r.item).second) {
            throw ParseError("duplicate rating for user '" + std::string(fields[0]) + "' and item '" +
                                 std::string(fields[1]) + "'",
                             line_no);
        }
        entries.push_back(r);
    }
    if (entries.empty()) {
        throw ParseError("empty dataset '" + path + "'");
    }
    int nu = users->size();
    int ni = items->size();
    return RatingDataset(nu, ni, kStars, std::move(entries), std::move(users), std::move(items));
}

}  // namespace

RatingDataset load_movielens_100k(const std::string &path) {
    return load_delimited(path, "\t");
}

RatingDataset load_movielens_1m(const std::string &path) {
    return load_delimited(path, "::");
}

RatingDataset load_dataset(const std::string &path, DatasetFormat format) {
    return format == DatasetFormat::Ml100k ? load_movielens_100k(path) : load_movielens_1m(path);
}

TagCatalog load_genres_1m(const std::string &path, const RatingDataset &ds, const std::vector<std::string> &exclude) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::set<std::string> excluded(exclude.begin(), exclude.end());
    std::map<std::string, std::set<int>> by_tag;
    TagCatalog catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        // Titles never contain "::" in the MovieLens files, but splitting on
        // the first and last separator keeps odd titles intact.
        std::size_t first = line.find("::");
        std::size_t last = line.rfind("::");
        if (first == std::string::npos || first == last || first == 0) {
            throw ParseError("expected 'movieid::title::genres'", line_no);
        }
        std::string movie = line.substr(0, first);
        std::string genres = line.substr(last + 2);
        auto item = ds.item_ids().find(movie);
        if (!item) {
            ++catalog.skipped_items;
            continue;
        }
        for (auto g : split(genres, "|")) {
            if (g.empty() || excluded.count(std::string(g))) {
                continue;
            }
            by_tag[std::string(g)].insert(*item);
        }
    }
    for (auto &[tag, members] : by_tag) {
        catalog.tags.push_back(tag);
        catalog.members.emplace_back(members.begin(), members.end());
    }
    return catalog;
}

// ---------------------------------------------------------------------------
// Splits

std::vector<DataSplit> kfold_split(const RatingDataset &ds, int k, std::uint64_t seed) {
    if (k < 2) {
        throw InvalidInput("kfold_split: k must be at least 2");
    }
    if (ds.size() < static_cast<std::size_t>(k)) {
        throw InvalidInput("kfold_split: fewer entries than folds");
    }
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> fold_of(ds.size());
    const std::size_t n = ds.size();
    for (int f = 0; f < k; ++f) {
        std::size_t b = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(k);
        std::size_t e = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(k);
        for (std::size_t p = b; p < e; ++p) {
            fold_of[order[p]] = f;
        }
    }
    std::vector<DataSplit> splits(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < n; ++idx) {
        for (int f = 0; f < k; ++f) {
            (fold_of[idx] == f ? splits[static_cast<std::size_t>(f)].test : splits[static_cast<std::size_t>(f)].train)
                .push_back(idx);
        }
    }
    return splits;
}

DataSplit topn_holdout(const RatingDataset &ds, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw InvalidInput("topn_holdout: fraction must lie in (0, 1)");
    }
    auto test_size = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.size())));
    if (test_size == 0) {
        throw InvalidInput("topn_holdout: empty test set");
    }
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> is_test(ds.size(), 0);
    for (std::size_t p = 0; p < test_size; ++p) {
        is_test[order[p]] = 1;
    }
    DataSplit split;
    for (std::size_t idx = 0; idx < ds.size(); ++idx) {
        (is_test[idx] ? split.test : split.train).push_back(idx);
    }
    return split;
}

}  // namespace psdrec
