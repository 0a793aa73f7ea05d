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

#ifndef PSDREC_DATA_HPP
#define PSDREC_DATA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace psdrec {

struct Rating {
    int user = 0;
    int item = 0;
    int value = 0;  // in [1, z_star]
};

/// Bijection between original string ids and contiguous 0-based indices.
class IdMap {
public:
    /// Index of `id`, inserting it at the end when unseen.
    int intern(const std::string &id);
    std::optional<int> find(const std::string &id) const;
    const std::string &id(int index) const {
        return ids_.at(static_cast<std::size_t>(index));
    }
    int size() const noexcept {
        return static_cast<int>(ids_.size());
    }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
};

/// Partially observed rating matrix over users x items with stars in
/// [1, z_star]. Immutable after construction.
class RatingDataset {
public:
    /// Throws InvalidInput on out-of-range indices or ratings and ParseError
    /// on a duplicate (user, item) pair. Empty id maps are filled with the
    /// decimal index.
    RatingDataset(int num_users, int num_items, int z_star, std::vector<Rating> entries,
                  std::shared_ptr<const IdMap> users = nullptr, std::shared_ptr<const IdMap> items = nullptr);

    int num_users() const noexcept {
        return num_users_;
    }
    int num_items() const noexcept {
        return num_items_;
    }
    int z_star() const noexcept {
        return z_star_;
    }
    std::size_t size() const noexcept {
        return entries_.size();
    }
    std::span<const Rating> entries() const noexcept {
        return entries_;
    }
    const Rating &entry(std::size_t k) const {
        return entries_.at(k);
    }

    /// Entry indices of user u, ordered by item.
    std::span<const std::size_t> by_user(int u) const;
    /// Entry indices of item i, ordered by user.
    std::span<const std::size_t> by_item(int i) const;
    std::optional<int> rating(int u, int i) const;

    const IdMap &user_ids() const noexcept {
        return *user_ids_;
    }
    const IdMap &item_ids() const noexcept {
        return *item_ids_;
    }
    std::shared_ptr<const IdMap> shared_user_ids() const noexcept {
        return user_ids_;
    }
    std::shared_ptr<const IdMap> shared_item_ids() const noexcept {
        return item_ids_;
    }

    /// Same index space and id maps, restricted to the listed entries.
    RatingDataset subset(std::span<const std::size_t> entry_indices) const;

private:
    int num_users_;
    int num_items_;
    int z_star_;
    std::vector<Rating> entries_;
    std::vector<std::size_t> user_offsets_, user_index_;
    std::vector<std::size_t> item_offsets_, item_index_;
    std::shared_ptr<const IdMap> user_ids_;
    std::shared_ptr<const IdMap> item_ids_;
};

/// Disjoint train/test entry indices into one RatingDataset.
struct DataSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Tag name -> member item indices. Tags are sorted by name.
struct TagCatalog {
    std::vector<std::string> tags;
    std::vector<std::vector<int>> members;
    std::size_t skipped_items = 0;  // listed in the file but absent from the dataset
};

enum class DatasetFormat { Ml100k, Ml1m };
DatasetFormat parse_dataset_format(const std::string &name);

/// `user\titem\trating\ttimestamp` lines; z_star = 5.
RatingDataset load_movielens_100k(const std::string &path);
/// `user::item::rating::timestamp` lines; z_star = 5.
RatingDataset load_movielens_1m(const std::string &path);
RatingDataset load_dataset(const std::string &path, DatasetFormat format);

/// `movieid::title::Genre1|Genre2|...` lines. Movies unknown to `ds` are
/// skipped and counted; tags in `exclude` are dropped.
TagCatalog load_genres_1m(const std::string &path, const RatingDataset &ds,
                          const std::vector<std::string> &exclude = {});

/// Uniform random partition of all entries into k folds; split j tests on
/// fold j. Fold sizes differ by at most one.
std::vector<DataSplit> kfold_split(const RatingDataset &ds, int k, std::uint64_t seed);

/// floor(fraction * |entries|) uniformly random test entries, rest train.
DataSplit topn_holdout(const RatingDataset &ds, double fraction, std::uint64_t seed);

}  // namespace psdrec

#endif  // PSDREC_DATA_HPP
