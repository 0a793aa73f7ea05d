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

#ifndef PSDREC_MODELS_HPP
#define PSDREC_MODELS_HPP

// User/item models and what can be computed from them alone.
//
// Outcomes are indexed from 0. For the two-outcome like/dislike reading of
// star ratings, outcome kLike (0) is "like" and outcome 1 is "dislike".

#include <cstdint>
#include <vector>

#include "psdrec/data.hpp"
#include "psdrec/linalg.hpp"

namespace psdrec {

inline constexpr int kLike = 0;
inline constexpr double kModelTol = 1e-8;

/// Normalized nonnegative model: users on the simplex, each item a tuple of
/// Z nonnegative vectors summing to the all-ones vector.
class NnmModel {
public:
    NnmModel() = default;
    /// Validates every user and item; throws InvalidInput.
    NnmModel(int dim, int outcomes, std::vector<ProbabilityVector> users, std::vector<std::vector<RVector>> items);

    int dim() const noexcept {
        return dim_;
    }
    int outcomes() const noexcept {
        return outcomes_;
    }
    int num_users() const noexcept {
        return static_cast<int>(users_.size());
    }
    int num_items() const noexcept {
        return static_cast<int>(items_.size());
    }
    const ProbabilityVector &user(int u) const {
        return users_.at(static_cast<std::size_t>(u));
    }
    const std::vector<RVector> &item(int i) const {
        return items_.at(static_cast<std::size_t>(i));
    }
    const RVector &effect(int i, int z) const {
        return item(i).at(static_cast<std::size_t>(z));
    }

    void set_user(int u, ProbabilityVector p);
    void set_item(int i, std::vector<RVector> effects);

    /// Largest violation of the simplex / effect-tuple constraints.
    double max_residual() const;

private:
    void check_item(const std::vector<RVector> &effects) const;

    int dim_ = 0;
    int outcomes_ = 0;
    std::vector<ProbabilityVector> users_;
    std::vector<std::vector<RVector>> items_;
};

/// Quantum model: users are density matrices, items are POVMs.
class QuantumModel {
public:
    QuantumModel() = default;
    /// Validates every user (psd, unit trace) and item (POVM) to kModelTol.
    QuantumModel(int dim, int outcomes, Field field, std::vector<HermitianMatrix> users,
                 std::vector<std::vector<HermitianMatrix>> items);

    int dim() const noexcept {
        return dim_;
    }
    int outcomes() const noexcept {
        return outcomes_;
    }
    Field field() const noexcept {
        return field_;
    }
    int num_users() const noexcept {
        return static_cast<int>(users_.size());
    }
    int num_items() const noexcept {
        return static_cast<int>(items_.size());
    }
    const HermitianMatrix &user(int u) const {
        return users_.at(static_cast<std::size_t>(u));
    }
    const std::vector<HermitianMatrix> &item(int i) const {
        return items_.at(static_cast<std::size_t>(i));
    }
    const HermitianMatrix &effect(int i, int z) const {
        return item(i).at(static_cast<std::size_t>(z));
    }

    void set_user(int u, HermitianMatrix rho);
    void set_item(int i, std::vector<HermitianMatrix> effects);

    /// Largest density / POVM residual over the whole model.
    double max_residual() const;

private:
    void check_user(const HermitianMatrix &rho) const;
    void check_item(const std::vector<HermitianMatrix> &effects) const;

    int dim_ = 0;
    int outcomes_ = 0;
    Field field_ = Field::Complex;
    std::vector<HermitianMatrix> users_;
    std::vector<std::vector<HermitianMatrix>> items_;
};

/// P_u[E_i = z] = E_iz . p_u, clamped to [0, 1].
double nnm_predict(const NnmModel &m, int u, int i, int z);
/// P_u[E_i = z] = tr(rho_u E_iz), clamped to [0, 1].
double quantum_predict(const QuantumModel &m, int u, int i, int z);

/// Star prediction from a like probability: clamp(z_star * p_like, 1, z_star).
double predicted_star(double p_like, int z_star);
double predicted_star(const QuantumModel &m, int u, int i, int z_star);
double predicted_star(const NnmModel &m, int u, int i, int z_star);

/// Diagonal embedding: p -> diag(p), E_z -> diag(E_z).
QuantumModel embed_nnm(const NnmModel &m);

/// |U|-dimensional model that reproduces every observed rating exactly:
/// rho_u = e_u e_u^T, E_iz collects the users who rated i with z + 1, and the
/// users who did not rate i are absorbed into outcome 0. Outcomes:
/// ds.z_star(). Throws InvalidInput when the dense result would be huge.
QuantumModel overfit_model(const RatingDataset &ds);

/// Finds one unitary that diagonalizes every model matrix and returns the
/// NNM carried by the diagonals. Throws NotSimultaneouslyDiagonalizable when
/// some pair has ||[A,B]||_F > tol and RecoveryFailed when the rotated
/// matrices keep off-diagonal mass above tol.
NnmModel recover_nnm(const QuantumModel &m, double tol, std::uint64_t seed = 0x5eed);

struct ItemRankProfile {
    std::vector<int> effect_ranks;      // numerical rank of each effect
    std::vector<int> max_rank_without;  // per pivot z': max rank over z != z'
    int profile = 0;                    // min over pivots of max_rank_without
};

struct RankProfile {
    double tau = 0.0;
    std::vector<ItemRankProfile> items;
};

/// Numerical rank counts eigenvalues above tau * lambda_max.
RankProfile rank_profile(const QuantumModel &m, double tau);

}  // namespace psdrec

#endif  // PSDREC_MODELS_HPP
