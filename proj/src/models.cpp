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

#include "psdrec/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "psdrec/error.hpp"

namespace psdrec {

// ---------------------------------------------------------------------------
// NnmModel

NnmModel::NnmModel(int dim, int outcomes, std::vector<ProbabilityVector> users,
                   std::vector<std::vector<RVector>> items)
    : dim_(dim), outcomes_(outcomes), users_(std::move(users)), items_(std::move(items)) {
    if (dim < 1 || outcomes < 1) {
        throw InvalidInput("NnmModel: dimension and outcome count must be positive");
    }
    for (const auto &p : users_) {
        if (p.dim() != dim_) {
            throw InvalidInput("NnmModel: user vector has wrong dimension");
        }
    }
    for (const auto &item : items_) {
        check_item(item);
    }
}

void NnmModel::check_item(const std::vector<RVector> &effects) const {
    if (static_cast<int>(effects.size()) != outcomes_) {
        throw InvalidInput("NnmModel: item has wrong number of effects");
    }
    RVector sum = RVector::Zero(dim_);
    for (const auto &e : effects) {
        if (e.size() != dim_ || !e.allFinite()) {
            throw InvalidInput("NnmModel: effect has wrong dimension or non-finite entries");
        }
        if (e.minCoeff() < -1e-10) {
            throw InvalidInput("NnmModel: effect has a negative entry");
        }
        sum += e;
    }
    if ((sum.array() - 1.0).abs().maxCoeff() > kModelTol) {
        throw InvalidInput("NnmModel: effects do not sum to the all-ones vector");
    }
}

void NnmModel::set_user(int u, ProbabilityVector p) {
    if (p.dim() != dim_) {
        throw InvalidInput("NnmModel: user vector has wrong dimension");
    }
    users_.at(static_cast<std::size_t>(u)) = std::move(p);
}

void NnmModel::set_item(int i, std::vector<RVector> effects) {
    check_item(effects);
    items_.at(static_cast<std::size_t>(i)) = std::move(effects);
}

double NnmModel::max_residual() const {
    double worst = 0.0;
    for (const auto &p : users_) {
        worst = std::max({worst, std::abs(p.vec().sum() - 1.0), -p.vec().minCoeff()});
    }
    for (const auto &item : items_) {
        RVector sum = RVector::Zero(dim_);
        for (const auto &e : item) {
            worst = std::max(worst, -e.minCoeff());
            sum += e;
        }
        worst = std::max(worst, (sum.array() - 1.0).abs().maxCoeff());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// QuantumModel

QuantumModel::QuantumModel(int dim, int outcomes, Field field, std::vector<HermitianMatrix> users,
                           std::vector<std::vector<HermitianMatrix>> items)
    : dim_(dim), outcomes_(outcomes), field_(field), users_(std::move(users)), items_(std::move(items)) {
    if (dim < 1 || outcomes < 1) {
        throw InvalidInput("QuantumModel: dimension and outcome count must be positive");
    }
    for (const auto &rho : users_) {
        check_user(rho);
    }
    for (const auto &item : items_) {
        check_item(item);
    }
}

void QuantumModel::check_user(const HermitianMatrix &rho) const {
    if (rho.dim() != dim_) {
        throw InvalidInput("QuantumModel: user matrix has wrong dimension");
    }
    if (density_residual(rho) > kModelTol) {
        throw InvalidInput("QuantumModel: user matrix is not a density matrix");
    }
}

void QuantumModel::check_item(const std::vector<HermitianMatrix> &effects) const {
    if (static_cast<int>(effects.size()) != outcomes_) {
        throw InvalidInput("QuantumModel: item has wrong number of effects");
    }
    for (const auto &e : effects) {
        if (e.dim() != dim_) {
            throw InvalidInput("QuantumModel: effect has wrong dimension");
        }
    }
    if (povm_residual(effects) > kModelTol) {
        throw InvalidInput("QuantumModel: item effects do not form a POVM");
    }
}

void QuantumModel::set_user(int u, HermitianMatrix rho) {
    check_user(rho);
    users_.at(static_cast<std::size_t>(u)) = std::move(rho);
}

void QuantumModel::set_item(int i, std::vector<HermitianMatrix> effects) {
    check_item(effects);
    items_.at(static_cast<std::size_t>(i)) = std::move(effects);
}

double QuantumModel::max_residual() const {
    double worst = 0.0;
    for (const auto &rho : users_) {
        worst = std::max(worst, density_residual(rho));
    }
    for (const auto &item : items_) {
        worst = std::max(worst, povm_residual(item));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Prediction

namespace {

template <typename Model>
void check_indices(const Model &m, int u, int i, int z) {
    if (u < 0 || u >= m.num_users() || i < 0 || i >= m.num_items() || z < 0 || z >= m.outcomes()) {
        throw InvalidInput("prediction index out of range");
    }
}

double clamp01(double p) {
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double nnm_predict(const NnmModel &m, int u, int i, int z) {
    check_indices(m, u, i, z);
    return clamp01(m.effect(i, z).dot(m.user(u).vec()));
}

double quantum_predict(const QuantumModel &m, int u, int i, int z) {
    check_indices(m, u, i, z);
    return clamp01(trace_inner(m.user(u), m.effect(i, z)));
}

double predicted_star(double p_like, int z_star) {
    return std::clamp(static_cast<double>(z_star) * p_like, 1.0, static_cast<double>(z_star));
}

double predicted_star(const QuantumModel &m, int u, int i, int z_star) {
    return predicted_star(quantum_predict(m, u, i, kLike), z_star);
}

double predicted_star(const NnmModel &m, int u, int i, int z_star) {
    return predicted_star(nnm_predict(m, u, i, kLike), z_star);
}

// ---------------------------------------------------------------------------
// Constructions

QuantumModel embed_nnm(const NnmModel &m) {
    std::vector<HermitianMatrix> users;
    users.reserve(static_cast<std::size_t>(m.num_users()));
    for (int u = 0; u < m.num_users(); ++u) {
        users.push_back(HermitianMatrix::diagonal(m.user(u).vec()));
    }
    std::vector<std::vector<HermitianMatrix>> items;
    items.reserve(static_cast<std::size_t>(m.num_items()));
    for (int i = 0; i < m.num_items(); ++i) {
        std::vector<HermitianMatrix> effects;
        for (const auto &e : m.item(i)) {
            effects.push_back(HermitianMatrix::diagonal(e));
        }
        items.push_back(std::move(effects));
    }
    return QuantumModel(m.dim(), m.outcomes(), Field::Real, std::move(users), std::move(items));
}

QuantumModel overfit_model(const RatingDataset &ds) {
    const int n_users = ds.num_users();
    const int z_count = std::max(ds.z_star(), 2);
    if (n_users == 0 || ds.size() == 0) {
        throw InvalidInput("overfit_model: empty dataset");
    }
    double dense_entries = static_cast<double>(n_users) * n_users *
                           (n_users + static_cast<double>(ds.num_items()) * z_count);
    if (dense_entries > 5e8) {
        throw InvalidInput("overfit_model: dataset too large for a dense " + std::to_string(n_users) +
                           "-dimensional model");
    }
    std::vector<HermitianMatrix> users;
    users.reserve(static_cast<std::size_t>(n_users));
    for (int u = 0; u < n_users; ++u) {
        RVector e = RVector::Zero(n_users);
        e[u] = 1.0;
        users.push_back(HermitianMatrix::diagonal(e));
    }
    std::vector<std::vector<HermitianMatrix>> items;
    items.reserve(static_cast<std::size_t>(ds.num_items()));
    for (int i = 0; i < ds.num_items(); ++i) {
        std::vector<RVector> diag(static_cast<std::size_t>(z_count), RVector::Zero(n_users));
        std::vector<char> rated(static_cast<std::size_t>(n_users), 0);
        for (std::size_t k : ds.by_item(i)) {
            const Rating &r = ds.entry(k);
            diag[static_cast<std::size_t>(r.value - 1)][r.user] = 1.0;
            rated[static_cast<std::size_t>(r.user)] = 1;
        }
        for (int u = 0; u < n_users; ++u) {
            if (!rated[static_cast<std::size_t>(u)]) {
                diag[0][u] = 1.0;
            }
        }
        std::vector<HermitianMatrix> effects;
        for (const auto &d : diag) {
            effects.push_back(HermitianMatrix::diagonal(d));
        }
        items.push_back(std::move(effects));
    }
    return QuantumModel(n_users, z_count, Field::Real, std::move(users), std::move(items));
}

// ---------------------------------------------------------------------------
// Recovery of a hidden NNM

namespace {

std::vector<const HermitianMatrix *> all_matrices(const QuantumModel &m) {
    std::vector<const HermitianMatrix *> out;
    for (int u = 0; u < m.num_users(); ++u) {
        out.push_back(&m.user(u));
    }
    for (int i = 0; i < m.num_items(); ++i) {
        for (const auto &e : m.item(i)) {
            out.push_back(&e);
        }
    }
    return out;
}

CMatrix random_combination(const std::vector<const HermitianMatrix *> &mats, Index dim, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> coef(0.5, 1.5);
    CMatrix c = CMatrix::Zero(dim, dim);
    for (const auto *a : mats) {
        c += coef(rng) * a->mat();
    }
    return c;
}

}  // namespace

NnmModel recover_nnm(const QuantumModel &m, double tol, std::uint64_t seed) {
    const Index d = m.dim();
    auto mats = all_matrices(m);

    for (std::size_t a = 0; a < mats.size(); ++a) {
        for (std::size_t b = a + 1; b < mats.size(); ++b) {
            const CMatrix &x = mats[a]->mat();
            const CMatrix &y = mats[b]->mat();
            double comm = (x * y - y * x).norm();
            if (comm > tol) {
                throw NotSimultaneouslyDiagonalizable("model matrices " + std::to_string(a) + " and " +
                                                      std::to_string(b) + " do not commute (||[A,B]||_F = " +
                                                      std::to_string(comm) + ")");
            }
        }
    }

    std::mt19937_64 rng(seed);
    EigenDecomposition first = eigh(HermitianMatrix::symmetrized(random_combination(mats, d, rng)));
    CMatrix basis = first.vectors;

    // Re-diagonalize clusters of (near) repeated eigenvalues with a second
    // random combination restricted to the cluster.
    const double scale = std::max(1.0, first.values.cwiseAbs().maxCoeff());
    const double gap = 1e-6 * scale;
    CMatrix second = random_combination(mats, d, rng);
    for (Index start = 0; start < d;) {
        Index end = start + 1;
        while (end < d && first.values[end - 1] - first.values[end] <= gap) {
            ++end;
        }
        if (end - start > 1) {
            CMatrix block = basis.middleCols(start, end - start);
            EigenDecomposition inner = eigh(HermitianMatrix::symmetrized(block.adjoint() * second * block));
            basis.middleCols(start, end - start) = block * inner.vectors;
        }
        start = end;
    }

    auto rotated_diagonal = [&](const HermitianMatrix &a) {
        CMatrix t = basis.adjoint() * a.mat() * basis;
        RVector diag = t.diagonal().real();
        t.diagonal().setZero();
        double off = t.norm();
        if (off > tol) {
            throw RecoveryFailed("off-diagonal residual " + std::to_string(off) + " exceeds tolerance");
        }
        return diag;
    };

    std::vector<ProbabilityVector> users;
    for (int u = 0; u < m.num_users(); ++u) {
        users.push_back(project_to_simplex(rotated_diagonal(m.user(u))));
    }
    std::vector<std::vector<RVector>> items;
    for (int i = 0; i < m.num_items(); ++i) {
        std::vector<RVector> diags;
        for (const auto &e : m.item(i)) {
            diags.push_back(rotated_diagonal(e));
        }
        items.push_back(m.outcomes() >= 2 ? project_to_nnm_effects(diags) : diags);
    }
    NnmModel out(static_cast<int>(d), m.outcomes(), std::move(users), std::move(items));

    for (int u = 0; u < m.num_users(); ++u) {
        for (int i = 0; i < m.num_items(); ++i) {
            for (int z = 0; z < m.outcomes(); ++z) {
                double err = std::abs(nnm_predict(out, u, i, z) - quantum_predict(m, u, i, z));
                if (err > tol) {
                    throw RecoveryFailed("recovered model misses a prediction by " + std::to_string(err));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank diagnostics

RankProfile rank_profile(const QuantumModel &m, double tau) {
    RankProfile out;
    out.tau = tau;
    out.items.reserve(static_cast<std::size_t>(m.num_items()));
    for (int i = 0; i < m.num_items(); ++i) {
        ItemRankProfile p;
        for (const auto &e : m.item(i)) {
            p.effect_ranks.push_back(numerical_rank(e, tau));
        }
        const std::size_t z_count = p.effect_ranks.size();
        for (std::size_t pivot = 0; pivot < z_count; ++pivot) {
            int worst = 0;
            for (std::size_t z = 0; z < z_count; ++z) {
                if (z != pivot) {
                    worst = std::max(worst, p.effect_ranks[z]);
                }
            }
            p.max_rank_without.push_back(worst);
        }
        p.profile = *std::min_element(p.max_rank_without.begin(), p.max_rank_without.end());
        out.items.push_back(std::move(p));
    }
    return out;
}

}  // namespace psdrec
