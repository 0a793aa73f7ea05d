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

#ifndef PSDREC_TESTS_TEST_UTIL_HPP
#define PSDREC_TESTS_TEST_UTIL_HPP

// Random generators shared by the unit, property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "psdrec/data.hpp"
#include "psdrec/linalg.hpp"
#include "psdrec/models.hpp"

namespace psdrec::testing {

using Rng = std::mt19937_64;

inline double normal(Rng &rng) {
    return std::normal_distribution<double>()(rng);
}

inline double uniform(Rng &rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline CMatrix random_complex(Index d, Rng &rng, double scale = 1.0, bool real = false) {
    CMatrix m(d, d);
    for (Index r = 0; r < d; ++r) {
        for (Index c = 0; c < d; ++c) {
            m(r, c) = Complex(scale * normal(rng), real ? 0.0 : scale * normal(rng));
        }
    }
    return m;
}

inline HermitianMatrix random_hermitian(Index d, Rng &rng, double scale = 1.0, bool real = false) {
    return HermitianMatrix::symmetrized(random_complex(d, rng, scale, real));
}

inline CMatrix random_unitary(Index d, Rng &rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_complex(d, rng));
    CMatrix q = qr.householderQ();
    // Fix column phases so the distribution is Haar.
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < d; ++k) {
        Complex p = r(k, k) / std::abs(r(k, k));
        q.col(k) *= p;
    }
    return q;
}

inline RVector random_simplex(Index d, Rng &rng) {
    RVector p(d);
    for (Index j = 0; j < d; ++j) {
        p[j] = -std::log(uniform(rng, 1e-12, 1.0));
    }
    return p / p.sum();
}

inline HermitianMatrix random_density(Index d, Rng &rng, bool real = false) {
    CMatrix g = random_complex(d, rng, 1.0, real);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return HermitianMatrix::symmetrized(rho);
}

inline HermitianMatrix conjugate(const HermitianMatrix &a, const CMatrix &u) {
    return HermitianMatrix::symmetrized(u * a.mat() * u.adjoint());
}

/// Random Z-outcome POVM: U diag(...) U^dagger slices of a random partition
/// of unity in a random basis.
inline std::vector<HermitianMatrix> random_povm(Index d, int z, Rng &rng, bool real = false) {
    // E_k = S^{-1/2} A_k S^{-1/2} with A_k = G_k G_k^dagger and S = sum A_k.
    std::vector<CMatrix> a;
    CMatrix s = CMatrix::Zero(d, d);
    for (int k = 0; k < z; ++k) {
        CMatrix g = random_complex(d, rng, 1.0, real);
        a.push_back(g * g.adjoint());
        s += a.back();
    }
    EigenDecomposition e = eigh(HermitianMatrix::symmetrized(s));
    RVector inv = e.values.cwiseSqrt().cwiseInverse();
    CMatrix w = e.vectors * inv.asDiagonal() * e.vectors.adjoint();
    std::vector<HermitianMatrix> out;
    CMatrix sum = CMatrix::Zero(d, d);
    for (int k = 0; k + 1 < z; ++k) {
        out.push_back(HermitianMatrix::symmetrized(w * a[static_cast<std::size_t>(k)] * w.adjoint()));
        sum += out.back().mat();
    }
    out.push_back(HermitianMatrix::symmetrized(CMatrix::Identity(d, d) - sum));
    return out;
}

inline NnmModel random_nnm(int d, int z, int users, int items, Rng &rng) {
    std::vector<ProbabilityVector> us;
    for (int u = 0; u < users; ++u) {
        us.emplace_back(random_simplex(d, rng));
    }
    std::vector<std::vector<RVector>> is;
    for (int i = 0; i < items; ++i) {
        std::vector<RVector> effects(static_cast<std::size_t>(z), RVector(d));
        for (int j = 0; j < d; ++j) {
            RVector col = random_simplex(z, rng);
            for (int k = 0; k < z; ++k) {
                effects[static_cast<std::size_t>(k)][j] = col[k];
            }
        }
        is.push_back(std::move(effects));
    }
    return NnmModel(d, z, std::move(us), std::move(is));
}

inline QuantumModel random_quantum(int d, int z, int users, int items, Rng &rng, bool real = false) {
    std::vector<HermitianMatrix> us;
    for (int u = 0; u < users; ++u) {
        us.push_back(random_density(d, rng, real));
    }
    std::vector<std::vector<HermitianMatrix>> is;
    for (int i = 0; i < items; ++i) {
        is.push_back(random_povm(d, z, rng, real));
    }
    return QuantumModel(d, z, real ? Field::Real : Field::Complex, std::move(us), std::move(is));
}

/// Random sparse dataset with about `density * U * I` ratings. Every user
/// and every item gets at least one rating.
inline RatingDataset random_dataset(int users, int items, int z_star, double density, Rng &rng) {
    std::set<std::pair<int, int>> cells;
    for (int u = 0; u < users; ++u) {
        cells.emplace(u, uniform_int(rng, 0, items - 1));
    }
    for (int i = 0; i < items; ++i) {
        cells.emplace(uniform_int(rng, 0, users - 1), i);
    }
    for (int u = 0; u < users; ++u) {
        for (int i = 0; i < items; ++i) {
            if (uniform(rng) < density) {
                cells.emplace(u, i);
            }
        }
    }
    std::vector<Rating> entries;
    for (auto [u, i] : cells) {
        entries.push_back({u, i, uniform_int(rng, 1, z_star)});
    }
    return RatingDataset(users, items, z_star, std::move(entries));
}

inline double max_abs_diff(const HermitianMatrix &a, const HermitianMatrix &b) {
    return (a.mat() - b.mat()).cwiseAbs().maxCoeff();
}

}  // namespace psdrec::testing

#endif  // PSDREC_TESTS_TEST_UTIL_HPP
