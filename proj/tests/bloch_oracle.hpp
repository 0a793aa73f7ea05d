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

#ifndef PSDREC_TESTS_BLOCH_ORACLE_HPP
#define PSDREC_TESTS_BLOCH_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "psdrec/linalg.hpp"

namespace psdrec::testing {

using Vec3 = std::array<double, 3>;

// Bloch-ball oracle for D = 2: rho = (I + r . sigma) / 2 with |r| <= 1, and
// tr(rho A) = a0 + a . r.

struct Affine {
    double c = 0.0;
    Vec3 v{};
};

inline Affine bloch(const HermitianMatrix &a) {
    const CMatrix &m = a.mat();
    return {0.5 * (m(0, 0).real() + m(1, 1).real()),
            {m(0, 1).real(), -m(0, 1).imag(), 0.5 * (m(0, 0).real() - m(1, 1).real())}};
}

inline double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// max c . r over {|r| <= 1, e . r >= b}; the set is assumed nonempty.
inline double max_on_cap(const Vec3 &c, const Vec3 &e, double b) {
    const double cn = std::sqrt(dot(c, c));
    const double en = std::sqrt(dot(e, e));
    if (cn == 0.0) {
        return 0.0;
    }
    if (en == 0.0 || dot(e, c) / cn >= b) {
        return cn;
    }
    const double ce = dot(c, e) / en;
    const double perp = std::sqrt(std::max(0.0, cn * cn - ce * ce));
    const double h = b / en;
    return h * ce + perp * std::sqrt(std::max(0.0, 1.0 - h * h));
}

// Largest |tr(rho (E_t' - E_t))| over states with tr(rho E_t) >= 1 - eps/2,
// or -1 when no state qualifies.
inline double oracle_best(const HermitianMatrix &et, const HermitianMatrix &et2, double eps) {
    Affine e = bloch(et);
    Affine d = bloch(et2 - et);
    const double reach = std::sqrt(dot(e.v, e.v));
    double b = 1.0 - eps / 2.0 - e.c;
    if (reach < b - 1e-12) {
        return -1.0;
    }
    b = std::min(b, reach);
    Vec3 neg{-d.v[0], -d.v[1], -d.v[2]};
    return std::max(d.c + max_on_cap(d.v, e.v, b), -d.c + max_on_cap(neg, e.v, b));
}

inline bool oracle_member(const HermitianMatrix &et, const HermitianMatrix &et2, double eps) {
    double best = oracle_best(et, et2, eps);
    return max_eigenvalue(et) >= 1.0 - eps / 2.0 && best <= eps / 2.0;
}

}  // namespace psdrec::testing

#endif  // PSDREC_TESTS_BLOCH_ORACLE_HPP
