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

#ifndef PSDREC_LINALG_HPP
#define PSDREC_LINALG_HPP

// Dense Hermitian kernel: eigendecomposition, trace pairing, and Euclidean
// projections onto the probability simplex, the set of density matrices
// (unit-trace psd) and the set of POVMs (psd effects summing to identity).
//
// Everything here is a pure function of its arguments.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace psdrec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Scalar field for model matrices. Real mode keeps the complex storage but
/// every entry has zero imaginary part.
enum class Field { Real, Complex };

const char *field_name(Field f);
Field parse_field(const std::string &name);

inline constexpr double kHermitianTol = 1e-10;

/// Square complex matrix equal to its conjugate transpose.
///
/// Every constructor and arithmetic operator re-applies (A + A^dagger)/2 so
/// rounding never accumulates an anti-Hermitian part.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(Index dim);
    /// Throws InvalidInput when `m` is not square or not Hermitian within
    /// kHermitianTol (relative to its largest entry, floor 1).
    explicit HermitianMatrix(CMatrix m);

    static HermitianMatrix identity(Index dim);
    static HermitianMatrix diagonal(const RVector &diag);
    /// Outer product v v^dagger.
    static HermitianMatrix outer(const CVector &v);
    /// (m + m^dagger)/2 without the Hermiticity check.
    static HermitianMatrix symmetrized(const CMatrix &m);

    Index dim() const noexcept {
        return m_.rows();
    }
    const CMatrix &mat() const noexcept {
        return m_;
    }
    Complex operator()(Index r, Index c) const {
        return m_(r, c);
    }
    double trace() const {
        return m_.diagonal().real().sum();
    }
    bool is_real(double tol = 0.0) const;

    HermitianMatrix &operator+=(const HermitianMatrix &o);
    HermitianMatrix &operator-=(const HermitianMatrix &o);
    HermitianMatrix &operator*=(double s);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) {
        return a += b;
    }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix &b) {
        return a -= b;
    }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) {
        return a *= s;
    }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) {
        return a *= s;
    }

private:
    void symmetrize();
    CMatrix m_;
};

/// Nonnegative vector summing to one.
class ProbabilityVector {
public:
    ProbabilityVector() = default;
    /// Throws InvalidInput when an entry is below -1e-10 or the sum is off by
    /// more than 1e-10.
    explicit ProbabilityVector(RVector p);
    static ProbabilityVector uniform(Index dim);

    Index dim() const noexcept {
        return p_.size();
    }
    double operator[](Index j) const {
        return p_[j];
    }
    const RVector &vec() const noexcept {
        return p_;
    }

private:
    RVector p_;
};

struct EigenDecomposition {
    RVector values;   // descending
    CMatrix vectors;  // column k pairs with values[k]
};

EigenDecomposition eigh(const HermitianMatrix &a);
/// Convenience overload; throws InvalidInput when `a` is not Hermitian.
EigenDecomposition eigh(const CMatrix &a);

/// Recompose sum_k values[k] v_k v_k^dagger.
HermitianMatrix recompose(const RVector &values, const CMatrix &vectors);

double min_eigenvalue(const HermitianMatrix &a);
double max_eigenvalue(const HermitianMatrix &a);
/// Number of eigenvalues above rel_tol * max(|lambda|).
int numerical_rank(const HermitianMatrix &a, double rel_tol);

/// tr(A B) for Hermitian A, B. Throws InvalidInput on dimension mismatch.
double trace_inner(const HermitianMatrix &a, const HermitianMatrix &b);
double frobenius_norm(const HermitianMatrix &a);
double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b);

/// Euclidean projection onto the unit simplex (sort-and-threshold).
ProbabilityVector project_to_simplex(std::span<const double> v);
ProbabilityVector project_to_simplex(const RVector &v);

/// Frobenius-nearest density matrix: eigenvalues projected onto the simplex.
HermitianMatrix project_to_spectrahedron(const HermitianMatrix &a);

/// Frobenius-nearest E with 0 <= E <= I. For a two-outcome tuple
/// (Y, I - Y) this is exactly the first component of the POVM projection.
HermitianMatrix project_to_unit_interval(const HermitianMatrix &a);

struct PovmProjectionOptions {
    int max_rounds = 5000;
    double tolerance = 1e-8;
};

/// Euclidean projection of a tuple onto the POVM set via Dykstra's
/// alternating projections between the product of psd cones and the affine
/// set {sum E_z = I}. A tuple that is already a POVM within tolerance is
/// returned unchanged. Throws ConvergenceFailure when the round cap is hit
/// before the feasibility residual drops below tolerance.
std::vector<HermitianMatrix> project_to_povm(std::span<const HermitianMatrix> effects,
                                             const PovmProjectionOptions &opts = {});

/// max(||sum E_z - I||_F, -min eigenvalue over all effects).
double povm_residual(std::span<const HermitianMatrix> effects);
/// max(|tr(rho) - 1|, -min eigenvalue(rho)).
double density_residual(const HermitianMatrix &rho);

/// Per-coordinate simplex projection of Z nonnegative vectors so that they
/// sum to the all-ones vector.
std::vector<RVector> project_to_nnm_effects(std::span<const RVector> effects);

// Orthonormal real coordinates of Hermitian matrices: <x(A), x(B)> = tr(AB).
// Complex field: D^2 coordinates. Real field: D(D+1)/2 coordinates.
Index hermitian_dof(Index dim, Field field);
RVector to_coords(const HermitianMatrix &a, Field field);
HermitianMatrix from_coords(const RVector &x, Index dim, Field field);

}  // namespace psdrec

#endif  // PSDREC_LINALG_HPP
