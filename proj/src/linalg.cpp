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

#include "psdrec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psdrec/error.hpp"

namespace psdrec {

const char *field_name(Field f) {
    return f == Field::Real ? "real" : "complex";
}

Field parse_field(const std::string &name) {
    if (name == "real") {
        return Field::Real;
    }
    if (name == "complex") {
        return Field::Complex;
    }
    throw InvalidInput("unknown field '" + name + "' (expected real|complex)");
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(Index dim) : m_(CMatrix::Zero(dim, dim)) {
}

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw InvalidInput("Hermitian matrix must be square");
    }
    if (!m_.allFinite()) {
        throw InvalidInput("Hermitian matrix has non-finite entries");
    }
    double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if (m_.size() > 0 && (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
        throw InvalidInput("matrix is not Hermitian");
    }
    symmetrize();
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
    HermitianMatrix h;
    h.m_ = CMatrix::Identity(dim, dim);
    return h;
}

HermitianMatrix HermitianMatrix::diagonal(const RVector &diag) {
    HermitianMatrix h;
    h.m_ = diag.cast<Complex>().asDiagonal();
    return h;
}

HermitianMatrix HermitianMatrix::outer(const CVector &v) {
    return symmetrized(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix &m) {
    HermitianMatrix h;
    h.m_ = m;
    h.symmetrize();
    return h;
}

void HermitianMatrix::symmetrize() {
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

bool HermitianMatrix::is_real(double tol) const {
    return m_.size() == 0 || m_.imag().cwiseAbs().maxCoeff() <= tol;
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &o) {
    m_ += o.m_;
    symmetrize();
    return *this;
}

HermitianMatrix &HermitianMatrix::operator-=(const HermitianMatrix &o) {
    m_ -= o.m_;
    symmetrize();
    return *this;
}

HermitianMatrix &HermitianMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// ProbabilityVector

ProbabilityVector::ProbabilityVector(RVector p) : p_(std::move(p)) {
    if (p_.size() == 0) {
        throw InvalidInput("probability vector must be nonempty");
    }
    if (!p_.allFinite() || p_.minCoeff() < -1e-10 || std::abs(p_.sum() - 1.0) > 1e-10) {
        throw InvalidInput("vector is not a probability distribution");
    }
}

ProbabilityVector ProbabilityVector::uniform(Index dim) {
    return ProbabilityVector(RVector::Constant(dim, 1.0 / static_cast<double>(dim)));
}

// ---------------------------------------------------------------------------
// Spectral helpers

EigenDecomposition eigh(const HermitianMatrix &a) {
    EigenDecomposition out;
    const Index d = a.dim();
    if (d == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat());
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("Hermitian eigensolver failed");
    }
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

EigenDecomposition eigh(const CMatrix &a) {
    return eigh(HermitianMatrix(a));
}

HermitianMatrix recompose(const RVector &values, const CMatrix &vectors) {
    return HermitianMatrix::symmetrized(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
}

double min_eigenvalue(const HermitianMatrix &a) {
    return eigh(a).values.minCoeff();
}

double max_eigenvalue(const HermitianMatrix &a) {
    return eigh(a).values.maxCoeff();
}

int numerical_rank(const HermitianMatrix &a, double rel_tol) {
    RVector ev = eigh(a).values;
    if (ev.size() == 0) {
        return 0;
    }
    double top = ev.cwiseAbs().maxCoeff();
    if (top == 0.0) {
        return 0;
    }
    return static_cast<int>((ev.array() > rel_tol * top).count());
}

double trace_inner(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidInput("trace_inner: dimension mismatch");
    }
    // tr(AB) = sum_jk conj(A_jk) B_jk for Hermitian A.
    return (a.mat().conjugate().array() * b.mat().array()).sum().real();
}

double frobenius_norm(const HermitianMatrix &a) {
    return a.mat().norm();
}

double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidInput("frobenius_distance: dimension mismatch");
    }
    return (a.mat() - b.mat()).norm();
}

// ---------------------------------------------------------------------------
// Projections

ProbabilityVector project_to_simplex(std::span<const double> v) {
    if (v.empty()) {
        throw InvalidInput("project_to_simplex: empty vector");
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw InvalidInput("project_to_simplex: non-finite entry");
        }
    }
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) {
            theta = candidate;
        }
    }
    RVector p(static_cast<Index>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) {
        p[static_cast<Index>(j)] = std::max(v[j] - theta, 0.0);
    }
    // Remove the last-ulp drift so the sum is 1 to rounding.
    double s = p.sum();
    if (s > 0.0) {
        p /= s;
    }
    return ProbabilityVector(std::move(p));
}

ProbabilityVector project_to_simplex(const RVector &v) {
    return project_to_simplex(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

HermitianMatrix project_to_spectrahedron(const HermitianMatrix &a) {
    if (a.dim() == 0) {
        throw InvalidInput("project_to_spectrahedron: empty matrix");
    }
    EigenDecomposition ed = eigh(a);
    ProbabilityVector p = project_to_simplex(ed.values);
    return recompose(p.vec(), ed.vectors);
}

HermitianMatrix project_to_unit_interval(const HermitianMatrix &a) {
    EigenDecomposition ed = eigh(a);
    RVector clipped = ed.values.cwiseMax(0.0).cwiseMin(1.0);
    return recompose(clipped, ed.vectors);
}

namespace {

HermitianMatrix project_to_psd(const HermitianMatrix &a) {
    EigenDecomposition ed = eigh(a);
    if (ed.values.minCoeff() >= 0.0) {
        return a;
    }
    return recompose(ed.values.cwiseMax(0.0), ed.vectors);
}

double identity_residual(std::span<const HermitianMatrix> effects) {
    const Index d = effects.front().dim();
    CMatrix sum = -CMatrix::Identity(d, d);
    for (const auto &e : effects) {
        sum += e.mat();
    }
    return sum.norm();
}

double psd_violation(std::span<const HermitianMatrix> effects) {
    double worst = 0.0;
    for (const auto &e : effects) {
        worst = std::max(worst, -min_eigenvalue(e));
    }
    return worst;
}

}  // namespace

double povm_residual(std::span<const HermitianMatrix> effects) {
    if (effects.empty()) {
        throw InvalidInput("povm_residual: empty tuple");
    }
    return std::max(identity_residual(effects), psd_violation(effects));
}

double density_residual(const HermitianMatrix &rho) {
    return std::max(std::abs(rho.trace() - 1.0), -min_eigenvalue(rho));
}

std::vector<HermitianMatrix> project_to_povm(std::span<const HermitianMatrix> effects,
                                             const PovmProjectionOptions &opts) {
    if (effects.size() < 2) {
        throw InvalidInput("project_to_povm: need at least two effects");
    }
    const Index d = effects.front().dim();
    for (const auto &e : effects) {
        if (e.dim() != d || d == 0) {
            throw InvalidInput("project_to_povm: effects must share a nonzero dimension");
        }
    }
    std::vector<HermitianMatrix> x(effects.begin(), effects.end());
    if (povm_residual(x) <= opts.tolerance) {
        return x;
    }

    const std::size_t z_count = x.size();
    const double inv_z = 1.0 / static_cast<double>(z_count);
    const HermitianMatrix eye = HermitianMatrix::identity(d);
    std::vector<HermitianMatrix> p(z_count, HermitianMatrix(d));
    std::vector<HermitianMatrix> q(z_count, HermitianMatrix(d));
    std::vector<HermitianMatrix> y(z_count);

    double residual = 0.0;
    for (int round = 0; round < opts.max_rounds; ++round) {
        // psd cones; the iterate can sit still while the correction term
        // keeps moving, so both count towards the change.
        double change = 0.0;
        for (std::size_t z = 0; z < z_count; ++z) {
            HermitianMatrix shifted = x[z] + p[z];
            y[z] = project_to_psd(shifted);
            HermitianMatrix next_p = shifted - y[z];
            change = std::max(change, frobenius_distance(next_p, p[z]));
            p[z] = std::move(next_p);
        }
        // affine set {sum = I}
        HermitianMatrix excess = -1.0 * eye;
        for (std::size_t z = 0; z < z_count; ++z) {
            excess += y[z] + q[z];
        }
        excess *= inv_z;
        for (std::size_t z = 0; z < z_count; ++z) {
            HermitianMatrix shifted = y[z] + q[z];
            HermitianMatrix next = shifted - excess;
            q[z] = shifted - next;
            change = std::max(change, frobenius_distance(next, x[z]));
            x[z] = std::move(next);
        }
        residual = psd_violation(x);
        if (residual <= opts.tolerance && change <= 1e-3 * opts.tolerance) {
            return x;
        }
    }
    if (residual <= opts.tolerance) {
        return x;
    }
    throw ConvergenceFailure("project_to_povm: Dykstra round cap reached", residual);
}

std::vector<RVector> project_to_nnm_effects(std::span<const RVector> effects) {
    if (effects.size() < 2) {
        throw InvalidInput("project_to_nnm_effects: need at least two effects");
    }
    const Index d = effects.front().size();
    for (const auto &e : effects) {
        if (e.size() != d) {
            throw InvalidInput("project_to_nnm_effects: effects must share a dimension");
        }
    }
    std::vector<RVector> out(effects.size(), RVector(d));
    std::vector<double> column(effects.size());
    for (Index j = 0; j < d; ++j) {
        for (std::size_t z = 0; z < effects.size(); ++z) {
            column[z] = effects[z][j];
        }
        ProbabilityVector p = project_to_simplex(column);
        for (std::size_t z = 0; z < effects.size(); ++z) {
            out[z][j] = p[static_cast<Index>(z)];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Real coordinates

Index hermitian_dof(Index dim, Field field) {
    return field == Field::Complex ? dim * dim : dim * (dim + 1) / 2;
}

RVector to_coords(const HermitianMatrix &a, Field field) {
    const Index d = a.dim();
    const double r2 = std::sqrt(2.0);
    RVector x(hermitian_dof(d, field));
    Index k = 0;
    for (Index j = 0; j < d; ++j) {
        x[k++] = a(j, j).real();
    }
    for (Index r = 0; r < d; ++r) {
        for (Index c = r + 1; c < d; ++c) {
            x[k++] = r2 * a(r, c).real();
            if (field == Field::Complex) {
                x[k++] = r2 * a(r, c).imag();
            }
        }
    }
    return x;
}

HermitianMatrix from_coords(const RVector &x, Index dim, Field field) {
    if (x.size() != hermitian_dof(dim, field)) {
        throw InvalidInput("from_coords: coordinate count does not match dimension");
    }
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    CMatrix m = CMatrix::Zero(dim, dim);
    Index k = 0;
    for (Index j = 0; j < dim; ++j) {
        m(j, j) = x[k++];
    }
    for (Index r = 0; r < dim; ++r) {
        for (Index c = r + 1; c < dim; ++c) {
            double re = inv_r2 * x[k++];
            double im = field == Field::Complex ? inv_r2 * x[k++] : 0.0;
            m(r, c) = Complex(re, im);
            m(c, r) = Complex(re, -im);
        }
    }
    return HermitianMatrix::symmetrized(m);
}

}  // namespace psdrec
