// Copyright 2026 The HQMM Authors
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

#include "hqmm/quantum_core.h"

#include <cmath>
#include <sstream>

namespace hqmm {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw DimensionError(
            std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_hermitian(const ComplexMatrix &m, double tol, const char *what) {
    double defect = hermiticity_defect(m);
    if (defect > tol) {
        std::ostringstream msg;
        msg << what << " is not Hermitian: max |A - A^dagger| = " << defect;
        throw ValidationError(msg.str());
    }
}

}  // namespace

Effect validate_effect(const ComplexMatrix &e, double tol) {
    require_square(e, "effect");
    require_hermitian(e, tol, "effect");
    for (double lambda : hermitian_eig(e, tol).eigenvalues) {
        if (lambda < -tol || lambda > 1 + tol) {
            std::ostringstream msg;
            msg << "effect has eigenvalue " << lambda << " outside [0, 1]";
            throw ValidationError(msg.str());
        }
    }
    return Effect(e);
}

DensityOperator validate_density(const ComplexMatrix &rho, double tol) {
    require_square(rho, "density operator");
    require_hermitian(rho, tol, "density operator");
    for (double lambda : hermitian_eig(rho, tol).eigenvalues) {
        if (lambda < -tol) {
            std::ostringstream msg;
            msg << "density operator has negative eigenvalue " << lambda;
            throw ValidationError(msg.str());
        }
    }
    double tr = rho.trace().real();
    if (std::abs(tr - 1) > tol) {
        std::ostringstream msg;
        msg << "density operator has trace " << tr << ", expected 1";
        throw ValidationError(msg.str());
    }
    return DensityOperator(rho);
}

KrausMap::KrausMap(size_t dim_in, size_t dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw DimensionError("Kraus map needs at least one operator");
    }
    for (size_t i = 0; i < kraus_.size(); i++) {
        if (kraus_[i].rows() != dim_out_ || kraus_[i].cols() != dim_in_) {
            throw DimensionError(
                "Kraus operator " + std::to_string(i) + " has shape " + std::to_string(kraus_[i].rows()) + "x" +
                std::to_string(kraus_[i].cols()) + ", expected " + std::to_string(dim_out_) + "x" +
                std::to_string(dim_in_));
        }
    }
}

ComplexMatrix KrausMap::apply_schrodinger(const ComplexMatrix &rho) const {
    if (!rho.is_square() || rho.rows() != dim_in_) {
        throw DimensionError(
            "Schroedinger input must be square of side " + std::to_string(dim_in_) + ", got " +
            std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
    }
    ComplexMatrix out = ComplexMatrix::zeros(dim_out_, dim_out_);
    for (const auto &k : kraus_) {
        out = out + k * rho * k.adjoint();
    }
    return out;
}

ComplexMatrix KrausMap::apply_heisenberg(const ComplexMatrix &x) const {
    if (!x.is_square() || x.rows() != dim_out_) {
        throw DimensionError(
            "Heisenberg input must be square of side " + std::to_string(dim_out_) + ", got " +
            std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
    ComplexMatrix out = ComplexMatrix::zeros(dim_in_, dim_in_);
    for (const auto &k : kraus_) {
        out = out + k.adjoint() * x * k;
    }
    return out;
}

double KrausMap::unitality_residual() const {
    ComplexMatrix sum = ComplexMatrix::zeros(dim_in_, dim_in_);
    for (const auto &k : kraus_) {
        sum = sum + k.adjoint() * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(dim_in_));
}

TransitionExpectation::TransitionExpectation(KrausMap map, size_t dim_a, size_t dim_b, double tol)
    : map_(std::move(map)), dim_a_(dim_a), dim_b_(dim_b) {
    if (map_.dim_in() != dim_a_ || map_.dim_out() != dim_a_ * dim_b_) {
        throw DimensionError(
            "transition expectation with d_A=" + std::to_string(dim_a_) + ", d_B=" + std::to_string(dim_b_) +
            " needs Kraus operators of shape " + std::to_string(dim_a_ * dim_b_) + "x" + std::to_string(dim_a_));
    }
    double residual = map_.unitality_residual();
    if (residual > tol) {
        std::ostringstream msg;
        msg << "transition expectation is not unital: residual " << residual;
        throw ValidationError(msg.str());
    }
}

ComplexMatrix apply_heisenberg(const TransitionExpectation &e, const ComplexMatrix &x) {
    return e.map().apply_heisenberg(x);
}

DensityOperator apply_schrodinger(const TransitionExpectation &e, const DensityOperator &rho) {
    // Unitality of E is trace preservation of E_*, so the output is a state up to roundoff.
    return validate_density(e.map().apply_schrodinger(rho.matrix()));
}

double duality_residual(const TransitionExpectation &e, const DensityOperator &rho, const ComplexMatrix &x) {
    Complex lhs = (e.map().apply_schrodinger(rho.matrix()) * x).trace();
    Complex rhs = (rho.matrix() * e.map().apply_heisenberg(x)).trace();
    return std::abs(lhs - rhs);
}

ComplexMatrix choi(const KrausMap &m) {
    const size_t din = m.dim_in();
    const size_t dout = m.dim_out();
    const size_t side = din * dout;
    // (I (x) K)|Omega> has amplitude K[a, i] at basis index i*dout + a.
    ComplexMatrix out = ComplexMatrix::zeros(side, side);
    for (const auto &k : m.kraus()) {
        auto psi = ComplexMatrix::from_function(side, 1, [&](size_t idx, size_t) { return k(idx % dout, idx / dout); });
        out = out + outer(psi, psi);
    }
    return out;
}

bool check_unital(const KrausMap &m, double tol) {
    return m.unitality_residual() <= tol;
}

TransitionExpectation isometry_expectation(const ComplexMatrix &v, size_t dim_a, size_t dim_b, double tol) {
    if (v.rows() != dim_a * dim_b || v.cols() != dim_a) {
        throw DimensionError(
            "isometry must have shape " + std::to_string(dim_a * dim_b) + "x" + std::to_string(dim_a) + ", got " +
            std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
    }
    double residual = max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(dim_a));
    if (residual > tol) {
        std::ostringstream msg;
        msg << "not an isometry: ||V^dagger V - I||_inf = " << residual;
        throw ValidationError(msg.str());
    }
    return TransitionExpectation(KrausMap(dim_a, dim_a * dim_b, {v}), dim_a, dim_b, tol);
}

}  // namespace hqmm
