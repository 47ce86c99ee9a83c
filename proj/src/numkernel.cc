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

#include "hqmm/numkernel.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hqmm {

namespace {

std::string shape_str(size_t r, size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(
            std::string(op) + ": shape mismatch " + shape_str(a.rows(), a.cols()) + " vs " +
            shape_str(b.rows(), b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("matrix dimensions must be positive, got " + shape_str(rows_, cols_));
    }
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError(
            "matrix " + shape_str(rows_, cols_) + " needs " + std::to_string(rows_ * cols_) + " entries, got " +
            std::to_string(entries_.size()));
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        if (!std::isfinite(entries_[k].real()) || !std::isfinite(entries_[k].imag())) {
            throw ValidationError(
                "non-finite matrix entry at (" + std::to_string(k / cols_) + "," + std::to_string(k % cols_) + ")");
        }
    }
}

namespace {

size_t literal_width(std::initializer_list<std::initializer_list<Complex>> rows) {
    return rows.size() == 0 ? 0 : rows.begin()->size();
}

std::vector<Complex> flatten_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    size_t cols = literal_width(rows);
    std::vector<Complex> out;
    out.reserve(rows.size() * cols);
    for (const auto &row : rows) {
        if (row.size() != cols) {
            throw DimensionError("ragged matrix literal");
        }
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size(), literal_width(rows), flatten_rows(rows)) {
}

ComplexMatrix ComplexMatrix::zeros(size_t rows, size_t cols) {
    return ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols));
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    std::vector<Complex> e(n * n);
    for (size_t i = 0; i < n; i++) {
        e[i * n + i] = 1.0;
    }
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex> &diag) {
    size_t n = diag.size();
    std::vector<Complex> e(n * n);
    for (size_t i = 0; i < n; i++) {
        e[i * n + i] = diag[i];
    }
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::from_function(
    size_t rows, size_t cols, const std::function<Complex(size_t, size_t)> &f) {
    std::vector<Complex> e(rows * cols);
    for (size_t i = 0; i < rows; i++) {
        for (size_t j = 0; j < cols; j++) {
            e[i * cols + j] = f(i, j);
        }
    }
    return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix ComplexMatrix::basis_ket(size_t dim, size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) + " out of range for dimension " + std::to_string(dim));
    }
    std::vector<Complex> e(dim);
    e[index] = 1.0;
    return ComplexMatrix(dim, 1, std::move(e));
}

ComplexMatrix ComplexMatrix::column(const std::vector<Complex> &amplitudes) {
    return ComplexMatrix(amplitudes.size(), 1, amplitudes);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    return from_function(cols_, rows_, [&](size_t i, size_t j) { return std::conj((*this)(j, i)); });
}

ComplexMatrix ComplexMatrix::transpose() const {
    return from_function(cols_, rows_, [&](size_t i, size_t j) { return (*this)(j, i); });
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionError("trace of non-square matrix " + shape_str(rows_, cols_));
    }
    Complex t = 0;
    for (size_t i = 0; i < rows_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : entries_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries_);
    for (size_t k = 0; k < e.size(); k++) {
        e[k] += b.entries_[k];
    }
    return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "subtract");
    std::vector<Complex> e(a.entries_);
    for (size_t k = 0; k < e.size(); k++) {
        e[k] -= b.entries_[k];
    }
    return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("multiply: inner dimensions differ, " + shape_str(a.rows_, a.cols_) + " * " +
                             shape_str(b.rows_, b.cols_));
    }
    std::vector<Complex> e(a.rows_ * b.cols_);
    for (size_t i = 0; i < a.rows_; i++) {
        for (size_t k = 0; k < a.cols_; k++) {
            Complex aik = a.entries_[i * a.cols_ + k];
            if (aik == Complex{}) {
                continue;
            }
            for (size_t j = 0; j < b.cols_; j++) {
                e[i * b.cols_ + j] += aik * b.entries_[k * b.cols_ + j];
            }
        }
    }
    return ComplexMatrix(a.rows_, b.cols_, std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix &m) {
    std::vector<Complex> e(m.entries_);
    for (auto &z : e) {
        z *= s;
    }
    return ComplexMatrix(m.rows_, m.cols_, std::move(e));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

ComplexMatrix outer(const ComplexMatrix &ket, const ComplexMatrix &bra_source) {
    if (ket.cols() != 1 || bra_source.cols() != 1) {
        throw DimensionError("outer: arguments must be column vectors");
    }
    return ket * bra_source.adjoint();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t rows = a.rows() * b.rows();
    size_t cols = a.cols() * b.cols();
    std::vector<Complex> e(rows * cols);
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            Complex aij = a(i, j);
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    e[(i * b.rows() + k) * cols + (j * b.cols() + l)] = aij * b(k, l);
                }
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix partial_trace(const ComplexMatrix &m, size_t dim_a, size_t dim_b, Subsystem which) {
    size_t side = dim_a * dim_b;
    if (!m.is_square() || m.rows() != side) {
        throw DimensionError(
            "partial_trace: expected square side " + std::to_string(side) + " (" + std::to_string(dim_a) + "*" +
            std::to_string(dim_b) + "), got " + shape_str(m.rows(), m.cols()));
    }
    if (which == Subsystem::first) {
        return ComplexMatrix::from_function(dim_b, dim_b, [&](size_t k, size_t l) {
            Complex s = 0;
            for (size_t i = 0; i < dim_a; i++) {
                s += m(i * dim_b + k, i * dim_b + l);
            }
            return s;
        });
    }
    return ComplexMatrix::from_function(dim_a, dim_a, [&](size_t i, size_t j) {
        Complex s = 0;
        for (size_t k = 0; k < dim_b; k++) {
            s += m(i * dim_b + k, j * dim_b + k);
        }
        return s;
    });
}

double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("hermiticity check on non-square matrix " + shape_str(m.rows(), m.cols()));
    }
    double d = 0;
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = i; j < m.cols(); j++) {
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return d;
}

HermitianEigenResult hermitian_eig(const ComplexMatrix &a, double tol) {
    double defect = hermiticity_defect(a);
    if (defect > tol) {
        std::ostringstream msg;
        msg << "hermitian_eig: matrix is not Hermitian, max |A - A^dagger| = " << defect << " > tol " << tol;
        throw ValidationError(msg.str());
    }
    const size_t n = a.rows();
    std::vector<Complex> w(n * n);
    std::vector<Complex> v(n * n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            w[i * n + j] = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
        v[i * n + i] = 1.0;
    }
    auto at = [n](std::vector<Complex> &m, size_t i, size_t j) -> Complex & { return m[i * n + j]; };

    double total = 0;
    for (const auto &z : w) {
        total += std::norm(z);
    }
    // Jacobi converges quadratically; stop at roundoff level rather than at tol.
    const double threshold = 1e-28 * std::max(total, 1e-300);
    constexpr int kMaxSweeps = 100;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += 2 * std::norm(at(w, p, q));
            }
        }
        if (off <= threshold) {
            converged = true;
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                Complex apq = at(w, p, q);
                double mag = std::abs(apq);
                if (mag == 0 || mag * mag <= 1e-36 * total) {
                    continue;
                }
                double app = at(w, p, p).real();
                double aqq = at(w, q, q).real();
                // Phase e^{i phi} makes the (p, q) entry real, then a real rotation annihilates it.
                Complex phase = apq / mag;
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                Complex gpp = c;
                Complex gpq = s;
                Complex gqp = -s * std::conj(phase);
                Complex gqq = c * std::conj(phase);
                for (size_t k = 0; k < n; k++) {
                    Complex wkp = at(w, k, p);
                    Complex wkq = at(w, k, q);
                    at(w, k, p) = wkp * gpp + wkq * gqp;
                    at(w, k, q) = wkp * gpq + wkq * gqq;
                    Complex vkp = at(v, k, p);
                    Complex vkq = at(v, k, q);
                    at(v, k, p) = vkp * gpp + vkq * gqp;
                    at(v, k, q) = vkp * gpq + vkq * gqq;
                }
                for (size_t k = 0; k < n; k++) {
                    Complex wpk = at(w, p, k);
                    Complex wqk = at(w, q, k);
                    at(w, p, k) = std::conj(gpp) * wpk + std::conj(gqp) * wqk;
                    at(w, q, k) = std::conj(gpq) * wpk + std::conj(gqq) * wqk;
                }
                at(w, p, q) = 0;
                at(w, q, p) = 0;
                at(w, p, p) = at(w, p, p).real();
                at(w, q, q) = at(w, q, q).real();
            }
        }
    }
    if (!converged) {
        throw NumericError("hermitian_eig: Jacobi iteration did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return at(w, x, x).real() < at(w, y, y).real(); });

    HermitianEigenResult result{std::vector<double>(n), ComplexMatrix::zeros(n, n)};
    std::vector<Complex> vecs(n * n);
    for (size_t col = 0; col < n; col++) {
        result.eigenvalues[col] = at(w, order[col], order[col]).real();
        for (size_t row = 0; row < n; row++) {
            vecs[row * n + col] = at(v, row, order[col]);
        }
    }
    result.eigenvectors = ComplexMatrix(n, n, std::move(vecs));
    return result;
}

double trace_norm_hermitian(const ComplexMatrix &a, double tol) {
    double s = 0;
    for (double lambda : hermitian_eig(a, tol).eigenvalues) {
        s += std::abs(lambda);
    }
    return s;
}

double von_neumann_entropy(const ComplexMatrix &rho, double tol) {
    auto eig = hermitian_eig(rho, tol);
    double trace = 0;
    for (double lambda : eig.eigenvalues) {
        if (lambda < -tol) {
            std::ostringstream msg;
            msg << "von_neumann_entropy: negative eigenvalue " << lambda << " below -tol " << -tol;
            throw ValidationError(msg.str());
        }
        trace += lambda;
    }
    if (std::abs(trace - 1) > tol) {
        std::ostringstream msg;
        msg << "von_neumann_entropy: trace " << trace << " deviates from 1 by more than " << tol;
        throw ValidationError(msg.str());
    }
    double s = 0;
    for (double lambda : eig.eigenvalues) {
        if (lambda > tol) {
            s -= lambda * std::log(lambda);
        }
    }
    return std::max(s, 0.0);
}

double convert_from_nats(double nats, LogBase base) {
    return base == LogBase::nat ? nats : nats / std::log(2.0);
}

}  // namespace hqmm
