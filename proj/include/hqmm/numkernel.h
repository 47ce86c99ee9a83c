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

#ifndef HQMM_NUMKERNEL_H
#define HQMM_NUMKERNEL_H

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqmm {

using Complex = std::complex<double>;

/// Default tolerance for Hermiticity, positivity and normalisation checks.
inline constexpr double kDefaultTol = 1e-10;

/// Shapes or indices that do not fit together.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value that violates a documented invariant (non-Hermitian, not an effect, not stochastic, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Internal numeric failure, e.g. eigensolver non-convergence.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major, immutable after construction.
///
/// Every entry is checked to be finite when the matrix is built. All operations
/// return fresh values; there is no in-place mutation through the public API.
class ComplexMatrix {
   public:
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);
    /// Row-wise literal, e.g. `{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(size_t rows, size_t cols);
    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex> &diag);
    static ComplexMatrix from_function(size_t rows, size_t cols, const std::function<Complex(size_t, size_t)> &f);
    /// Computational basis column vector |index> in C^dim.
    static ComplexMatrix basis_ket(size_t dim, size_t index);
    /// Column vector from amplitudes.
    static ComplexMatrix column(const std::vector<Complex> &amplitudes);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<Complex> &entries() const { return entries_; }
    Complex operator()(size_t row, size_t col) const { return entries_[row * cols_ + col]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    /// Largest entry modulus.
    double max_abs() const;
    double frobenius_norm() const;

    friend ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix &m);
    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

   private:
    size_t rows_;
    size_t cols_;
    std::vector<Complex> entries_;
};

/// Largest entry modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// |v><w| for column vectors v, w.
ComplexMatrix outer(const ComplexMatrix &ket, const ComplexMatrix &bra_source);

/// Tensor product. Entry ((i*b.rows+k),(j*b.cols+l)) = a[i,j]*b[k,l].
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Which factor of a bipartite space C^dimA (x) C^dimB to trace out.
enum class Subsystem { first, second };

/// Partial trace over the designated factor of a square matrix of side dimA*dimB.
ComplexMatrix partial_trace(const ComplexMatrix &m, size_t dim_a, size_t dim_b, Subsystem which);

/// Largest entry modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix &m);

struct HermitianEigenResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrised as (a + a^dagger)/2 before solving; it must be
/// Hermitian to within `tol` (entrywise). Sweeps run in fixed (p, q) order, so
/// results are reproducible bit-for-bit. Within a degenerate cluster the
/// eigenvector basis is arbitrary; compare spectral projectors, not columns.
HermitianEigenResult hermitian_eig(const ComplexMatrix &a, double tol = kDefaultTol);

/// Sum of |eigenvalue| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix &a, double tol = kDefaultTol);

/// -sum lambda log lambda in nats, over eigenvalues larger than tol.
double von_neumann_entropy(const ComplexMatrix &rho, double tol = kDefaultTol);

enum class LogBase { nat, bit };

/// Converts a quantity measured in nats to the requested base.
double convert_from_nats(double nats, LogBase base);

}  // namespace hqmm

#endif
