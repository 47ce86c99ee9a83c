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

#ifndef HQMM_QUANTUM_CORE_H
#define HQMM_QUANTUM_CORE_H

#include <vector>

#include "hqmm/numkernel.h"

namespace hqmm {

/// An operator e with 0 <= e <= I. Validated on construction.
class Effect {
   public:
    const ComplexMatrix &matrix() const { return matrix_; }
    size_t dim() const { return matrix_.rows(); }

   private:
    explicit Effect(ComplexMatrix m) : matrix_(std::move(m)) {}
    friend Effect validate_effect(const ComplexMatrix &e, double tol);
    ComplexMatrix matrix_;
};

Effect validate_effect(const ComplexMatrix &e, double tol = kDefaultTol);

/// Positive semidefinite, trace-one operator. Validated on construction.
class DensityOperator {
   public:
    const ComplexMatrix &matrix() const { return matrix_; }
    size_t dim() const { return matrix_.rows(); }

   private:
    explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    friend DensityOperator validate_density(const ComplexMatrix &rho, double tol);
    ComplexMatrix matrix_;
};

DensityOperator validate_density(const ComplexMatrix &rho, double tol = kDefaultTol);

/// Ordered Kraus operators {K_i}, each dim_out x dim_in.
///
/// The same list describes a CP map in both pictures: X -> sum K_i^dagger X K_i
/// (Heisenberg) and rho -> sum K_i rho K_i^dagger (Schroedinger).
class KrausMap {
   public:
    KrausMap(size_t dim_in, size_t dim_out, std::vector<ComplexMatrix> kraus);

    size_t dim_in() const { return dim_in_; }
    size_t dim_out() const { return dim_out_; }
    size_t rank() const { return kraus_.size(); }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }

    /// rho -> sum K rho K^dagger.
    ComplexMatrix apply_schrodinger(const ComplexMatrix &rho) const;
    /// X -> sum K^dagger X K.
    ComplexMatrix apply_heisenberg(const ComplexMatrix &x) const;
    /// ||sum K^dagger K - I||_inf (entrywise).
    double unitality_residual() const;

   private:
    size_t dim_in_;
    size_t dim_out_;
    std::vector<ComplexMatrix> kraus_;
};

/// A unital CP map E : B(A (x) B) -> B(A), stored by its Kraus operators A -> A (x) B.
///
/// Leg order of the output space is fixed: the "A" leg (current hidden system)
/// comes first, the "B" leg (next hidden system or output register) second.
class TransitionExpectation {
   public:
    /// Throws ValidationError when sum V^dagger V deviates from I by more than tol.
    TransitionExpectation(KrausMap map, size_t dim_a, size_t dim_b, double tol = kDefaultTol);

    const KrausMap &map() const { return map_; }
    size_t dim_a() const { return dim_a_; }
    size_t dim_b() const { return dim_b_; }

   private:
    KrausMap map_;
    size_t dim_a_;
    size_t dim_b_;
};

/// sum V^dagger X V for X acting on A (x) B.
ComplexMatrix apply_heisenberg(const TransitionExpectation &e, const ComplexMatrix &x);

/// sum V rho V^dagger, a density operator on A (x) B.
DensityOperator apply_schrodinger(const TransitionExpectation &e, const DensityOperator &rho);

/// |Tr(E_*(rho) X) - Tr(rho E(X))|.
double duality_residual(const TransitionExpectation &e, const DensityOperator &rho, const ComplexMatrix &x);

/// Choi operator (id (x) Phi)(|Omega><Omega|) with unnormalised |Omega> = sum_i |i>|i>,
/// where Phi is the Schroedinger action of the map. Input leg first; side dim_in*dim_out.
ComplexMatrix choi(const KrausMap &m);

/// True iff ||sum V^dagger V - I||_inf <= tol.
bool check_unital(const KrausMap &m, double tol = kDefaultTol);

/// Single-Kraus expectation X -> V^dagger X V from an isometry V : C^dA -> C^dA (x) C^dB.
TransitionExpectation isometry_expectation(
    const ComplexMatrix &v, size_t dim_a, size_t dim_b, double tol = kDefaultTol);

}  // namespace hqmm

#endif
