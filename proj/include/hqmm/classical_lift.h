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

#ifndef HQMM_CLASSICAL_LIFT_H
#define HQMM_CLASSICAL_LIFT_H

#include <cstdint>
#include <vector>

#include "hqmm/block_maps.h"

namespace hqmm {

/// Row-major real matrix given as rows.
using RealMatrix = std::vector<std::vector<double>>;

/// Unvalidated HMM data as read from a file.
struct RawHMM {
    std::vector<double> initial;
    std::vector<RealMatrix> transitions;  // N x N each
    std::vector<RealMatrix> emissions;    // N x M each
};

/// A classical, possibly time-inhomogeneous hidden Markov model (pi, Pi_n, Q^(n)).
class ClassicalHMM {
   public:
    size_t hidden_count() const { return initial_.size(); }
    size_t output_count() const { return emissions_.front().front().size(); }
    size_t step_count() const { return transitions_.size(); }
    const std::vector<double> &initial() const { return initial_; }
    const RealMatrix &transition(size_t n) const { return transitions_.at(n); }
    const RealMatrix &emission(size_t n) const { return emissions_.at(n); }

   private:
    ClassicalHMM() = default;
    friend ClassicalHMM validate_hmm(const RawHMM &raw, double tol);
    std::vector<double> initial_;
    std::vector<RealMatrix> transitions_;
    std::vector<RealMatrix> emissions_;
};

/// Checks nonnegativity, unit row sums and consistent shapes. Errors name the offending row.
ClassicalHMM validate_hmm(const RawHMM &raw, double tol = kDefaultTol);

/// The same (Pi, Q) pair repeated for `steps` steps.
ClassicalHMM homogeneous_hmm(
    const std::vector<double> &initial, const RealMatrix &transition, const RealMatrix &emission, size_t steps,
    double tol = kDefaultTol);

/// V|i> = sum_j sqrt(Pi_ij) |i, j>.
TransitionExpectation lift_transition(const RealMatrix &transition, double tol = kDefaultTol);

/// V|j> = sum_k sqrt(Q_j(k)) |j> (x) |e_k>.
TransitionExpectation lift_emission(const RealMatrix &emission, double tol = kDefaultTol);

HQMMStep lift_step(const ClassicalHMM &hmm, size_t n);

/// Lifted model with initial state diag(pi).
HQMMModel lift_model(const ClassicalHMM &hmm, Architecture arch);

/// sum_{k,k'} sqrt(Q_i(k) Q_j(k')) <e_k|b|e_k'>.
Complex emission_factor(const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &b);

/// sum_{l,m} sqrt(Pi_il Pi_jm) <l|a_next|m>.
Complex transition_factor(const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &a_next);

/// <i| F_{a,b}(a_next) |j> = <i|a|j> * emission_factor * transition_factor, for the lifted step n.
Complex explicit_block_element(
    const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &a, const ComplexMatrix &b,
    const ComplexMatrix &a_next);

struct EquivalenceReport {
    size_t trials;
    uint64_t seed;
    double max_fg_deviation;        // max ||F(X) - G(X)||_inf
    double max_explicit_deviation;  // max entrywise deviation of F and G from the explicit formula
    bool equivalent;                // both maxima below tol
};

/// Random Hermitian matrix: complex standard normal entries, then (X + X^dagger)/2.
ComplexMatrix random_hermitian(size_t dim, uint64_t seed);

inline constexpr uint64_t kDefaultSeed = 20260101;

/// Samples `trials` random Hermitian observable triples and compares the two block maps of the
/// lifted step n with each other and with explicit_block_element.
EquivalenceReport check_equivalence(
    const ClassicalHMM &hmm, size_t n, size_t trials, double tol = 1e-12, uint64_t seed = kDefaultSeed);

/// As check_equivalence, but with an arbitrary step in place of the lift of step n. The
/// explicit formula is still evaluated from hmm, so a step that is not the lift shows up
/// as a large explicit deviation.
EquivalenceReport check_step_equivalence(
    const HQMMStep &step, const ClassicalHMM &hmm, size_t n, size_t trials, double tol = 1e-12,
    uint64_t seed = kDefaultSeed);

/// Diagonal weights of one step: alpha on hidden states (length N), beta on outputs (length M).
struct DiagonalObservables {
    std::vector<double> alpha;
    std::vector<double> beta;
};

/// Real-arithmetic expectation of the diagonal cylinder observable:
/// sum_i pi_i v_0(i) with v_m(i) = alpha_m(i) (sum_k Q_i(k) beta_m(k)) (sum_j Pi_ij v_{m+1}(j)), v = 1 past the end.
double classical_forward(const ClassicalHMM &hmm, const std::vector<DiagonalObservables> &observables);

/// True iff the lifted cylinder expectation matches classical_forward within tol for both architectures.
bool classical_reduction_check(const ClassicalHMM &hmm, const std::vector<DiagonalObservables> &observables, double tol = 1e-12);

}  // namespace hqmm

#endif
