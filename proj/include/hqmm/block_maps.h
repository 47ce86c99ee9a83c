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

#ifndef HQMM_BLOCK_MAPS_H
#define HQMM_BLOCK_MAPS_H

#include <string>
#include <string_view>
#include <vector>

#include "hqmm/quantum_core.h"

namespace hqmm {

/// Order in which the emission and the hidden transition act within one step.
enum class Architecture {
    conventional,  // emission, then transition
    causal,        // transition, then emission
};

std::string_view architecture_name(Architecture arch);
/// Inverse of architecture_name. Throws ValidationError on unknown names.
Architecture parse_architecture(std::string_view name);

/// One time step: the hidden transition (N -> N (x) N) and the emission (N -> N (x) M).
class HQMMStep {
   public:
    HQMMStep(TransitionExpectation hidden, TransitionExpectation emission);

    const TransitionExpectation &hidden() const { return hidden_; }
    const TransitionExpectation &emission() const { return emission_; }
    size_t hidden_dim() const { return hidden_.dim_a(); }
    size_t output_dim() const { return emission_.dim_b(); }

   private:
    TransitionExpectation hidden_;
    TransitionExpectation emission_;
};

class HQMMModel {
   public:
    HQMMModel(DensityOperator initial_state, std::vector<HQMMStep> steps, Architecture architecture);

    /// The same step repeated `count` times.
    static HQMMModel homogeneous(DensityOperator initial_state, const HQMMStep &step, size_t count, Architecture architecture);

    const DensityOperator &initial_state() const { return initial_state_; }
    const std::vector<HQMMStep> &steps() const { return steps_; }
    Architecture architecture() const { return architecture_; }
    size_t hidden_dim() const { return initial_state_.dim(); }
    size_t output_dim() const { return steps_.front().output_dim(); }

   private:
    DensityOperator initial_state_;
    std::vector<HQMMStep> steps_;
    Architecture architecture_;
};

/// The local effect a_m (x) b_m of one step.
struct EffectPair {
    Effect hidden;
    Effect output;
};

using EffectSequence = std::vector<EffectPair>;

/// Identity effects for a model with hidden dimension N and output dimension M.
EffectPair identity_effects(size_t hidden_dim, size_t output_dim);

/// A linear map B(C^dim_in) -> B(C^dim_out) as a matrix on row-major vectorised operators:
/// vec(X)[i*d + j] = X(i, j).
class Superoperator {
   public:
    Superoperator(size_t dim_in, size_t dim_out, ComplexMatrix matrix);

    size_t dim_in() const { return dim_in_; }
    size_t dim_out() const { return dim_out_; }
    const ComplexMatrix &matrix() const { return matrix_; }

    ComplexMatrix apply(const ComplexMatrix &x) const;

   private:
    size_t dim_in_;
    size_t dim_out_;
    ComplexMatrix matrix_;
};

/// F_{a,b}(X) = E_H(E_HO(a (x) b) (x) X).
ComplexMatrix conventional_block(const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x);

/// G_{a,b}(X) = E_HO(E_H(a (x) X) (x) b).
ComplexMatrix causal_block(const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x);

ComplexMatrix apply_block(
    Architecture arch, const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x);

/// Block maps on arbitrary observables a (side N) and b (side M), not only effects.
ComplexMatrix conventional_block(
    const HQMMStep &step, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &x);
ComplexMatrix causal_block(const HQMMStep &step, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &x);

/// X -> F_{a,b}(X) or X -> G_{a,b}(X) as a superoperator, built by probing matrix units.
Superoperator block_superoperator(const HQMMStep &step, const Effect &a, const Effect &b, Architecture arch);

/// Adjoint with respect to the bilinear pairing <rho, X> = Tr(rho X):
/// Tr(dual(rho) X) = Tr(rho S(X)) for all rho, X.
Superoperator canonical_dual(const Superoperator &s);

/// Choi operator sum_ij |i><j| (x) S(|i><j|) of an arbitrary superoperator; input leg first.
ComplexMatrix choi(const Superoperator &s);

/// sum_alpha Tr_{H_n}[K_alpha rho K_alpha^dagger (E_HO(a (x) b) (x) I)], an operator on
/// the next hidden space (side N). Subnormalised in general.
ComplexMatrix dual_formula_conventional(const HQMMStep &step, const Effect &a, const Effect &b, const DensityOperator &rho);

/// sum_beta Tr_{H_n}[K_beta rho K_beta^dagger (E_H(a (x) I) (x) b)], evaluated as printed.
/// The traced-out leg is the current hidden space, so the result lives on the output
/// register (side M), not on the next hidden space.
ComplexMatrix dual_formula_causal(const HQMMStep &step, const Effect &a, const Effect &b, const DensityOperator &rho);

/// phi_{H,0}(B^0_{a0,b0} o ... o B^n_{an,bn}(I)), with B = F or G per the model's architecture.
/// Steps past the end of `effects` are implicitly given identity effects.
double cylinder_expectation(const HQMMModel &model, const EffectSequence &effects, double tol = kDefaultTol);

/// Same as cylinder_expectation, but with the architecture given explicitly.
double cylinder_expectation(
    const DensityOperator &initial,
    const std::vector<HQMMStep> &steps,
    Architecture arch,
    const EffectSequence &effects,
    double tol = kDefaultTol);

struct ArchitectureComparison {
    double conventional;
    double causal;
    double difference;
};

ArchitectureComparison compare_architectures(
    const DensityOperator &initial,
    const std::vector<HQMMStep> &steps,
    const EffectSequence &effects,
    double tol = kDefaultTol);

}  // namespace hqmm

#endif
