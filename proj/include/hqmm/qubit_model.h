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

#ifndef HQMM_QUBIT_MODEL_H
#define HQMM_QUBIT_MODEL_H

#include <string>
#include <string_view>
#include <vector>

#include "hqmm/block_maps.h"

namespace hqmm {

/// Which tensor slot of H_n (x) H_{n+1} receives the rotated state in the hidden isometry.
///
/// `first`:  V|psi> = U|psi> (x) |0>   (rotated state stays on the time-n leg)
/// `second`: V|psi> = |0> (x) U|psi>   (rotated state moves to the time-(n+1) leg)
enum class SlotConvention { first, second };

std::string_view convention_name(SlotConvention c);
SlotConvention parse_convention(std::string_view name);

struct QubitModelParams {
    double theta;
};

/// U = exp(-i theta/2 sigma_x) = cos(theta/2) I - i sin(theta/2) sigma_x.
ComplexMatrix build_unitary(double theta);

/// Hidden rotation isometry plus sharp computational-basis emission, N = M = 2.
HQMMStep build_model(const QubitModelParams &params, SlotConvention convention = SlotConvention::first);

/// Qubit model started in |0><0| with `steps` identical steps.
HQMMModel build_qubit_hqmm(
    const QubitModelParams &params, size_t steps, Architecture arch, SlotConvention convention = SlotConvention::first);

/// (I, |e0><e0|) at time 0 followed by identity effects up to `steps` pairs in total.
EffectSequence separation_effects(size_t steps);

struct KrausPair {
    ComplexMatrix k_f;  // |0><0| U
    ComplexMatrix k_g;  // U |0><0|
};

KrausPair stated_kraus_pair(double theta);

struct ChoiVectors {
    ComplexMatrix psi_f;  // cos(theta/2)|00> - i sin(theta/2)|10>
    ComplexMatrix psi_g;  // cos(theta/2)|00> - i sin(theta/2)|01>
};

ChoiVectors choi_vectors(double theta);

/// Binary entropy of (cos^2(theta/2), sin^2(theta/2)) in nats.
double binary_entropy_formula(double theta);

struct ChoiEntanglement {
    double entropy_f;  // nats
    double entropy_g;
    std::vector<double> schmidt_f;  // descending
    std::vector<double> schmidt_g;
    double stated_entropy;  // binary_entropy_formula(theta)
};

/// Entropy and Schmidt coefficients of the reduced input-leg states of the two Choi vectors.
ChoiEntanglement choi_entanglement_analysis(double theta, double tol = kDefaultTol);

/// Number of Schmidt coefficients larger than tol.
size_t schmidt_rank(const std::vector<double> &coefficients, double tol = kDefaultTol);

enum class ClaimStatus { match, mismatch };

std::string_view status_name(ClaimStatus s);

struct ClaimRecord {
    std::string claim_id;
    SlotConvention convention;
    double theta;
    double computed;
    double paper_value;
    double abs_deviation;
    ClaimStatus status;
    double tolerance;
};

struct ClaimReport {
    std::vector<ClaimRecord> records;
};

/// Claim ids in report order. Every id appears once per slot convention in a report.
const std::vector<std::string> &claim_registry();

/// Recomputes every qubit-model statement and compares it with the stated value.
///
/// Mismatches are data, not errors. Entropy-valued claims are expressed in `base`.
ClaimReport verify_paper_claims(double theta, double tol = kDefaultTol, LogBase base = LogBase::nat);

}  // namespace hqmm

#endif
