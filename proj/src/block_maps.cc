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

#include "hqmm/block_maps.h"

#include <cmath>
#include <sstream>

namespace hqmm {

namespace {

void require_side(const ComplexMatrix &m, size_t side, const std::string &what) {
    if (!m.is_square() || m.rows() != side) {
        throw DimensionError(
            what + " must be square of side " + std::to_string(side) + ", got " + std::to_string(m.rows()) + "x" +
            std::to_string(m.cols()));
    }
}

void check_block_inputs(const HQMMStep &step, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix *x) {
    require_side(a, step.hidden_dim(), "hidden observable a");
    require_side(b, step.output_dim(), "output observable b");
    if (x != nullptr) {
        require_side(*x, step.hidden_dim(), "block argument X");
    }
}

void check_block_inputs(const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix *x) {
    check_block_inputs(step, a.matrix(), b.matrix(), x);
}

}  // namespace

std::string_view architecture_name(Architecture arch) {
    return arch == Architecture::conventional ? "conventional" : "causal";
}

Architecture parse_architecture(std::string_view name) {
    if (name == "conventional") {
        return Architecture::conventional;
    }
    if (name == "causal") {
        return Architecture::causal;
    }
    throw ValidationError("unknown architecture '" + std::string(name) + "' (expected conventional or causal)");
}

HQMMStep::HQMMStep(TransitionExpectation hidden, TransitionExpectation emission)
    : hidden_(std::move(hidden)), emission_(std::move(emission)) {
    if (hidden_.dim_a() != hidden_.dim_b()) {
        throw DimensionError(
            "hidden transition must map N -> N (x) N, got d_A=" + std::to_string(hidden_.dim_a()) +
            ", d_B=" + std::to_string(hidden_.dim_b()));
    }
    if (emission_.dim_a() != hidden_.dim_a()) {
        throw DimensionError(
            "emission acts on hidden dimension " + std::to_string(emission_.dim_a()) + " but the hidden transition on " +
            std::to_string(hidden_.dim_a()));
    }
}

HQMMModel::HQMMModel(DensityOperator initial_state, std::vector<HQMMStep> steps, Architecture architecture)
    : initial_state_(std::move(initial_state)), steps_(std::move(steps)), architecture_(architecture) {
    if (steps_.empty()) {
        throw DimensionError("model needs at least one step");
    }
    for (size_t n = 0; n < steps_.size(); n++) {
        if (steps_[n].hidden_dim() != initial_state_.dim()) {
            throw DimensionError(
                "step " + std::to_string(n) + " has hidden dimension " + std::to_string(steps_[n].hidden_dim()) +
                ", initial state has " + std::to_string(initial_state_.dim()));
        }
        if (steps_[n].output_dim() != steps_.front().output_dim()) {
            throw DimensionError(
                "step " + std::to_string(n) + " has output dimension " + std::to_string(steps_[n].output_dim()) +
                ", step 0 has " + std::to_string(steps_.front().output_dim()));
        }
    }
}

HQMMModel HQMMModel::homogeneous(
    DensityOperator initial_state, const HQMMStep &step, size_t count, Architecture architecture) {
    return HQMMModel(std::move(initial_state), std::vector<HQMMStep>(count, step), architecture);
}

EffectPair identity_effects(size_t hidden_dim, size_t output_dim) {
    return {validate_effect(ComplexMatrix::identity(hidden_dim)), validate_effect(ComplexMatrix::identity(output_dim))};
}

Superoperator::Superoperator(size_t dim_in, size_t dim_out, ComplexMatrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
    if (matrix_.rows() != dim_out_ * dim_out_ || matrix_.cols() != dim_in_ * dim_in_) {
        throw DimensionError(
            "superoperator from side " + std::to_string(dim_in_) + " to side " + std::to_string(dim_out_) +
            " needs a " + std::to_string(dim_out_ * dim_out_) + "x" + std::to_string(dim_in_ * dim_in_) + " matrix");
    }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix &x) const {
    require_side(x, dim_in_, "superoperator input");
    ComplexMatrix vec_out = matrix_ * ComplexMatrix(dim_in_ * dim_in_, 1, x.entries());
    return ComplexMatrix(dim_out_, dim_out_, vec_out.entries());
}

ComplexMatrix conventional_block(
    const HQMMStep &step, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &x) {
    check_block_inputs(step, a, b, &x);
    ComplexMatrix emitted = apply_heisenberg(step.emission(), kron(a, b));
    return apply_heisenberg(step.hidden(), kron(emitted, x));
}

ComplexMatrix causal_block(const HQMMStep &step, const ComplexMatrix &a, const ComplexMatrix &b, const ComplexMatrix &x) {
    check_block_inputs(step, a, b, &x);
    ComplexMatrix advanced = apply_heisenberg(step.hidden(), kron(a, x));
    return apply_heisenberg(step.emission(), kron(advanced, b));
}

ComplexMatrix conventional_block(const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x) {
    return conventional_block(step, a.matrix(), b.matrix(), x);
}

ComplexMatrix causal_block(const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x) {
    return causal_block(step, a.matrix(), b.matrix(), x);
}

ComplexMatrix apply_block(
    Architecture arch, const HQMMStep &step, const Effect &a, const Effect &b, const ComplexMatrix &x) {
    return arch == Architecture::conventional ? conventional_block(step, a, b, x) : causal_block(step, a, b, x);
}

Superoperator block_superoperator(const HQMMStep &step, const Effect &a, const Effect &b, Architecture arch) {
    check_block_inputs(step, a, b, nullptr);
    const size_t n = step.hidden_dim();
    const size_t n2 = n * n;
    std::vector<Complex> entries(n2 * n2);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            auto unit = outer(ComplexMatrix::basis_ket(n, i), ComplexMatrix::basis_ket(n, j));
            ComplexMatrix image = apply_block(arch, step, a, b, unit);
            size_t col = i * n + j;
            for (size_t row = 0; row < n2; row++) {
                entries[row * n2 + col] = image.entries()[row];
            }
        }
    }
    return Superoperator(n, n, ComplexMatrix(n2, n2, std::move(entries)));
}

Superoperator canonical_dual(const Superoperator &s) {
    // dual[(a,b),(c,d)] = S[(d,c),(b,a)], i.e. P_in S^T P_out with P the transpose permutation.
    const size_t din = s.dim_in();
    const size_t dout = s.dim_out();
    auto m = ComplexMatrix::from_function(din * din, dout * dout, [&](size_t row, size_t col) {
        size_t a = row / din, b = row % din;
        size_t c = col / dout, d = col % dout;
        return s.matrix()(d * dout + c, b * din + a);
    });
    return Superoperator(dout, din, std::move(m));
}

ComplexMatrix choi(const Superoperator &s) {
    const size_t din = s.dim_in();
    const size_t dout = s.dim_out();
    ComplexMatrix out = ComplexMatrix::zeros(din * dout, din * dout);
    for (size_t i = 0; i < din; i++) {
        for (size_t j = 0; j < din; j++) {
            auto unit = outer(ComplexMatrix::basis_ket(din, i), ComplexMatrix::basis_ket(din, j));
            out = out + kron(unit, s.apply(unit));
        }
    }
    return out;
}

ComplexMatrix dual_formula_conventional(const HQMMStep &step, const Effect &a, const Effect &b, const DensityOperator &rho) {
    check_block_inputs(step, a, b, nullptr);
    const size_t n = step.hidden_dim();
    require_side(rho.matrix(), n, "state rho");
    ComplexMatrix sandwich =
        kron(apply_heisenberg(step.emission(), kron(a.matrix(), b.matrix())), ComplexMatrix::identity(n));
    ComplexMatrix out = ComplexMatrix::zeros(n, n);
    for (const auto &k : step.hidden().map().kraus()) {
        ComplexMatrix joint = k * rho.matrix() * k.adjoint() * sandwich;
        out = out + partial_trace(joint, n, n, Subsystem::first);
    }
    return out;
}

ComplexMatrix dual_formula_causal(const HQMMStep &step, const Effect &a, const Effect &b, const DensityOperator &rho) {
    check_block_inputs(step, a, b, nullptr);
    const size_t n = step.hidden_dim();
    const size_t m = step.output_dim();
    require_side(rho.matrix(), n, "state rho");
    ComplexMatrix sandwich =
        kron(apply_heisenberg(step.hidden(), kron(a.matrix(), ComplexMatrix::identity(n))), b.matrix());
    ComplexMatrix out = ComplexMatrix::zeros(m, m);
    for (const auto &k : step.emission().map().kraus()) {
        ComplexMatrix joint = k * rho.matrix() * k.adjoint() * sandwich;
        out = out + partial_trace(joint, n, m, Subsystem::first);
    }
    return out;
}

double cylinder_expectation(
    const DensityOperator &initial,
    const std::vector<HQMMStep> &steps,
    Architecture arch,
    const EffectSequence &effects,
    double tol) {
    if (effects.size() > steps.size()) {
        throw DimensionError(
            "effect sequence has " + std::to_string(effects.size()) + " pairs but the model only " +
            std::to_string(steps.size()) + " steps");
    }
    const size_t n = initial.dim();
    for (size_t m = 0; m < effects.size(); m++) {
        if (effects[m].hidden.dim() != n || effects[m].output.dim() != steps[m].output_dim()) {
            throw DimensionError(
                "effect pair " + std::to_string(m) + " has sides (" + std::to_string(effects[m].hidden.dim()) + ", " +
                std::to_string(effects[m].output.dim()) + "), expected (" + std::to_string(n) + ", " +
                std::to_string(steps[m].output_dim()) + ")");
        }
    }
    // Identity effects beyond the horizon telescope to I by unitality, so only the
    // first effects.size() blocks contribute.
    ComplexMatrix x = ComplexMatrix::identity(n);
    for (size_t m = effects.size(); m-- > 0;) {
        x = apply_block(arch, steps[m], effects[m].hidden, effects[m].output, x);
    }
    Complex value = (initial.matrix() * x).trace();
    if (std::abs(value.imag()) > tol || value.real() < -tol || value.real() > 1 + tol) {
        std::ostringstream msg;
        msg << "cylinder expectation " << value << " is not a probability";
        throw NumericError(msg.str());
    }
    return value.real();
}

double cylinder_expectation(const HQMMModel &model, const EffectSequence &effects, double tol) {
    return cylinder_expectation(model.initial_state(), model.steps(), model.architecture(), effects, tol);
}

ArchitectureComparison compare_architectures(
    const DensityOperator &initial,
    const std::vector<HQMMStep> &steps,
    const EffectSequence &effects,
    double tol) {
    double conv = cylinder_expectation(initial, steps, Architecture::conventional, effects, tol);
    double caus = cylinder_expectation(initial, steps, Architecture::causal, effects, tol);
    return {conv, caus, std::abs(conv - caus)};
}

}  // namespace hqmm
