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

#include "hqmm/classical_lift.h"

#include <cmath>
#include <random>
#include <sstream>

namespace hqmm {

namespace {

void validate_stochastic(const RealMatrix &m, size_t rows, size_t cols, const std::string &what, double tol) {
    if (m.size() != rows) {
        throw DimensionError(what + " has " + std::to_string(m.size()) + " rows, expected " + std::to_string(rows));
    }
    for (size_t i = 0; i < m.size(); i++) {
        if (m[i].size() != cols) {
            throw DimensionError(
                what + " row " + std::to_string(i) + " has " + std::to_string(m[i].size()) + " entries, expected " +
                std::to_string(cols));
        }
        double sum = 0;
        for (size_t j = 0; j < cols; j++) {
            double p = m[i][j];
            if (!std::isfinite(p) || p < 0) {
                std::ostringstream msg;
                msg << what << " entry (" << i << "," << j << ") = " << p << " is not a probability";
                throw ValidationError(msg.str());
            }
            sum += p;
        }
        if (std::abs(sum - 1) > tol) {
            std::ostringstream msg;
            msg << what << " row " << i << " sums to " << sum;
            throw ValidationError(msg.str());
        }
    }
}

size_t row_width(const RealMatrix &m) {
    return m.empty() ? 0 : m.front().size();
}

ComplexMatrix random_hermitian(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    auto x = ComplexMatrix::from_function(dim, dim, [&](size_t, size_t) {
        double re = normal(rng);
        double im = normal(rng);
        return Complex{re, im};
    });
    return 0.5 * (x + x.adjoint());
}

}  // namespace

ClassicalHMM validate_hmm(const RawHMM &raw, double tol) {
    const size_t n = raw.initial.size();
    if (n == 0) {
        throw DimensionError("initial distribution is empty");
    }
    if (raw.transitions.empty()) {
        throw DimensionError("HMM needs at least one transition matrix");
    }
    if (raw.transitions.size() != raw.emissions.size()) {
        throw DimensionError(
            "HMM has " + std::to_string(raw.transitions.size()) + " transition matrices but " +
            std::to_string(raw.emissions.size()) + " emission kernels");
    }
    validate_stochastic({raw.initial}, 1, n, "initial distribution", tol);
    const size_t m = row_width(raw.emissions.front());
    if (m == 0) {
        throw DimensionError("emission kernel 0 has no outputs");
    }
    for (size_t step = 0; step < raw.transitions.size(); step++) {
        validate_stochastic(raw.transitions[step], n, n, "transition " + std::to_string(step), tol);
        validate_stochastic(raw.emissions[step], n, m, "emission " + std::to_string(step), tol);
    }
    ClassicalHMM hmm;
    hmm.initial_ = raw.initial;
    hmm.transitions_ = raw.transitions;
    hmm.emissions_ = raw.emissions;
    return hmm;
}

ClassicalHMM homogeneous_hmm(
    const std::vector<double> &initial, const RealMatrix &transition, const RealMatrix &emission, size_t steps,
    double tol) {
    return validate_hmm(
        {initial, std::vector<RealMatrix>(steps, transition), std::vector<RealMatrix>(steps, emission)}, tol);
}

TransitionExpectation lift_transition(const RealMatrix &transition, double tol) {
    const size_t n = transition.size();
    validate_stochastic(transition, n, n, "transition", tol);
    // Zero probabilities give exact zero amplitudes.
    auto v = ComplexMatrix::from_function(n * n, n, [&](size_t row, size_t i) {
        size_t copy = row / n;
        size_t j = row % n;
        return copy == i ? Complex{std::sqrt(transition[i][j])} : Complex{0};
    });
    return isometry_expectation(v, n, n, tol);
}

TransitionExpectation lift_emission(const RealMatrix &emission, double tol) {
    const size_t n = emission.size();
    const size_t m = row_width(emission);
    validate_stochastic(emission, n, m, "emission", tol);
    auto v = ComplexMatrix::from_function(n * m, n, [&](size_t row, size_t j) {
        size_t copy = row / m;
        size_t k = row % m;
        return copy == j ? Complex{std::sqrt(emission[j][k])} : Complex{0};
    });
    return isometry_expectation(v, n, m, tol);
}

HQMMStep lift_step(const ClassicalHMM &hmm, size_t n) {
    return HQMMStep(lift_transition(hmm.transition(n)), lift_emission(hmm.emission(n)));
}

HQMMModel lift_model(const ClassicalHMM &hmm, Architecture arch) {
    std::vector<Complex> diag(hmm.initial().begin(), hmm.initial().end());
    std::vector<HQMMStep> steps;
    for (size_t n = 0; n < hmm.step_count(); n++) {
        steps.push_back(lift_step(hmm, n));
    }
    return HQMMModel(validate_density(ComplexMatrix::diagonal(diag)), std::move(steps), arch);
}

Complex emission_factor(const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &b) {
    const RealMatrix &q = hmm.emission(n);
    Complex sum = 0;
    for (size_t k = 0; k < hmm.output_count(); k++) {
        for (size_t kp = 0; kp < hmm.output_count(); kp++) {
            sum += std::sqrt(q[i][k] * q[j][kp]) * b(k, kp);
        }
    }
    return sum;
}

Complex transition_factor(const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &a_next) {
    const RealMatrix &pi = hmm.transition(n);
    Complex sum = 0;
    for (size_t l = 0; l < hmm.hidden_count(); l++) {
        for (size_t m = 0; m < hmm.hidden_count(); m++) {
            sum += std::sqrt(pi[i][l] * pi[j][m]) * a_next(l, m);
        }
    }
    return sum;
}

Complex explicit_block_element(
    const ClassicalHMM &hmm, size_t n, size_t i, size_t j, const ComplexMatrix &a, const ComplexMatrix &b,
    const ComplexMatrix &a_next) {
    const size_t hidden = hmm.hidden_count();
    if (n >= hmm.step_count()) {
        throw DimensionError("step " + std::to_string(n) + " out of range, HMM has " + std::to_string(hmm.step_count()));
    }
    if (i >= hidden || j >= hidden) {
        throw DimensionError(
            "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for hidden dimension " +
            std::to_string(hidden));
    }
    if (!a.is_square() || a.rows() != hidden || !a_next.is_square() || a_next.rows() != hidden || !b.is_square() ||
        b.rows() != hmm.output_count()) {
        throw DimensionError("explicit_block_element: observable sides must be (N, M, N)");
    }
    Complex b_ij = emission_factor(hmm, n, i, j, b);
    Complex a_ij = transition_factor(hmm, n, i, j, a_next);
    return a(i, j) * b_ij * a_ij;
}

ComplexMatrix random_hermitian(size_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_hermitian(dim, rng);
}

EquivalenceReport check_step_equivalence(
    const HQMMStep &step, const ClassicalHMM &hmm, size_t n, size_t trials, double tol, uint64_t seed) {
    const size_t hidden = hmm.hidden_count();
    const size_t outputs = hmm.output_count();
    if (step.hidden_dim() != hidden || step.output_dim() != outputs) {
        throw DimensionError("step dimensions do not match the HMM");
    }
    std::mt19937_64 rng(seed);
    EquivalenceReport report{trials, seed, 0, 0, true};
    for (size_t t = 0; t < trials; t++) {
        ComplexMatrix a = random_hermitian(hidden, rng);
        ComplexMatrix b = random_hermitian(outputs, rng);
        ComplexMatrix a_next = random_hermitian(hidden, rng);
        ComplexMatrix f = conventional_block(step, a, b, a_next);
        ComplexMatrix g = causal_block(step, a, b, a_next);
        report.max_fg_deviation = std::max(report.max_fg_deviation, max_abs_diff(f, g));
        for (size_t i = 0; i < hidden; i++) {
            for (size_t j = 0; j < hidden; j++) {
                Complex expected = explicit_block_element(hmm, n, i, j, a, b, a_next);
                report.max_explicit_deviation =
                    std::max({report.max_explicit_deviation, std::abs(f(i, j) - expected), std::abs(g(i, j) - expected)});
            }
        }
    }
    report.equivalent = report.max_fg_deviation < tol && report.max_explicit_deviation < tol;
    return report;
}

EquivalenceReport check_equivalence(const ClassicalHMM &hmm, size_t n, size_t trials, double tol, uint64_t seed) {
    return check_step_equivalence(lift_step(hmm, n), hmm, n, trials, tol, seed);
}

double classical_forward(const ClassicalHMM &hmm, const std::vector<DiagonalObservables> &observables) {
    const size_t hidden = hmm.hidden_count();
    const size_t outputs = hmm.output_count();
    if (observables.size() > hmm.step_count()) {
        throw DimensionError(
            "got observables for " + std::to_string(observables.size()) + " steps, HMM has " +
            std::to_string(hmm.step_count()));
    }
    for (size_t m = 0; m < observables.size(); m++) {
        if (observables[m].alpha.size() != hidden || observables[m].beta.size() != outputs) {
            throw DimensionError(
                "observables at step " + std::to_string(m) + " have lengths (" +
                std::to_string(observables[m].alpha.size()) + ", " + std::to_string(observables[m].beta.size()) +
                "), expected (" + std::to_string(hidden) + ", " + std::to_string(outputs) + ")");
        }
    }
    std::vector<double> v(hidden, 1.0);
    for (size_t m = observables.size(); m-- > 0;) {
        const RealMatrix &pi = hmm.transition(m);
        const RealMatrix &q = hmm.emission(m);
        std::vector<double> next(hidden);
        for (size_t i = 0; i < hidden; i++) {
            double emit = 0;
            for (size_t k = 0; k < outputs; k++) {
                emit += q[i][k] * observables[m].beta[k];
            }
            double move = 0;
            for (size_t j = 0; j < hidden; j++) {
                move += pi[i][j] * v[j];
            }
            next[i] = observables[m].alpha[i] * emit * move;
        }
        v = std::move(next);
    }
    double total = 0;
    for (size_t i = 0; i < hidden; i++) {
        total += hmm.initial()[i] * v[i];
    }
    return total;
}

bool classical_reduction_check(const ClassicalHMM &hmm, const std::vector<DiagonalObservables> &observables, double tol) {
    double expected = classical_forward(hmm, observables);
    EffectSequence effects;
    for (const auto &obs : observables) {
        std::vector<Complex> alpha(obs.alpha.begin(), obs.alpha.end());
        std::vector<Complex> beta(obs.beta.begin(), obs.beta.end());
        effects.push_back({validate_effect(ComplexMatrix::diagonal(alpha)), validate_effect(ComplexMatrix::diagonal(beta))});
    }
    for (Architecture arch : {Architecture::conventional, Architecture::causal}) {
        if (std::abs(cylinder_expectation(lift_model(hmm, arch), effects) - expected) >= tol) {
            return false;
        }
    }
    return true;
}

}  // namespace hqmm
