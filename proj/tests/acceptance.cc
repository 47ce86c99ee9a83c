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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "hqmm/cli_io.h"
#include "hqmm/discrimination.h"
#include "oracles.h"

namespace {

using namespace hqmm;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

std::vector<ComplexMatrix> convert(const std::vector<oracle::Mat> &kraus) {
    std::vector<ComplexMatrix> out;
    for (const auto &k : kraus) out.push_back(oracle::from_eigen(k));
    return out;
}

RawHMM random_raw(std::mt19937_64 &rng, int n, int m, int steps) {
    RawHMM raw;
    raw.initial = oracle::random_distribution(rng, n);
    for (int k = 0; k < steps; k++) {
        raw.transitions.push_back(oracle::random_stochastic(rng, n, n));
        raw.emissions.push_back(oracle::random_stochastic(rng, n, m));
    }
    return raw;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome duality_suite() {
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int trial = 0; trial < 1000; trial++) {
        int da = 1 + trial % 4, db = 1 + (trial / 4) % 4;
        TransitionExpectation e(
            KrausMap(da, da * db, convert(oracle::random_unital_kraus(rng, da, db, 1 + trial % 3))), da, db);
        auto rho = validate_density(oracle::from_eigen(oracle::random_density(rng, da)));
        auto x = oracle::from_eigen(oracle::random_hermitian(rng, da * db));
        worst = std::max(worst, duality_residual(e, rho, x));
    }
    return {worst < 1e-10, "max residual " + format_double(worst) + " over 1000 triples"};
}

Outcome qubit_separation() {
    std::ostringstream detail;
    bool ok = true;
    auto ground = oracle::Mat::Identity(2, 2).eval();
    for (double theta : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
        auto q = oracle::qubit_model(theta, true);
        oracle::Mat p0 = oracle::Mat::Zero(2, 2);
        p0(0, 0) = 1;
        double conv_oracle = oracle::one_step_cylinder(q, p0, ground, p0, true);
        double caus_oracle = oracle::one_step_cylinder(q, p0, ground, p0, false);
        auto cmp = compare_architectures(
            validate_density(oracle::from_eigen(p0)), {build_model({theta})}, separation_effects(1));
        double c2 = std::pow(std::cos(theta / 2), 2);
        ok = ok && std::abs(cmp.conventional - c2) < 1e-12 && std::abs(cmp.causal - 1) < 1e-12 &&
             std::abs(cmp.difference - (1 - c2)) < 1e-12 && std::abs(cmp.conventional - conv_oracle) < 1e-12 &&
             std::abs(cmp.causal - caus_oracle) < 1e-12;
        if (theta == kPi / 2) {
            detail << "pi/2 -> (" << format_double(cmp.conventional) << ", " << format_double(cmp.causal) << ", "
                   << format_double(cmp.difference) << ")";
        }
    }
    return {ok, detail.str()};
}

Outcome choi_distinctness() {
    bool ok = true;
    for (double theta : default_theta_grid()) {
        auto k = stated_kraus_pair(theta);
        double got = choi_difference_trace_norm(ChannelPair(KrausMap(2, 2, {k.k_f}), KrausMap(2, 2, {k.k_g})));
        ok = ok && std::abs(got - 2 * std::sqrt(1 - std::pow(std::cos(theta / 2), 4))) < 1e-10;
    }
    auto k = stated_kraus_pair(kPi / 2);
    ChannelPair pair(KrausMap(2, 2, {k.k_f}), KrausMap(2, 2, {k.k_g}));
    auto j = oracle::to_eigen(choi(pair.first())) - oracle::to_eigen(choi(pair.second()));
    double oracle_norm = oracle::trace_norm(j);
    auto diamond = diamond_bounds(pair);
    auto success = success_probability_bracket(pair);
    const double r3 = std::sqrt(3.0);
    ok = ok && std::abs(oracle_norm - r3) < 1e-10 && std::abs(diamond.choi_trace_norm - r3) < 1e-10 &&
         std::abs(diamond.lower - r3 / 2) < 1e-10 && std::abs(diamond.upper - r3) < 1e-10 &&
         std::abs(success.lower - (0.5 + r3 / 8)) < 1e-10 && std::abs(success.upper - (0.5 + r3 / 4)) < 1e-10;
    return {ok, "pi/2: norm " + format_double(diamond.choi_trace_norm) + ", success [" + format_double(success.lower) +
                    ", " + format_double(success.upper) + "]"};
}

Outcome lift_equivalence() {
    std::mt19937_64 rng(104);
    double fg = 0, explicit_dev = 0;
    for (int trial = 0; trial < 500; trial++) {
        int n = 1 + rng() % 4, m = 1 + rng() % 4;
        auto report = check_equivalence(validate_hmm(random_raw(rng, n, m, 1)), 0, 2, 1e-12, kDefaultSeed + trial);
        fg = std::max(fg, report.max_fg_deviation);
        explicit_dev = std::max(explicit_dev, report.max_explicit_deviation);
    }
    return {fg < 1e-12 && explicit_dev < 1e-12,
            "max |F-G| " + format_double(fg) + ", max explicit deviation " + format_double(explicit_dev)};
}

Outcome classical_reduction() {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double worst = 0;
    bool ok = true;
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + rng() % 3, m = 1 + rng() % 3, steps = 1 + rng() % 4;
        RawHMM raw = random_raw(rng, n, m, steps);
        auto hmm = validate_hmm(raw);
        std::vector<std::vector<double>> alpha, beta;
        std::vector<DiagonalObservables> obs;
        EffectSequence effects;
        for (int k = 0; k < steps; k++) {
            std::vector<double> a(n), b(m);
            for (auto &x : a) x = uniform(rng);
            for (auto &x : b) x = uniform(rng);
            alpha.push_back(a);
            beta.push_back(b);
            obs.push_back({a, b});
            effects.push_back({validate_effect(ComplexMatrix::diagonal({a.begin(), a.end()})),
                               validate_effect(ComplexMatrix::diagonal({b.begin(), b.end()}))});
        }
        double expected = oracle::path_sum(raw.initial, raw.transitions, raw.emissions, alpha, beta);
        for (auto arch : {Architecture::conventional, Architecture::causal}) {
            worst = std::max(worst, std::abs(cylinder_expectation(lift_model(hmm, arch), effects) - expected));
        }
        ok = ok && classical_reduction_check(hmm, obs);
    }
    const double pi0 = 0.5;
    auto hand = homogeneous_hmm({pi0, 1 - pi0}, {{0.7, 0.3}, {0.4, 0.6}}, {{0.9, 0.1}, {0.2, 0.8}}, 1);
    EffectSequence indicator = {
        {validate_effect(ComplexMatrix::diagonal({1, 0})), validate_effect(ComplexMatrix::diagonal({1, 0}))}};
    double hand_conv = cylinder_expectation(lift_model(hand, Architecture::conventional), indicator);
    double hand_caus = cylinder_expectation(lift_model(hand, Architecture::causal), indicator);
    ok = ok && worst < 1e-12 && std::abs(hand_conv - 0.9 * pi0) < 1e-15 && std::abs(hand_caus - 0.9 * pi0) < 1e-15;
    return {ok, "max deviation " + format_double(worst) + ", hand example " + format_double(hand_conv)};
}

Outcome claim_report() {
    std::ostringstream out, err;
    int code = run_cli({"verify-paper", "--theta", format_double(kPi / 2)}, out, err);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    bool ok = code == kExitOk && line == "claim_id,convention,theta,computed,paper_value,abs_deviation,status";
    std::vector<std::string> ids;
    std::map<std::string, std::vector<std::string>> first;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream in(line);
        for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
        ids.push_back(cells[0]);
        if (cells[1] == "first") first[cells[0]] = cells;
    }
    const auto &registry = claim_registry();
    ok = ok && ids.size() == 2 * registry.size();
    for (size_t k = 0; ok && k < ids.size(); k++) ok = ids[k] == registry[k % registry.size()];
    ok = ok && first["cylinder_separation"][6] == "match" && first["choi_states_differ"][6] == "match" &&
         first["choi_entropy_psiF"][6] == "mismatch" && std::stod(first["choi_entropy_psiF"][3]) == 0.0 &&
         first["choi_schmidt_rank_psiF"][6] == "mismatch" && std::stod(first["choi_schmidt_rank_psiF"][3]) == 1.0;
    return {ok, std::to_string(ids.size()) + " rows; entropy claim computed " + first["choi_entropy_psiF"][3] +
                    ", Schmidt rank " + first["choi_schmidt_rank_psiF"][3]};
}

Outcome kernel_suite() {
    std::mt19937_64 rng(107);
    double recon = 0, ptrace = 0;
    for (int n = 1; n <= 16; n++) {
        auto h = oracle::random_hermitian(rng, n);
        auto result = hermitian_eig(oracle::from_eigen(h));
        auto v = oracle::to_eigen(result.eigenvectors);
        oracle::Mat lambda = oracle::Mat::Zero(n, n);
        for (int i = 0; i < n; i++) lambda(i, i) = result.eigenvalues[i];
        recon = std::max(recon, oracle::max_diff(v * lambda * v.adjoint(), h));
    }
    for (int da = 1; da <= 4; da++) {
        for (int db = 1; db <= 4; db++) {
            auto m = oracle::from_eigen(oracle::random_complex(rng, da * db, da * db));
            for (auto which : {Subsystem::first, Subsystem::second}) {
                ptrace = std::max(ptrace, std::abs(partial_trace(m, da, db, which).trace() - m.trace()));
            }
        }
    }
    double entropy = von_neumann_entropy(0.5 * ComplexMatrix::identity(2));
    bool ok = recon < 1e-10 && ptrace < 1e-12 && std::abs(entropy - std::numbers::ln2) < 1e-12;
    return {ok, "reconstruction " + format_double(recon) + ", partial trace " + format_double(ptrace) +
                    ", S(I/2) " + format_double(entropy)};
}

Outcome cli_end_to_end() {
    fs::path dir = fs::temp_directory_path() / "hqmm_acceptance";
    fs::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    std::mt19937_64 rng(108);
    double worst = 0;
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; trial++) {
        int n = 1 + rng() % 4, m = 1 + rng() % 4, steps = 1 + rng() % 3;
        auto hmm_path = write("hmm.json", serialize_hmm(validate_hmm(random_raw(rng, n, m, steps))));
        std::ostringstream lifted, err;
        ok = run_cli({"lift", hmm_path}, lifted, err) == kExitOk;
        auto model_path = write("model.json", lifted.str());
        EffectSequence effects;
        for (int k = 0; k < steps; k++) {
            effects.push_back({validate_effect(oracle::from_eigen(oracle::random_density(rng, n))),
                               validate_effect(oracle::from_eigen(oracle::random_density(rng, m)))});
        }
        auto effects_path = write("effects.json", serialize_effects(effects));
        std::ostringstream out;
        ok = ok && run_cli({"compare", model_path, effects_path}, out, err) == kExitOk;
        std::string csv = out.str();
        worst = std::max(worst, std::stod(csv.substr(csv.rfind(',') + 1)));

        // Round trip: serialising the parsed file must reproduce it byte for byte.
        ok = ok && serialize_model(parse_model(lifted.str())) == lifted.str();
    }
    fs::remove_all(dir);

    std::ostringstream sweep, err;
    run_cli({"sweep-theta", "--steps", "2"}, sweep, err);
    std::string header = sweep.str().substr(0, sweep.str().find('\n'));
    std::string golden;
    std::getline(std::ifstream(fs::path(HQMM_GOLDEN_DIR) / "sweep_theta_header.csv"), golden);
    ok = ok && worst < 1e-12 && header == golden;
    return {ok, "max difference " + format_double(worst) + " over 20 HMMs; golden header " +
                    (header == golden ? "matches" : "differs")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"duality suite", duality_suite},
        {"qubit separation", qubit_separation},
        {"Choi distinctness", choi_distinctness},
        {"lift equivalence", lift_equivalence},
        {"classical reduction", classical_reduction},
        {"claim report integrity", claim_report},
        {"kernel suite", kernel_suite},
        {"CLI end-to-end", cli_end_to_end},
    };
    int failures = 0;
    for (size_t k = 0; k < criteria.size(); k++) {
        Outcome outcome;
        try {
            outcome = criteria[k].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    outcome.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
