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

#include "hqmm/cli_io.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "hqmm/discrimination.h"
#include "json.hpp"

namespace hqmm {

namespace {

// Runs body(i) for i in [0, count) on a small worker pool; results are written by index.
template <typename Body>
void parallel_for(size_t count, Body body) {
    size_t workers = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_header(std::ostream &out, const std::vector<std::string> &columns) {
    for (size_t c = 0; c < columns.size(); c++) {
        out << (c == 0 ? "" : ",") << columns[c];
    }
    out << '\n';
}

enum class FileKind { model, hmm, effects };

FileKind detect_kind(const std::string &text) {
    auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object()) {
        if (doc.contains("steps")) {
            return FileKind::model;
        }
        if (doc.contains("pi")) {
            return FileKind::hmm;
        }
        if (doc.contains("effects")) {
            return FileKind::effects;
        }
        throw ParseError("<root>: cannot tell file kind (expected 'steps', 'pi' or 'effects')", 0, 0);
    }
    // Let the model parser produce the located syntax error.
    return FileKind::model;
}

ClassicalHMM extend_hmm(const ClassicalHMM &hmm, size_t steps, double tol) {
    if (steps == 0 || steps == hmm.step_count()) {
        return hmm;
    }
    if (hmm.step_count() != 1) {
        throw ValidationError(
            "--steps " + std::to_string(steps) + " does not match the " + std::to_string(hmm.step_count()) +
            " steps in the HMM file");
    }
    return homogeneous_hmm(hmm.initial(), hmm.transition(0), hmm.emission(0), steps, tol);
}

}  // namespace

std::string format_double(double x) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

const std::vector<std::string> &sweep_theta_columns() {
    static const std::vector<std::string> columns = {
        "theta",         "conv_prob",   "caus_prob",   "prob_diff",
        "choi_trace_norm", "diamond_lower", "diamond_upper", "psucc_lower",
        "psucc_upper",   "entropy_paper_formula", "entropy_psiF_computed", "entropy_psiG_computed"};
    return columns;
}

const std::vector<std::string> &verify_paper_columns() {
    static const std::vector<std::string> columns = {
        "claim_id", "convention", "theta", "computed", "paper_value", "abs_deviation", "status"};
    return columns;
}

SweepRow sweep_row(double theta, double tol, LogBase base, SlotConvention convention) {
    if (!std::isfinite(theta)) {
        throw ValidationError("theta must be finite");
    }
    HQMMStep step = build_model({theta}, convention);
    DensityOperator ground = validate_density(ComplexMatrix{{1, 0}, {0, 0}}, tol);
    auto cmp = compare_architectures(ground, {step}, separation_effects(1), tol);

    KrausPair kraus = stated_kraus_pair(theta);
    ChannelPair pair(KrausMap(2, 2, {kraus.k_f}), KrausMap(2, 2, {kraus.k_g}));
    DiamondBracket diamond = diamond_bounds(pair, tol);
    SuccessBracket success = success_probability_bracket(pair, tol);
    ChoiEntanglement ent = choi_entanglement_analysis(theta, tol);

    return {
        theta,
        cmp.conventional,
        cmp.causal,
        cmp.difference,
        diamond.choi_trace_norm,
        diamond.lower,
        diamond.upper,
        success.lower,
        success.upper,
        convert_from_nats(ent.stated_entropy, base),
        convert_from_nats(ent.entropy_f, base),
        convert_from_nats(ent.entropy_g, base),
    };
}

std::vector<SweepRow> sweep_theta(
    double min, double max, size_t steps, double tol, LogBase base, SlotConvention convention) {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw ValidationError("sweep range needs finite min < max");
    }
    if (steps < 2) {
        throw ValidationError("sweep needs at least 2 steps");
    }
    std::vector<SweepRow> rows(steps);
    parallel_for(steps, [&](size_t i) {
        double theta = i + 1 == steps ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        rows[i] = sweep_row(theta, tol, base, convention);
    });
    std::sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) { return a.theta < b.theta; });
    return rows;
}

std::vector<double> default_theta_grid() {
    constexpr size_t kPoints = 33;
    const double lo = std::numbers::pi / 16;
    const double hi = 15 * std::numbers::pi / 16;
    std::vector<double> grid(kPoints);
    for (size_t i = 0; i < kPoints; i++) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kPoints - 1);
    }
    return grid;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    write_header(out, sweep_theta_columns());
    for (const auto &r : rows) {
        const double values[] = {
            r.theta,       r.conv_prob,   r.caus_prob,  r.prob_diff,
            r.choi_trace_norm, r.diamond_lower, r.diamond_upper, r.psucc_lower,
            r.psucc_upper, r.entropy_paper_formula, r.entropy_psiF_computed, r.entropy_psiG_computed};
        for (size_t c = 0; c < std::size(values); c++) {
            out << (c == 0 ? "" : ",") << format_double(values[c]);
        }
        out << '\n';
    }
}

void write_claims_csv(std::ostream &out, const std::vector<ClaimRecord> &records) {
    write_header(out, verify_paper_columns());
    for (const auto &r : records) {
        out << r.claim_id << ',' << convention_name(r.convention) << ',' << format_double(r.theta) << ','
            << format_double(r.computed) << ',' << format_double(r.paper_value) << ','
            << format_double(r.abs_deviation) << ',' << status_name(r.status) << '\n';
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hidden quantum Markov models: conventional vs causal architectures", "hqmm"};
    app.require_subcommand(1);

    double tol = kDefaultTol;
    uint64_t seed = kDefaultSeed;
    std::string log_base = "nat";
    app.add_option("--tol", tol, "Numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for randomised checks")->capture_default_str();
    app.add_option("--log-base", log_base, "Entropy unit")
        ->capture_default_str()
        ->check(CLI::IsMember({"nat", "bit"}));

    auto *validate = app.add_subcommand("validate", "Parse and validate a model, HMM or effects file");
    std::string validate_path;
    std::string validate_kind = "auto";
    validate->add_option("file", validate_path)->required();
    validate->add_option("--kind", validate_kind)->capture_default_str()->check(
        CLI::IsMember({"auto", "model", "hmm", "effects"}));

    auto *emit = app.add_subcommand("emit-qubit", "Write the qubit model file to standard output");
    double emit_theta = 0;
    size_t emit_steps = 1;
    std::string emit_arch = "conventional";
    std::string emit_convention = "first";
    std::string emit_effects_path;
    emit->add_option("--theta", emit_theta)->required();
    emit->add_option("--steps", emit_steps)->capture_default_str()->check(CLI::PositiveNumber);
    emit->add_option("--architecture", emit_arch)->capture_default_str();
    emit->add_option("--convention", emit_convention)->capture_default_str();
    emit->add_option("--effects-out", emit_effects_path, "Also write the separating effect sequence here");

    auto *compare = app.add_subcommand("compare", "Cylinder expectation under both architectures");
    std::string compare_model;
    std::string compare_effects;
    compare->add_option("model", compare_model)->required();
    compare->add_option("effects", compare_effects)->required();

    auto *sweep = app.add_subcommand("sweep-theta", "Qubit-model quantities across a theta grid");
    double sweep_min = std::numbers::pi / 16;
    double sweep_max = 15 * std::numbers::pi / 16;
    size_t sweep_steps = 33;
    std::string sweep_convention = "first";
    sweep->add_option("--min", sweep_min)->capture_default_str();
    sweep->add_option("--max", sweep_max)->capture_default_str();
    sweep->add_option("--steps", sweep_steps)->capture_default_str();
    sweep->add_option("--convention", sweep_convention)->capture_default_str();

    auto *lift = app.add_subcommand("lift", "Lift a classical HMM file to a model file");
    std::string lift_path;
    size_t lift_steps = 0;
    std::string lift_arch = "conventional";
    size_t lift_trials = 0;
    lift->add_option("hmm", lift_path)->required();
    lift->add_option("--steps", lift_steps, "Repeat a one-step HMM this many times (0 keeps the file's steps)");
    lift->add_option("--architecture", lift_arch)->capture_default_str();
    lift->add_option("--check-trials", lift_trials, "Random observable triples per step for the equivalence check");

    auto *verify = app.add_subcommand("verify-paper", "Claim report for the qubit model");
    double verify_theta = std::numbers::pi / 2;
    bool verify_grid = false;
    auto *theta_opt = verify->add_option("--theta", verify_theta)->capture_default_str();
    verify->add_flag("--grid", verify_grid, "Use the 33-point default grid")->excludes(theta_opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    const LogBase base = log_base == "bit" ? LogBase::bit : LogBase::nat;
    try {
        if (*validate) {
            std::string text = read_file(validate_path);
            FileKind kind = validate_kind == "model" ? FileKind::model
                            : validate_kind == "hmm" ? FileKind::hmm
                            : validate_kind == "effects" ? FileKind::effects
                                                         : detect_kind(text);
            if (kind == FileKind::model) {
                HQMMModel model = parse_model(text, tol);
                out << "ok model N=" << model.hidden_dim() << " M=" << model.output_dim()
                    << " steps=" << model.steps().size() << " architecture=" << architecture_name(model.architecture())
                    << '\n';
            } else if (kind == FileKind::hmm) {
                ClassicalHMM hmm = parse_hmm(text, tol);
                out << "ok hmm N=" << hmm.hidden_count() << " M=" << hmm.output_count() << " steps=" << hmm.step_count()
                    << '\n';
            } else {
                EffectSequence effects = parse_effects(text, tol);
                out << "ok effects pairs=" << effects.size() << '\n';
            }
        } else if (*emit) {
            HQMMModel model = build_qubit_hqmm(
                {emit_theta}, emit_steps, parse_architecture(emit_arch), parse_convention(emit_convention));
            out << serialize_model(model);
            if (!emit_effects_path.empty()) {
                std::ofstream file(emit_effects_path, std::ios::binary);
                file << serialize_effects(separation_effects(emit_steps));
                if (!file) {
                    throw ValidationError("cannot write '" + emit_effects_path + "'");
                }
            }
        } else if (*compare) {
            HQMMModel model = parse_model(read_file(compare_model), tol);
            EffectSequence effects = parse_effects(read_file(compare_effects), tol);
            auto cmp = compare_architectures(model.initial_state(), model.steps(), effects, tol);
            out << "conv_prob,caus_prob,prob_diff\n"
                << format_double(cmp.conventional) << ',' << format_double(cmp.causal) << ','
                << format_double(cmp.difference) << '\n';
        } else if (*sweep) {
            auto rows = sweep_theta(sweep_min, sweep_max, sweep_steps, tol, base, parse_convention(sweep_convention));
            write_sweep_csv(out, rows);
        } else if (*lift) {
            ClassicalHMM hmm = extend_hmm(parse_hmm(read_file(lift_path), tol), lift_steps, tol);
            std::string text = serialize_model(lift_model(hmm, parse_architecture(lift_arch)));
            if (lift_trials > 0) {
                HQMMModel reparsed = parse_model(text, tol);
                bool ok = true;
                for (size_t n = 0; n < hmm.step_count(); n++) {
                    auto report = check_step_equivalence(reparsed.steps()[n], hmm, n, lift_trials, 1e-12, seed + n);
                    err << "step " << n << ": trials=" << report.trials << " seed=" << report.seed
                        << " max_fg_deviation=" << format_double(report.max_fg_deviation)
                        << " max_explicit_deviation=" << format_double(report.max_explicit_deviation) << '\n';
                    ok = ok && report.equivalent;
                }
                if (!ok) {
                    err << "error: lifted blocks are not equivalent within 1e-12\n";
                    return kExitNumeric;
                }
            }
            out << text;
        } else if (*verify) {
            std::vector<double> thetas = verify_grid ? default_theta_grid() : std::vector<double>{verify_theta};
            std::vector<ClaimReport> reports(thetas.size());
            parallel_for(thetas.size(), [&](size_t i) { reports[i] = verify_paper_claims(thetas[i], tol, base); });
            std::vector<ClaimRecord> records;
            for (const auto &r : reports) {
                records.insert(records.end(), r.records.begin(), r.records.end());
            }
            write_claims_csv(out, records);
        }
    } catch (const NumericError &e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace hqmm
