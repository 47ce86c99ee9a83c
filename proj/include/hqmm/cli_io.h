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

#ifndef HQMM_CLI_IO_H
#define HQMM_CLI_IO_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hqmm/classical_lift.h"
#include "hqmm/qubit_model.h"

namespace hqmm {

inline constexpr int kModelSchemaVersion = 1;

/// Malformed input text. Syntax errors carry a 1-based line and column; schema errors
/// carry a path such as `steps[1].hidden_kraus[0]` and line 0.
struct ParseError : std::invalid_argument {
    ParseError(const std::string &message, size_t line, size_t column);
    size_t line;
    size_t column;
};

HQMMModel parse_model(std::string_view text, double tol = kDefaultTol);
/// JSON text; every double is written with enough digits to round-trip exactly.
std::string serialize_model(const HQMMModel &model);

ClassicalHMM parse_hmm(std::string_view text, double tol = kDefaultTol);
std::string serialize_hmm(const ClassicalHMM &hmm);

EffectSequence parse_effects(std::string_view text, double tol = kDefaultTol);
std::string serialize_effects(const EffectSequence &effects);

/// "%.17g", '.' decimal separator regardless of locale.
std::string format_double(double x);

struct SweepRow {
    double theta;
    double conv_prob;
    double caus_prob;
    double prob_diff;
    double choi_trace_norm;
    double diamond_lower;
    double diamond_upper;
    double psucc_lower;
    double psucc_upper;
    double entropy_paper_formula;
    double entropy_psiF_computed;
    double entropy_psiG_computed;
};

const std::vector<std::string> &sweep_theta_columns();
const std::vector<std::string> &verify_paper_columns();

SweepRow sweep_row(double theta, double tol, LogBase base, SlotConvention convention = SlotConvention::first);

/// `steps` evenly spaced theta values in [min, max], evaluated in parallel, returned in ascending theta.
std::vector<SweepRow> sweep_theta(
    double min, double max, size_t steps, double tol, LogBase base, SlotConvention convention = SlotConvention::first);

/// Default report grid: 33 evenly spaced points in [pi/16, 15 pi/16].
std::vector<double> default_theta_grid();

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_claims_csv(std::ostream &out, const std::vector<ClaimRecord> &records);

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `hqmm` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace hqmm

#endif
