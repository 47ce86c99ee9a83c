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

#include <cmath>
#include <sstream>

#include "hqmm/cli_io.h"
#include "json.hpp"

namespace hqmm {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw ParseError(path + ": " + what, 0, 0);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // e.byte is 1-based and points just past the offending character.
        size_t offset = e.byte == 0 ? 0 : e.byte - 1;
        size_t line = 1;
        size_t column = 1;
        for (size_t k = 0; k < offset && k < text.size(); k++) {
            if (text[k] == '\n') {
                line++;
                column = 1;
            } else {
                column++;
            }
        }
        // Drop the library's own "[json.exception...] parse error at line L, column C: " prefix.
        std::string detail = e.what();
        if (auto at = detail.find("column "); at != std::string::npos) {
            if (auto colon = detail.find(": ", at); colon != std::string::npos) {
                detail = detail.substr(colon + 2);
            }
        }
        throw ParseError(
            "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail, line,
            column);
    } catch (const json::exception &e) {
        // Out-of-range number literals carry no position.
        std::string detail = e.what();
        if (auto bracket = detail.find("] "); bracket != std::string::npos) {
            detail = detail.substr(bracket + 2);
        }
        throw ParseError("invalid JSON: " + detail, 0, 0);
    }
}

const json &field(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) {
        schema_error(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_error(path, "missing field '" + key + "'");
    }
    return *it;
}

double read_real(const json &j, const std::string &path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    double x = j.get<double>();
    if (!std::isfinite(x)) {
        schema_error(path, "number is not finite");
    }
    return x;
}

size_t read_positive(const json &j, const std::string &path) {
    if (!j.is_number_integer() || j.get<int64_t>() <= 0) {
        schema_error(path, "expected a positive integer");
    }
    return static_cast<size_t>(j.get<int64_t>());
}

Complex read_complex(const json &j, const std::string &path) {
    if (j.is_number()) {
        return read_real(j, path);
    }
    if (!j.is_array() || j.size() != 2) {
        schema_error(path, "expected a complex number [re, im]");
    }
    return {read_real(j[0], path + "[0]"), read_real(j[1], path + "[1]")};
}

ComplexMatrix read_matrix(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a nonempty array of rows");
    }
    size_t rows = j.size();
    size_t cols = 0;
    std::vector<Complex> entries;
    for (size_t r = 0; r < rows; r++) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        const json &row = j[r];
        if (!row.is_array() || row.empty()) {
            schema_error(row_path, "expected a nonempty row");
        }
        if (r == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            schema_error(row_path, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        }
        for (size_t c = 0; c < cols; c++) {
            entries.push_back(read_complex(row[c], row_path + "[" + std::to_string(c) + "]"));
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

std::vector<ComplexMatrix> read_matrix_list(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a nonempty array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (size_t k = 0; k < j.size(); k++) {
        out.push_back(read_matrix(j[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

std::vector<double> read_real_vector(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a nonempty array of numbers");
    }
    std::vector<double> out;
    for (size_t k = 0; k < j.size(); k++) {
        out.push_back(read_real(j[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

RealMatrix read_real_matrix(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a nonempty array of rows");
    }
    RealMatrix out;
    for (size_t r = 0; r < j.size(); r++) {
        out.push_back(read_real_vector(j[r], path + "[" + std::to_string(r) + "]"));
    }
    return out;
}

std::string write_matrix_list(const std::vector<ComplexMatrix> &list, const std::string &indent);

json write_matrix(const ComplexMatrix &m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string write_matrix_list(const std::vector<ComplexMatrix> &list, const std::string &indent) {
    std::string out = "[\n";
    for (size_t k = 0; k < list.size(); k++) {
        out += indent + "  " + write_matrix(list[k]).dump() + (k + 1 < list.size() ? ",\n" : "\n");
    }
    return out + indent + "]";
}

TransitionExpectation read_expectation(
    const json &j, const std::string &path, const std::string &label, size_t dim_a, size_t dim_b, double tol) {
    std::vector<ComplexMatrix> kraus = read_matrix_list(j, path);
    for (size_t k = 0; k < kraus.size(); k++) {
        if (kraus[k].rows() != dim_a * dim_b || kraus[k].cols() != dim_a) {
            schema_error(
                path + "[" + std::to_string(k) + "]",
                "Kraus operator has shape " + std::to_string(kraus[k].rows()) + "x" + std::to_string(kraus[k].cols()) +
                    ", expected " + std::to_string(dim_a * dim_b) + "x" + std::to_string(dim_a));
        }
    }
    KrausMap map(dim_a, dim_a * dim_b, std::move(kraus));
    double residual = map.unitality_residual();
    if (residual > tol) {
        std::ostringstream msg;
        msg.precision(1);
        msg << label << " not unital: residual " << std::scientific << residual;
        throw ValidationError(msg.str());
    }
    return TransitionExpectation(std::move(map), dim_a, dim_b, tol);
}

void check_schema_version(const json &doc) {
    auto it = doc.find("schema_version");
    if (it == doc.end()) {
        return;
    }
    if (!it->is_number_integer() || it->get<int64_t>() != kModelSchemaVersion) {
        schema_error("schema_version", "unsupported schema version, expected " + std::to_string(kModelSchemaVersion));
    }
}

}  // namespace

ParseError::ParseError(const std::string &message, size_t line_, size_t column_)
    : std::invalid_argument(message), line(line_), column(column_) {
}

HQMMModel parse_model(std::string_view text, double tol) {
    json doc = parse_json(text);
    if (!doc.is_object()) {
        schema_error("<root>", "expected an object");
    }
    if (!doc.contains("schema_version")) {
        schema_error("<root>", "missing field 'schema_version'");
    }
    check_schema_version(doc);
    size_t n = read_positive(field(doc, "hidden_dim", "<root>"), "hidden_dim");
    size_t m = read_positive(field(doc, "output_dim", "<root>"), "output_dim");
    ComplexMatrix initial = read_matrix(field(doc, "initial_state", "<root>"), "initial_state");
    if (!initial.is_square() || initial.rows() != n) {
        schema_error("initial_state", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    const json &arch_field = field(doc, "architecture", "<root>");
    if (!arch_field.is_string()) {
        schema_error("architecture", "expected a string");
    }
    Architecture arch = parse_architecture(arch_field.get<std::string>());

    const json &steps_json = field(doc, "steps", "<root>");
    if (!steps_json.is_array() || steps_json.empty()) {
        schema_error("steps", "expected a nonempty array");
    }
    std::vector<HQMMStep> steps;
    for (size_t s = 0; s < steps_json.size(); s++) {
        const std::string path = "steps[" + std::to_string(s) + "]";
        const std::string label = "step " + std::to_string(s);
        auto hidden = read_expectation(
            field(steps_json[s], "hidden_kraus", path), path + ".hidden_kraus", label + " hidden map", n, n, tol);
        auto emission = read_expectation(
            field(steps_json[s], "emission_kraus", path), path + ".emission_kraus", label + " emission map", n, m, tol);
        steps.emplace_back(std::move(hidden), std::move(emission));
    }
    DensityOperator rho = [&] {
        try {
            return validate_density(initial, tol);
        } catch (const ValidationError &e) {
            throw ValidationError(std::string("initial_state: ") + e.what());
        }
    }();
    return HQMMModel(std::move(rho), std::move(steps), arch);
}

std::string serialize_model(const HQMMModel &model) {
    // One matrix per line keeps files diffable without one number per line.
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kModelSchemaVersion) + ",\n";
    out += "  \"architecture\": " + json(std::string(architecture_name(model.architecture()))).dump() + ",\n";
    out += "  \"hidden_dim\": " + std::to_string(model.hidden_dim()) + ",\n";
    out += "  \"output_dim\": " + std::to_string(model.output_dim()) + ",\n";
    out += "  \"initial_state\": " + write_matrix(model.initial_state().matrix()).dump() + ",\n";
    out += "  \"steps\": [\n";
    const auto &steps = model.steps();
    for (size_t s = 0; s < steps.size(); s++) {
        out += "    {\n";
        out += "      \"hidden_kraus\": " + write_matrix_list(steps[s].hidden().map().kraus(), "      ") + ",\n";
        out += "      \"emission_kraus\": " + write_matrix_list(steps[s].emission().map().kraus(), "      ") + "\n";
        out += s + 1 < steps.size() ? "    },\n" : "    }\n";
    }
    out += "  ]\n}\n";
    return out;
}

ClassicalHMM parse_hmm(std::string_view text, double tol) {
    json doc = parse_json(text);
    if (!doc.is_object()) {
        schema_error("<root>", "expected an object");
    }
    check_schema_version(doc);
    RawHMM raw;
    raw.initial = read_real_vector(field(doc, "pi", "<root>"), "pi");
    const json &transitions = field(doc, "transitions", "<root>");
    const json &emissions = field(doc, "emissions", "<root>");
    if (!transitions.is_array() || transitions.empty()) {
        schema_error("transitions", "expected a nonempty array of matrices");
    }
    if (!emissions.is_array() || emissions.empty()) {
        schema_error("emissions", "expected a nonempty array of matrices");
    }
    for (size_t k = 0; k < transitions.size(); k++) {
        raw.transitions.push_back(read_real_matrix(transitions[k], "transitions[" + std::to_string(k) + "]"));
    }
    for (size_t k = 0; k < emissions.size(); k++) {
        raw.emissions.push_back(read_real_matrix(emissions[k], "emissions[" + std::to_string(k) + "]"));
    }
    return validate_hmm(raw, tol);
}

std::string serialize_hmm(const ClassicalHMM &hmm) {
    json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["pi"] = hmm.initial();
    json transitions = json::array();
    json emissions = json::array();
    for (size_t n = 0; n < hmm.step_count(); n++) {
        transitions.push_back(hmm.transition(n));
        emissions.push_back(hmm.emission(n));
    }
    doc["transitions"] = std::move(transitions);
    doc["emissions"] = std::move(emissions);
    return doc.dump() + "\n";
}

EffectSequence parse_effects(std::string_view text, double tol) {
    json doc = parse_json(text);
    if (!doc.is_object()) {
        schema_error("<root>", "expected an object");
    }
    check_schema_version(doc);
    const json &list = field(doc, "effects", "<root>");
    if (!list.is_array()) {
        schema_error("effects", "expected an array");
    }
    EffectSequence effects;
    for (size_t k = 0; k < list.size(); k++) {
        const std::string path = "effects[" + std::to_string(k) + "]";
        ComplexMatrix hidden = read_matrix(field(list[k], "hidden", path), path + ".hidden");
        ComplexMatrix output = read_matrix(field(list[k], "output", path), path + ".output");
        try {
            effects.push_back({validate_effect(hidden, tol), validate_effect(output, tol)});
        } catch (const std::invalid_argument &e) {
            throw ValidationError(path + ": " + e.what());
        }
    }
    return effects;
}

std::string serialize_effects(const EffectSequence &effects) {
    std::string out = "{\n  \"schema_version\": " + std::to_string(kModelSchemaVersion) + ",\n  \"effects\": [\n";
    for (size_t k = 0; k < effects.size(); k++) {
        out += "    {\"hidden\": " + write_matrix(effects[k].hidden.matrix()).dump() +
               ", \"output\": " + write_matrix(effects[k].output.matrix()).dump() + "}";
        out += k + 1 < effects.size() ? ",\n" : "\n";
    }
    return out + "  ]\n}\n";
}

}  // namespace hqmm
