// Copyright 2026 The gateverify Authors
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

#include "gateverify/scenario.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "gateverify/error.hpp"

namespace gateverify {

namespace {

[[noreturn]] void schema_error(const std::string &what) {
    fail(ErrorCode::kSchema, what);
}

void allow_keys(const Json &j, const std::string &where, std::initializer_list<const char *> keys) {
    if (!j.is_object()) {
        schema_error(where + " must be an object");
    }
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto &item : j.items()) {
        if (!allowed.count(item.key())) {
            schema_error("unknown field '" + item.key() + "' in " + where);
        }
    }
}

double get_number(const Json &j, const char *key, double fallback, const std::string &where) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number()) {
        schema_error(where + "." + key + " must be a number");
    }
    return j.at(key).get<double>();
}

long long get_integer(const Json &j, const char *key, long long fallback, const std::string &where) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number_integer()) {
        schema_error(where + "." + key + " must be an integer");
    }
    return j.at(key).get<long long>();
}

std::string get_string(const Json &j, const char *key, const std::string &fallback, const std::string &where) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_string()) {
        schema_error(where + "." + key + " must be a string");
    }
    return j.at(key).get<std::string>();
}

Dims dims_from_json(const Json &j, const std::string &where) {
    Dims dims;
    if (j.contains("factor_dims")) {
        const Json &f = j.at("factor_dims");
        if (!f.is_array() || f.empty()) {
            schema_error(where + ".factor_dims must be a non-empty array");
        }
        for (const auto &x : f) {
            if (!x.is_number_integer() || x.get<int>() < 2) {
                schema_error(where + ".factor_dims entries must be integers >= 2");
            }
            dims.push_back(x.get<int>());
        }
        return dims;
    }
    const long long n = get_integer(j, "n", 2, where);
    const long long d1 = get_integer(j, "d1", 2, where);
    if (n < 1 || n > 16 || d1 < 2 || d1 > 64) {
        schema_error(where + ": n must lie in [1, 16] and d1 in [2, 64]");
    }
    return Dims(static_cast<size_t>(n), static_cast<int>(d1));
}

}  // namespace

Matrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        schema_error("matrix must be a non-empty array of rows");
    }
    const size_t rows = j.size();
    const size_t cols = j.front().size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            schema_error("matrix rows must have equal length");
        }
        for (size_t c = 0; c < cols; c++) {
            const Json &x = j[r][c];
            if (x.is_number()) {
                m(r, c) = x.get<double>();
            } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
                m(r, c) = Complex(x[0].get<double>(), x[1].get<double>());
            } else {
                schema_error("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

Json matrix_to_json(const Matrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        out.push_back(std::move(row));
    }
    return out;
}

UnitaryGate gate_from_json(const Json &j) {
    allow_keys(j, "gate", {"name", "n", "d1", "factor_dims", "matrix", "circuit", "permutation"});
    const int forms = static_cast<int>(j.contains("matrix")) + static_cast<int>(j.contains("circuit")) +
                      static_cast<int>(j.contains("permutation"));
    if (forms > 1) {
        schema_error("gate must give at most one of matrix, circuit, permutation");
    }
    const Dims dims = dims_from_json(j, "gate");
    if (j.contains("matrix")) {
        Matrix m = matrix_from_json(j.at("matrix"));
        require(m.rows() == dims_product(dims), ErrorCode::kDimension, "gate matrix size differs from factor dims");
        return make_unitary(get_string(j, "name", "explicit", "gate"), GateKind::kExplicit, DenseOperator(m, dims));
    }
    if (j.contains("circuit")) {
        std::vector<CircuitOp> ops;
        if (!j.at("circuit").is_array()) {
            schema_error("gate.circuit must be an array");
        }
        for (const auto &op : j.at("circuit")) {
            allow_keys(op, "gate.circuit[]", {"gate", "sites"});
            CircuitOp c;
            c.gate = get_string(op, "gate", "", "gate.circuit[]");
            if (!op.contains("sites") || !op.at("sites").is_array()) {
                schema_error("gate.circuit[].sites must be an array");
            }
            for (const auto &s : op.at("sites")) {
                if (!s.is_number_integer()) {
                    schema_error("gate.circuit[].sites entries must be integers");
                }
                c.sites.push_back(s.get<int>());
            }
            ops.push_back(std::move(c));
        }
        UnitaryGate g = clifford_circuit(ops, dims);
        if (j.contains("name")) {
            g.name = get_string(j, "name", "", "gate");
        }
        return g;
    }
    if (j.contains("permutation")) {
        std::vector<int> perm;
        if (!j.at("permutation").is_array()) {
            schema_error("gate.permutation must be an array");
        }
        for (const auto &x : j.at("permutation")) {
            if (!x.is_number_integer()) {
                schema_error("gate.permutation entries must be integers");
            }
            perm.push_back(x.get<int>());
        }
        return permutation_gate(perm, dims);
    }
    if (!j.contains("name")) {
        schema_error("gate needs a name, matrix, circuit or permutation");
    }
    if (j.contains("factor_dims")) {
        const bool uniform = std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims.front(); });
        require(uniform, ErrorCode::kUnsupported, "named gates need a uniform local dimension");
    }
    return gate_library(get_string(j, "name", "", "gate"), static_cast<int>(dims.size()), dims.front());
}

NoiseModel noise_from_json(const Json &j, const Dims &dims, bool &calibrated, NoiseModel::Kind &family) {
    allow_keys(j, "noise", {"kind", "p", "angle", "generator", "operators", "family"});
    calibrated = false;
    const std::string kind = get_string(j, "kind", "none", "noise");
    const int d = dims_product(dims);
    if (kind == "none") {
        return NoiseModel::none();
    }
    if (kind == "depolarizing" || kind == "per-site-depolarizing") {
        const double p = get_number(j, "p", -1, "noise");
        require(p >= 0 && p <= 1, ErrorCode::kInvalidArgument, "noise.p must lie in [0, 1]");
        return kind == "depolarizing" ? NoiseModel::depolarizing(p) : NoiseModel::per_site_depolarizing(p);
    }
    if (kind == "overrotation") {
        Matrix h;
        if (j.contains("generator")) {
            h = matrix_from_json(j.at("generator"));
            require(h.rows() == d && h.cols() == d, ErrorCode::kDimension, "noise.generator has the wrong size");
        }
        return NoiseModel::overrotation(get_number(j, "angle", 0, "noise"), h);
    }
    if (kind == "kraus") {
        if (!j.contains("operators") || !j.at("operators").is_array()) {
            schema_error("noise.operators must be an array of matrices");
        }
        std::vector<Matrix> kraus;
        for (const auto &k : j.at("operators")) {
            kraus.push_back(matrix_from_json(k));
        }
        return NoiseModel::explicit_kraus(std::move(kraus));
    }
    if (kind == "calibrated") {
        calibrated = true;
        const std::string fam = get_string(j, "family", "depolarizing", "noise");
        if (fam == "depolarizing") {
            family = NoiseModel::Kind::kDepolarizing;
        } else if (fam == "overrotation") {
            family = NoiseModel::Kind::kOverrotation;
        } else {
            schema_error("noise.family must be 'depolarizing' or 'overrotation'");
        }
        return NoiseModel::none();
    }
    schema_error("unknown noise kind '" + kind + "'");
}

OrthonormalBasis basis_from_label(const std::string &label, int d) {
    if (label == "I") {
        return weyl_eigenbasis(d, 0, 0);
    }
    for (auto &b : pauli_eigenbases(d)) {
        if (b.label == label) {
            return b;
        }
    }
    if (d == 2 && label == "XZ") {
        return weyl_eigenbasis(2, 1, 1);
    }
    static const std::regex weyl_re(R"(X\^(\d+)Z\^(\d+))");
    std::smatch m;
    if (std::regex_match(label, m, weyl_re)) {
        return weyl_eigenbasis(d, std::stoi(m[1]), std::stoi(m[2]));
    }
    fail(ErrorCode::kInvalidArgument, "unknown basis label '" + label + "' for d = " + std::to_string(d));
}

namespace {

LocalTest test_from_json(const Json &j, const Dims &dims) {
    const std::string where = "measurement.tests[][]";
    allow_keys(j, where, {"probability", "settings", "accept", "truth_table", "operator", "label"});
    const std::string label = get_string(j, "label", "", where);
    if (j.contains("operator")) {
        return make_operator_test(DenseOperator(matrix_from_json(j.at("operator")), dims), label);
    }
    if (!j.contains("settings") || !j.at("settings").is_array() || j.at("settings").size() != dims.size()) {
        schema_error(where + ".settings must list one basis label per site");
    }
    std::vector<OrthonormalBasis> settings;
    std::string auto_label;
    for (size_t k = 0; k < dims.size(); k++) {
        if (!j.at("settings")[k].is_string()) {
            schema_error(where + ".settings entries must be strings");
        }
        settings.push_back(basis_from_label(j.at("settings")[k].get<std::string>(), dims[k]));
        auto_label += settings.back().label;
    }
    const size_t total = static_cast<size_t>(dims_product(dims));
    std::vector<char> accept(total, 0);
    if (j.contains("truth_table")) {
        const Json &t = j.at("truth_table");
        if (!t.is_array() || t.size() != total) {
            schema_error(where + ".truth_table must have one entry per outcome tuple");
        }
        for (size_t o = 0; o < total; o++) {
            accept[o] = t[o].is_boolean() ? t[o].get<bool>() : t[o].get<int>() != 0;
        }
    } else if (j.contains("accept")) {
        for (const auto &tuple : j.at("accept")) {
            if (!tuple.is_array() || tuple.size() != dims.size()) {
                schema_error(where + ".accept entries must be outcome tuples");
            }
            size_t idx = 0;
            for (size_t k = 0; k < dims.size(); k++) {
                const int v = tuple[k].get<int>();
                require(v >= 0 && v < dims[k], ErrorCode::kInvalidArgument, "outcome index out of range");
                idx = idx * dims[k] + v;
            }
            accept[idx] = 1;
        }
    } else {
        schema_error(where + " needs accept, truth_table or operator");
    }
    return make_local_test(std::move(settings), std::move(accept), label.empty() ? auto_label : label);
}

}  // namespace

ScenarioConfig parse_scenario(const Json &j) {
    allow_keys(j, "config",
               {"schema", "gate", "preparation", "measurement", "epsilon", "delta", "fidelity_kind", "noise", "trials",
                "repetitions", "seed", "sampling", "record_trials"});
    if (get_string(j, "schema", "", "config") != kConfigSchema) {
        schema_error(std::string("config.schema must be '") + kConfigSchema + "'");
    }
    if (!j.contains("gate")) {
        schema_error("config.gate is required");
    }
    ScenarioConfig c;
    c.gate = gate_from_json(j.at("gate"));
    const Dims &dims = c.gate.dims();

    if (j.contains("preparation")) {
        const Json &p = j.at("preparation");
        allow_keys(p, "preparation", {"kind", "r"});
        c.preparation = get_string(p, "kind", "mub", "preparation");
        if (c.preparation != "mub" && c.preparation != "two-design") {
            schema_error("preparation.kind must be 'mub' or 'two-design'");
        }
        c.r = static_cast<int>(get_integer(p, "r", 0, "preparation"));
    }

    if (j.contains("measurement")) {
        const Json &m = j.at("measurement");
        allow_keys(m, "measurement", {"policy", "tests"});
        c.policy = parse_policy(get_string(m, "policy", "auto", "measurement"));
        if (m.contains("tests")) {
            if (c.policy != MeasurementPolicy::kUserSupplied) {
                schema_error("measurement.tests needs policy 'user-supplied'");
            }
            if (!m.at("tests").is_array()) {
                schema_error("measurement.tests must be an array (one test list per ensemble state)");
            }
            for (const auto &per_state : m.at("tests")) {
                std::vector<WeightedTest> tests;
                for (const auto &t : per_state) {
                    const double p = get_number(t, "probability", -1, "measurement.tests[][]");
                    tests.push_back({test_from_json(t, dims), p});
                }
                c.user_tests.push_back(std::move(tests));
            }
        }
    }
    if (c.policy == MeasurementPolicy::kUserSupplied && c.user_tests.empty()) {
        schema_error("policy 'user-supplied' needs measurement.tests");
    }

    c.epsilon = get_number(j, "epsilon", c.epsilon, "config");
    c.delta = get_number(j, "delta", c.delta, "config");
    c.fidelity = parse_fidelity_kind(get_string(j, "fidelity_kind", "entanglement", "config"));
    if (j.contains("noise")) {
        c.noise = noise_from_json(j.at("noise"), dims, c.calibrated_noise, c.calibration_family);
    }
    if (j.contains("trials") && j.at("trials").is_string()) {
        if (j.at("trials").get<std::string>() != "auto") {
            schema_error("config.trials must be a positive integer or \"auto\"");
        }
    } else {
        c.trials = get_integer(j, "trials", 0, "config");
        require(c.trials >= 0, ErrorCode::kInvalidArgument, "config.trials must be positive");
    }
    c.repetitions = get_integer(j, "repetitions", 1, "config");
    require(c.repetitions >= 1, ErrorCode::kInvalidArgument, "config.repetitions must be at least 1");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
            schema_error("config.seed must be a non-negative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    c.sampling = parse_sampling_mode(get_string(j, "sampling", "per-site", "config"));
    if (j.contains("record_trials")) {
        if (!j.at("record_trials").is_boolean()) {
            schema_error("config.record_trials must be a boolean");
        }
        c.record_trials = j.at("record_trials").get<bool>();
    }
    return c;
}

ScenarioConfig parse_scenario_text(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        schema_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

TestEnsemble scenario_ensemble(const ScenarioConfig &config) {
    const Dims &dims = config.gate.dims();
    if (config.preparation == "two-design") {
        return product_two_design_ensemble(dims);
    }
    int r = config.r;
    if (r == 0) {
        int available = 64;
        for (int d : dims) {
            available = std::min(available, available_pauli_bases(d));
        }
        r = std::min(3, available);
    }
    return product_mub_ensemble(dims, r);
}

VerificationStrategy scenario_strategy(const ScenarioConfig &config) {
    return build_strategy(config.gate, scenario_ensemble(config), config.policy, config.user_tests);
}

NoiseModel scenario_noise(const ScenarioConfig &config) {
    if (config.calibrated_noise) {
        return infidelity_calibrated_noise(config.gate, config.epsilon, config.fidelity, config.calibration_family);
    }
    return config.noise;
}

}  // namespace gateverify
