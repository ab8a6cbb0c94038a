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

#include "gateverify/reports.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "gateverify/error.hpp"

namespace gateverify {

namespace {

Json dims_json(const Dims &dims) {
    return Json(std::vector<int>(dims.begin(), dims.end()));
}

Json gate_json(const UnitaryGate &g) {
    return {{"name", g.name}, {"kind", gate_kind_name(g.kind)}, {"factor_dims", dims_json(g.dims())}, {"dim", g.dim()}};
}

std::string fmt(double x, int precision = 6) {
    std::ostringstream o;
    o << std::setprecision(precision) << x;
    return o.str();
}

std::string count_text(const Json &c) {
    if (!c.value("available", false)) {
        return "n/a";
    }
    if (c.value("unverifiable", false)) {
        return "unverifiable";
    }
    return std::to_string(c.at("n").get<long long>());
}

long long bound_count(double rate, double eps, double delta) {
    return static_cast<long long>(std::ceil(std::log(1 / delta) / (rate * eps)));
}

}  // namespace

Json gaps_json(const GapReport &g) {
    return {{"nu_p", g.nu_p}, {"beta_p", g.beta_p}, {"nu_m", g.nu_m},         {"beta_m", g.beta_m},
            {"nu", g.nu},     {"beta", g.beta},     {"nu_bound", g.nu_bound()}, {"balanced", g.balanced}};
}

Json test_count_json(const TestCount &c) {
    Json out{{"available", c.available}, {"unverifiable", c.unverifiable}, {"basis", c.basis}};
    out["n"] = c.available && !c.unverifiable ? Json(c.n) : Json(nullptr);
    out["p"] = c.available ? Json(c.p) : Json(nullptr);
    return out;
}

Json sdp_json(const SdpResult &r) {
    return {{"value", r.value},
            {"upper_certificate", r.upper_certificate},
            {"dual_bound", r.dual_bound},
            {"iterations", r.iterations},
            {"converged", r.converged}};
}

Json analyze_strategy(const VerificationStrategy &s, double eps, double delta, FidelityKind kind,
                      const SdpOptions &options) {
    Json out;
    out["gate"] = gate_json(s.gate);
    out["preparation"] = {{"kind", s.ensemble.kind()},
                          {"states", s.ensemble.size()},
                          {"balanced", s.ensemble.balanced()},
                          {"balance_defect", s.ensemble.balance_defect()}};
    std::map<std::string, int> protocols;
    double min_nu_j = 1;
    for (const auto &v : s.verifiers) {
        protocols[v.protocol]++;
        min_nu_j = std::min(min_nu_j, v.nu);
    }
    out["measurement"] = {{"protocols", protocols}, {"min_nu_j", min_nu_j}};
    out["gaps"] = gaps_json(s.gaps);
    out["epsilon"] = eps;
    out["delta"] = delta;
    out["fidelity_kind"] = fidelity_kind_name(kind);

    TestCountReport counts = num_tests(s, eps, delta, kind, options);
    out["epsilon_entanglement"] = counts.eps_e;
    Json p;
    p["bound"] = s.gaps.balanced ? Json(p_e_bound(s, counts.eps_e)) : Json(nullptr);
    if (counts.exact.available) {
        p["sdp"] = sdp_json(counts.sdp);
    } else {
        p["sdp"] = nullptr;
        p["sdp_skipped"] = "d = " + std::to_string(s.gate.dim()) + " exceeds the SDP limit " +
                           std::to_string(options.max_dim);
    }
    out["p_e"] = p;
    out["num_tests"] = {{"exact", test_count_json(counts.exact)},
                        {"gap", test_count_json(counts.gap)},
                        {"bound", test_count_json(counts.bound)}};
    Json notes = Json::array();
    if (s.gate.kind == GateKind::kCswap) {
        notes.push_back(
            "nu_M comes from the uniform stabilizer protocol on the GHZ-type outputs (4/7); the tabulated 2/3 relies "
            "on an optimal GHZ protocol that is not implemented");
    }
    if (!s.gaps.balanced) {
        notes.push_back("ensemble is not balanced: the 1 - nu*eps bound and nu >= nu_P*nu_M do not apply");
    }
    out["notes"] = notes;
    return out;
}

Json analyze_report(const ScenarioConfig &config, const SdpOptions &options) {
    VerificationStrategy s = scenario_strategy(config);
    Json out = analyze_strategy(s, config.epsilon, config.delta, config.fidelity, options);
    out["schema"] = kReportSchema;
    out["command"] = "analyze";
    out["measurement"]["policy"] = policy_name(config.policy);
    return out;
}

std::string analyze_text(const Json &r) {
    std::ostringstream o;
    const Json &g = r.at("gaps");
    o << "gate            " << r.at("gate").at("name").get<std::string>() << " (d = " << r.at("gate").at("dim") << ")\n";
    o << "preparation     " << r.at("preparation").at("kind").get<std::string>() << ", "
      << r.at("preparation").at("states") << " states, balanced = " << r.at("preparation").at("balanced") << "\n";
    o << "policy          " << r.at("measurement").value("policy", "") << "\n";
    o << "nu_P            " << fmt(g.at("nu_p"), 10) << "\n";
    o << "nu_M            " << fmt(g.at("nu_m"), 10) << "\n";
    o << "nu_P*nu_M       " << fmt(g.at("nu_bound"), 10) << "\n";
    o << "nu (exact)      " << fmt(g.at("nu"), 10) << "\n";
    o << "epsilon         " << r.at("epsilon") << " (" << r.at("fidelity_kind").get<std::string>()
      << "), epsilon_E = " << fmt(r.at("epsilon_entanglement"), 10) << "\n";
    o << "delta           " << r.at("delta") << "\n";
    const Json &p = r.at("p_e");
    if (!p.at("bound").is_null()) {
        o << "p_E bound       " << fmt(p.at("bound"), 10) << "\n";
    }
    if (!p.at("sdp").is_null()) {
        o << "p_E sdp         " << fmt(p.at("sdp").at("value"), 10) << " (upper " << fmt(p.at("sdp").at("upper_certificate"), 10)
          << ", converged = " << p.at("sdp").at("converged") << ")\n";
    } else {
        o << "p_E sdp         skipped: " << p.value("sdp_skipped", "") << "\n";
    }
    const Json &n = r.at("num_tests");
    o << "N (sdp)         " << count_text(n.at("exact")) << "\n";
    o << "N (1-nu*eps)    " << count_text(n.at("gap")) << "\n";
    o << "N (nu_P*nu_M)   " << count_text(n.at("bound")) << "\n";
    for (const auto &note : r.at("notes")) {
        o << "note: " << note.get<std::string>() << "\n";
    }
    return o.str();
}

namespace {

struct TableRow {
    std::string unitary;
    int d1;
    int n;
    std::string preparation;
    std::string measurement;
    double nu_p_table;
    double nu_m_table;
    /// Exact value expected from the implemented protocol.
    double nu_m_expected;
    std::string status;
    std::string note;
    std::function<VerificationStrategy()> build;
};

ScenarioConfig table_config(const UnitaryGate &gate, const std::string &prep, int r, MeasurementPolicy policy) {
    ScenarioConfig c;
    c.gate = gate;
    c.preparation = prep;
    c.r = r;
    c.policy = policy;
    return c;
}

std::vector<TableRow> table_rows(const TableOptions &opt) {
    std::vector<TableRow> rows;
    auto strategy_of = [](UnitaryGate g, std::string prep, int r, MeasurementPolicy p) {
        return [=] { return scenario_strategy(table_config(g, prep, r, p)); };
    };
    auto uniform_gap = [](int d, int n) {
        const double dn = std::pow(d, n);
        return (dn - dn / d) / (dn - 1);
    };
    for (int d1 : {2, 3}) {
        const int max_n = d1 == 2 ? opt.max_n : opt.max_n_qutrit;
        for (int n = 2; n <= max_n; n++) {
            UnitaryGate cl = gate_library("clifford", n, d1);
            if (d1 == 2) {
                rows.push_back({"Clifford", 2, n, "Pauli", "Pauli", 2.0 / 3, 0.5, uniform_gap(2, n), "ok",
                                "table nu_M = 1/2 is the guaranteed bound; the exact uniform-stabilizer gap is reported",
                                strategy_of(cl, "mub", 3, MeasurementPolicy::kCliffordPauli)});
            } else {
                rows.push_back({"Clifford", d1, n, "Pauli", "Pauli", d1 / (d1 + 1.0), (d1 - 1.0) / d1,
                                uniform_gap(d1, n), "ok",
                                "odd prime: d1+1 product MUB; table nu_M = (d1-1)/d1 is the guaranteed bound",
                                strategy_of(cl, "mub", d1 + 1, MeasurementPolicy::kCliffordPauli)});
            }
            rows.push_back({"Clifford", d1, n, "Pauli", "Pauli (generators)", 2.0 / 3, 1.0 / n, 1.0 / n, "ok",
                            "general local dimension: uniform mixture of n generator tests",
                            strategy_of(cl, "mub", 3, MeasurementPolicy::kGenerator)});
            if (d1 == 2) {
                rows.push_back({"C^(n-1)Z", 2, n, "Pauli", "Pauli", 0.5, 1.0 / n, 1.0 / n, "ok", "",
                                strategy_of(gate_library("cz", n, 2), "mub", 2, MeasurementPolicy::kColoring)});
                rows.push_back({"C^(n-1)X", 2, n, "Pauli", "Pauli", 0.5, 1.0 / n, 1.0 / n, "ok", "",
                                strategy_of(gate_library("cx", n, 2), "mub", 2, MeasurementPolicy::kColoring)});
            } else {
                for (const char *name : {"C^(n-1)Z", "C^(n-1)X"}) {
                    rows.push_back({name, d1, n, "Pauli", "Pauli", 0.5, 1.0 / n, 1.0 / n, "out-of-scope",
                                    "no qudit construction is implemented", nullptr});
                }
            }
            if (d1 == 2 && n == 3) {
                rows.push_back({"CSWAP", 2, 3, "Pauli", "Pauli", 2.0 / 3, 2.0 / 3, 4.0 / 7, "deviation",
                                "GHZ-type outputs use the uniform stabilizer protocol (4/7); the table's 2/3 relies on "
                                "an optimal GHZ protocol that is not implemented",
                                strategy_of(gate_library("cswap", 3, 2), "mub", 3, MeasurementPolicy::kAuto)});
            }
            UnitaryGate perm = gate_library("cyclic_shift", n, d1);
            rows.push_back({"Permutation", d1, n, "Pauli", "Pauli", 2.0 / 3, 1, 1, "ok", "",
                            strategy_of(perm, "mub", 3, MeasurementPolicy::kExactProduct)});
            rows.push_back({"Permutation", d1, n, "Product", "Product", d1 / (d1 + 1.0), 1, 1, "ok", "",
                            strategy_of(perm, "two-design", 0, MeasurementPolicy::kExactProduct)});
        }
    }
    // d1 = 4 exercises the generator policy on a non-prime local dimension.
    rows.push_back({"Clifford", 4, 2, "Pauli", "Pauli (generators)", 2.0 / 3, 0.5, 0.5, "ok",
                    "non-prime local dimension: uniform mixture of n generator tests",
                    strategy_of(gate_library("clifford", 2, 4), "mub", 3, MeasurementPolicy::kGenerator)});
    return rows;
}

}  // namespace

Json table_report(const TableOptions &opt) {
    Json out;
    out["schema"] = kReportSchema;
    out["command"] = "table";
    out["epsilon"] = opt.epsilon;
    out["delta"] = opt.delta;
    Json rows = Json::array();
    for (const char *name : {"Bipartite (Pauli)", "Bipartite (Product)"}) {
        rows.push_back({{"unitary", name},
                        {"status", "out-of-scope"},
                        {"note", "out of scope (external adaptive protocol)"}});
    }
    for (auto &row : table_rows(opt)) {
        Json r{{"unitary", row.unitary},       {"d1", row.d1},
               {"n", row.n},                   {"preparation", row.preparation},
               {"measurement", row.measurement}, {"status", row.status},
               {"note", row.note},             {"nu_p_table", row.nu_p_table},
               {"nu_m_table", row.nu_m_table}, {"nu_lb_table", row.nu_p_table * row.nu_m_table}};
        r["n_upper_table"] = bound_count(row.nu_p_table * row.nu_m_table, opt.epsilon, opt.delta);
        if (!row.build) {
            rows.push_back(std::move(r));
            continue;
        }
        VerificationStrategy s = row.build();
        const GapReport &g = s.gaps;
        r["nu_p"] = g.nu_p;
        r["nu_m"] = g.nu_m;
        r["nu_bound"] = g.nu_bound();
        r["nu"] = g.nu;
        r["n_bound"] = bound_count(g.nu_bound(), opt.epsilon, opt.delta);
        r["n_from_nu"] = count_from_probability(1 - g.nu * opt.epsilon, opt.delta, "1-nu*eps").n;
        const bool nu_p_ok = std::abs(g.nu_p - row.nu_p_table) <= 1e-9;
        const bool nu_m_ok = std::abs(g.nu_m - row.nu_m_expected) <= 1e-9;
        const bool nu_ok = g.nu >= g.nu_bound() - 1e-9;
        r["checks"] = {{"nu_p", nu_p_ok}, {"nu_m", nu_m_ok}, {"nu_ge_bound", nu_ok}};
        r["passed"] = nu_p_ok && nu_m_ok && nu_ok;
        rows.push_back(std::move(r));
    }
    out["rows"] = rows;
    return out;
}

std::string table_text(const Json &report) {
    std::ostringstream o;
    o << std::left << std::setw(20) << "unitary" << std::setw(4) << "d1" << std::setw(4) << "n" << std::setw(10) << "prep"
      << std::setw(20) << "measurement" << std::setw(10) << "nu_P" << std::setw(10) << "nu_M" << std::setw(10)
      << "nu_M(tab)" << std::setw(10) << "nu_P*nu_M" << std::setw(10) << "nu" << std::setw(9) << "N_tab" << std::setw(9)
      << "N_bound" << "status\n";
    for (const auto &r : report.at("rows")) {
        o << std::setw(20) << r.at("unitary").get<std::string>();
        if (!r.contains("d1")) {
            o << r.at("note").get<std::string>() << "\n";
            continue;
        }
        o << std::setw(4) << r.at("d1").get<int>() << std::setw(4) << r.at("n").get<int>() << std::setw(10)
          << r.at("preparation").get<std::string>() << std::setw(20) << r.at("measurement").get<std::string>();
        if (r.contains("nu")) {
            o << std::setw(10) << fmt(r.at("nu_p"), 5) << std::setw(10) << fmt(r.at("nu_m"), 5) << std::setw(10)
              << fmt(r.at("nu_m_table"), 5) << std::setw(10) << fmt(r.at("nu_bound"), 5) << std::setw(10)
              << fmt(r.at("nu"), 5) << std::setw(9) << r.at("n_upper_table").get<long long>() << std::setw(9)
              << r.at("n_bound").get<long long>();
        } else {
            o << std::setw(79) << "-";
        }
        o << r.at("status").get<std::string>() << "\n";
    }
    return o.str();
}

std::string table_csv(const Json &report) {
    std::ostringstream o;
    o << std::setprecision(17);
    o << "unitary,d1,n,preparation,measurement,nu_p,nu_m,nu_m_table,nu_bound,nu,n_upper_table,n_bound,status\n";
    for (const auto &r : report.at("rows")) {
        if (!r.contains("d1")) {
            o << '"' << r.at("unitary").get<std::string>() << "\",,,,,,,,,,,," << r.at("status").get<std::string>()
              << "\n";
            continue;
        }
        o << r.at("unitary").get<std::string>() << ',' << r.at("d1") << ',' << r.at("n") << ','
          << r.at("preparation").get<std::string>() << ',' << r.at("measurement").get<std::string>() << ',';
        if (r.contains("nu")) {
            o << r.at("nu_p").get<double>() << ',' << r.at("nu_m").get<double>() << ','
              << r.at("nu_m_table").get<double>() << ',' << r.at("nu_bound").get<double>() << ','
              << r.at("nu").get<double>() << ',' << r.at("n_upper_table") << ',' << r.at("n_bound") << ',';
        } else {
            o << ",,,,," << r.at("n_upper_table") << ",,";
        }
        o << r.at("status").get<std::string>() << "\n";
    }
    return o.str();
}

std::string pcurve_csv(const ScenarioConfig &config, const std::vector<double> &grid, const SdpOptions &options) {
    require(!grid.empty(), ErrorCode::kInvalidArgument, "epsilon grid is empty");
    VerificationStrategy s = scenario_strategy(config);
    const int d = s.gate.dim();
    std::ostringstream o;
    o << std::setprecision(17);
    o << "epsilon,epsilon_e,p_bound,p_sdp,upper_certificate,converged\n";
    for (double eps : grid) {
        const double eps_e = config.fidelity == FidelityKind::kAverage ? (d + 1) * eps / d : eps;
        require(eps >= 0 && eps_e <= 1, ErrorCode::kInvalidArgument, "epsilon grid value out of range");
        o << eps << ',' << eps_e << ',';
        if (s.gaps.balanced) {
            o << p_e_bound(s, eps_e);
        }
        o << ',';
        if (d <= options.max_dim) {
            SdpResult r = p_e_sdp(s, eps_e, options);
            o << r.value << ',' << r.upper_certificate << ',' << (r.converged ? 1 : 0);
        } else {
            o << ",,";
        }
        o << '\n';
    }
    return o.str();
}

Json simulate_report(const ScenarioConfig &config, std::string *trials_csv, const SdpOptions &options) {
    VerificationStrategy s = scenario_strategy(config);
    RunConfig run;
    run.noise = scenario_noise(config);
    run.repetitions = config.repetitions;
    run.seed = config.seed;
    run.mode = config.sampling;
    run.record_trials = config.record_trials;
    Json out;
    out["schema"] = kReportSchema;
    out["command"] = "simulate";
    out["gate"] = gate_json(s.gate);
    out["gaps"] = gaps_json(s.gaps);
    std::string n_source = "config";
    run.trials = config.trials;
    if (run.trials == 0) {
        TestCountReport counts = num_tests(s, config.epsilon, config.delta, config.fidelity, options);
        const TestCount &c = counts.exact.available ? counts.exact : counts.gap;
        require(c.available && !c.unverifiable, ErrorCode::kInvalidArgument,
                "cannot derive N: the strategy does not verify the gate");
        run.trials = c.n;
        n_source = c.basis;
    }
    RunReport r = run_trials(s, run);
    out["noise"] = {{"kind", noise_kind_name(run.noise.kind)},
                    {"p", run.noise.p},
                    {"angle", run.noise.angle},
                    {"calibrated", config.calibrated_noise}};
    out["run"] = {{"trials", r.trials},
                  {"trials_source", n_source},
                  {"repetitions", r.repetitions},
                  {"seed", config.seed},
                  {"sampling", sampling_mode_name(config.sampling)},
                  {"epsilon", config.epsilon},
                  {"delta", config.delta},
                  {"fidelity_kind", fidelity_kind_name(config.fidelity)}};
    out["results"] = {{"total_trials", r.total_trials},
                      {"passed", r.passed},
                      {"empirical_rate", r.empirical_rate},
                      {"standard_error", r.standard_error},
                      {"exact_pass", r.exact_pass},
                      {"z_score", r.z_score},
                      {"flagged", r.flagged},
                      {"accepted_experiments", r.accepted_experiments},
                      {"acceptance_frequency", r.acceptance_frequency},
                      {"predicted_acceptance", r.predicted_acceptance},
                      {"f_e", r.f_e},
                      {"f_a", r.f_a}};
    if (trials_csv && config.record_trials) {
        *trials_csv = trial_records_csv(s, r);
    }
    return out;
}

std::string simulate_text(const Json &report) {
    std::ostringstream o;
    const Json &run = report.at("run");
    const Json &res = report.at("results");
    o << "gate                 " << report.at("gate").at("name").get<std::string>() << "\n";
    o << "noise                " << report.at("noise").at("kind").get<std::string>() << "\n";
    o << "F_E / F_A            " << fmt(res.at("f_e"), 10) << " / " << fmt(res.at("f_a"), 10) << "\n";
    o << "N x R                " << run.at("trials") << " x " << run.at("repetitions") << " ("
      << run.at("trials_source").get<std::string>() << ")\n";
    o << "pass rate            " << fmt(res.at("empirical_rate"), 8) << " +- " << fmt(res.at("standard_error"), 3)
      << " (exact " << fmt(res.at("exact_pass"), 10) << ", z = " << fmt(res.at("z_score"), 3) << ")\n";
    o << "acceptance frequency " << fmt(res.at("acceptance_frequency"), 8) << " (predicted "
      << fmt(res.at("predicted_acceptance"), 8) << ")\n";
    if (res.at("flagged").get<bool>()) {
        o << "warning: empirical rate deviates from the exact value by more than 4 sigma\n";
    }
    return o.str();
}

Json export_protocol(const ScenarioConfig &config) {
    VerificationStrategy s = scenario_strategy(config);
    const Dims &dims = s.gate.dims();
    Json out;
    out["schema"] = kProtocolSchema;
    out["command"] = "export-protocol";
    out["gate"] = gate_json(s.gate);
    out["preparation"] = s.ensemble.kind();
    out["policy"] = policy_name(config.policy);
    out["gaps"] = gaps_json(s.gaps);
    Json states = Json::array();
    for (size_t j = 0; j < s.ensemble.size(); j++) {
        const auto &st = s.ensemble.states()[j];
        const auto &v = s.verifiers[j];
        Json prep = Json::array();
        for (const auto &l : st.labels) {
            prep.push_back({{"basis", l.basis}, {"index", l.index}});
        }
        Json tests = Json::array();
        for (const auto &t : v.tests) {
            Json tj{{"label", t.test.label}, {"probability", t.probability}};
            if (t.test.is_local()) {
                Json settings = Json::array();
                for (const auto &b : t.test.settings) {
                    settings.push_back(b.label);
                }
                Json accept = Json::array();
                for (size_t o = 0; o < t.test.accept.size(); o++) {
                    if (!t.test.accept[o]) {
                        continue;
                    }
                    std::vector<int> tuple(dims.size());
                    size_t rem = o;
                    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; k--) {
                        tuple[k] = static_cast<int>(rem % dims[k]);
                        rem /= dims[k];
                    }
                    accept.push_back(tuple);
                }
                tj["settings"] = settings;
                tj["accept"] = accept;
            } else {
                tj["operator"] = matrix_to_json(t.test.op.matrix());
            }
            tests.push_back(std::move(tj));
        }
        states.push_back({{"index", j},
                          {"probability", st.probability},
                          {"preparation", prep},
                          {"protocol", v.protocol},
                          {"nu", v.nu},
                          {"tests", tests}});
    }
    out["states"] = states;
    return out;
}

void validate_document(const Json &doc) {
    require(doc.is_object(), ErrorCode::kSchema, "document must be a JSON object");
    const std::string schema = doc.value("schema", "");
    require(schema == kReportSchema || schema == kProtocolSchema, ErrorCode::kSchema,
            "unknown document schema '" + schema + "'");
    const std::string command = doc.value("command", "");
    auto need = [&](std::initializer_list<const char *> keys) {
        for (const char *k : keys) {
            require(doc.contains(k), ErrorCode::kSchema, "document lacks required field '" + std::string(k) + "'");
        }
    };
    if (command == "analyze") {
        need({"gate", "preparation", "measurement", "gaps", "epsilon", "delta", "fidelity_kind", "p_e", "num_tests"});
        for (const char *k : {"nu_p", "nu_m", "nu", "nu_bound"}) {
            require(doc.at("gaps").contains(k) && doc.at("gaps").at(k).is_number(), ErrorCode::kSchema,
                    std::string("gaps.") + k + " must be a number");
        }
    } else if (command == "table") {
        need({"rows", "epsilon", "delta"});
        for (const auto &r : doc.at("rows")) {
            require(r.contains("unitary") && r.contains("status"), ErrorCode::kSchema,
                    "table rows need unitary and status");
        }
    } else if (command == "simulate") {
        need({"gate", "noise", "run", "results"});
    } else if (command == "export-protocol") {
        require(schema == kProtocolSchema, ErrorCode::kSchema, "protocol exports use the protocol schema");
        need({"gate", "states", "gaps"});
        for (const auto &st : doc.at("states")) {
            require(st.contains("tests") && st.contains("preparation"), ErrorCode::kSchema,
                    "protocol states need preparation and tests");
        }
    } else {
        fail(ErrorCode::kSchema, "unknown document command '" + command + "'");
    }
}

}  // namespace gateverify
