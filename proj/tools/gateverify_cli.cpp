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

// Command-line front end. All computation goes through the C API; this file
// only reads configs, applies flag overrides and writes documents.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gateverify/gateverify.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

struct Failure {
    int status;
    std::string message;
};

void check(gv_status status) {
    if (status != GV_OK) {
        throw Failure{static_cast<int>(status), std::string(gv_status_name(status)) + ": " + gv_last_error()};
    }
}

/// Owns a string returned by the C API.
struct OwnedString {
    char *p = nullptr;
    ~OwnedString() {
        gv_string_free(p);
    }
    std::string str() const {
        return p ? std::string(p) : std::string();
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{GV_IO, "io: cannot read '" + path + "'"};
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!text.empty() && text.back() != '\n') {
        out << '\n';
    }
    if (!out) {
        throw Failure{GV_IO, "io: cannot write '" + path + "'"};
    }
}

struct CommonFlags {
    std::string config;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<std::string> fidelity;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App *cmd, CommonFlags &f, bool needs_config, const std::vector<std::string> &formats) {
    auto *c = cmd->add_option("--config", f.config, "scenario config (JSON)")->check(CLI::ExistingFile);
    if (needs_config) {
        c->required();
    }
    cmd->add_option("--epsilon", f.epsilon, "infidelity threshold");
    cmd->add_option("--delta", f.delta, "significance level");
    cmd->add_option("--fidelity", f.fidelity, "fidelity kind")->check(CLI::IsMember({"entanglement", "average"}));
    cmd->add_option("--seed", f.seed, "simulation seed");
    cmd->add_option("--out", f.out, "output path (default stdout)");
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember(formats));
}

/// The config text with command-line overrides applied.
std::string load_config(const CommonFlags &f) {
    Json j;
    try {
        j = Json::parse(read_file(f.config));
    } catch (const Json::parse_error &e) {
        throw Failure{GV_SCHEMA, std::string("schema: config is not valid JSON: ") + e.what()};
    }
    if (!j.is_object()) {
        throw Failure{GV_SCHEMA, "schema: config must be a JSON object"};
    }
    if (f.epsilon) {
        j["epsilon"] = *f.epsilon;
    }
    if (f.delta) {
        j["delta"] = *f.delta;
    }
    if (f.fidelity) {
        j["fidelity_kind"] = *f.fidelity;
    }
    if (f.seed) {
        j["seed"] = *f.seed;
    }
    return j.dump();
}

/// Re-validates an emitted document, then renders it in the chosen format.
std::string render(const std::string &document, const std::string &format) {
    check(gv_validate_document(document.c_str()));
    if (format == "json") {
        return document;
    }
    OwnedString out;
    check(gv_render(document.c_str(), format.c_str(), &out.p));
    return out.str();
}

std::vector<double> parse_grid(const std::string &spec) {
    std::vector<double> grid;
    auto fail = [&] { throw Failure{GV_INVALID_ARGUMENT, "invalid_argument: bad --grid '" + spec + "'"}; };
    try {
        if (spec.find(':') != std::string::npos) {
            // start:stop:step, inclusive of stop.
            std::vector<double> parts;
            std::stringstream s(spec);
            std::string item;
            while (std::getline(s, item, ':')) {
                parts.push_back(std::stod(item));
            }
            if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
                fail();
            }
            const long steps = std::lround((parts[1] - parts[0]) / parts[2]);
            for (long k = 0; k <= steps; k++) {
                grid.push_back(parts[0] + k * parts[2]);
            }
        } else {
            std::stringstream s(spec);
            std::string item;
            while (std::getline(s, item, ',')) {
                grid.push_back(std::stod(item));
            }
        }
    } catch (const std::logic_error &) {
        fail();
    }
    if (grid.empty()) {
        fail();
    }
    return grid;
}

void apply_env_max_dim() {
    const char *env = std::getenv("GATEVERIFY_MAX_DIM");
    if (!env || !*env) {
        return;
    }
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) {
        throw Failure{GV_INVALID_ARGUMENT, std::string("invalid_argument: GATEVERIFY_MAX_DIM='") + env + "'"};
    }
    check(gv_set_max_dim(static_cast<size_t>(v)));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gate verification with local state preparation and measurement"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gv_version()));

    CommonFlags analyze_f;
    auto *analyze = app.add_subcommand("analyze", "gaps, p_E and the number of tests for a scenario");
    add_common(analyze, analyze_f, true, {"json", "text"});

    CommonFlags table_f;
    table_f.format = "text";
    int max_n = 4;
    int max_n_qutrit = 3;
    auto *table = app.add_subcommand("table", "reproduce the verification table");
    add_common(table, table_f, false, {"json", "csv", "text"});
    table->add_option("--max-n", max_n, "largest qubit count")->check(CLI::Range(2, 8));
    table->add_option("--max-n-qutrit", max_n_qutrit, "largest qutrit count")->check(CLI::Range(2, 5));

    CommonFlags pcurve_f;
    pcurve_f.format = "csv";
    std::string grid_spec = "0:0.5:0.05";
    auto *pcurve = app.add_subcommand("pcurve", "p_E over a grid of epsilon values (CSV)");
    add_common(pcurve, pcurve_f, true, {"csv"});
    pcurve->add_option("--grid", grid_spec, "start:stop:step or a comma-separated list");

    CommonFlags sim_f;
    std::optional<long long> trials;
    std::optional<long long> repetitions;
    std::string trials_csv;
    auto *simulate = app.add_subcommand("simulate", "run the accept/reject protocol against noise");
    add_common(simulate, sim_f, true, {"json", "text"});
    simulate->add_option("--trials", trials, "tests per experiment (default: N from the analysis)");
    simulate->add_option("--repetitions", repetitions, "independent experiments");
    simulate->add_option("--trials-csv", trials_csv, "write per-trial records to this path");

    CommonFlags export_f;
    auto *exp = app.add_subcommand("export-protocol", "write the measurement protocol document");
    add_common(exp, export_f, true, {"json"});

    CLI11_PARSE(app, argc, argv);

    try {
        apply_env_max_dim();
        if (analyze->parsed()) {
            OwnedString report;
            check(gv_analyze(load_config(analyze_f).c_str(), &report.p));
            write_output(analyze_f.out, render(report.str(), analyze_f.format));
        } else if (table->parsed()) {
            OwnedString report;
            check(gv_table(max_n, max_n_qutrit, table_f.epsilon.value_or(0.01), table_f.delta.value_or(0.01),
                           &report.p));
            write_output(table_f.out, render(report.str(), table_f.format));
        } else if (pcurve->parsed()) {
            const std::vector<double> grid = parse_grid(grid_spec);
            OwnedString csv;
            check(gv_pcurve(load_config(pcurve_f).c_str(), grid.data(), grid.size(), &csv.p));
            write_output(pcurve_f.out, csv.str());
        } else if (simulate->parsed()) {
            Json j = Json::parse(load_config(sim_f));
            if (trials) {
                j["trials"] = *trials;
            }
            if (repetitions) {
                j["repetitions"] = *repetitions;
            }
            if (!trials_csv.empty()) {
                j["record_trials"] = true;
            }
            OwnedString report;
            OwnedString csv;
            check(gv_simulate(j.dump().c_str(), &report.p, trials_csv.empty() ? nullptr : &csv.p));
            if (!trials_csv.empty()) {
                write_output(trials_csv, csv.str());
            }
            write_output(sim_f.out, render(report.str(), sim_f.format));
        } else if (exp->parsed()) {
            OwnedString doc;
            check(gv_export_protocol(load_config(export_f).c_str(), &doc.p));
            write_output(export_f.out, render(doc.str(), "json"));
        }
    } catch (const Failure &f) {
        std::cerr << "gateverify: " << f.message << "\n";
        return f.status;
    }
    return 0;
}
