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

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "gateverify/error.hpp"
#include "gateverify/gateverify.h"
#include "gateverify/reports.hpp"

using namespace gateverify;

struct gv_strategy {
    VerificationStrategy strategy;
};

namespace {

thread_local std::string g_last_error;

gv_status record(gv_status status, const std::string &message) {
    g_last_error = message;
    return status;
}

template <typename F>
gv_status guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return GV_OK;
    } catch (const Error &e) {
        return record(static_cast<gv_status>(e.code()), e.what());
    } catch (const nlohmann::json::exception &e) {
        return record(GV_SCHEMA, e.what());
    } catch (const std::bad_alloc &) {
        return record(GV_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return record(GV_INTERNAL, e.what());
    } catch (...) {
        return record(GV_INTERNAL, "unknown exception");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void *p, const char *what) {
    require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

void fill_sdp(const SdpResult &r, gv_sdp_result *out) {
    out->value = r.value;
    out->upper_certificate = r.upper_certificate;
    out->dual_bound = r.dual_bound;
    out->iterations = r.iterations;
    out->converged = r.converged ? 1 : 0;
}

int64_t count_value(const TestCount &c) {
    return c.available && !c.unverifiable ? static_cast<int64_t>(c.n) : -1;
}

}  // namespace

extern "C" {

const char *gv_version(void) {
    return "0.1.0";
}

const char *gv_last_error(void) {
    return g_last_error.c_str();
}

const char *gv_status_name(gv_status status) {
    if (status == GV_OK) {
        return "ok";
    }
    if (status == GV_INTERNAL) {
        return "internal";
    }
    if (status < GV_INVALID_ARGUMENT || status > GV_NUMERIC) {
        return "unknown";
    }
    return error_code_name(static_cast<ErrorCode>(status));
}

gv_status gv_set_max_dim(size_t dim) {
    return guarded([&] {
        require(dim >= 2, ErrorCode::kInvalidArgument, "dimension cap must be at least 2");
        set_max_dimension(dim);
    });
}

size_t gv_max_dim(void) {
    return max_dimension();
}

gv_status gv_strategy_from_config(const char *config_json, gv_strategy **out) {
    return guarded([&] {
        need(config_json, "config");
        need(out, "out");
        *out = nullptr;
        auto handle = std::make_unique<gv_strategy>();
        handle->strategy = scenario_strategy(parse_scenario_text(config_json));
        *out = handle.release();
    });
}

void gv_strategy_free(gv_strategy *strategy) {
    delete strategy;
}

gv_status gv_strategy_dim(const gv_strategy *strategy, int *dim) {
    return guarded([&] {
        need(strategy, "strategy");
        need(dim, "dim");
        *dim = strategy->strategy.gate.dim();
    });
}

gv_status gv_strategy_gaps(const gv_strategy *strategy, gv_gaps *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(out, "out");
        const GapReport &g = strategy->strategy.gaps;
        *out = {g.nu_p, g.nu_m, g.nu, g.nu_bound(), g.beta_p, g.beta_m, g.beta, g.balanced ? 1 : 0};
    });
}

gv_status gv_p_e_bound(const gv_strategy *strategy, double eps_e, double *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(out, "out");
        *out = p_e_bound(strategy->strategy, eps_e);
    });
}

gv_status gv_p_e_sdp(const gv_strategy *strategy, double eps_e, gv_sdp_result *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(out, "out");
        fill_sdp(p_e_sdp(strategy->strategy, eps_e), out);
    });
}

gv_status gv_p_a(const gv_strategy *strategy, double eps_a, gv_sdp_result *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(out, "out");
        fill_sdp(p_a(strategy->strategy, eps_a), out);
    });
}

gv_status gv_num_tests(const gv_strategy *strategy, double eps, double delta, gv_fidelity_kind kind,
                       gv_test_counts *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(out, "out");
        require(kind == GV_ENTANGLEMENT || kind == GV_AVERAGE, ErrorCode::kInvalidArgument, "unknown fidelity kind");
        TestCountReport r = num_tests(strategy->strategy, eps, delta,
                                      kind == GV_AVERAGE ? FidelityKind::kAverage : FidelityKind::kEntanglement);
        *out = {r.eps_e, count_value(r.exact), count_value(r.gap), count_value(r.bound)};
    });
}

gv_status gv_exact_pass_probability(const gv_strategy *strategy, const char *noise_json, double *out) {
    return guarded([&] {
        need(strategy, "strategy");
        need(noise_json, "noise");
        need(out, "out");
        const UnitaryGate &gate = strategy->strategy.gate;
        bool calibrated = false;
        NoiseModel::Kind family = NoiseModel::Kind::kDepolarizing;
        NoiseModel noise = noise_from_json(Json::parse(noise_json), gate.dims(), calibrated, family);
        require(!calibrated, ErrorCode::kInvalidArgument,
                "calibrated noise needs an epsilon; use a scenario config instead");
        *out = exact_pass_probability(strategy->strategy, apply_noise(gate, noise));
    });
}

gv_status gv_analyze(const char *config_json, char **report_json) {
    return guarded([&] {
        need(config_json, "config");
        need(report_json, "out");
        *report_json = copy_string(analyze_report(parse_scenario_text(config_json)).dump(2));
    });
}

gv_status gv_table(int max_n, int max_n_qutrit, double eps, double delta, char **report_json) {
    return guarded([&] {
        need(report_json, "out");
        require(max_n >= 2 && max_n_qutrit >= 2, ErrorCode::kInvalidArgument, "table sizes start at n = 2");
        require(eps > 0 && eps < 1 && delta > 0 && delta < 1, ErrorCode::kInvalidArgument,
                "epsilon and delta must lie in (0, 1)");
        TableOptions options{max_n, max_n_qutrit, eps, delta};
        *report_json = copy_string(table_report(options).dump(2));
    });
}

gv_status gv_pcurve(const char *config_json, const double *grid, size_t grid_len, char **csv) {
    return guarded([&] {
        need(config_json, "config");
        need(grid, "grid");
        need(csv, "out");
        std::vector<double> g(grid, grid + grid_len);
        *csv = copy_string(pcurve_csv(parse_scenario_text(config_json), g));
    });
}

gv_status gv_simulate(const char *config_json, char **report_json, char **trials_csv) {
    return guarded([&] {
        need(config_json, "config");
        need(report_json, "out");
        std::string trials;
        Json report = simulate_report(parse_scenario_text(config_json), trials_csv ? &trials : nullptr);
        char *r = copy_string(report.dump(2));
        if (trials_csv) {
            try {
                *trials_csv = trials.empty() ? nullptr : copy_string(trials);
            } catch (...) {
                std::free(r);
                throw;
            }
        }
        *report_json = r;
    });
}

gv_status gv_export_protocol(const char *config_json, char **protocol_json) {
    return guarded([&] {
        need(config_json, "config");
        need(protocol_json, "out");
        *protocol_json = copy_string(export_protocol(parse_scenario_text(config_json)).dump(2));
    });
}

gv_status gv_render(const char *report_json, const char *format, char **out) {
    return guarded([&] {
        need(report_json, "report");
        need(format, "format");
        need(out, "out");
        Json doc = Json::parse(report_json);
        validate_document(doc);
        const std::string fmt = format;
        const std::string command = doc.at("command");
        std::string text;
        if (fmt == "json") {
            text = doc.dump(2);
        } else if (fmt == "text" && command == "analyze") {
            text = analyze_text(doc);
        } else if (fmt == "text" && command == "table") {
            text = table_text(doc);
        } else if (fmt == "csv" && command == "table") {
            text = table_csv(doc);
        } else if (fmt == "text" && command == "simulate") {
            text = simulate_text(doc);
        } else {
            fail(ErrorCode::kUnsupported, "format '" + fmt + "' is not available for " + command + " reports");
        }
        *out = copy_string(text);
    });
}

gv_status gv_validate_document(const char *document_json) {
    return guarded([&] {
        need(document_json, "document");
        validate_document(Json::parse(document_json));
    });
}

void gv_string_free(char *s) {
    std::free(s);
}

}  // extern "C"
