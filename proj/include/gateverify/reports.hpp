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

#pragma once

#include <string>
#include <vector>

#include "gateverify/scenario.hpp"

namespace gateverify {

Json gaps_json(const GapReport &gaps);
Json test_count_json(const TestCount &count);
Json sdp_json(const SdpResult &sdp);

/// Gaps, p_E (bound and SDP) and N for a built strategy.
Json analyze_strategy(const VerificationStrategy &s, double eps, double delta, FidelityKind kind,
                      const SdpOptions &options = {});
Json analyze_report(const ScenarioConfig &config, const SdpOptions &options = {});
std::string analyze_text(const Json &report);

struct TableOptions {
    int max_n = 4;
    int max_n_qutrit = 3;
    double epsilon = 0.01;
    double delta = 0.01;
};

/// Reproduction of the verification table for qubits (n = 2..max_n) and
/// qutrits (n = 2..max_n_qutrit), with out-of-scope rows flagged.
Json table_report(const TableOptions &options);
std::string table_text(const Json &report);
std::string table_csv(const Json &report);

/// Columns epsilon,epsilon_e,p_bound,p_sdp,upper_certificate,converged.
std::string pcurve_csv(const ScenarioConfig &config, const std::vector<double> &grid, const SdpOptions &options = {});

/// Runs the simulation; fills `trials_csv` when the config records trials.
Json simulate_report(const ScenarioConfig &config, std::string *trials_csv = nullptr,
                     const SdpOptions &options = {});
std::string simulate_text(const Json &report);

/// Per state: preparation settings, and per test the site settings, the
/// accepted outcome tuples and the probability.
Json export_protocol(const ScenarioConfig &config);

/// Checks the schema tag and the required fields of an emitted document.
void validate_document(const Json &doc);

}  // namespace gateverify
