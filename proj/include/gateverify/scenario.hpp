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

#include <cstdint>
#include <string>
#include <vector>

#include "gateverify/simulator.hpp"
#include "json.hpp"

namespace gateverify {

inline constexpr const char *kConfigSchema = "gateverify.config/1";
inline constexpr const char *kReportSchema = "gateverify.report/1";
inline constexpr const char *kProtocolSchema = "gateverify.protocol/1";

using Json = nlohmann::json;

struct ScenarioConfig {
    UnitaryGate gate;
    /// "mub" or "two-design".
    std::string preparation = "mub";
    int r = 0;
    MeasurementPolicy policy = MeasurementPolicy::kAuto;
    std::vector<std::vector<WeightedTest>> user_tests;
    double epsilon = 0.01;
    double delta = 0.01;
    FidelityKind fidelity = FidelityKind::kEntanglement;
    NoiseModel noise;
    /// When set, noise is calibrated to `epsilon` of kind `fidelity`.
    bool calibrated_noise = false;
    NoiseModel::Kind calibration_family = NoiseModel::Kind::kDepolarizing;
    /// 0 selects N from num_tests.
    long long trials = 0;
    long long repetitions = 1;
    std::uint64_t seed = 0;
    SamplingMode sampling = SamplingMode::kPerSite;
    bool record_trials = false;
};

/// Matrices are arrays of rows; entries are numbers or [re, im] pairs.
Matrix matrix_from_json(const Json &j);
Json matrix_to_json(const Matrix &m);

UnitaryGate gate_from_json(const Json &j);
NoiseModel noise_from_json(const Json &j, const Dims &dims, bool &calibrated, NoiseModel::Kind &family);
/// Basis labels: "I", the labels of pauli_eigenbases (e.g. "Z", "X", "Y",
/// "XZ", "XZ^2"), or "X^aZ^b".
OrthonormalBasis basis_from_label(const std::string &label, int d);

/// Validates the schema tag and every field; throws kSchema on violations.
ScenarioConfig parse_scenario(const Json &j);
ScenarioConfig parse_scenario_text(const std::string &text);

TestEnsemble scenario_ensemble(const ScenarioConfig &config);
VerificationStrategy scenario_strategy(const ScenarioConfig &config);
NoiseModel scenario_noise(const ScenarioConfig &config);

}  // namespace gateverify
