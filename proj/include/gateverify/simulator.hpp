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

#include "gateverify/efficiency.hpp"

namespace gateverify {

/// tr(Θ̃ χ_Λ), cross-checked against Σ_j p_j Σ_l p_{l|j} tr[Λ(ρ_j) E_{l|j}]
/// (kInvariant when the two differ by more than 1e-9).
double exact_pass_probability(const VerificationStrategy &s, const QuantumChannel &channel);

enum class SamplingMode {
    /// Sequential per-site Born sampling of local outcome tuples.
    kPerSite,
    /// One Bernoulli draw with probability tr[E Λ(ρ_j)] per trial.
    kWholeTest,
};

const char *sampling_mode_name(SamplingMode mode);
SamplingMode parse_sampling_mode(const std::string &name);

struct RunConfig {
    NoiseModel noise;
    /// Tests per experiment (N).
    long long trials = 1;
    /// Independent N-test experiments (R).
    long long repetitions = 1;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::kPerSite;
    bool record_trials = false;
    /// 0 selects std::thread::hardware_concurrency().
    int threads = 0;
};

struct TrialRecord {
    long long trial = 0;
    int state = 0;
    int test = 0;
    /// Per-site outcome indices; empty under whole-test sampling.
    std::vector<int> outcome;
    bool pass = false;
};

struct RunReport {
    long long trials = 0;
    long long repetitions = 0;
    long long total_trials = 0;
    long long passed = 0;
    double empirical_rate = 0;
    double standard_error = 0;
    double exact_pass = 0;
    /// (empirical - exact) / σ_exact; zero when σ_exact vanishes.
    double z_score = 0;
    bool flagged = false;
    long long accepted_experiments = 0;
    double acceptance_frequency = 0;
    /// exact_pass^N.
    double predicted_acceptance = 0;
    double f_e = 0;
    double f_a = 0;
    std::vector<TrialRecord> records;
};

RunReport run_trials(const VerificationStrategy &s, const RunConfig &config);
/// Runs against an explicit channel instead of the gate followed by config.noise.
RunReport run_trials(const VerificationStrategy &s, const QuantumChannel &channel, const RunConfig &config);

/// Depolarizing (closed form) or overrotation (bisection) noise whose
/// infidelity of the given kind equals ε within 1e-9.
NoiseModel infidelity_calibrated_noise(const UnitaryGate &gate, double eps, FidelityKind kind,
                                       NoiseModel::Kind family = NoiseModel::Kind::kDepolarizing);

/// CSV with columns trial,j,l,outcome,pass; outcomes as "basis:index" per site.
std::string trial_records_csv(const VerificationStrategy &s, const RunReport &report);

}  // namespace gateverify
