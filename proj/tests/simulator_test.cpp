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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gateverify/error.hpp"
#include "gateverify/rng.hpp"
#include "gateverify/simulator.hpp"

using namespace gateverify;

namespace {

VerificationStrategy cz_strategy() {
    return build_strategy(gate_library("cz", 2, 2), product_mub_ensemble({2, 2}, 2), MeasurementPolicy::kColoring);
}

VerificationStrategy cnot_strategy() {
    return build_strategy(clifford_circuit({{"cx", {0, 1}}}, {2, 2}), product_mub_ensemble({2, 2}, 3),
                          MeasurementPolicy::kCliffordPauli);
}

}  // namespace

TEST(Rng, PhiloxKnownAnswer) {
    auto out = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Rng, StreamsAreIndependentAndReproducible) {
    CounterRng a(7, 1), b(7, 1), c(7, 2);
    for (int i = 0; i < 10; i++) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_NE(u, c.uniform());
        EXPECT_GE(u, 0);
        EXPECT_LT(u, 1);
    }
}

TEST(Simulator, NoiselessPassesEverything) {
    RunConfig cfg;
    cfg.trials = 200;
    cfg.repetitions = 5;
    RunReport r = run_trials(cz_strategy(), cfg);
    EXPECT_EQ(r.passed, 1000);
    EXPECT_EQ(r.acceptance_frequency, 1);
    EXPECT_NEAR(r.exact_pass, 1, 1e-12);
}

TEST(Simulator, FullyDepolarizedPassRate) {
    VerificationStrategy s = cz_strategy();
    QuantumChannel ch = apply_noise(s.gate, NoiseModel::depolarizing(1.0));
    EXPECT_NEAR(exact_pass_probability(s, ch), s.theta_tilde.trace().real() / 16, 1e-12);
}

TEST(Simulator, DepolarizedWithinGapBounds) {
    // Φ <= Θ <= Φ + (1 - ν)(1 - Φ) puts the pass probability in [1 - ε_E, 1 - ν ε_E].
    VerificationStrategy s = cz_strategy();
    QuantumChannel ch = apply_noise(s.gate, NoiseModel::depolarizing(0.1));
    const double p = exact_pass_probability(s, ch);
    const double eps_e = 1 - entanglement_fidelity(ch, s.gate);
    EXPECT_LE(p, 1 - s.gaps.nu * eps_e + 1e-12);
    EXPECT_LE(p, 1 - s.gaps.nu_bound() * eps_e + 1e-12);
    EXPECT_GE(p, 1 - eps_e - 1e-12);
}

TEST(Simulator, EmpiricalRateMatchesExact) {
    RunConfig cfg;
    cfg.noise = NoiseModel::depolarizing(0.2);
    cfg.trials = 100000;
    cfg.seed = 21;
    for (SamplingMode mode : {SamplingMode::kPerSite, SamplingMode::kWholeTest}) {
        cfg.mode = mode;
        RunReport r = run_trials(cnot_strategy(), cfg);
        EXPECT_LE(std::abs(r.z_score), 4) << sampling_mode_name(mode);
        EXPECT_FALSE(r.flagged);
    }
}

TEST(Simulator, ThreadCountDoesNotChangeResults) {
    RunConfig cfg;
    cfg.noise = NoiseModel::depolarizing(0.3);
    cfg.trials = 50;
    cfg.repetitions = 40;
    cfg.seed = 8;
    cfg.record_trials = true;
    cfg.threads = 1;
    RunReport one = run_trials(cz_strategy(), cfg);
    cfg.threads = 4;
    RunReport four = run_trials(cz_strategy(), cfg);
    EXPECT_EQ(one.passed, four.passed);
    EXPECT_EQ(one.accepted_experiments, four.accepted_experiments);
    ASSERT_EQ(one.records.size(), four.records.size());
    for (size_t i = 0; i < one.records.size(); i++) {
        EXPECT_EQ(one.records[i].outcome, four.records[i].outcome);
        EXPECT_EQ(one.records[i].pass, four.records[i].pass);
    }
}

TEST(Simulator, CalibratedDepolarizing) {
    UnitaryGate id = clifford_circuit({{"i", {0}}}, {2});
    NoiseModel m = infidelity_calibrated_noise(id, 0.075, FidelityKind::kEntanglement);
    EXPECT_NEAR(m.p, 0.1, 1e-12);
    UnitaryGate cz = gate_library("cz", 2, 2);
    NoiseModel c = infidelity_calibrated_noise(cz, 0.02, FidelityKind::kAverage);
    EXPECT_NEAR(1 - average_gate_fidelity(apply_noise(cz, c), cz), 0.02, 1e-12);
    EXPECT_EQ(infidelity_calibrated_noise(cz, 0, FidelityKind::kEntanglement).kind, NoiseModel::Kind::kNone);
}

TEST(Simulator, CalibratedOverrotation) {
    UnitaryGate cz = gate_library("cz", 2, 2);
    NoiseModel m = infidelity_calibrated_noise(cz, 0.01, FidelityKind::kEntanglement, NoiseModel::Kind::kOverrotation);
    EXPECT_NEAR(1 - entanglement_fidelity(apply_noise(cz, m), cz), 0.01, 1e-9);
}

TEST(Simulator, TrialsCsv) {
    RunConfig cfg;
    cfg.trials = 3;
    cfg.record_trials = true;
    VerificationStrategy s = cz_strategy();
    RunReport r = run_trials(s, cfg);
    std::string csv = trial_records_csv(s, r);
    EXPECT_EQ(csv.rfind("trial,j,l,outcome,pass\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Simulator, InvalidConfig) {
    RunConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(run_trials(cz_strategy(), cfg), Error);
}
