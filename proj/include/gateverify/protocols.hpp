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

#include "gateverify/ensembles.hpp"
#include "gateverify/stabilizer.hpp"

namespace gateverify {

/// A two-outcome test. Local tests measure one basis per site and accept a
/// subset of the outcome tuples (mixed radix, site 0 most significant).
/// Operator tests carry only the test operator E.
struct LocalTest {
    std::vector<OrthonormalBasis> settings;
    std::vector<char> accept;
    DenseOperator op;
    std::string label;

    bool is_local() const {
        return !settings.empty();
    }
};

LocalTest make_local_test(std::vector<OrthonormalBasis> settings, std::vector<char> accept, std::string label);
/// Checks 0 <= E <= 1 within 1e-9.
LocalTest make_operator_test(DenseOperator op, std::string label);

struct WeightedTest {
    LocalTest test;
    double probability = 0;
};

struct StateVerifier {
    PureState target;
    std::vector<WeightedTest> tests;
    DenseOperator omega;
    double beta = 0;
    double nu = 0;
    std::string protocol;
};

/// Computes Ω = Σ p_l E_l and the gap; enforces Ω ψ = ψ and 0 <= Ω <= 1.
StateVerifier make_state_verifier(PureState target, std::vector<WeightedTest> tests, std::string protocol);

StateVerifier uniform_stabilizer_verifier(const PureState &psi, const StabilizerGroup &group);
/// Uses the given element indices as generators, or choose_generators() when
/// empty. Throws kInvalidArgument for a dependent or incomplete set.
StateVerifier generator_verifier(const PureState &psi, const StabilizerGroup &group,
                                 std::vector<int> generators = {});
/// `input` must be ⊗_k Z^{a_k}|+> on qubits; the target is C^(n-1)Z applied to it.
StateVerifier hyperedge_coloring_verifier(const PureState &input);
StateVerifier exact_product_verifier(const PureState &psi);

/// Local kets of a product state, or kNotProduct.
std::vector<Vector> product_factors(const PureState &psi, double tol = 1e-8);

enum class MeasurementPolicy { kAuto, kCliffordPauli, kColoring, kGenerator, kExactProduct, kUserSupplied };

const char *policy_name(MeasurementPolicy policy);
MeasurementPolicy parse_policy(const std::string &name);

struct GapReport {
    double nu_p = 0;
    double beta_p = 0;
    double beta_m = 0;
    double nu_m = 0;
    double beta = 0;
    double nu = 0;
    bool balanced = false;

    double nu_bound() const {
        return nu_p * nu_m;
    }
};

struct VerificationStrategy {
    UnitaryGate gate;
    TestEnsemble ensemble;
    std::vector<StateVerifier> verifiers;
    DenseOperator theta_tilde;
    DenseOperator theta;
    DenseOperator theta_p;
    GapReport gaps;
};

/// Builds Θ̃, Θ and Θ_P, the gap report, and checks the structural invariants
/// (the ordering chain only for balanced ensembles).
VerificationStrategy assemble_strategy(UnitaryGate gate, TestEnsemble ensemble, std::vector<StateVerifier> verifiers);

/// `user_tests[j]` lists the tests for ensemble state j under kUserSupplied.
VerificationStrategy build_strategy(const UnitaryGate &gate, const TestEnsemble &ensemble, MeasurementPolicy policy,
                                    const std::vector<std::vector<WeightedTest>> &user_tests = {});

/// Twirl by V: test states Vψ_j, tests (UVU†) E (UVU†)†, same gate.
VerificationStrategy conjugate_strategy(const VerificationStrategy &s, const Matrix &v);

/// Change of frame by a product unitary V = ⊗ V_k: gate VUV†, states Vψ_j,
/// tests V E V†. Local settings stay local.
VerificationStrategy similar_strategy(const VerificationStrategy &s, const std::vector<Matrix> &local_factors,
                                      UnitaryGate new_gate);

/// tr(Θ̃ χ) for a Choi state of the implemented channel.
double strategy_pass_probability(const VerificationStrategy &s, const DenseOperator &choi);

}  // namespace gateverify
