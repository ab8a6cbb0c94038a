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

#include <cmath>

#include "gateverify/efficiency.hpp"
#include "gateverify/error.hpp"
#include "gateverify/protocols.hpp"
#include "gateverify/stabilizer.hpp"

using namespace gateverify;

namespace {

PureState ghz(int n) {
    const int d = 1 << n;
    Vector v = Vector::Zero(d);
    v(0) = v(d - 1) = 1 / std::sqrt(2.0);
    return PureState(v, Dims(n, 2));
}

PureState plus_state(int n) {
    Vector plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    return PureState::product(std::vector<Vector>(n, plus));
}

}  // namespace

TEST(Protocols, UniformStabilizerGap) {
    for (int n : {2, 3}) {
        PureState s = ghz(n);
        StateVerifier v = uniform_stabilizer_verifier(s, extract_stabilizer_group(s, 2));
        const double dn = std::pow(2, n);
        EXPECT_NEAR(v.nu, (dn - dn / 2) / (dn - 1), 1e-10) << n;
    }
}

TEST(Protocols, QutritUniformStabilizerGap) {
    Vector v = Vector::Zero(9);
    for (int k = 0; k < 3; k++) {
        v(k * 3 + k) = 1 / std::sqrt(3.0);
    }
    PureState s(v, {3, 3});
    EXPECT_NEAR(uniform_stabilizer_verifier(s, extract_stabilizer_group(s, 3)).nu, 0.75, 1e-10);
}

TEST(Protocols, GeneratorGap) {
    for (int n : {2, 3}) {
        PureState s = ghz(n);
        EXPECT_NEAR(generator_verifier(s, extract_stabilizer_group(s, 2)).nu, 1.0 / n, 1e-10);
    }
}

TEST(Protocols, ColoringGapAndTests) {
    for (int n : {2, 3, 4}) {
        StateVerifier v = hyperedge_coloring_verifier(plus_state(n));
        EXPECT_NEAR(v.nu, 1.0 / n, 1e-10) << n;
        EXPECT_EQ(static_cast<int>(v.tests.size()), n);
        EXPECT_LE((v.omega.matrix() * v.target.amplitudes() - v.target.amplitudes()).norm(), 1e-10);
    }
}

TEST(Protocols, ExactProductVerifier) {
    Vector zero(2), one(2);
    zero << 1, 0;
    one << 0, 1;
    StateVerifier v = exact_product_verifier(PureState::product({zero, one}));
    EXPECT_NEAR(v.nu, 1, 1e-12);
    ASSERT_EQ(v.tests.size(), 1u);
    EXPECT_EQ(v.tests[0].test.settings[0].label, "Z");
    EXPECT_EQ(v.tests[0].test.settings[1].label, "Z");
}

TEST(Protocols, ExactProductRejectsEntangled) {
    try {
        exact_product_verifier(ghz(2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotProduct);
    }
}

TEST(Protocols, CzColoringStrategy) {
    VerificationStrategy s =
        build_strategy(gate_library("cz", 2, 2), product_mub_ensemble({2, 2}, 2), MeasurementPolicy::kColoring);
    EXPECT_NEAR(s.gaps.nu_p, 0.5, 1e-10);
    EXPECT_NEAR(s.gaps.nu_m, 0.5, 1e-10);
    EXPECT_GE(s.gaps.nu, 0.25 - 1e-9);
    EXPECT_TRUE(s.gaps.balanced);
}

TEST(Protocols, CnotCliffordStrategy) {
    UnitaryGate cnot = clifford_circuit({{"cx", {0, 1}}}, {2, 2});
    VerificationStrategy s = build_strategy(cnot, product_mub_ensemble({2, 2}, 3), MeasurementPolicy::kCliffordPauli);
    EXPECT_NEAR(s.gaps.nu_p, 2.0 / 3, 1e-10);
    EXPECT_NEAR(s.gaps.nu_m, 2.0 / 3, 1e-10);
    EXPECT_GE(s.gaps.nu, 4.0 / 9 - 1e-9);
}

TEST(Protocols, SwapTwoDesign) {
    VerificationStrategy s = build_strategy(gate_library("swap", 2, 2), product_two_design_ensemble({2, 2}),
                                            MeasurementPolicy::kExactProduct);
    EXPECT_NEAR(s.gaps.nu, 2.0 / 3, 1e-10);
    EXPECT_NEAR(s.gaps.nu_p, 2.0 / 3, 1e-10);
    EXPECT_NEAR(s.gaps.nu_m, 1, 1e-12);
}

TEST(Protocols, ToffoliViaColoring) {
    VerificationStrategy s =
        build_strategy(gate_library("toffoli", 3, 2), product_mub_ensemble({2, 2, 2}, 2), MeasurementPolicy::kColoring);
    EXPECT_NEAR(s.gaps.nu_m, 1.0 / 3, 1e-10);
    EXPECT_GE(s.gaps.nu, s.gaps.nu_bound() - 1e-9);
}

TEST(Protocols, ThetaTildeOverlapWithTargetChoi) {
    VerificationStrategy s = build_strategy(gate_library("cswap", 3, 2), product_mub_ensemble({2, 2, 2}, 3),
                                            MeasurementPolicy::kAuto);
    ChoiState target = choi_of_channel(QuantumChannel::unitary(s.gate));
    EXPECT_NEAR(strategy_pass_probability(s, target.matrix), 1,
                1e-9);
    EXPECT_NEAR(s.gaps.nu_m, 4.0 / 7, 1e-10);
}

TEST(Protocols, ConjugateByIdentityIsNoOp) {
    VerificationStrategy s =
        build_strategy(gate_library("cz", 2, 2), product_mub_ensemble({2, 2}, 2), MeasurementPolicy::kColoring);
    VerificationStrategy c = conjugate_strategy(s, Matrix::Identity(4, 4));
    EXPECT_LE((c.theta.matrix() - s.theta.matrix()).norm(), 1e-12);
    EXPECT_NEAR(c.gaps.nu, s.gaps.nu, 1e-12);
}

TEST(Protocols, ConjugationPreservesGaps) {
    VerificationStrategy s =
        build_strategy(gate_library("cz", 2, 2), product_mub_ensemble({2, 2}, 2), MeasurementPolicy::kColoring);
    VerificationStrategy c = conjugate_strategy(s, random_unitary(4, 9));
    EXPECT_NEAR(c.gaps.nu, s.gaps.nu, 1e-9);
    EXPECT_NEAR(c.gaps.nu_m, s.gaps.nu_m, 1e-9);
}

TEST(Protocols, UnhandledOutputUnderPolicy) {
    try {
        build_strategy(gate_library("clifford", 2, 3), product_mub_ensemble({3, 3}, 2), MeasurementPolicy::kColoring);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
    }
}

TEST(Protocols, OperatorTestBoundsChecked) {
    EXPECT_THROW(make_operator_test(DenseOperator(2 * Matrix::Identity(2, 2), {2}), "big"), Error);
    EXPECT_NO_THROW(make_operator_test(DenseOperator(Matrix::Identity(2, 2), {2}), "one"));
}

TEST(Protocols, VerifierMustAcceptTarget) {
    Vector zero(2);
    zero << 1, 0;
    Vector one(2);
    one << 0, 1;
    LocalTest wrong = make_operator_test(DenseOperator::projector(one, {2}), "wrong");
    EXPECT_THROW(make_state_verifier(PureState(zero, {2}), {{wrong, 1.0}}, "user"), Error);
}

TEST(Protocols, PolicyNames) {
    for (const char *name : {"auto", "clifford-pauli", "coloring", "generator", "exact-product", "user-supplied"}) {
        EXPECT_STREQ(policy_name(parse_policy(name)), name);
    }
    EXPECT_THROW(parse_policy("bogus"), Error);
}
