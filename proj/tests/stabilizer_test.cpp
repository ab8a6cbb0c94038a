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

#include "gateverify/error.hpp"
#include "gateverify/stabilizer.hpp"

using namespace gateverify;

namespace {

PureState bell() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1 / std::sqrt(2.0);
    return PureState(v, {2, 2});
}

}  // namespace

TEST(Stabilizer, BellStateGroup) {
    StabilizerGroup g = extract_stabilizer_group(bell(), 2);
    ASSERT_EQ(g.elements.size(), 4u);
    EXPECT_TRUE(g.elements[0].is_identity());
    std::vector<std::string> labels;
    for (const auto &e : g.elements) {
        labels.push_back(stabilizer_label(e, 2));
    }
    for (const char *want : {"+XX", "-YY", "+ZZ"}) {
        EXPECT_NE(std::find(labels.begin(), labels.end(), want), labels.end()) << want;
    }
}

TEST(Stabilizer, ElementsStabilize) {
    const Vector psi = bell().amplitudes();
    StabilizerGroup g = extract_stabilizer_group(bell(), 2);
    for (const auto &e : g.elements) {
        Vector out = apply_weyl_string(2, e.a, e.b, psi);
        EXPECT_LE((out - e.eigenvalue * psi).norm(), 1e-12);
        EXPECT_LE((weyl_string(2, e.a, e.b) * psi - out).norm(), 1e-12);
    }
}

TEST(Stabilizer, QutritGroupAndGenerators) {
    Vector v = Vector::Zero(9);
    for (int k = 0; k < 3; k++) {
        v(k * 3 + k) = 1 / std::sqrt(3.0);
    }
    StabilizerGroup g = extract_stabilizer_group(PureState(v, {3, 3}), 3);
    EXPECT_EQ(g.elements.size(), 9u);
    std::vector<int> gens = choose_generators(g);
    EXPECT_EQ(gens.size(), 2u);
    EXPECT_EQ(generated_subgroup_size(g, gens), 9u);
}

TEST(Stabilizer, NonStabilizerStateRejected) {
    Vector v(2);
    v << std::cos(0.3), std::sin(0.3);
    try {
        extract_stabilizer_group(PureState(v, {2}), 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotStabilizer);
    }
}
