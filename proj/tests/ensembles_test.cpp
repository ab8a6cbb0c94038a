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

#include "gateverify/ensembles.hpp"
#include "gateverify/error.hpp"

using namespace gateverify;

TEST(Ensembles, PauliBasesAreMutuallyUnbiased) {
    for (int d : {2, 3, 5}) {
        auto bases = pauli_eigenbases(d);
        ASSERT_EQ(static_cast<int>(bases.size()), d + 1);
        for (size_t a = 0; a < bases.size(); a++) {
            EXPECT_TRUE(is_orthonormal(bases[a]));
            for (size_t b = a + 1; b < bases.size(); b++) {
                for (const auto &u : bases[a].kets) {
                    for (const auto &v : bases[b].kets) {
                        EXPECT_NEAR(std::norm(u.dot(v)), 1.0 / d, 1e-12);
                    }
                }
            }
        }
    }
}

TEST(Ensembles, XBasisIsFourier) {
    auto bases = pauli_eigenbases(3);
    const auto &x = bases[1];
    EXPECT_EQ(x.label, "X");
    for (const auto &k : x.kets) {
        for (int i = 0; i < 3; i++) {
            EXPECT_NEAR(std::abs(k(i)), 1 / std::sqrt(3.0), 1e-12);
        }
    }
}

TEST(Ensembles, MubGap) {
    for (int r = 2; r <= 3; r++) {
        PreparationReport rep = preparation_report(product_mub_ensemble({2, 2}, r));
        EXPECT_NEAR(rep.nu_p, (r - 1.0) / r, 1e-10);
    }
    PreparationReport q = preparation_report(product_mub_ensemble({3}, 4));
    EXPECT_NEAR(q.nu_p, 0.75, 1e-10);
}

TEST(Ensembles, ProductTwoDesignGap) {
    TestEnsemble e = product_two_design_ensemble({2, 3});
    EXPECT_TRUE(e.balanced());
    EXPECT_NEAR(preparation_report(e).nu_p, 2.0 / 3, 1e-10);
    EXPECT_TRUE(is_two_design(product_two_design_ensemble({3})));
    EXPECT_FALSE(is_two_design(product_two_design_ensemble({2, 2})));
}

TEST(Ensembles, MubEnsembleIsBalanced) {
    TestEnsemble e = product_mub_ensemble({2, 2}, 2);
    EXPECT_TRUE(e.balanced());
    EXPECT_EQ(e.size(), 8u);
    double total = 0;
    for (const auto &s : e.states()) {
        total += s.probability;
        EXPECT_EQ(s.labels.size(), 2u);
    }
    EXPECT_NEAR(total, 1, 1e-14);
}

TEST(Ensembles, TooManyBasesRejected) {
    EXPECT_THROW(product_mub_ensemble({2}, 4), Error);
    EXPECT_THROW(product_mub_ensemble({2}, 0), Error);
}

TEST(Ensembles, SingleBasisHasNoGap) {
    EXPECT_NEAR(preparation_report(product_mub_ensemble({2}, 1)).nu_p, 0, 1e-12);
}
