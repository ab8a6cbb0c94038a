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
#include <random>
#include <vector>

#include "gateverify/efficiency.hpp"
#include "gateverify/quantum.hpp"

namespace gateverify::testing {

inline Vector haar_state(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (int i = 0; i < d; i++) {
        v(i) = Complex(g(rng), g(rng));
    }
    return v / v.norm();
}

/// Random channel from a Haar isometry d -> d·k (Stinespring dilation).
inline QuantumChannel random_channel(int d, int k, std::uint64_t seed) {
    Matrix u = random_unitary(d * k, seed);
    std::vector<Matrix> kraus;
    for (int j = 0; j < k; j++) {
        kraus.push_back(u.block(j * d, 0, d, d));
    }
    return QuantumChannel(std::move(kraus), {d});
}

inline Matrix random_density(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

}  // namespace gateverify::testing
