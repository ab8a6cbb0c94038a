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

#include <optional>
#include <string>
#include <vector>

#include "gateverify/quantum.hpp"

namespace gateverify {

/// A Weyl string ⊗_k X^{a_k} Z^{b_k} together with its eigenvalue on the
/// stabilized state. The eigenvalue is exp(iπ·phase/d), phase ∈ Z_{2d}.
struct StabilizerElement {
    std::vector<int> a;
    std::vector<int> b;
    int phase = 0;
    Complex eigenvalue = 1;

    bool is_identity() const;
};

struct StabilizerGroup {
    int n = 0;
    int d = 0;
    /// All d^n elements; elements[0] is the identity.
    std::vector<StabilizerElement> elements;
};

/// Weyl string as a dense matrix on n sites of dimension d.
Matrix weyl_string(int d, const std::vector<int> &a, const std::vector<int> &b);
/// Applies the Weyl string to a vector without forming the matrix.
Vector apply_weyl_string(int d, const std::vector<int> &a, const std::vector<int> &b, const Vector &psi);

/// Finds every Weyl string that has ψ as an eigenvector by enumerating all
/// d^{2n} candidates. Throws kNotStabilizer when fewer than d^n are found.
StabilizerGroup extract_stabilizer_group(const PureState &psi, int d1);

/// Readable label: signed Pauli strings for qubits ("+XX", "-YY"), otherwise
/// "ω^k·X^aZ^b⊗..." with the eigenvalue phase in units of π/d.
std::string stabilizer_label(const StabilizerElement &g, int d);

/// Size of the subgroup (of labels mod d) generated by the given elements.
size_t generated_subgroup_size(const StabilizerGroup &group, const std::vector<int> &indices);

/// Greedy generating set: each pick maximizes the growth of the generated
/// subgroup. Yields n generators whenever the label group is free (always for
/// prime d).
std::vector<int> choose_generators(const StabilizerGroup &group);

}  // namespace gateverify
