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

#include "gateverify/quantum.hpp"

namespace gateverify {

bool is_prime(int n);

/// A local orthonormal basis, optionally tagged with the Weyl operator X^a Z^b
/// it diagonalizes (eigenvalues[k] belongs to kets[k]).
struct OrthonormalBasis {
    std::string label;
    std::vector<Vector> kets;
    std::vector<Complex> eigenvalues;
    int weyl_a = -1;
    int weyl_b = -1;

    int dim() const {
        return static_cast<int>(kets.size());
    }
    bool has_weyl() const {
        return weyl_a >= 0;
    }
};

/// Gram matrix within 1e-9 of identity.
bool is_orthonormal(const OrthonormalBasis &basis, double tol = 1e-9);

/// Eigenbases of Z, X and XZ (with the printed phase conventions, τ = -e^{iπ/d}),
/// followed by XZ^2 ... XZ^{d-1} when d is prime.
std::vector<OrthonormalBasis> pauli_eigenbases(int d1);

/// Number of bases pauli_eigenbases(d1) returns.
int available_pauli_bases(int d1);

/// Orthonormal eigenbasis of the local Weyl operator X^a Z^b, sorted by
/// eigenvalue phase. Reuses one of the pauli_eigenbases when it diagonalizes
/// the operator.
OrthonormalBasis weyl_eigenbasis(int d, int a, int b);

/// Orthonormal eigenbasis of a unitary matrix, ordered by eigenvalue phase in
/// [0, 2π); each ket is rephased so its first non-negligible entry is real
/// positive.
OrthonormalBasis unitary_eigenbasis(const Matrix &u, std::string label);

struct SiteLabel {
    std::string basis;
    int index = 0;
};

struct TestState {
    PureState state;
    double probability = 0;
    /// Preparation settings per site; empty for states that are not
    /// prepared from labeled local bases.
    std::vector<SiteLabel> labels;
};

class TestEnsemble {
   public:
    TestEnsemble() = default;
    TestEnsemble(std::vector<TestState> states, Dims dims, std::string kind);

    const std::vector<TestState> &states() const {
        return states_;
    }
    const Dims &dims() const {
        return dims_;
    }
    int dim() const {
        return dims_product(dims_);
    }
    size_t size() const {
        return states_.size();
    }
    const std::string &kind() const {
        return kind_;
    }
    /// ‖d Σ p_j ρ_j - 1‖ ≤ 1e-8.
    bool balanced() const {
        return balanced_;
    }
    double balance_defect() const {
        return balance_defect_;
    }

   private:
    std::vector<TestState> states_;
    Dims dims_;
    std::string kind_;
    bool balanced_ = false;
    double balance_defect_ = 0;
};

TestEnsemble product_mub_ensemble(const Dims &factor_dims, int r);
TestEnsemble product_two_design_ensemble(const Dims &factor_dims);

struct PreparationReport {
    DenseOperator theta_p;
    double beta_p = 0;
    double nu_p = 0;
};

/// Θ_P = d Σ_j p_j ρ_j ⊗ ρ_j*.
DenseOperator preparation_operator(const TestEnsemble &ensemble);
PreparationReport preparation_report(const TestEnsemble &ensemble);
bool is_two_design(const TestEnsemble &ensemble, double tol = 1e-8);

}  // namespace gateverify
