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

#include "gateverify/tensor.hpp"

namespace gateverify {

/// exp(2πi/d).
Complex root_of_unity(int d);

/// Generalized Pauli operators on C^d: X|j> = |j+1>, Z|j> = ω^j |j>.
Matrix weyl_x(int d);
Matrix weyl_z(int d);
/// X^a Z^b.
Matrix weyl(int d, int a, int b);

class PureState {
   public:
    PureState() = default;
    PureState(Vector amplitudes, Dims dims);

    static PureState basis(Dims dims, int index);
    /// Tensor product of single-site kets; dims are taken from the ket sizes.
    static PureState product(const std::vector<Vector> &kets);

    const Vector &amplitudes() const {
        return amps_;
    }
    const Dims &dims() const {
        return dims_;
    }
    int dim() const {
        return static_cast<int>(amps_.size());
    }
    DenseOperator projector() const;

   private:
    Vector amps_;
    Dims dims_;
};

/// (Σ_j |jj>)/√d on H⊗H in the computational product basis.
Vector maximally_entangled(int d);
DenseOperator maximally_entangled_projector(const Dims &dims);

enum class GateKind {
    kExplicit,
    kCliffordCircuit,
    kControlledZ,
    kControlledX,
    kCswap,
    kPermutation,
};

const char *gate_kind_name(GateKind kind);

struct UnitaryGate {
    std::string name;
    GateKind kind = GateKind::kExplicit;
    DenseOperator matrix;
    /// For kPermutation: factor k is moved to slot permutation[k].
    std::vector<int> permutation;

    const Dims &dims() const {
        return matrix.dims();
    }
    int dim() const {
        return static_cast<int>(matrix.rows());
    }
    int num_sites() const {
        return static_cast<int>(matrix.dims().size());
    }
};

/// Validates U†U = 1 within 1e-9.
UnitaryGate make_unitary(std::string name, GateKind kind, DenseOperator matrix);

struct CircuitOp {
    std::string gate;
    std::vector<int> sites;
};

/// Product of the listed gates, applied left to right. Supported ops: x, z, y
/// (qubits), h (the Fourier gate; Hadamard for qubits), s (qubits and odd d),
/// cx/sum, cz, swap.
UnitaryGate clifford_circuit(const std::vector<CircuitOp> &ops, Dims dims);

UnitaryGate permutation_gate(const std::vector<int> &permutation, Dims dims);

/// Named gates on n sites of local dimension d1:
///   x, z, fourier/h, s, y, identity: tensor power over the n sites
///   cz, cx/cnot (n >= 2, qubits): C^(n-1)Z and C^(n-1)X with the last site as target
///   toffoli, ccz (n = 3), cswap/fredkin (n = 3, qubits), swap (n = 2)
///   sum (n = 2): |a,b> -> |a,a+b>
///   cyclic_shift: moves factor k to slot k+1 mod n
///   clifford: the built-in representative Clifford circuit for (n, d1)
UnitaryGate gate_library(const std::string &name, int n, int d1);

/// The representative Clifford circuit used by the table reproduction:
/// h on site 0, a cx chain 0->1->...->n-1, then s on the last site when s
/// exists for d1.
std::vector<CircuitOp> representative_clifford_ops(int n, int d1);

class QuantumChannel {
   public:
    QuantumChannel() = default;
    /// Validates Σ K†K = 1 within `tol`.
    QuantumChannel(std::vector<Matrix> kraus, Dims dims, double tol = 1e-8);

    static QuantumChannel identity(const Dims &dims);
    static QuantumChannel unitary(const UnitaryGate &gate);
    static QuantumChannel unitary(const Matrix &u, const Dims &dims);

    const std::vector<Matrix> &kraus() const {
        return kraus_;
    }
    const Dims &dims() const {
        return dims_;
    }
    int dim() const {
        return dims_product(dims_);
    }

    Matrix apply(const Matrix &rho) const;
    /// next ∘ this.
    QuantumChannel then(const QuantumChannel &next) const;

   private:
    std::vector<Matrix> kraus_;
    Dims dims_;
};

struct ChoiState {
    DenseOperator matrix;  // on H⊗H, dims = system dims followed by reference dims
    int dim = 0;
};

/// Validates PSD, unit trace and tr_1 χ = 1/d, each within `tol`.
ChoiState make_choi(DenseOperator matrix, const Dims &system_dims, double tol = 1e-8);

ChoiState choi_of_channel(const QuantumChannel &channel);
QuantumChannel channel_of_choi(const ChoiState &choi);
/// Λ(ρ) = d tr_2[χ(1⊗ρ*)], evaluated directly from the Choi matrix.
Matrix apply_choi(const ChoiState &choi, const Matrix &rho);

double entanglement_fidelity(const QuantumChannel &channel, const UnitaryGate &gate);
double average_gate_fidelity(const QuantumChannel &channel, const UnitaryGate &gate);
double average_from_entanglement_fidelity(double f_e, int d);
double entanglement_from_average_fidelity(double f_a, int d);
/// ε_A = d ε_E / (d + 1).
double average_infidelity(double eps_e, int d);
double entanglement_infidelity(double eps_a, int d);

struct NoiseModel {
    enum class Kind { kNone, kDepolarizing, kOverrotation, kPerSiteDepolarizing, kKraus };
    Kind kind = Kind::kNone;
    double p = 0;
    double angle = 0;
    /// Hermitian generator for kOverrotation; empty selects the default
    /// (Z + Z†)/2 on site 0.
    Matrix generator;
    std::vector<Matrix> kraus;

    static NoiseModel none();
    static NoiseModel depolarizing(double p);
    static NoiseModel per_site_depolarizing(double p);
    static NoiseModel overrotation(double angle, Matrix generator = {});
    static NoiseModel explicit_kraus(std::vector<Matrix> kraus);
};

const char *noise_kind_name(NoiseModel::Kind kind);

/// The noise channel alone, on the given factor dims.
QuantumChannel noise_channel(const NoiseModel &model, const Dims &dims);
/// Noise applied after the ideal gate.
QuantumChannel apply_noise(const UnitaryGate &gate, const NoiseModel &model);
Matrix default_overrotation_generator(const Dims &dims);

}  // namespace gateverify
