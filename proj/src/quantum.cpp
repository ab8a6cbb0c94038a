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

#include "gateverify/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "gateverify/error.hpp"

namespace gateverify {

Complex root_of_unity(int d) {
    return std::polar(1.0, 2 * std::numbers::pi / d);
}

Matrix weyl_x(int d) {
    Matrix x = Matrix::Zero(d, d);
    for (int j = 0; j < d; j++) {
        x((j + 1) % d, j) = 1;
    }
    return x;
}

Matrix weyl_z(int d) {
    Matrix z = Matrix::Zero(d, d);
    for (int j = 0; j < d; j++) {
        z(j, j) = std::polar(1.0, 2 * std::numbers::pi * j / d);
    }
    return z;
}

Matrix weyl(int d, int a, int b) {
    a = ((a % d) + d) % d;
    b = ((b % d) + d) % d;
    // (X^a Z^b)|j> = ω^{bj} |j+a>.
    Matrix w = Matrix::Zero(d, d);
    for (int j = 0; j < d; j++) {
        w((j + a) % d, j) = std::polar(1.0, 2 * std::numbers::pi * ((static_cast<long long>(b) * j) % d) / d);
    }
    return w;
}

PureState::PureState(Vector amplitudes, Dims dims) : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    require(dims_product(dims_) == amps_.size(), ErrorCode::kDimension, "state amplitudes do not match factor dims");
    require(std::abs(amps_.norm() - 1.0) <= 1e-9, ErrorCode::kInvalidArgument, "state is not normalized");
}

PureState PureState::basis(Dims dims, int index) {
    int d = dims_product(dims);
    require(index >= 0 && index < d, ErrorCode::kInvalidArgument, "basis index out of range");
    Vector v = Vector::Zero(d);
    v(index) = 1;
    return PureState(std::move(v), std::move(dims));
}

PureState PureState::product(const std::vector<Vector> &kets) {
    require(!kets.empty(), ErrorCode::kInvalidArgument, "product state needs at least one factor");
    Vector v = kets[0];
    Dims dims{static_cast<int>(kets[0].size())};
    for (size_t k = 1; k < kets.size(); k++) {
        v = kron(v, kets[k]);
        dims.push_back(static_cast<int>(kets[k].size()));
    }
    return PureState(std::move(v), std::move(dims));
}

DenseOperator PureState::projector() const {
    return DenseOperator::projector(amps_, dims_);
}

Vector maximally_entangled(int d) {
    Vector phi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int j = 0; j < d; j++) {
        phi(static_cast<Eigen::Index>(j) * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return phi;
}

DenseOperator maximally_entangled_projector(const Dims &dims) {
    Dims doubled = dims;
    doubled.insert(doubled.end(), dims.begin(), dims.end());
    return DenseOperator::projector(maximally_entangled(dims_product(dims)), std::move(doubled));
}

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::kExplicit:
            return "explicit";
        case GateKind::kCliffordCircuit:
            return "clifford-circuit";
        case GateKind::kControlledZ:
            return "controlled-Z-type";
        case GateKind::kControlledX:
            return "controlled-X-type";
        case GateKind::kCswap:
            return "cswap";
        case GateKind::kPermutation:
            return "subsystem-permutation";
    }
    return "explicit";
}

UnitaryGate make_unitary(std::string name, GateKind kind, DenseOperator matrix) {
    require(matrix.is_square(), ErrorCode::kDimension, "gate matrix must be square");
    check_dimension(static_cast<size_t>(matrix.rows()), "gate");
    const Matrix &u = matrix.matrix();
    double defect = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    require(defect <= 1e-9, ErrorCode::kInvalidArgument, "gate '" + name + "' is not unitary");
    UnitaryGate g;
    g.name = std::move(name);
    g.kind = kind;
    g.matrix = std::move(matrix);
    return g;
}

namespace {

std::vector<int> digits_of(int flat, const Dims &dims) {
    std::vector<int> digits(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; k--) {
        digits[k] = flat % dims[k];
        flat /= dims[k];
    }
    return digits;
}

int flat_of(const std::vector<int> &digits, const Dims &dims) {
    int flat = 0;
    for (size_t k = 0; k < dims.size(); k++) {
        flat = flat * dims[k] + digits[k];
    }
    return flat;
}

Matrix embed_single(const Matrix &g, int site, const Dims &dims) {
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < static_cast<int>(dims.size()); k++) {
        out = kron(out, k == site ? g : Matrix::Identity(dims[k], dims[k]));
    }
    return out;
}

Matrix fourier(int d) {
    Matrix f(d, d);
    for (int j = 0; j < d; j++) {
        for (int k = 0; k < d; k++) {
            f(k, j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2 * std::numbers::pi * ((j * k) % d) / d);
        }
    }
    return f;
}

bool has_phase_gate(int d) {
    return d == 2 || d % 2 == 1;
}

Matrix phase_gate(int d) {
    require(has_phase_gate(d), ErrorCode::kUnsupported, "the s gate is defined for qubits and odd d only");
    Matrix s = Matrix::Zero(d, d);
    if (d == 2) {
        s(0, 0) = 1;
        s(1, 1) = Complex(0, 1);
        return s;
    }
    for (int j = 0; j < d; j++) {
        long long e = (static_cast<long long>(j) * (j - 1) / 2) % d;
        s(j, j) = std::polar(1.0, 2 * std::numbers::pi * e / d);
    }
    return s;
}

void check_site(int site, const Dims &dims) {
    require(site >= 0 && site < static_cast<int>(dims.size()), ErrorCode::kInvalidArgument,
            "site index " + std::to_string(site) + " out of range");
}

Matrix two_site_map(const std::string &gate, int a, int b, const Dims &dims) {
    check_site(a, dims);
    check_site(b, dims);
    require(a != b, ErrorCode::kInvalidArgument, "two-site gate needs distinct sites");
    int total = dims_product(dims);
    Matrix u = Matrix::Zero(total, total);
    for (int in = 0; in < total; in++) {
        auto digits = digits_of(in, dims);
        Complex phase = 1;
        if (gate == "cx" || gate == "cnot" || gate == "sum") {
            require(dims[a] == dims[b], ErrorCode::kUnsupported, "sum gate needs equal local dims");
            digits[b] = (digits[b] + digits[a]) % dims[b];
        } else if (gate == "cz") {
            require(dims[a] == dims[b], ErrorCode::kUnsupported, "cz gate needs equal local dims");
            phase = std::polar(1.0, 2 * std::numbers::pi * ((digits[a] * digits[b]) % dims[a]) / dims[a]);
        } else if (gate == "swap") {
            require(dims[a] == dims[b], ErrorCode::kUnsupported, "swap needs equal local dims");
            std::swap(digits[a], digits[b]);
        } else {
            fail(ErrorCode::kUnsupported, "unknown two-site gate '" + gate + "'");
        }
        u(flat_of(digits, dims), in) = phase;
    }
    return u;
}

Matrix single_site_gate(const std::string &gate, int d) {
    if (gate == "x") {
        return weyl_x(d);
    }
    if (gate == "z") {
        return weyl_z(d);
    }
    if (gate == "h" || gate == "fourier" || gate == "f") {
        return fourier(d);
    }
    if (gate == "s") {
        return phase_gate(d);
    }
    if (gate == "y") {
        require(d == 2, ErrorCode::kUnsupported, "y is a qubit gate");
        return Complex(0, 1) * weyl_x(2) * weyl_z(2);
    }
    if (gate == "i" || gate == "identity") {
        return Matrix::Identity(d, d);
    }
    fail(ErrorCode::kUnsupported, "unknown single-site gate '" + gate + "'");
}

bool is_single_site_name(const std::string &g) {
    return g == "x" || g == "z" || g == "h" || g == "fourier" || g == "f" || g == "s" || g == "y" || g == "i" ||
           g == "identity";
}

Dims uniform_dims(int n, int d1) {
    require(n >= 1, ErrorCode::kInvalidArgument, "gate needs at least one site");
    require(d1 >= 2, ErrorCode::kInvalidArgument, "local dimension must be at least 2");
    double total = std::pow(static_cast<double>(d1), n);
    require(total <= static_cast<double>(max_dimension()), ErrorCode::kDimension,
            "gate dimension " + std::to_string(static_cast<long long>(total)) + " exceeds the cap of " +
                std::to_string(max_dimension()));
    return Dims(n, d1);
}

UnitaryGate controlled_z(int n) {
    Dims dims = uniform_dims(n, 2);
    int total = dims_product(dims);
    Matrix u = Matrix::Identity(total, total);
    u(total - 1, total - 1) = -1;
    return make_unitary(n == 2 ? "cz" : "c^(" + std::to_string(n - 1) + ")z", GateKind::kControlledZ,
                        DenseOperator(std::move(u), dims));
}

UnitaryGate controlled_x(int n) {
    Dims dims = uniform_dims(n, 2);
    int total = dims_product(dims);
    Matrix u = Matrix::Identity(total, total);
    u(total - 2, total - 2) = 0;
    u(total - 1, total - 1) = 0;
    u(total - 2, total - 1) = 1;
    u(total - 1, total - 2) = 1;
    return make_unitary(n == 2 ? "cx" : "c^(" + std::to_string(n - 1) + ")x", GateKind::kControlledX,
                        DenseOperator(std::move(u), dims));
}

UnitaryGate controlled_swap() {
    Dims dims{2, 2, 2};
    Matrix u = Matrix::Zero(8, 8);
    for (int in = 0; in < 8; in++) {
        auto digits = digits_of(in, dims);
        if (digits[0] == 1) {
            std::swap(digits[1], digits[2]);
        }
        u(flat_of(digits, dims), in) = 1;
    }
    return make_unitary("cswap", GateKind::kCswap, DenseOperator(std::move(u), dims));
}

}  // namespace

UnitaryGate clifford_circuit(const std::vector<CircuitOp> &ops, Dims dims) {
    int total = dims_product(dims);
    check_dimension(static_cast<size_t>(total), "clifford circuit");
    Matrix u = Matrix::Identity(total, total);
    for (const auto &op : ops) {
        Matrix step;
        if (op.sites.size() == 1) {
            check_site(op.sites[0], dims);
            step = embed_single(single_site_gate(op.gate, dims[op.sites[0]]), op.sites[0], dims);
        } else if (op.sites.size() == 2) {
            step = two_site_map(op.gate, op.sites[0], op.sites[1], dims);
        } else {
            fail(ErrorCode::kUnsupported, "circuit op '" + op.gate + "' must act on one or two sites");
        }
        u = step * u;
    }
    return make_unitary("clifford", GateKind::kCliffordCircuit, DenseOperator(std::move(u), std::move(dims)));
}

UnitaryGate permutation_gate(const std::vector<int> &permutation, Dims dims) {
    const int n = static_cast<int>(dims.size());
    require(static_cast<int>(permutation.size()) == n, ErrorCode::kInvalidArgument,
            "permutation length must equal the number of sites");
    std::vector<int> sorted = permutation;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; k++) {
        require(sorted[k] == k, ErrorCode::kInvalidArgument, "not a permutation of the sites");
        require(dims[permutation[k]] == dims[k], ErrorCode::kUnsupported,
                "permutation must map each site onto a slot of equal dimension");
    }
    int total = dims_product(dims);
    check_dimension(static_cast<size_t>(total), "permutation");
    Matrix u = Matrix::Zero(total, total);
    for (int in = 0; in < total; in++) {
        auto digits = digits_of(in, dims);
        std::vector<int> out(n);
        for (int k = 0; k < n; k++) {
            out[permutation[k]] = digits[k];
        }
        u(flat_of(out, dims), in) = 1;
    }
    UnitaryGate g = make_unitary("permutation", GateKind::kPermutation, DenseOperator(std::move(u), std::move(dims)));
    g.permutation = permutation;
    return g;
}

std::vector<CircuitOp> representative_clifford_ops(int n, int d1) {
    std::vector<CircuitOp> ops;
    ops.push_back({"h", {0}});
    for (int k = 0; k + 1 < n; k++) {
        ops.push_back({"cx", {k, k + 1}});
    }
    if (has_phase_gate(d1)) {
        ops.push_back({"s", {n - 1}});
    }
    return ops;
}

UnitaryGate gate_library(const std::string &name_in, int n, int d1) {
    std::string name = name_in;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    auto need_qubits = [&]() {
        require(d1 == 2, ErrorCode::kUnsupported, "gate '" + name + "' is only available for qubits (d1 = 2)");
    };
    auto need_n = [&](int want) {
        require(n == want, ErrorCode::kUnsupported, "gate '" + name + "' acts on exactly " + std::to_string(want) + " sites");
    };

    if (is_single_site_name(name)) {
        Dims dims = uniform_dims(n, d1);
        Matrix g = single_site_gate(name, d1);
        Matrix u = Matrix::Identity(1, 1);
        for (int k = 0; k < n; k++) {
            u = kron(u, g);
        }
        return make_unitary(name, GateKind::kExplicit, DenseOperator(std::move(u), std::move(dims)));
    }
    if (name == "cz" || name == "ccz" || name == "controlled-z") {
        need_qubits();
        if (name == "ccz") {
            need_n(3);
        }
        require(n >= 2, ErrorCode::kUnsupported, "controlled-Z needs at least two qubits");
        return controlled_z(n);
    }
    if (name == "cx" || name == "cnot" || name == "toffoli" || name == "controlled-x") {
        need_qubits();
        if (name == "toffoli") {
            need_n(3);
        }
        require(n >= 2, ErrorCode::kUnsupported, "controlled-X needs at least two qubits");
        return controlled_x(n);
    }
    if (name == "cswap" || name == "fredkin") {
        need_qubits();
        need_n(3);
        return controlled_swap();
    }
    if (name == "swap") {
        need_n(2);
        UnitaryGate g = permutation_gate({1, 0}, uniform_dims(2, d1));
        g.name = "swap";
        return g;
    }
    if (name == "sum") {
        need_n(2);
        UnitaryGate g = clifford_circuit({{"cx", {0, 1}}}, uniform_dims(2, d1));
        g.name = "sum";
        return g;
    }
    if (name == "cyclic_shift" || name == "permutation") {
        require(n >= 2, ErrorCode::kUnsupported, "cyclic shift needs at least two sites");
        std::vector<int> perm(n);
        for (int k = 0; k < n; k++) {
            perm[k] = (k + 1) % n;
        }
        UnitaryGate g = permutation_gate(perm, uniform_dims(n, d1));
        g.name = "cyclic_shift";
        return g;
    }
    if (name == "clifford") {
        UnitaryGate g = clifford_circuit(representative_clifford_ops(n, d1), uniform_dims(n, d1));
        g.name = "clifford";
        return g;
    }
    fail(ErrorCode::kUnsupported, "unknown gate '" + name_in + "'");
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, Dims dims, double tol)
    : kraus_(std::move(kraus)), dims_(std::move(dims)) {
    require(!kraus_.empty(), ErrorCode::kInvalidArgument, "channel needs at least one Kraus operator");
    const int d = dims_product(dims_);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &k : kraus_) {
        require(k.rows() == d && k.cols() == d, ErrorCode::kDimension, "Kraus operator shape mismatch");
        sum.noalias() += k.adjoint() * k;
    }
    double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    require(defect <= tol, ErrorCode::kInvalidArgument,
            "Kraus operators are not trace preserving (defect " + std::to_string(defect) + ")");
}

QuantumChannel QuantumChannel::identity(const Dims &dims) {
    int d = dims_product(dims);
    return QuantumChannel({Matrix::Identity(d, d)}, dims);
}

QuantumChannel QuantumChannel::unitary(const UnitaryGate &gate) {
    return QuantumChannel({gate.matrix.matrix()}, gate.dims());
}

QuantumChannel QuantumChannel::unitary(const Matrix &u, const Dims &dims) {
    return QuantumChannel({u}, dims);
}

Matrix QuantumChannel::apply(const Matrix &rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto &k : kraus_) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

QuantumChannel QuantumChannel::then(const QuantumChannel &next) const {
    require(next.dims_ == dims_, ErrorCode::kDimension, "channel composition: dims differ");
    std::vector<Matrix> out;
    out.reserve(kraus_.size() * next.kraus_.size());
    for (const auto &b : next.kraus_) {
        for (const auto &a : kraus_) {
            out.push_back(b * a);
        }
    }
    return QuantumChannel(std::move(out), dims_);
}

ChoiState make_choi(DenseOperator matrix, const Dims &system_dims, double tol) {
    const int d = dims_product(system_dims);
    require(matrix.rows() == static_cast<Eigen::Index>(d) * d && matrix.is_square(), ErrorCode::kDimension,
            "Choi matrix must act on H⊗H");
    require(matrix.is_hermitian(1e-9), ErrorCode::kInvalidArgument, "Choi matrix is not Hermitian");
    require(min_eigenvalue(matrix.matrix()) >= -tol, ErrorCode::kInvalidArgument, "Choi matrix is not PSD");
    require(std::abs(matrix.trace() - 1.0) <= tol, ErrorCode::kInvalidArgument, "Choi matrix does not have unit trace");
    std::vector<int> keep;
    const int n = static_cast<int>(system_dims.size());
    for (int k = n; k < 2 * n; k++) {
        keep.push_back(k);
    }
    DenseOperator marginal = partial_trace(matrix, keep);
    double defect = (marginal.matrix() - Matrix::Identity(d, d) / d).cwiseAbs().maxCoeff();
    require(defect <= tol, ErrorCode::kInvalidArgument, "Choi matrix violates tr_1 χ = 1/d");
    return ChoiState{std::move(matrix), d};
}

ChoiState choi_of_channel(const QuantumChannel &channel) {
    const int d = channel.dim();
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    Matrix chi = Matrix::Zero(dd, dd);
    const double scale = 1.0 / d;
    for (const auto &k : channel.kraus()) {
        // (K⊗1)|Φ> has amplitude K(a, j)/√d at index (a, j).
        Vector v(dd);
        for (int a = 0; a < d; a++) {
            for (int j = 0; j < d; j++) {
                v(static_cast<Eigen::Index>(a) * d + j) = k(a, j);
            }
        }
        chi.noalias() += scale * v * v.adjoint();
    }
    Dims dims = channel.dims();
    dims.insert(dims.end(), channel.dims().begin(), channel.dims().end());
    return make_choi(DenseOperator(std::move(chi), std::move(dims)), channel.dims());
}

QuantumChannel channel_of_choi(const ChoiState &choi) {
    const int d = choi.dim;
    Dims system(choi.matrix.dims().begin(), choi.matrix.dims().begin() + choi.matrix.dims().size() / 2);
    make_choi(choi.matrix, system);  // re-validates the marginal condition
    HermitianSpectrum spec = hermitian_eig(choi.matrix, 1e-9);
    std::vector<Matrix> kraus;
    double cutoff = 1e-14;
    for (size_t idx = 0; idx < spec.eigenvalues.size(); idx++) {
        double lambda = spec.eigenvalues[idx];
        if (lambda <= cutoff) {
            break;
        }
        Matrix k(d, d);
        double s = std::sqrt(d * lambda);
        for (int a = 0; a < d; a++) {
            for (int j = 0; j < d; j++) {
                k(a, j) = s * spec.eigenvectors(static_cast<Eigen::Index>(a) * d + j, idx);
            }
        }
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(std::move(kraus), system, 1e-7);
}

Matrix apply_choi(const ChoiState &choi, const Matrix &rho) {
    const int d = choi.dim;
    require(rho.rows() == d && rho.cols() == d, ErrorCode::kDimension, "apply_choi: input shape mismatch");
    const Matrix &chi = choi.matrix.matrix();
    Matrix out = Matrix::Zero(d, d);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            Complex acc = 0;
            for (int j = 0; j < d; j++) {
                for (int k = 0; k < d; k++) {
                    acc += chi(static_cast<Eigen::Index>(a) * d + j, static_cast<Eigen::Index>(b) * d + k) *
                           std::conj(rho(k, j));
                }
            }
            out(a, b) = static_cast<double>(d) * acc;
        }
    }
    return out;
}

double entanglement_fidelity(const QuantumChannel &channel, const UnitaryGate &gate) {
    require(channel.dim() == gate.dim(), ErrorCode::kDimension, "entanglement_fidelity: dimension mismatch");
    const Matrix &u = gate.matrix.matrix();
    const double d = channel.dim();
    double acc = 0;
    for (const auto &k : channel.kraus()) {
        acc += std::norm((u.adjoint() * k).trace());
    }
    return std::clamp(acc / (d * d), 0.0, 1.0);
}

double average_from_entanglement_fidelity(double f_e, int d) {
    return (d * f_e + 1.0) / (d + 1.0);
}

double entanglement_from_average_fidelity(double f_a, int d) {
    return ((d + 1.0) * f_a - 1.0) / d;
}

double average_infidelity(double eps_e, int d) {
    return d * eps_e / (d + 1.0);
}

double entanglement_infidelity(double eps_a, int d) {
    return (d + 1.0) * eps_a / d;
}

double average_gate_fidelity(const QuantumChannel &channel, const UnitaryGate &gate) {
    return average_from_entanglement_fidelity(entanglement_fidelity(channel, gate), channel.dim());
}

NoiseModel NoiseModel::none() {
    return NoiseModel{};
}

NoiseModel NoiseModel::depolarizing(double p) {
    NoiseModel m;
    m.kind = Kind::kDepolarizing;
    m.p = p;
    return m;
}

NoiseModel NoiseModel::per_site_depolarizing(double p) {
    NoiseModel m;
    m.kind = Kind::kPerSiteDepolarizing;
    m.p = p;
    return m;
}

NoiseModel NoiseModel::overrotation(double angle, Matrix generator) {
    NoiseModel m;
    m.kind = Kind::kOverrotation;
    m.angle = angle;
    m.generator = std::move(generator);
    return m;
}

NoiseModel NoiseModel::explicit_kraus(std::vector<Matrix> kraus) {
    NoiseModel m;
    m.kind = Kind::kKraus;
    m.kraus = std::move(kraus);
    return m;
}

const char *noise_kind_name(NoiseModel::Kind kind) {
    switch (kind) {
        case NoiseModel::Kind::kNone:
            return "none";
        case NoiseModel::Kind::kDepolarizing:
            return "depolarizing";
        case NoiseModel::Kind::kOverrotation:
            return "overrotation";
        case NoiseModel::Kind::kPerSiteDepolarizing:
            return "per-site-depolarizing";
        case NoiseModel::Kind::kKraus:
            return "kraus";
    }
    return "none";
}

namespace {

/// Weyl Kraus set with weights 1 - p(d²-1)/d² on the identity and p/d² on the rest.
std::vector<Matrix> depolarizing_kraus(int d, double p) {
    require(p >= 0 && p <= 1, ErrorCode::kInvalidArgument,
            "depolarizing probability must lie in [0, 1], got " + std::to_string(p));
    std::vector<Matrix> out;
    double dd = static_cast<double>(d) * d;
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            double w = (a == 0 && b == 0) ? 1 - p * (dd - 1) / dd : p / dd;
            if (w <= 0) {
                continue;
            }
            out.push_back(std::sqrt(w) * weyl(d, a, b));
        }
    }
    return out;
}

Matrix matrix_exp_hermitian(const Matrix &h, double t) {
    // exp(-i t H) through the spectral decomposition.
    Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) * 0.5);
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "eigensolver failed on the rotation generator");
    Vector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); k++) {
        phases(k) = std::polar(1.0, -t * solver.eigenvalues()(k));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

Matrix default_overrotation_generator(const Dims &dims) {
    Matrix z = weyl_z(dims[0]);
    return embed_single((z + z.adjoint()) * 0.5, 0, dims);
}

QuantumChannel noise_channel(const NoiseModel &model, const Dims &dims) {
    const int d = dims_product(dims);
    switch (model.kind) {
        case NoiseModel::Kind::kNone:
            return QuantumChannel::identity(dims);
        case NoiseModel::Kind::kDepolarizing:
            return QuantumChannel(depolarizing_kraus(d, model.p), dims);
        case NoiseModel::Kind::kPerSiteDepolarizing: {
            std::vector<Matrix> acc{Matrix::Identity(1, 1)};
            for (int dk : dims) {
                auto local = depolarizing_kraus(dk, model.p);
                std::vector<Matrix> next;
                next.reserve(acc.size() * local.size());
                for (const auto &a : acc) {
                    for (const auto &b : local) {
                        next.push_back(kron(a, b));
                    }
                }
                acc = std::move(next);
            }
            return QuantumChannel(std::move(acc), dims);
        }
        case NoiseModel::Kind::kOverrotation: {
            require(std::isfinite(model.angle), ErrorCode::kInvalidArgument, "overrotation angle must be finite");
            Matrix h = model.generator.size() ? model.generator : default_overrotation_generator(dims);
            require(h.rows() == d && h.cols() == d, ErrorCode::kDimension, "overrotation generator shape mismatch");
            require(hermiticity_defect(h) <= 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()),
                    ErrorCode::kInvalidArgument, "overrotation generator must be Hermitian");
            return QuantumChannel({matrix_exp_hermitian(h, model.angle)}, dims);
        }
        case NoiseModel::Kind::kKraus:
            return QuantumChannel(model.kraus, dims);
    }
    fail(ErrorCode::kInvalidArgument, "unknown noise model");
}

QuantumChannel apply_noise(const UnitaryGate &gate, const NoiseModel &model) {
    return QuantumChannel::unitary(gate).then(noise_channel(model, gate.dims()));
}

}  // namespace gateverify
