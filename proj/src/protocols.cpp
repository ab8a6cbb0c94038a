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

#include "gateverify/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gateverify/error.hpp"

namespace gateverify {

namespace {

constexpr double kInvariantTol = 1e-8;

Matrix basis_matrix(const OrthonormalBasis &basis) {
    Matrix out(basis.dim(), basis.dim());
    for (int k = 0; k < basis.dim(); k++) {
        out.col(k) = basis.kets[k];
    }
    return out;
}

std::vector<int> outcome_digits(size_t index, const Dims &dims) {
    std::vector<int> out(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; k--) {
        out[k] = static_cast<int>(index % dims[k]);
        index /= dims[k];
    }
    return out;
}

bool same_ray(const Vector &u, const Vector &v, double tol = 1e-8) {
    return std::abs(std::abs(u.dot(v)) - 1) <= tol;
}

/// Pauli basis whose kets equal the given ones index by index, up to phases.
std::optional<OrthonormalBasis> match_pauli_basis(const std::vector<Vector> &kets) {
    const int d = static_cast<int>(kets.size());
    for (auto &candidate : pauli_eigenbases(d)) {
        bool ok = true;
        for (int k = 0; k < d && ok; k++) {
            ok = same_ray(candidate.kets[k], kets[k]);
        }
        if (ok) {
            return candidate;
        }
    }
    return std::nullopt;
}

std::optional<SiteLabel> find_pauli_ket(const Vector &ket) {
    const int d = static_cast<int>(ket.size());
    for (const auto &basis : pauli_eigenbases(d)) {
        for (int k = 0; k < d; k++) {
            if (same_ray(basis.kets[k], ket)) {
                return SiteLabel{basis.label, k};
            }
        }
    }
    return std::nullopt;
}

Vector ket_of_label(const SiteLabel &label, int d) {
    for (const auto &basis : pauli_eigenbases(d)) {
        if (basis.label == label.basis) {
            return basis.kets.at(label.index);
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown basis label " + label.basis);
}

double min_eig(const Matrix &m) {
    return hermitian_eigenvalues(m).back();
}

}  // namespace

LocalTest make_local_test(std::vector<OrthonormalBasis> settings, std::vector<char> accept, std::string label) {
    require(!settings.empty(), ErrorCode::kInvalidArgument, "local test needs at least one site");
    Dims dims;
    Matrix b = Matrix::Identity(1, 1);
    for (const auto &basis : settings) {
        require(basis.dim() >= 2 && is_orthonormal(basis), ErrorCode::kInvalidArgument,
                "measurement setting is not an orthonormal basis");
        dims.push_back(basis.dim());
        b = kron(b, basis_matrix(basis));
    }
    const int total = dims_product(dims);
    require(static_cast<int>(accept.size()) == total, ErrorCode::kInvalidArgument,
            "acceptance table must have one entry per outcome tuple");
    Matrix kept(total, total);
    int cols = 0;
    for (int o = 0; o < total; o++) {
        if (accept[o]) {
            kept.col(cols++) = b.col(o);
        }
    }
    Matrix e = kept.leftCols(cols) * kept.leftCols(cols).adjoint();
    LocalTest out;
    out.settings = std::move(settings);
    out.accept = std::move(accept);
    out.op = DenseOperator(std::move(e), dims);
    out.label = std::move(label);
    return out;
}

LocalTest make_operator_test(DenseOperator op, std::string label) {
    require(op.is_square(), ErrorCode::kDimension, "test operator must be square");
    require(op.is_hermitian(), ErrorCode::kNotHermitian, "test operator must be Hermitian");
    auto eig = hermitian_eigenvalues(op.matrix());
    require(eig.back() >= -1e-9 && eig.front() <= 1 + 1e-9, ErrorCode::kInvariant,
            "test operator must satisfy 0 <= E <= 1");
    LocalTest out;
    out.op = std::move(op);
    out.label = std::move(label);
    return out;
}

StateVerifier make_state_verifier(PureState target, std::vector<WeightedTest> tests, std::string protocol) {
    require(!tests.empty(), ErrorCode::kInvalidArgument, "verifier needs at least one test");
    const Dims &dims = target.dims();
    Matrix omega = Matrix::Zero(target.dim(), target.dim());
    double total = 0;
    for (const auto &t : tests) {
        require(t.probability >= 0, ErrorCode::kInvalidArgument, "test probabilities must be non-negative");
        require(t.test.op.dims() == dims, ErrorCode::kDimension, "test operator dims differ from the target dims");
        total += t.probability;
        omega += t.probability * t.test.op.matrix();
    }
    require(std::abs(total - 1) <= 1e-9, ErrorCode::kInvalidArgument, "test probabilities must sum to 1");

    const Vector &psi = target.amplitudes();
    require((omega * psi - psi).norm() <= kInvariantTol, ErrorCode::kInvariant,
            "the target state must pass every test with certainty");
    auto eig = hermitian_eigenvalues(omega);
    require(eig.back() >= -kInvariantTol && eig.front() <= 1 + kInvariantTol, ErrorCode::kInvariant,
            "verification operator must satisfy 0 <= Ω <= 1");

    StateVerifier out;
    out.beta = operator_norm(Matrix(omega - psi * psi.adjoint()));
    out.nu = 1 - out.beta;
    out.omega = DenseOperator(std::move(omega), dims);
    out.target = std::move(target);
    out.tests = std::move(tests);
    out.protocol = std::move(protocol);
    return out;
}

namespace {

WeightedTest stabilizer_test(const StabilizerElement &g, int d, double probability) {
    std::vector<OrthonormalBasis> settings;
    Dims dims;
    for (size_t k = 0; k < g.a.size(); k++) {
        settings.push_back(weyl_eigenbasis(d, g.a[k], g.b[k]));
        dims.push_back(d);
    }
    const size_t total = static_cast<size_t>(dims_product(dims));
    std::vector<char> accept(total);
    for (size_t o = 0; o < total; o++) {
        auto digits = outcome_digits(o, dims);
        Complex value = 1;
        for (size_t k = 0; k < digits.size(); k++) {
            value *= settings[k].eigenvalues[digits[k]];
        }
        accept[o] = std::abs(value - g.eigenvalue) <= 1e-6;
    }
    return {make_local_test(std::move(settings), std::move(accept), stabilizer_label(g, d)), probability};
}

}  // namespace

StateVerifier uniform_stabilizer_verifier(const PureState &psi, const StabilizerGroup &group) {
    require(group.elements.size() >= 2, ErrorCode::kInvalidArgument, "stabilizer group has no nontrivial element");
    const double w = 1.0 / static_cast<double>(group.elements.size() - 1);
    std::vector<WeightedTest> tests;
    for (const auto &g : group.elements) {
        if (!g.is_identity()) {
            tests.push_back(stabilizer_test(g, group.d, w));
        }
    }
    return make_state_verifier(psi, std::move(tests), "uniform-stabilizer");
}

StateVerifier generator_verifier(const PureState &psi, const StabilizerGroup &group, std::vector<int> generators) {
    if (generators.empty()) {
        generators = choose_generators(group);
    }
    const size_t full = group.elements.size();
    require(generated_subgroup_size(group, generators) == full, ErrorCode::kInvalidArgument,
            "generators do not generate the stabilizer group");
    for (size_t i = 0; i < generators.size(); i++) {
        std::vector<int> rest = generators;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        require(generated_subgroup_size(group, rest) < full, ErrorCode::kInvalidArgument,
                "dependent generator set");
    }
    const double w = 1.0 / static_cast<double>(generators.size());
    std::vector<WeightedTest> tests;
    for (int idx : generators) {
        tests.push_back(stabilizer_test(group.elements[idx], group.d, w));
    }
    return make_state_verifier(psi, std::move(tests), "generator");
}

std::vector<Vector> product_factors(const PureState &psi, double tol) {
    const Dims &dims = psi.dims();
    const int n = static_cast<int>(dims.size());
    const DenseOperator rho = psi.projector();
    std::vector<Vector> kets;
    Vector prod = Vector::Ones(1);
    for (int k = 0; k < n; k++) {
        const int keep[1] = {k};
        DenseOperator reduced = partial_trace(rho, keep);
        HermitianSpectrum spec = hermitian_eig(reduced);
        if (spec.eigenvalues.size() > 1 && spec.eigenvalues[1] > tol) {
            fail(ErrorCode::kNotProduct, "state is entangled across the cut at site " + std::to_string(k));
        }
        Vector v = spec.eigenvectors.col(0);
        for (Eigen::Index i = 0; i < v.size(); i++) {
            if (std::abs(v(i)) > 1e-8) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        kets.push_back(v);
        prod = kron(prod, v);
    }
    require(std::abs(std::abs(prod.dot(psi.amplitudes())) - 1) <= tol, ErrorCode::kNotProduct,
            "state is not a tensor product of single-site kets");
    return kets;
}

StateVerifier exact_product_verifier(const PureState &psi) {
    auto kets = product_factors(psi);
    std::vector<OrthonormalBasis> settings;
    std::vector<int> wanted;
    for (const auto &ket : kets) {
        const int d = static_cast<int>(ket.size());
        std::optional<OrthonormalBasis> chosen;
        int index = -1;
        for (auto &basis : pauli_eigenbases(d)) {
            for (int k = 0; k < d && !chosen; k++) {
                if (same_ray(basis.kets[k], ket)) {
                    chosen = basis;
                    index = k;
                }
            }
            if (chosen) {
                break;
            }
        }
        if (!chosen) {
            // Complete the ket to a basis by Gram-Schmidt on the computational vectors.
            OrthonormalBasis custom;
            custom.label = "custom";
            custom.kets.push_back(ket);
            for (int j = 0; j < d && custom.dim() < d; j++) {
                Vector v = Vector::Unit(d, j);
                for (const auto &u : custom.kets) {
                    v -= u.dot(v) * u;
                }
                if (v.norm() > 1e-6) {
                    custom.kets.push_back(v.normalized());
                }
            }
            custom.eigenvalues.assign(d, Complex(1));
            chosen = custom;
            index = 0;
        }
        settings.push_back(*chosen);
        wanted.push_back(index);
    }
    Dims dims;
    for (const auto &b : settings) {
        dims.push_back(b.dim());
    }
    const size_t total = static_cast<size_t>(dims_product(dims));
    std::vector<char> accept(total, 0);
    size_t hit = 0;
    for (size_t k = 0; k < dims.size(); k++) {
        hit = hit * dims[k] + wanted[k];
    }
    accept[hit] = 1;
    std::string label;
    for (const auto &b : settings) {
        label += b.label;
    }
    std::vector<WeightedTest> tests{{make_local_test(std::move(settings), std::move(accept), label), 1.0}};
    return make_state_verifier(psi, std::move(tests), "exact-product");
}

StateVerifier hyperedge_coloring_verifier(const PureState &input) {
    const Dims &dims = input.dims();
    const int n = static_cast<int>(dims.size());
    require(n >= 2 && std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; }),
            ErrorCode::kInvalidArgument, "coloring verifier needs at least two qubits");
    auto kets = product_factors(input);
    const auto bases = pauli_eigenbases(2);
    const OrthonormalBasis &zb = bases[0];
    const OrthonormalBasis &xb = bases[1];

    // Sites prepared in the X basis carry the hyperedge; Z-basis sites must all be
    // |1>, otherwise the output is a product state.
    std::vector<int> sign(n, 0);
    std::vector<bool> x_site(n, false);
    int x_count = 0;
    for (int k = 0; k < n; k++) {
        if (same_ray(xb.kets[0], kets[k])) {
            x_site[k] = true;
        } else if (same_ray(xb.kets[1], kets[k])) {
            x_site[k] = true;
            sign[k] = 1;
        } else if (same_ray(zb.kets[1], kets[k])) {
            continue;
        } else {
            fail(ErrorCode::kInvalidArgument, "coloring verifier input must be |±> or |1> on every site");
        }
        x_count++;
    }
    require(x_count >= 2, ErrorCode::kInvalidArgument, "coloring verifier input needs at least two |±> sites");

    Vector out = input.amplitudes();
    out(out.size() - 1) *= -1;
    PureState target(out, dims);

    const double w = 1.0 / x_count;
    std::vector<WeightedTest> tests;
    const size_t total = size_t{1} << n;
    for (int i = 0; i < n; i++) {
        if (!x_site[i]) {
            continue;
        }
        std::vector<OrthonormalBasis> settings;
        std::string label;
        for (int k = 0; k < n; k++) {
            settings.push_back(k == i ? xb : zb);
            label += k == i ? 'X' : 'Z';
        }
        std::vector<char> accept(total, 0);
        for (size_t o = 0; o < total; o++) {
            auto digits = outcome_digits(o, dims);
            bool fixed_ok = true;
            bool all_one = true;
            for (int k = 0; k < n; k++) {
                if (k == i) {
                    continue;
                }
                if (!x_site[k] && digits[k] != 1) {
                    fixed_ok = false;
                }
                if (digits[k] != 1) {
                    all_one = false;
                }
            }
            const int x = digits[i] == 0 ? 1 : -1;
            const int f = all_one ? -1 : 1;
            accept[o] = fixed_ok && x * f == (sign[i] ? -1 : 1);
        }
        tests.push_back({make_local_test(std::move(settings), std::move(accept), label), w});
    }
    return make_state_verifier(std::move(target), std::move(tests), "coloring");
}

const char *policy_name(MeasurementPolicy policy) {
    switch (policy) {
        case MeasurementPolicy::kAuto:
            return "auto";
        case MeasurementPolicy::kCliffordPauli:
            return "clifford-pauli";
        case MeasurementPolicy::kColoring:
            return "coloring";
        case MeasurementPolicy::kGenerator:
            return "generator";
        case MeasurementPolicy::kExactProduct:
            return "exact-product";
        case MeasurementPolicy::kUserSupplied:
            return "user-supplied";
    }
    return "unknown";
}

MeasurementPolicy parse_policy(const std::string &name) {
    for (auto p : {MeasurementPolicy::kAuto, MeasurementPolicy::kCliffordPauli, MeasurementPolicy::kColoring,
                   MeasurementPolicy::kGenerator, MeasurementPolicy::kExactProduct,
                   MeasurementPolicy::kUserSupplied}) {
        if (name == policy_name(p)) {
            return p;
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown measurement policy '" + name + "'");
}

namespace {

/// Θ[(a,x),(b,y)] = Σ_j c_j A_j(a,b) conj(ψ_j(x)) ψ_j(y), evaluated as one GEMM.
Matrix process_operator(const std::vector<Matrix> &a, const std::vector<double> &c,
                        const std::vector<const Vector *> &psi) {
    const Eigen::Index d = a.front().rows();
    const Eigen::Index m = static_cast<Eigen::Index>(a.size());
    Matrix left(d * d, m);
    Matrix right(d * d, m);
    for (Eigen::Index j = 0; j < m; j++) {
        const Vector phi = psi[j]->conjugate();
        for (Eigen::Index r = 0; r < d; r++) {
            for (Eigen::Index s = 0; s < d; s++) {
                left(r * d + s, j) = c[j] * a[j](r, s);
                right(r * d + s, j) = phi(r) * std::conj(phi(s));
            }
        }
    }
    Matrix prod = left * right.transpose();
    Matrix out(d * d, d * d);
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index s = 0; s < d; s++) {
            for (Eigen::Index x = 0; x < d; x++) {
                for (Eigen::Index y = 0; y < d; y++) {
                    out(r * d + x, s * d + y) = prod(r * d + s, x * d + y);
                }
            }
        }
    }
    return out;
}

Dims doubled(const Dims &dims) {
    Dims out = dims;
    out.insert(out.end(), dims.begin(), dims.end());
    return out;
}

}  // namespace

VerificationStrategy assemble_strategy(UnitaryGate gate, TestEnsemble ensemble, std::vector<StateVerifier> verifiers) {
    require(verifiers.size() == ensemble.size(), ErrorCode::kInvalidArgument,
            "need one verifier per ensemble state");
    require(gate.dims() == ensemble.dims(), ErrorCode::kDimension, "gate and ensemble dims differ");
    const int d = gate.dim();
    check_dimension(static_cast<size_t>(d), "strategy");
    const Matrix &u = gate.matrix.matrix();

    std::vector<Matrix> omegas;
    std::vector<Matrix> pulled;
    std::vector<double> weights;
    std::vector<const Vector *> inputs;
    for (size_t j = 0; j < verifiers.size(); j++) {
        const auto &state = ensemble.states()[j];
        const Vector expected = u * state.state.amplitudes();
        require(same_ray(expected, verifiers[j].target.amplitudes()), ErrorCode::kInvalidArgument,
                "verifier " + std::to_string(j) + " targets a state other than the gate output");
        omegas.push_back(verifiers[j].omega.matrix());
        pulled.push_back(u.adjoint() * verifiers[j].omega.matrix() * u);
        weights.push_back(d * state.probability);
        inputs.push_back(&state.state.amplitudes());
    }

    VerificationStrategy s;
    const Dims dd = doubled(gate.dims());
    s.theta_tilde = DenseOperator(process_operator(omegas, weights, inputs), dd);
    s.theta = DenseOperator(process_operator(pulled, weights, inputs), dd);
    PreparationReport prep = preparation_report(ensemble);
    s.theta_p = prep.theta_p;

    const Matrix phi = maximally_entangled_projector(gate.dims()).matrix();
    GapReport &g = s.gaps;
    g.balanced = ensemble.balanced();
    g.beta_p = prep.beta_p;
    g.nu_p = prep.nu_p;
    g.beta_m = 0;
    for (const auto &v : verifiers) {
        g.beta_m = std::max(g.beta_m, v.beta);
    }
    g.nu_m = 1 - g.beta_m;
    g.beta = operator_norm(Matrix(s.theta.matrix() - phi));
    g.nu = 1 - g.beta;

    // Perfect gate passes with certainty.
    Vector chi_u(static_cast<Eigen::Index>(d) * d);
    for (int a = 0; a < d; a++) {
        for (int x = 0; x < d; x++) {
            chi_u(a * d + x) = u(a, x) / std::sqrt(static_cast<double>(d));
        }
    }
    const double pass = chi_u.dot(s.theta_tilde.matrix() * chi_u).real();
    require(std::abs(pass - 1) <= 1e-9, ErrorCode::kInvariant, "ideal gate does not pass with certainty");

    if (g.balanced) {
        const Matrix &theta = s.theta.matrix();
        const Matrix &theta_p = s.theta_p.matrix();
        require(min_eig(theta_p - phi) >= -kInvariantTol, ErrorCode::kInvariant, "Φ <= Θ_P violated");
        require(min_eig(theta - theta_p) >= -kInvariantTol, ErrorCode::kInvariant, "Θ_P <= Θ violated");
        require(hermitian_eigenvalues(theta).front() <= 1 + kInvariantTol, ErrorCode::kInvariant, "Θ <= 1 violated");
        require(g.nu >= g.nu_bound() - 1e-9, ErrorCode::kInvariant, "ν >= ν_P ν_M violated");
        Matrix rhs = g.nu_m * theta_p - theta;
        rhs.diagonal().array() += g.beta_m;
        require(min_eig(rhs) >= -kInvariantTol, ErrorCode::kInvariant, "Θ <= ν_M Θ_P + β_M violated");
    }

    s.gate = std::move(gate);
    s.ensemble = std::move(ensemble);
    s.verifiers = std::move(verifiers);
    return s;
}

namespace {

bool is_cz_type(const UnitaryGate &gate) {
    return gate.kind == GateKind::kControlledZ || gate.kind == GateKind::kControlledX;
}

std::optional<StabilizerGroup> try_stabilizer(const PureState &psi) {
    const Dims &dims = psi.dims();
    if (!std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims.front(); })) {
        return std::nullopt;
    }
    try {
        return extract_stabilizer_group(psi, dims.front());
    } catch (const Error &e) {
        if (e.code() == ErrorCode::kNotStabilizer || e.code() == ErrorCode::kDimension) {
            return std::nullopt;
        }
        throw;
    }
}

bool is_product(const PureState &psi) {
    try {
        product_factors(psi);
        return true;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::kNotProduct) {
            return false;
        }
        throw;
    }
}

StateVerifier stabilizer_dispatch(const PureState &out, bool generators_only) {
    auto group = try_stabilizer(out);
    require(group.has_value(), ErrorCode::kUnsupported, "output state is not a stabilizer state");
    if (!generators_only && is_prime(group->d)) {
        return uniform_stabilizer_verifier(out, *group);
    }
    return generator_verifier(out, *group);
}

StateVerifier verifier_for(const UnitaryGate &gate, const PureState &in, const PureState &out,
                           MeasurementPolicy policy) {
    switch (policy) {
        case MeasurementPolicy::kExactProduct:
            return exact_product_verifier(out);
        case MeasurementPolicy::kCliffordPauli:
            return stabilizer_dispatch(out, false);
        case MeasurementPolicy::kGenerator:
            return stabilizer_dispatch(out, true);
        case MeasurementPolicy::kColoring:
            require(gate.kind == GateKind::kControlledZ, ErrorCode::kUnsupported,
                    "coloring policy needs a controlled-Z or controlled-X gate");
            if (is_product(out)) {
                return exact_product_verifier(out);
            }
            return hyperedge_coloring_verifier(in);
        case MeasurementPolicy::kAuto: {
            if (is_product(out)) {
                return exact_product_verifier(out);
            }
            if (gate.kind == GateKind::kControlledZ) {
                try {
                    return hyperedge_coloring_verifier(in);
                } catch (const Error &e) {
                    if (e.code() != ErrorCode::kInvalidArgument && e.code() != ErrorCode::kNotProduct) {
                        throw;
                    }
                }
            }
            auto group = try_stabilizer(out);
            if (!group) {
                fail(ErrorCode::kUnsupported, "no verifier under the auto policy handles this output state");
            }
            return is_prime(group->d) ? uniform_stabilizer_verifier(out, *group) : generator_verifier(out, *group);
        }
        case MeasurementPolicy::kUserSupplied:
            break;
    }
    fail(ErrorCode::kInvalidArgument, "policy needs explicit tests");
}

Vector apply_local(const std::vector<Matrix> &factors, const Vector &v) {
    Matrix full = Matrix::Identity(1, 1);
    for (const auto &f : factors) {
        full = kron(full, f);
    }
    return full * v;
}

std::vector<SiteLabel> map_labels(const std::vector<SiteLabel> &labels, const std::vector<Matrix> &factors) {
    std::vector<SiteLabel> out;
    for (size_t k = 0; k < labels.size(); k++) {
        const int d = static_cast<int>(factors[k].rows());
        auto found = find_pauli_ket(factors[k] * ket_of_label(labels[k], d));
        if (!found) {
            return {};
        }
        out.push_back(*found);
    }
    return out;
}

TestEnsemble transform_ensemble(const TestEnsemble &e, const std::vector<Matrix> &factors) {
    std::vector<TestState> states;
    for (const auto &s : e.states()) {
        PureState moved(apply_local(factors, s.state.amplitudes()), s.state.dims());
        states.push_back({std::move(moved), s.probability, map_labels(s.labels, factors)});
    }
    return TestEnsemble(std::move(states), e.dims(), e.kind());
}

}  // namespace

VerificationStrategy similar_strategy(const VerificationStrategy &s, const std::vector<Matrix> &local_factors,
                                      UnitaryGate new_gate) {
    const Dims &dims = s.gate.dims();
    require(local_factors.size() == dims.size(), ErrorCode::kDimension, "need one local factor per site");
    Matrix v = Matrix::Identity(1, 1);
    for (size_t k = 0; k < dims.size(); k++) {
        const Matrix &f = local_factors[k];
        require(f.rows() == dims[k] && f.cols() == dims[k], ErrorCode::kDimension, "local factor has wrong size");
        require((f.adjoint() * f - Matrix::Identity(dims[k], dims[k])).norm() <= 1e-9, ErrorCode::kInvalidArgument,
                "local factor is not unitary");
        v = kron(v, f);
    }
    const Matrix expected = v * s.gate.matrix.matrix() * v.adjoint();
    require((expected - new_gate.matrix.matrix()).norm() <= 1e-9, ErrorCode::kInvalidArgument,
            "new gate differs from V U V†");

    std::vector<StateVerifier> verifiers;
    for (const auto &sv : s.verifiers) {
        std::vector<WeightedTest> tests;
        for (const auto &t : sv.tests) {
            if (!t.test.is_local()) {
                DenseOperator e(v * t.test.op.matrix() * v.adjoint(), dims);
                tests.push_back({make_operator_test(std::move(e), t.test.label), t.probability});
                continue;
            }
            std::vector<OrthonormalBasis> settings;
            std::string label;
            for (size_t k = 0; k < dims.size(); k++) {
                OrthonormalBasis b = t.test.settings[k];
                for (auto &ket : b.kets) {
                    ket = local_factors[k] * ket;
                }
                if (auto known = match_pauli_basis(b.kets); known && b.label != "I") {
                    b = *known;
                } else if (b.label != "I") {
                    b.label = "V" + b.label;
                    b.weyl_a = b.weyl_b = -1;
                }
                label += b.label.size() == 1 ? b.label : "(" + b.label + ")";
                settings.push_back(std::move(b));
            }
            tests.push_back({make_local_test(std::move(settings), t.test.accept, label), t.probability});
        }
        PureState target(v * sv.target.amplitudes(), dims);
        verifiers.push_back(make_state_verifier(std::move(target), std::move(tests), sv.protocol));
    }
    return assemble_strategy(std::move(new_gate), transform_ensemble(s.ensemble, local_factors),
                             std::move(verifiers));
}

VerificationStrategy build_strategy(const UnitaryGate &gate, const TestEnsemble &ensemble, MeasurementPolicy policy,
                                    const std::vector<std::vector<WeightedTest>> &user_tests) {
    const Matrix &u = gate.matrix.matrix();
    if (policy == MeasurementPolicy::kUserSupplied) {
        require(user_tests.size() == ensemble.size(), ErrorCode::kInvalidArgument,
                "user-supplied policy needs one test list per ensemble state");
        std::vector<StateVerifier> verifiers;
        for (size_t j = 0; j < ensemble.size(); j++) {
            PureState out(u * ensemble.states()[j].state.amplitudes(), gate.dims());
            verifiers.push_back(make_state_verifier(std::move(out), user_tests[j], "user-supplied"));
        }
        return assemble_strategy(gate, ensemble, std::move(verifiers));
    }

    const bool via_cz = gate.kind == GateKind::kControlledX &&
                        (policy == MeasurementPolicy::kAuto || policy == MeasurementPolicy::kColoring);
    if (via_cz) {
        // C^(n-1)X = H_n C^(n-1)Z H_n: conjugate the controlled-Z strategy by
        // H_n. The preparation becomes H_n applied to the given ensemble.
        const int n = gate.num_sites();
        UnitaryGate cz = gate_library("cz", n, 2);
        std::vector<Matrix> h(n, Matrix::Identity(2, 2));
        h[n - 1] << 1, 1, 1, -1;
        h[n - 1] /= std::sqrt(2.0);
        return similar_strategy(build_strategy(cz, ensemble, policy), h, gate);
    }

    require(policy != MeasurementPolicy::kColoring || is_cz_type(gate), ErrorCode::kUnsupported,
            "coloring policy needs a controlled-Z or controlled-X gate");
    std::vector<StateVerifier> verifiers;
    for (size_t j = 0; j < ensemble.size(); j++) {
        const PureState &in = ensemble.states()[j].state;
        PureState out(u * in.amplitudes(), gate.dims());
        try {
            verifiers.push_back(verifier_for(gate, in, out, policy));
        } catch (const Error &e) {
            fail(e.code(), "ensemble state " + std::to_string(j) + " under policy " + policy_name(policy) + ": " +
                               e.what());
        }
    }
    return assemble_strategy(gate, ensemble, std::move(verifiers));
}

VerificationStrategy conjugate_strategy(const VerificationStrategy &s, const Matrix &v) {
    const int d = s.gate.dim();
    require(v.rows() == d && v.cols() == d, ErrorCode::kDimension, "V has the wrong dimension");
    require((v.adjoint() * v - Matrix::Identity(d, d)).norm() <= 1e-9, ErrorCode::kInvalidArgument,
            "V is not unitary");
    const Matrix &u = s.gate.matrix.matrix();
    const Matrix w = u * v * u.adjoint();
    const Dims &dims = s.gate.dims();

    std::vector<TestState> states;
    for (const auto &st : s.ensemble.states()) {
        states.push_back({PureState(v * st.state.amplitudes(), dims), st.probability, {}});
    }
    std::vector<StateVerifier> verifiers;
    for (const auto &sv : s.verifiers) {
        std::vector<WeightedTest> tests;
        for (const auto &t : sv.tests) {
            DenseOperator e(w * t.test.op.matrix() * w.adjoint(), dims);
            tests.push_back({make_operator_test(std::move(e), t.test.label), t.probability});
        }
        verifiers.push_back(make_state_verifier(PureState(w * sv.target.amplitudes(), dims), std::move(tests),
                                                sv.protocol));
    }
    return assemble_strategy(s.gate, TestEnsemble(std::move(states), dims, s.ensemble.kind()),
                             std::move(verifiers));
}

double strategy_pass_probability(const VerificationStrategy &s, const DenseOperator &choi) {
    require(choi.rows() == s.theta_tilde.rows(), ErrorCode::kDimension, "Choi state has the wrong dimension");
    return frobenius_inner(s.theta_tilde, choi).real();
}

}  // namespace gateverify
