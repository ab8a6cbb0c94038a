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

#include "gateverify/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "gateverify/error.hpp"

namespace gateverify {

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int k = 2; k * k <= n; k++) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

bool is_orthonormal(const OrthonormalBasis &basis, double tol) {
    const int n = basis.dim();
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            Complex g = basis.kets[i].dot(basis.kets[j]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

double phase_angle(Complex z) {
    double a = std::arg(z);
    if (a < -1e-9) {
        a += 2 * std::numbers::pi;
    }
    return std::max(a, 0.0);
}

void rephase(Vector &v) {
    for (Eigen::Index k = 0; k < v.size(); k++) {
        if (std::abs(v(k)) > 1e-8) {
            v *= std::conj(v(k)) / std::abs(v(k));
            return;
        }
    }
}

OrthonormalBasis computational_basis(int d) {
    OrthonormalBasis b;
    b.label = "Z";
    b.weyl_a = 0;
    b.weyl_b = 1;
    for (int j = 0; j < d; j++) {
        Vector v = Vector::Zero(d);
        v(j) = 1;
        b.kets.push_back(std::move(v));
        b.eigenvalues.push_back(std::polar(1.0, 2 * std::numbers::pi * j / d));
    }
    return b;
}

OrthonormalBasis fourier_basis(int d) {
    OrthonormalBasis b;
    b.label = "X";
    b.weyl_a = 1;
    b.weyl_b = 0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int s = 0; s < d; s++) {
        Vector v(d);
        for (int j = 0; j < d; j++) {
            v(j) = std::polar(norm, -2 * std::numbers::pi * ((s * j) % d) / d);
        }
        b.kets.push_back(std::move(v));
        b.eigenvalues.push_back(std::polar(1.0, 2 * std::numbers::pi * s / d));
    }
    return b;
}

OrthonormalBasis xz_basis(int d) {
    OrthonormalBasis b;
    b.label = d == 2 ? "Y" : "XZ";
    b.weyl_a = 1;
    b.weyl_b = 1;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const Matrix w = weyl(d, 1, 1);
    for (int s = 0; s < d; s++) {
        Vector v(d);
        for (int j = 0; j < d; j++) {
            // τ^e with τ = -e^{iπ/d}; τ^{2d} = 1 so e is reduced mod 2d.
            long long e = static_cast<long long>(s - j) * (s - j) % (2 * d);
            double sign = (e % 2 == 0) ? 1.0 : -1.0;
            v(j) = sign * std::polar(norm, std::numbers::pi * static_cast<double>(e) / d);
        }
        b.eigenvalues.push_back(v.dot(w * v));
        b.kets.push_back(std::move(v));
    }
    return b;
}

bool diagonalizes(const OrthonormalBasis &basis, const Matrix &w) {
    for (const auto &k : basis.kets) {
        Complex lambda = k.dot(w * k);
        if ((w * k - lambda * k).norm() > 1e-9) {
            return false;
        }
    }
    return true;
}

}  // namespace

OrthonormalBasis unitary_eigenbasis(const Matrix &u, std::string label) {
    const Eigen::Index d = u.rows();
    // Eigenvalues of a unitary lie on the unit circle; cos θ + γ sin θ separates
    // the roots of unity that occur here for an irrational γ.
    const double gamma = 0.5772156649015329;
    Matrix a = (u + u.adjoint()) * 0.5;
    Matrix b = (u - u.adjoint()) * Complex(0, -0.5);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a + gamma * b);
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "unitary_eigenbasis: eigensolver failed");

    struct Item {
        double angle;
        Eigen::Index order;
        Vector ket;
        Complex value;
    };
    std::vector<Item> items;
    for (Eigen::Index k = 0; k < d; k++) {
        Vector v = solver.eigenvectors().col(k);
        Complex lambda = v.dot(u * v);
        require((u * v - lambda * v).norm() <= 1e-8, ErrorCode::kNumeric,
                "unitary_eigenbasis: failed to resolve the eigenspaces of " + label);
        rephase(v);
        items.push_back({phase_angle(lambda), k, std::move(v), lambda});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item &x, const Item &y) {
        if (std::abs(x.angle - y.angle) > 1e-9) {
            return x.angle < y.angle;
        }
        return x.order < y.order;
    });
    OrthonormalBasis out;
    out.label = std::move(label);
    for (auto &it : items) {
        out.kets.push_back(std::move(it.ket));
        out.eigenvalues.push_back(it.value);
    }
    return out;
}

int available_pauli_bases(int d1) {
    require(d1 >= 2, ErrorCode::kInvalidArgument, "local dimension must be at least 2");
    return is_prime(d1) ? d1 + 1 : 3;
}

std::vector<OrthonormalBasis> pauli_eigenbases(int d1) {
    require(d1 >= 2, ErrorCode::kInvalidArgument, "local dimension must be at least 2, got " + std::to_string(d1));
    std::vector<OrthonormalBasis> out{computational_basis(d1), fourier_basis(d1), xz_basis(d1)};
    if (is_prime(d1)) {
        for (int m = 2; m < d1; m++) {
            OrthonormalBasis b = unitary_eigenbasis(weyl(d1, 1, m), "XZ^" + std::to_string(m));
            b.weyl_a = 1;
            b.weyl_b = m;
            out.push_back(std::move(b));
        }
    }
    return out;
}

OrthonormalBasis weyl_eigenbasis(int d, int a, int b) {
    a = ((a % d) + d) % d;
    b = ((b % d) + d) % d;
    const Matrix w = weyl(d, a, b);
    auto tag = [&](OrthonormalBasis basis) {
        basis.weyl_a = a;
        basis.weyl_b = b;
        basis.eigenvalues.clear();
        for (const auto &k : basis.kets) {
            basis.eigenvalues.push_back(k.dot(w * k));
        }
        return basis;
    };
    if (a == 0 && b == 0) {
        OrthonormalBasis z = tag(computational_basis(d));
        z.label = "I";
        return z;
    }
    for (auto &candidate : pauli_eigenbases(d)) {
        if (diagonalizes(candidate, w)) {
            return tag(std::move(candidate));
        }
    }
    OrthonormalBasis basis = unitary_eigenbasis(w, "X^" + std::to_string(a) + "Z^" + std::to_string(b));
    basis.weyl_a = a;
    basis.weyl_b = b;
    return basis;
}

TestEnsemble::TestEnsemble(std::vector<TestState> states, Dims dims, std::string kind)
    : states_(std::move(states)), dims_(std::move(dims)), kind_(std::move(kind)) {
    require(!states_.empty(), ErrorCode::kInvalidArgument, "ensemble needs at least one state");
    const int d = dims_product(dims_);
    check_dimension(static_cast<size_t>(d), "ensemble");
    double total = 0;
    Matrix avg = Matrix::Zero(d, d);
    for (const auto &s : states_) {
        require(s.probability > 0, ErrorCode::kInvalidArgument, "ensemble weights must be positive");
        require(s.state.dims() == dims_, ErrorCode::kDimension, "ensemble state dims differ from the ensemble dims");
        total += s.probability;
        avg.noalias() += s.probability * s.state.amplitudes() * s.state.amplitudes().adjoint();
    }
    require(std::abs(total - 1.0) <= 1e-9, ErrorCode::kInvalidArgument, "ensemble weights must sum to 1");
    balance_defect_ = operator_norm(Matrix(static_cast<double>(d) * avg - Matrix::Identity(d, d)));
    balanced_ = balance_defect_ <= 1e-8;
}

namespace {

void check_dims(const Dims &dims) {
    require(!dims.empty(), ErrorCode::kInvalidArgument, "ensemble needs at least one site");
    for (int dk : dims) {
        require(dk >= 2, ErrorCode::kInvalidArgument, "local dimensions must be at least 2");
    }
    double total = 1;
    for (int dk : dims) {
        total *= dk;
    }
    require(total <= static_cast<double>(max_dimension()), ErrorCode::kDimension,
            "ensemble dimension exceeds the cap of " + std::to_string(max_dimension()));
}

/// Calls f on every index tuple with idx[k] < sizes[k], last index fastest.
template <typename F>
void for_each_combination(const std::vector<int> &sizes, F &&f) {
    std::vector<int> idx(sizes.size(), 0);
    while (true) {
        f(idx);
        int k = static_cast<int>(sizes.size()) - 1;
        while (k >= 0 && ++idx[k] == sizes[k]) {
            idx[k] = 0;
            k--;
        }
        if (k < 0) {
            return;
        }
    }
}

}  // namespace

TestEnsemble product_mub_ensemble(const Dims &factor_dims, int r) {
    check_dims(factor_dims);
    int available = std::numeric_limits<int>::max();
    for (int dk : factor_dims) {
        available = std::min(available, available_pauli_bases(dk));
    }
    require(r >= 1 && r <= available, ErrorCode::kInvalidArgument,
            "requested " + std::to_string(r) + " product bases but only " + std::to_string(available) +
                " are available for these local dimensions");
    std::vector<std::vector<OrthonormalBasis>> local;
    for (int dk : factor_dims) {
        local.push_back(pauli_eigenbases(dk));
    }
    const int d = dims_product(factor_dims);
    const double weight = 1.0 / (static_cast<double>(r) * d);
    std::vector<TestState> states;
    states.reserve(static_cast<size_t>(r) * d);
    for (int s = 0; s < r; s++) {
        for_each_combination(factor_dims, [&](const std::vector<int> &idx) {
            std::vector<Vector> kets;
            std::vector<SiteLabel> labels;
            for (size_t k = 0; k < factor_dims.size(); k++) {
                const auto &basis = local[k][s];
                kets.push_back(basis.kets[idx[k]]);
                labels.push_back({basis.label, idx[k]});
            }
            states.push_back({PureState::product(kets), weight, std::move(labels)});
        });
    }
    return TestEnsemble(std::move(states), factor_dims, "mub:" + std::to_string(r));
}

TestEnsemble product_two_design_ensemble(const Dims &factor_dims) {
    check_dims(factor_dims);
    // Per site: all kets of a complete set of MUB, uniform weight.
    std::vector<std::vector<std::pair<Vector, SiteLabel>>> local;
    std::vector<int> sizes;
    for (int dk : factor_dims) {
        require(is_prime(dk), ErrorCode::kUnsupported,
                "no 2-design construction is implemented for local dimension " + std::to_string(dk));
        std::vector<std::pair<Vector, SiteLabel>> site;
        for (const auto &basis : pauli_eigenbases(dk)) {
            for (int j = 0; j < basis.dim(); j++) {
                site.push_back({basis.kets[j], SiteLabel{basis.label, j}});
            }
        }
        sizes.push_back(static_cast<int>(site.size()));
        local.push_back(std::move(site));
    }
    double total = 1;
    for (int s : sizes) {
        total *= s;
    }
    const double weight = 1.0 / total;
    std::vector<TestState> states;
    states.reserve(static_cast<size_t>(total));
    for_each_combination(sizes, [&](const std::vector<int> &idx) {
        std::vector<Vector> kets;
        std::vector<SiteLabel> labels;
        for (size_t k = 0; k < factor_dims.size(); k++) {
            kets.push_back(local[k][idx[k]].first);
            labels.push_back(local[k][idx[k]].second);
        }
        states.push_back({PureState::product(kets), weight, std::move(labels)});
    });
    return TestEnsemble(std::move(states), factor_dims, "two-design");
}

DenseOperator preparation_operator(const TestEnsemble &ensemble) {
    const int d = ensemble.dim();
    check_dimension(static_cast<size_t>(d), "preparation operator");
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    // Θ_P = M M† with columns sqrt(d p_j) ψ_j ⊗ ψ_j*.
    Matrix m(dd, static_cast<Eigen::Index>(ensemble.size()));
    for (size_t j = 0; j < ensemble.size(); j++) {
        const auto &s = ensemble.states()[j];
        const Vector &psi = s.state.amplitudes();
        m.col(static_cast<Eigen::Index>(j)) = std::sqrt(d * s.probability) * kron(psi, Vector(psi.conjugate()));
    }
    Matrix theta = m * m.adjoint();
    Dims dims = ensemble.dims();
    dims.insert(dims.end(), ensemble.dims().begin(), ensemble.dims().end());
    return DenseOperator(std::move(theta), std::move(dims));
}

PreparationReport preparation_report(const TestEnsemble &ensemble) {
    PreparationReport out;
    out.theta_p = preparation_operator(ensemble);
    Matrix shifted = out.theta_p.matrix() - maximally_entangled_projector(ensemble.dims()).matrix();
    out.beta_p = operator_norm(shifted);
    out.nu_p = 1 - out.beta_p;
    return out;
}

bool is_two_design(const TestEnsemble &ensemble, double tol) {
    const int d = ensemble.dim();
    Matrix second_moment = preparation_operator(ensemble).matrix() / static_cast<double>(d);
    Matrix haar = (static_cast<double>(d) * maximally_entangled_projector(ensemble.dims()).matrix() +
                   Matrix::Identity(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d)) /
                  (static_cast<double>(d) * (d + 1));
    return operator_norm(Matrix(second_moment - haar)) <= tol;
}

}  // namespace gateverify
