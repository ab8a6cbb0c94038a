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

#include "gateverify/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "gateverify/error.hpp"

namespace gateverify {

const char *fidelity_kind_name(FidelityKind kind) {
    return kind == FidelityKind::kAverage ? "average" : "entanglement";
}

FidelityKind parse_fidelity_kind(const std::string &name) {
    if (name == "entanglement") {
        return FidelityKind::kEntanglement;
    }
    if (name == "average") {
        return FidelityKind::kAverage;
    }
    fail(ErrorCode::kInvalidArgument, "fidelity kind must be 'entanglement' or 'average', got '" + name + "'");
}

double p_e_bound(const VerificationStrategy &s, double eps) {
    require(eps >= 0 && eps <= 1, ErrorCode::kInvalidArgument, "ε must lie in [0, 1]");
    require(s.gaps.balanced, ErrorCode::kInvalidArgument, "the bound 1 - νε needs a balanced ensemble");
    return 1 - s.gaps.nu * eps;
}

namespace {

// Operators on H⊗H are indexed (a, x) -> a*d + x with a the system factor.

Matrix partial_trace_system(const Matrix &chi, int d) {
    Matrix out = Matrix::Zero(d, d);
    for (int a = 0; a < d; a++) {
        out += chi.block(a * d, a * d, d, d);
    }
    return out;
}

void add_identity_kron(Matrix &chi, const Matrix &m, double scale) {
    const int d = static_cast<int>(m.rows());
    for (int a = 0; a < d; a++) {
        chi.block(a * d, a * d, d, d) += scale * m;
    }
}

Complex phi_expectation(const Matrix &chi, int d) {
    Complex sum = 0;
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            sum += chi(i * d + i, j * d + j);
        }
    }
    return sum / static_cast<double>(d);
}

void add_phi(Matrix &chi, int d, double scale) {
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            chi(i * d + i, j * d + j) += scale / d;
        }
    }
}

/// Projection onto K = {tr_1 χ = 1/d, <Φ|χ|Φ> <= 1-ε}. The removed part is
/// 1⊗Y + λΦ with λ >= 0, returned through y and lambda.
Matrix project_k(Matrix chi, int d, double eps, Matrix &y, double &lambda) {
    const double dd = d;
    Matrix m = (partial_trace_system(chi, d) - Matrix::Identity(d, d) / dd) / dd;
    add_identity_kron(chi, m, -1);
    const double h = phi_expectation(chi, d).real();
    double c = 0;
    if (h > 1 - eps) {
        c = (h - (1 - eps)) / (1 - 1 / (dd * dd));
        add_phi(chi, d, -c);
        add_identity_kron(chi, Matrix::Identity(d, d), c / (dd * dd));
    }
    y = m - Matrix::Identity(d, d) * (c / (dd * dd));
    lambda = c;
    return chi;
}

Matrix project_psd(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix(0.5 * (a + a.adjoint())));
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "eigensolver failed");
    Eigen::VectorXd w = solver.eigenvalues().cwiseMax(0.0);
    const Matrix &v = solver.eigenvectors();
    return v * w.asDiagonal() * v.adjoint();
}

Matrix start_point(int d, double eps) {
    const double d2 = static_cast<double>(d) * d;
    Matrix chi = Matrix::Identity(d * d, d * d) * (eps / (d2 - 1));
    add_phi(chi, d, (1 - eps) - eps / (d2 - 1));
    return chi;
}

/// Restores exact feasibility of a PSD candidate: fixes tr_1 by congruence
/// with 1⊗A, then mixes in (1-Φ)/(d²-1) to meet the fidelity constraint.
bool repair_witness(const Matrix &candidate, int d, double eps, Matrix &out) {
    Matrix reduced = static_cast<double>(d) * partial_trace_system(candidate, d);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix(0.5 * (reduced + reduced.adjoint())));
    if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() < 1e-6) {
        return false;
    }
    Eigen::VectorXd s = solver.eigenvalues().cwiseSqrt().cwiseInverse();
    Matrix a = solver.eigenvectors() * s.asDiagonal() * solver.eigenvectors().adjoint();
    Matrix big = kron(Matrix(Matrix::Identity(d, d)), a);
    Matrix chi = big * candidate * big.adjoint();
    chi = 0.5 * (chi + chi.adjoint());
    const double h = phi_expectation(chi, d).real();
    if (h > 1 - eps) {
        const double mu = 1 - (1 - eps) / h;
        Matrix sigma = start_point(d, 1.0);
        chi = (1 - mu) * chi + mu * sigma;
    }
    out = std::move(chi);
    return true;
}

double dual_value(const Matrix &theta, const Matrix &y, double lambda, int d, double eps) {
    Matrix slack = theta;
    add_identity_kron(slack, y, -1);
    add_phi(slack, d, -lambda);
    const double top = hermitian_eigenvalues(slack).front();
    return y.trace().real() / d + lambda * (1 - eps) + top;
}

}  // namespace

SdpResult solve_pass_probability(const DenseOperator &theta, double eps, double nu, const SdpOptions &options) {
    require(eps >= 0 && eps <= 1, ErrorCode::kInvalidArgument, "ε must lie in [0, 1]");
    const Dims &dims2 = theta.dims();
    require(dims2.size() % 2 == 0, ErrorCode::kDimension, "Θ must act on H⊗H");
    const Dims dims(dims2.begin(), dims2.begin() + static_cast<std::ptrdiff_t>(dims2.size() / 2));
    const int d = dims_product(dims);
    require(d <= options.max_dim, ErrorCode::kDimension,
            "SDP is limited to d <= " + std::to_string(options.max_dim) + " (got d = " + std::to_string(d) + ")");
    const Matrix th = 0.5 * (theta.matrix() + theta.matrix().adjoint());

    SdpResult result;
    const double analytic = nu >= 0 ? 1 - nu * eps : 1.0;
    Matrix best = start_point(d, eps);
    double best_value = frobenius_inner(DenseOperator(th, dims2), DenseOperator(best, dims2)).real();
    double best_dual = 1.0;

    // Douglas-Rachford splitting between K (with the linear objective) and the
    // PSD cone. The K-step residual converges to a dual certificate (Y, λ).
    const double step = 1.0 / d;
    const int check_every = 10;
    Matrix z = best;
    Matrix y_dual;
    double lambda = 0;
    int it = 0;
    auto update_bounds = [&](const Matrix &psd_iterate) {
        Matrix repaired;
        if (repair_witness(psd_iterate, d, eps, repaired)) {
            double v = (th.cwiseProduct(repaired.conjugate())).sum().real();
            if (v > best_value) {
                best_value = v;
                best = std::move(repaired);
            }
        }
        best_dual = std::min(best_dual, dual_value(th, y_dual / step, std::max(lambda, 0.0) / step, d, eps));
    };
    // Dual bound at the start point: Y = 0, λ = 0 gives λ_max(Θ).
    y_dual = Matrix::Zero(d, d);
    best_dual = std::min(best_dual, dual_value(th, y_dual, 0, d, eps));
    while (std::min({analytic, best_dual, 1.0}) - best_value > options.tol && it < options.max_iterations) {
        Matrix x = project_k(z + step * th, d, eps, y_dual, lambda);
        Matrix y = project_psd(2 * x - z);
        z += y - x;
        it++;
        if (it % check_every == 0) {
            update_bounds(y);
        }
    }

    result.value = best_value;
    result.witness = ChoiState{DenseOperator(best, dims2), d};
    result.dual_bound = best_dual;
    result.upper_certificate = std::min({analytic, best_dual, 1.0});
    result.iterations = it;
    result.converged = result.upper_certificate - result.value <= options.tol;
    return result;
}

SdpResult p_e_sdp(const VerificationStrategy &s, double eps, const SdpOptions &options) {
    return solve_pass_probability(s.theta, eps, s.gaps.balanced ? s.gaps.nu : -1.0, options);
}

SdpResult p_a(const VerificationStrategy &s, double eps, const SdpOptions &options) {
    const int d = s.gate.dim();
    const double eps_e = (d + 1) * eps / d;
    require(eps >= 0 && eps_e <= 1 + 1e-12, ErrorCode::kInvalidArgument,
            "rescaled infidelity (d+1)ε/d must lie in [0, 1]");
    return p_e_sdp(s, std::min(eps_e, 1.0), options);
}

TestCount count_from_probability(double p, double delta, std::string basis) {
    TestCount out;
    out.available = true;
    out.p = p;
    out.basis = std::move(basis);
    if (p >= 1 - 1e-12) {
        out.unverifiable = true;
        return out;
    }
    out.n = static_cast<long long>(std::ceil(std::log(delta) / std::log(std::max(p, 1e-300))));
    out.n = std::max(out.n, 1LL);
    return out;
}

TestCountReport num_tests(const VerificationStrategy &s, double eps, double delta, FidelityKind kind,
                          const SdpOptions &options) {
    require(eps > 0 && eps < 1, ErrorCode::kInvalidArgument, "ε must lie in (0, 1)");
    require(delta > 0 && delta < 1, ErrorCode::kInvalidArgument, "δ must lie in (0, 1)");
    const int d = s.gate.dim();
    TestCountReport out;
    out.kind = kind;
    out.eps_e = kind == FidelityKind::kAverage ? (d + 1) * eps / d : eps;
    require(out.eps_e <= 1, ErrorCode::kInvalidArgument, "rescaled infidelity (d+1)ε/d exceeds 1");

    if (d <= options.max_dim) {
        out.sdp = solve_pass_probability(s.theta, out.eps_e, s.gaps.balanced ? s.gaps.nu : -1.0, options);
        out.exact = count_from_probability(out.sdp.upper_certificate, delta, "sdp");
    }
    if (s.gaps.balanced) {
        out.gap = count_from_probability(1 - s.gaps.nu * out.eps_e, delta, "1-nu*eps");
        out.bound.available = true;
        out.bound.basis = "nu_P*nu_M";
        const double rate = s.gaps.nu_bound() * out.eps_e;
        out.bound.p = 1 - rate;
        if (rate <= 1e-12) {
            out.bound.unverifiable = true;
        } else {
            out.bound.n = static_cast<long long>(std::ceil(std::log(1 / delta) / rate));
        }
    }
    return out;
}

RepeatedTestBound repeated_test_bound(const std::vector<double> &eps_list, const VerificationStrategy &s,
                                      const SdpOptions &options) {
    require(!eps_list.empty(), ErrorCode::kInvalidArgument, "need at least one infidelity");
    RepeatedTestBound out;
    double mean = 0;
    for (double e : eps_list) {
        require(e >= 0 && e <= 1, ErrorCode::kInvalidArgument, "ε must lie in [0, 1]");
        mean += e;
        out.product *= p_e_sdp(s, e, options).value;
    }
    mean /= static_cast<double>(eps_list.size());
    out.bound = std::pow(p_e_sdp(s, mean, options).upper_certificate, static_cast<double>(eps_list.size()));
    require(out.product <= out.bound + 2 * options.tol * static_cast<double>(eps_list.size()),
            ErrorCode::kInvariant, "product of per-run passing probabilities exceeds the averaged bound");
    return out;
}

bool PropertySuiteReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck &c) { return c.passed; });
}

Matrix random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix g(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; k++) {
        const Complex rk = r(k, k);
        q.col(k) *= rk / std::abs(rk);
    }
    return q;
}

DenseOperator twirl_theta(const DenseOperator &theta, const Matrix &v) {
    Matrix w = kron(v, Matrix(v.conjugate()));
    return DenseOperator(w * theta.matrix() * w.adjoint(), theta.dims());
}

PropertySuiteReport property_suite(const VerificationStrategy &s, std::uint64_t seed, const SdpOptions &options) {
    PropertySuiteReport report;
    const double slack = 2 * options.tol;
    const double nu = s.gaps.balanced ? s.gaps.nu : -1.0;
    auto solve = [&](const DenseOperator &theta, double eps, double gap) {
        return std::async(std::launch::async, [&theta, eps, gap, &options] {
            return solve_pass_probability(theta, eps, gap, options).value;
        });
    };
    auto fmt = [](double x) {
        std::ostringstream o;
        o.precision(10);
        o << x;
        return o.str();
    };

    std::vector<double> grid;
    for (int k = 0; k <= 10; k++) {
        grid.push_back(0.05 * k);
    }
    std::vector<std::future<double>> pending;
    for (double e : grid) {
        pending.push_back(solve(s.theta, e, nu));
    }
    std::vector<double> values;
    for (auto &f : pending) {
        values.push_back(f.get());
    }
    PropertyCheck mono{"nonincreasing in epsilon", true, ""};
    for (size_t k = 1; k < values.size(); k++) {
        if (values[k] > values[k - 1] + slack) {
            mono.passed = false;
            mono.detail = "p(" + fmt(grid[k]) + ") = " + fmt(values[k]) + " > p(" + fmt(grid[k - 1]) +
                          ") = " + fmt(values[k - 1]);
        }
    }
    report.checks.push_back(mono);

    PropertyCheck concave{"midpoint concave in epsilon", true, ""};
    for (size_t k = 0; k + 4 < grid.size(); k++) {
        // grid[k+2] is the midpoint of grid[k] and grid[k+4].
        const double mean = 0.5 * (values[k] + values[k + 4]);
        if (values[k + 2] < mean - slack) {
            concave.passed = false;
            concave.detail = "eps pair (" + fmt(grid[k]) + ", " + fmt(grid[k + 4]) + "): midpoint " +
                             fmt(values[k + 2]) + " < mean " + fmt(mean);
        }
    }
    report.checks.push_back(concave);

    const int d = s.gate.dim();
    const Matrix v = random_unitary(d, seed);
    const DenseOperator twirled = twirl_theta(s.theta, v);
    const DenseOperator mixed = 0.5 * (s.theta + twirled);
    const double eps = 0.2;
    auto f_base = solve(s.theta, eps, nu);
    auto f_twirl = solve(twirled, eps, nu);
    auto f_mix = solve(mixed, eps, -1.0);
    const double base = f_base.get();
    const double tw = f_twirl.get();
    const double mix = f_mix.get();

    PropertyCheck convex{"midpoint convex in theta", mix <= 0.5 * (base + tw) + slack, ""};
    convex.detail = "p(mix) = " + fmt(mix) + ", mean = " + fmt(0.5 * (base + tw));
    report.checks.push_back(convex);

    PropertyCheck twirl{"twirl invariant", std::abs(base - tw) <= slack, ""};
    twirl.detail = "p = " + fmt(base) + ", p(twirled) = " + fmt(tw);
    report.checks.push_back(twirl);
    return report;
}

}  // namespace gateverify
