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

#include "gateverify/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "gateverify/error.hpp"
#include "gateverify/rng.hpp"

namespace gateverify {

double exact_pass_probability(const VerificationStrategy &s, const QuantumChannel &channel) {
    require(channel.dims() == s.gate.dims(), ErrorCode::kDimension, "channel dims differ from the strategy dims");
    const double via_choi = frobenius_inner(s.theta_tilde, choi_of_channel(channel).matrix).real();

    // The same probability from the pulled-back channel ℰ = 𝒰† ∘ Λ and Θ.
    std::vector<Matrix> pulled;
    const Matrix ud = s.gate.matrix.matrix().adjoint();
    for (const auto &k : channel.kraus()) {
        pulled.push_back(ud * k);
    }
    QuantumChannel error_channel(std::move(pulled), channel.dims());
    const double via_theta = frobenius_inner(s.theta, choi_of_channel(error_channel).matrix).real();

    double direct = 0;
    for (size_t j = 0; j < s.ensemble.size(); j++) {
        const auto &state = s.ensemble.states()[j];
        const Vector &psi = state.state.amplitudes();
        const Matrix out = channel.apply(psi * psi.adjoint());
        for (const auto &t : s.verifiers[j].tests) {
            direct += state.probability * t.probability * (t.test.op.matrix().cwiseProduct(out.transpose())).sum().real();
        }
    }
    require(std::abs(via_choi - direct) <= 1e-9 && std::abs(via_choi - via_theta) <= 1e-9, ErrorCode::kInvariant,
            "passing probability evaluations disagree");
    return via_choi;
}

const char *sampling_mode_name(SamplingMode mode) {
    return mode == SamplingMode::kPerSite ? "per-site" : "whole-test";
}

SamplingMode parse_sampling_mode(const std::string &name) {
    if (name == "per-site") {
        return SamplingMode::kPerSite;
    }
    if (name == "whole-test") {
        return SamplingMode::kWholeTest;
    }
    fail(ErrorCode::kInvalidArgument, "sampling mode must be 'per-site' or 'whole-test', got '" + name + "'");
}

namespace {

struct PreparedTest {
    double pass_probability = 0;
    bool sequential = false;
    /// Prefix sums of the outcome distribution over mixed-radix tuples.
    std::vector<double> cumulative;
    const std::vector<char> *accept = nullptr;
};

struct PreparedState {
    std::vector<double> test_cdf;
    std::vector<PreparedTest> tests;
};

int pick(const std::vector<double> &cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

std::vector<double> cumulative(const std::vector<double> &weights) {
    std::vector<double> out(weights.size());
    std::partial_sum(weights.begin(), weights.end(), out.begin());
    return out;
}

}  // namespace

RunReport run_trials(const VerificationStrategy &s, const RunConfig &config) {
    return run_trials(s, apply_noise(s.gate, config.noise), config);
}

RunReport run_trials(const VerificationStrategy &s, const QuantumChannel &channel, const RunConfig &config) {
    require(config.trials >= 1 && config.repetitions >= 1, ErrorCode::kInvalidArgument,
            "trials and repetitions must be at least 1");
    const long long total = config.trials * config.repetitions;
    require(!config.record_trials || total <= 5'000'000, ErrorCode::kInvalidArgument,
            "trial recording is limited to 5e6 trials");
    const Dims &dims = s.gate.dims();
    const int n = static_cast<int>(dims.size());

    std::vector<double> state_weights;
    std::vector<PreparedState> prepared;
    for (size_t j = 0; j < s.ensemble.size(); j++) {
        const auto &state = s.ensemble.states()[j];
        state_weights.push_back(state.probability);
        const Vector &psi = state.state.amplitudes();
        const Matrix out = channel.apply(psi * psi.adjoint());
        PreparedState ps;
        std::vector<double> tw;
        for (const auto &t : s.verifiers[j].tests) {
            tw.push_back(t.probability);
            PreparedTest pt;
            pt.pass_probability =
                std::clamp((t.test.op.matrix().cwiseProduct(out.transpose())).sum().real(), 0.0, 1.0);
            if (config.mode == SamplingMode::kPerSite && t.test.is_local()) {
                Matrix b = Matrix::Identity(1, 1);
                for (const auto &basis : t.test.settings) {
                    Matrix m(basis.dim(), basis.dim());
                    for (int k = 0; k < basis.dim(); k++) {
                        m.col(k) = basis.kets[k];
                    }
                    b = kron(b, m);
                }
                const Matrix proj = b.adjoint() * out * b;
                std::vector<double> q(static_cast<size_t>(proj.rows()));
                for (Eigen::Index o = 0; o < proj.rows(); o++) {
                    q[o] = std::max(proj(o, o).real(), 0.0);
                }
                pt.cumulative.assign(q.size() + 1, 0.0);
                std::partial_sum(q.begin(), q.end(), pt.cumulative.begin() + 1);
                pt.sequential = true;
                pt.accept = &t.test.accept;
            }
            ps.tests.push_back(std::move(pt));
        }
        ps.test_cdf = cumulative(tw);
        prepared.push_back(std::move(ps));
    }
    const std::vector<double> state_cdf = cumulative(state_weights);

    std::vector<long long> suffix(n + 1, 1);
    for (int k = n - 1; k >= 0; k--) {
        suffix[k] = suffix[k + 1] * dims[k];
    }

    RunReport report;
    report.trials = config.trials;
    report.repetitions = config.repetitions;
    report.total_trials = total;
    if (config.record_trials) {
        report.records.resize(static_cast<size_t>(total));
    }

    auto run_experiment = [&](long long e, long long &passed) {
        bool all = true;
        std::vector<int> outcome(n);
        std::vector<double> weights(static_cast<size_t>(*std::max_element(dims.begin(), dims.end())));
        for (long long i = 0; i < config.trials; i++) {
            const long long t = e * config.trials + i;
            CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
            const int j = pick(state_cdf, rng.uniform());
            const PreparedState &ps = prepared[j];
            const int l = pick(ps.test_cdf, rng.uniform());
            const PreparedTest &pt = ps.tests[l];
            bool pass;
            if (pt.sequential) {
                long long prefix = 0;
                for (int k = 0; k < n; k++) {
                    const long long width = suffix[k + 1];
                    double mass = 0;
                    for (int v = 0; v < dims[k]; v++) {
                        const long long lo = (prefix * dims[k] + v) * width;
                        weights[v] = pt.cumulative[lo + width] - pt.cumulative[lo];
                        mass += weights[v];
                    }
                    double u = rng.uniform() * mass;
                    int v = 0;
                    while (v + 1 < dims[k] && u >= weights[v]) {
                        u -= weights[v];
                        v++;
                    }
                    outcome[k] = v;
                    prefix = prefix * dims[k] + v;
                }
                pass = (*pt.accept)[prefix] != 0;
            } else {
                pass = rng.uniform() < pt.pass_probability;
            }
            passed += pass;
            all = all && pass;
            if (config.record_trials) {
                TrialRecord &r = report.records[static_cast<size_t>(t)];
                r.trial = t;
                r.state = j;
                r.test = l;
                r.pass = pass;
                if (pt.sequential) {
                    r.outcome = outcome;
                }
            }
        }
        return all;
    };

    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = static_cast<int>(std::clamp<long long>(threads, 1, config.repetitions));
    std::vector<long long> passed(threads, 0);
    std::vector<long long> accepted(threads, 0);
    auto worker = [&](int w) {
        for (long long e = w; e < config.repetitions; e += threads) {
            accepted[w] += run_experiment(e, passed[w]);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; w++) {
            pool.emplace_back(worker, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (int w = 0; w < threads; w++) {
        report.passed += passed[w];
        report.accepted_experiments += accepted[w];
    }

    const double tt = static_cast<double>(total);
    report.empirical_rate = report.passed / tt;
    report.standard_error = std::sqrt(report.empirical_rate * (1 - report.empirical_rate) / tt);
    report.exact_pass = exact_pass_probability(s, channel);
    const double sigma = std::sqrt(std::max(report.exact_pass * (1 - report.exact_pass), 0.0) / tt);
    if (sigma > 0) {
        report.z_score = (report.empirical_rate - report.exact_pass) / sigma;
        report.flagged = std::abs(report.z_score) > 4;
    } else {
        report.flagged = std::abs(report.empirical_rate - report.exact_pass) > 1e-12;
    }
    report.acceptance_frequency = static_cast<double>(report.accepted_experiments) / config.repetitions;
    report.predicted_acceptance = std::pow(report.exact_pass, static_cast<double>(config.trials));
    report.f_e = entanglement_fidelity(channel, s.gate);
    report.f_a = average_gate_fidelity(channel, s.gate);
    return report;
}

NoiseModel infidelity_calibrated_noise(const UnitaryGate &gate, double eps, FidelityKind kind,
                                       NoiseModel::Kind family) {
    const int d = gate.dim();
    require(eps >= 0 && eps <= 1, ErrorCode::kInvalidArgument, "ε must lie in [0, 1]");
    const double eps_e = kind == FidelityKind::kAverage ? (d + 1) * eps / d : eps;
    if (eps_e == 0) {
        return NoiseModel::none();
    }
    NoiseModel model;
    const double d2 = static_cast<double>(d) * d;
    if (family == NoiseModel::Kind::kDepolarizing) {
        const double p = eps_e * d2 / (d2 - 1);
        require(p <= 1 + 1e-12, ErrorCode::kInvalidArgument,
                "depolarizing noise reaches at most ε_E = (d²-1)/d²");
        model = NoiseModel::depolarizing(std::min(p, 1.0));
    } else if (family == NoiseModel::Kind::kOverrotation) {
        const Matrix h = default_overrotation_generator(gate.dims());
        const Eigen::VectorXd lam = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
        const double spread = lam.maxCoeff() - lam.minCoeff();
        require(spread > 1e-12, ErrorCode::kInvalidArgument, "overrotation generator is proportional to identity");
        auto infidelity = [&](double theta) {
            Complex tr = 0;
            for (Eigen::Index i = 0; i < lam.size(); i++) {
                tr += std::polar(1.0, -theta * lam(i));
            }
            return 1 - std::norm(tr) / d2;
        };
        const double top = 2 * std::numbers::pi / spread;
        const int grid = 4096;
        double lo = 0;
        double hi = -1;
        for (int k = 1; k <= grid; k++) {
            const double theta = top * k / grid;
            if (infidelity(theta) >= eps_e) {
                hi = theta;
                lo = top * (k - 1) / grid;
                break;
            }
        }
        require(hi > 0, ErrorCode::kInvalidArgument, "infidelity is out of reach for the overrotation family");
        for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
            const double mid = 0.5 * (lo + hi);
            (infidelity(mid) < eps_e ? lo : hi) = mid;
        }
        model = NoiseModel::overrotation(0.5 * (lo + hi), h);
    } else {
        fail(ErrorCode::kUnsupported, "calibration supports depolarizing and overrotation noise");
    }
    const QuantumChannel channel = apply_noise(gate, model);
    const double got = 1 - entanglement_fidelity(channel, gate);
    require(std::abs(got - eps_e) <= 1e-9, ErrorCode::kNumeric, "calibrated noise misses the target infidelity");
    return model;
}

std::string trial_records_csv(const VerificationStrategy &s, const RunReport &report) {
    std::ostringstream out;
    out << "trial,j,l,outcome,pass\n";
    for (const auto &r : report.records) {
        out << r.trial << ',' << r.state << ',' << r.test << ',';
        const auto &test = s.verifiers[r.state].tests[r.test].test;
        for (size_t k = 0; k < r.outcome.size(); k++) {
            out << (k ? ";" : "") << test.settings[k].label << ':' << r.outcome[k];
        }
        out << ',' << (r.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace gateverify
