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
#include <string>
#include <vector>

#include "gateverify/protocols.hpp"

namespace gateverify {

enum class FidelityKind { kEntanglement, kAverage };

const char *fidelity_kind_name(FidelityKind kind);
FidelityKind parse_fidelity_kind(const std::string &name);

struct SdpOptions {
    double tol = 1e-6;
    int max_iterations = 20000;
    /// Largest d for which the SDP is attempted.
    int max_dim = 16;
};

struct SdpResult {
    /// tr(Θ χ*) for the feasible witness.
    double value = 0;
    ChoiState witness;
    /// min(1 - νε when available, dual bound, 1).
    double upper_certificate = 1;
    double dual_bound = 1;
    int iterations = 0;
    bool converged = false;
};

/// 1 - νε. Requires a balanced strategy.
double p_e_bound(const VerificationStrategy &s, double eps);

/// max tr(Θχ) over Choi states with <Φ|χ|Φ> <= 1 - ε. `nu` is the spectral gap
/// of a balanced Θ, or a negative value when the analytic bound does not apply.
SdpResult solve_pass_probability(const DenseOperator &theta, double eps, double nu, const SdpOptions &options = {});

SdpResult p_e_sdp(const VerificationStrategy &s, double eps, const SdpOptions &options = {});
/// p_E at the entanglement infidelity (d+1)ε/d.
SdpResult p_a(const VerificationStrategy &s, double eps, const SdpOptions &options = {});

struct TestCount {
    bool available = false;
    bool unverifiable = false;
    long long n = 0;
    double p = 1;
    std::string basis;
};

struct TestCountReport {
    double eps_e = 0;
    FidelityKind kind = FidelityKind::kEntanglement;
    TestCount exact;  // from the SDP certificate
    TestCount gap;    // from 1 - νε
    TestCount bound;  // ⌈ln δ^{-1} / (ν_P ν_M ε)⌉
    SdpResult sdp;
};

/// ⌈ln δ / ln p⌉, or unverifiable when p = 1.
TestCount count_from_probability(double p, double delta, std::string basis);

TestCountReport num_tests(const VerificationStrategy &s, double eps, double delta, FidelityKind kind,
                          const SdpOptions &options = {});

struct RepeatedTestBound {
    double bound = 1;
    double product = 1;
};

/// p_E(Θ, mean ε)^N against Π p_E(Θ, ε_r).
RepeatedTestBound repeated_test_bound(const std::vector<double> &eps_list, const VerificationStrategy &s,
                                      const SdpOptions &options = {});

struct PropertyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PropertySuiteReport {
    std::vector<PropertyCheck> checks;
    bool all_passed() const;
};

/// Monotonicity and concavity in ε, convexity in Θ and twirl invariance, each
/// within 2·tol.
PropertySuiteReport property_suite(const VerificationStrategy &s, std::uint64_t seed = 7,
                                   const SdpOptions &options = {});

/// Haar-random unitary from a seeded Gaussian QR.
Matrix random_unitary(int d, std::uint64_t seed);

/// (V⊗V*) Θ (V⊗V*)†.
DenseOperator twirl_theta(const DenseOperator &theta, const Matrix &v);

}  // namespace gateverify
