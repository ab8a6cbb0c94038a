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

#include "gateverify/stabilizer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "gateverify/error.hpp"

namespace gateverify {

bool StabilizerElement::is_identity() const {
    for (size_t k = 0; k < a.size(); k++) {
        if (a[k] != 0 || b[k] != 0) {
            return false;
        }
    }
    return true;
}

Matrix weyl_string(int d, const std::vector<int> &a, const std::vector<int> &b) {
    Matrix out = Matrix::Identity(1, 1);
    for (size_t k = 0; k < a.size(); k++) {
        out = kron(out, weyl(d, a[k], b[k]));
    }
    return out;
}

Vector apply_weyl_string(int d, const std::vector<int> &a, const std::vector<int> &b, const Vector &psi) {
    const int n = static_cast<int>(a.size());
    const Eigen::Index total = psi.size();
    Vector out(total);
    std::vector<int> digits(n);
    for (Eigen::Index in = 0; in < total; in++) {
        Eigen::Index rem = in;
        for (int k = n - 1; k >= 0; k--) {
            digits[k] = static_cast<int>(rem % d);
            rem /= d;
        }
        // X^a Z^b |j> = ω^{bj} |j + a>.
        long long phase = 0;
        Eigen::Index target = 0;
        for (int k = 0; k < n; k++) {
            phase += static_cast<long long>(b[k]) * digits[k];
            target = target * d + (digits[k] + a[k]) % d;
        }
        out(target) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(phase % d) / d) * psi(in);
    }
    return out;
}

StabilizerGroup extract_stabilizer_group(const PureState &psi, int d1) {
    require(d1 >= 2, ErrorCode::kInvalidArgument, "local dimension must be at least 2");
    for (int dk : psi.dims()) {
        require(dk == d1, ErrorCode::kUnsupported, "stabilizer extraction needs uniform local dimension d1");
    }
    const int n = static_cast<int>(psi.dims().size());
    require((d1 == 2 && n <= 6) || std::pow(d1, n) <= 81, ErrorCode::kDimension,
            "stabilizer extraction is limited to n <= 6 qubits or d1^n <= 81");
    const Vector &v = psi.amplitudes();
    StabilizerGroup group;
    group.n = n;
    group.d = d1;

    long long candidates = 1;
    for (int k = 0; k < 2 * n; k++) {
        candidates *= d1;
    }
    std::vector<int> a(n);
    std::vector<int> b(n);
    for (long long c = 0; c < candidates; c++) {
        long long rem = c;
        for (int k = n - 1; k >= 0; k--) {
            b[k] = static_cast<int>(rem % d1);
            rem /= d1;
        }
        for (int k = n - 1; k >= 0; k--) {
            a[k] = static_cast<int>(rem % d1);
            rem /= d1;
        }
        Vector w = apply_weyl_string(d1, a, b, v);
        Complex lambda = v.dot(w);
        if (std::abs(lambda) < 1 - 1e-8 || (w - lambda * v).norm() > 1e-8) {
            continue;
        }
        double units = std::arg(lambda) * d1 / std::numbers::pi;
        int phase = static_cast<int>(std::lround(units));
        phase = ((phase % (2 * d1)) + 2 * d1) % (2 * d1);
        Complex snapped = std::polar(1.0, std::numbers::pi * phase / d1);
        require(std::abs(snapped - lambda) <= 1e-6, ErrorCode::kNumeric,
                "stabilizer eigenvalue is not a 2d-th root of unity");
        group.elements.push_back({a, b, phase, snapped});
    }

    long long expected = 1;
    for (int k = 0; k < n; k++) {
        expected *= d1;
    }
    if (static_cast<long long>(group.elements.size()) != expected) {
        fail(ErrorCode::kNotStabilizer, "state is not a stabilizer state: found " +
                                            std::to_string(group.elements.size()) + " stabilizing Weyl strings, expected " +
                                            std::to_string(expected));
    }
    return group;
}

std::string stabilizer_label(const StabilizerElement &g, int d) {
    std::ostringstream out;
    const size_t n = g.a.size();
    if (d == 2) {
        // X Z = -iY, so W = (-i)^{#Y} P and P|ψ> = λ i^{#Y} |ψ>.
        int ys = 0;
        std::string body;
        for (size_t k = 0; k < n; k++) {
            if (g.a[k] && g.b[k]) {
                body += 'Y';
                ys++;
            } else if (g.a[k]) {
                body += 'X';
            } else if (g.b[k]) {
                body += 'Z';
            } else {
                body += 'I';
            }
        }
        int quarter = (g.phase + ys) % 4;  // phase is in units of π/2 here
        const char *sign = quarter == 0 ? "+" : quarter == 2 ? "-" : quarter == 1 ? "+i" : "-i";
        out << sign << body;
        return out.str();
    }
    out << "exp(i*pi*" << g.phase << "/" << d << ")";
    for (size_t k = 0; k < n; k++) {
        out << (k ? "⊗" : "·") << "X^" << g.a[k] << "Z^" << g.b[k];
    }
    return out.str();
}

namespace {

std::vector<std::vector<int>> span_with(const std::vector<std::vector<int>> &span, const std::vector<int> &g, int d) {
    std::unordered_set<long long> seen;
    std::vector<std::vector<int>> out;
    for (const auto &s : span) {
        std::vector<int> cur = s;
        for (int m = 0; m < d; m++) {
            long long code = 0;
            for (int x : cur) {
                code = code * d + x;
            }
            if (seen.insert(code).second) {
                out.push_back(cur);
            }
            for (size_t k = 0; k < cur.size(); k++) {
                cur[k] = (cur[k] + g[k]) % d;
            }
        }
    }
    return out;
}

std::vector<int> flat_label(const StabilizerElement &g) {
    std::vector<int> out = g.a;
    out.insert(out.end(), g.b.begin(), g.b.end());
    return out;
}

}  // namespace

size_t generated_subgroup_size(const StabilizerGroup &group, const std::vector<int> &indices) {
    std::vector<std::vector<int>> span{std::vector<int>(2 * group.n, 0)};
    for (int idx : indices) {
        require(idx >= 0 && idx < static_cast<int>(group.elements.size()), ErrorCode::kInvalidArgument,
                "generator index out of range");
        span = span_with(span, flat_label(group.elements[idx]), group.d);
    }
    return span.size();
}

std::vector<int> choose_generators(const StabilizerGroup &group) {
    const size_t full = group.elements.size();
    std::vector<std::vector<int>> span{std::vector<int>(2 * group.n, 0)};
    std::vector<int> chosen;
    while (span.size() < full) {
        size_t best_size = span.size();
        int best = -1;
        std::vector<std::vector<int>> best_span;
        for (size_t i = 1; i < full; i++) {
            auto next = span_with(span, flat_label(group.elements[i]), group.d);
            if (next.size() > best_size) {
                best_size = next.size();
                best = static_cast<int>(i);
                best_span = std::move(next);
                if (best_size == span.size() * group.d) {
                    break;
                }
            }
        }
        require(best >= 0, ErrorCode::kNumeric, "failed to find a generating set");
        chosen.push_back(best);
        span = std::move(best_span);
    }
    return chosen;
}

}  // namespace gateverify
