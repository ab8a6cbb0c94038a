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

#include "gateverify/tensor.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gateverify/error.hpp"

namespace gateverify {

int dims_product(std::span<const int> dims) {
    int p = 1;
    for (int d : dims) {
        require(d >= 1, ErrorCode::kInvalidArgument, "factor dimensions must be positive");
        p *= d;
    }
    return p;
}

DenseOperator::DenseOperator(Matrix entries, Dims dims) : DenseOperator(std::move(entries), dims, dims) {
}

DenseOperator::DenseOperator(Matrix entries, Dims row_dims, Dims col_dims)
    : m_(std::move(entries)), row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
    require(dims_product(row_dims_) == m_.rows(), ErrorCode::kDimension,
            "row factor dims do not multiply to the row count " + std::to_string(m_.rows()));
    require(dims_product(col_dims_) == m_.cols(), ErrorCode::kDimension,
            "column factor dims do not multiply to the column count " + std::to_string(m_.cols()));
}

DenseOperator DenseOperator::identity(Dims dims) {
    int d = dims_product(dims);
    return DenseOperator(Matrix::Identity(d, d), std::move(dims));
}

DenseOperator DenseOperator::zero(Dims dims) {
    int d = dims_product(dims);
    return DenseOperator(Matrix::Zero(d, d), std::move(dims));
}

DenseOperator DenseOperator::projector(const Vector &ket, Dims dims) {
    return DenseOperator(ket * ket.adjoint(), std::move(dims));
}

double hermiticity_defect(const Matrix &a) {
    if (a.rows() != a.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0;
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = i; j < a.cols(); j++) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

bool DenseOperator::is_hermitian(double rel_tol) const {
    if (!is_square()) {
        return false;
    }
    double scale = m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0;
    return hermiticity_defect(m_) <= rel_tol * std::max(scale, 1e-300);
}

DenseOperator DenseOperator::adjoint() const {
    return DenseOperator(m_.adjoint(), col_dims_, row_dims_);
}

DenseOperator DenseOperator::conjugate() const {
    return DenseOperator(m_.conjugate(), row_dims_, col_dims_);
}

DenseOperator &DenseOperator::operator+=(const DenseOperator &other) {
    require(row_dims_ == other.row_dims_ && col_dims_ == other.col_dims_, ErrorCode::kDimension,
            "operator shapes differ in addition");
    m_ += other.m_;
    return *this;
}

DenseOperator &DenseOperator::operator-=(const DenseOperator &other) {
    require(row_dims_ == other.row_dims_ && col_dims_ == other.col_dims_, ErrorCode::kDimension,
            "operator shapes differ in subtraction");
    m_ -= other.m_;
    return *this;
}

DenseOperator &DenseOperator::operator*=(Complex scale) {
    m_ *= scale;
    return *this;
}

DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
    require(a.col_dims_ == b.row_dims_, ErrorCode::kDimension, "operator shapes differ in product");
    return DenseOperator(a.m_ * b.m_, a.row_dims_, b.col_dims_);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    Dims rows = a.row_dims();
    rows.insert(rows.end(), b.row_dims().begin(), b.row_dims().end());
    Dims cols = a.col_dims();
    cols.insert(cols.end(), b.col_dims().begin(), b.col_dims().end());
    return DenseOperator(kron(a.matrix(), b.matrix()), std::move(rows), std::move(cols));
}

DenseOperator partial_trace(const DenseOperator &a, std::span<const int> keep) {
    require(a.is_square(), ErrorCode::kDimension, "partial_trace needs a square operator with matching factors");
    const Dims &dims = a.dims();
    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        require(k >= 0 && k < n, ErrorCode::kInvalidArgument,
                "partial_trace: subsystem index " + std::to_string(k) + " out of range");
        kept[k] = true;
    }
    Dims kept_dims;
    Dims traced_dims;
    for (int k = 0; k < n; k++) {
        (kept[k] ? kept_dims : traced_dims).push_back(dims[k]);
    }
    const int dk = dims_product(kept_dims);
    const int dt = dims_product(traced_dims);

    // full_index[r * dt + t] is the flat index whose kept digits spell r and
    // whose traced digits spell t.
    std::vector<int> full_index(static_cast<size_t>(dk) * dt);
    const int total = dims_product(dims);
    std::vector<int> digits(n);
    for (int flat = 0; flat < total; flat++) {
        int rem = flat;
        for (int k = n - 1; k >= 0; k--) {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        int r = 0;
        int t = 0;
        for (int k = 0; k < n; k++) {
            if (kept[k]) {
                r = r * dims[k] + digits[k];
            } else {
                t = t * dims[k] + digits[k];
            }
        }
        full_index[static_cast<size_t>(r) * dt + t] = flat;
    }

    const Matrix &m = a.matrix();
    Matrix out = Matrix::Zero(dk, dk);
    for (int r = 0; r < dk; r++) {
        for (int c = 0; c < dk; c++) {
            Complex acc = 0;
            for (int t = 0; t < dt; t++) {
                acc += m(full_index[static_cast<size_t>(r) * dt + t], full_index[static_cast<size_t>(c) * dt + t]);
            }
            out(r, c) = acc;
        }
    }
    if (kept_dims.empty()) {
        kept_dims.push_back(1);
    }
    return DenseOperator(std::move(out), std::move(kept_dims));
}

namespace {

void require_hermitian(const DenseOperator &a, double rel_tol, const char *what) {
    if (!a.is_hermitian(rel_tol)) {
        fail(ErrorCode::kNotHermitian, std::string(what) + ": input is not Hermitian within tolerance");
    }
}

Matrix hermitian_part(const Matrix &a) {
    return (a + a.adjoint()) * 0.5;
}

}  // namespace

HermitianSpectrum hermitian_eig(const DenseOperator &a, double rel_tol) {
    require_hermitian(a, rel_tol, "hermitian_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a.matrix()));
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "hermitian_eig: eigensolver failed");
    const Eigen::Index n = a.rows();
    HermitianSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; k++) {
        out.eigenvalues[k] = solver.eigenvalues()(n - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "eigensolver failed");
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<double> hermitian_eigenvalues(const DenseOperator &a, double rel_tol) {
    require_hermitian(a, rel_tol, "hermitian_eigenvalues");
    return hermitian_eigenvalues(a.matrix());
}

double operator_norm(const Matrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    double scale = a.cwiseAbs().maxCoeff();
    if (a.rows() == a.cols() && hermiticity_defect(a) <= 1e-12 * std::max(scale, 1e-300)) {
        auto ev = hermitian_eigenvalues(a);
        return std::max(std::abs(ev.front()), std::abs(ev.back()));
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double operator_norm(const DenseOperator &a) {
    return operator_norm(a.matrix());
}

Matrix psd_clip(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
    require(solver.info() == Eigen::Success, ErrorCode::kNumeric, "psd_clip: eigensolver failed");
    Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
    const Matrix &v = solver.eigenvectors();
    return v * lambda.asDiagonal() * v.adjoint();
}

DenseOperator psd_clip(const DenseOperator &a, double rel_tol) {
    require_hermitian(a, rel_tol, "psd_clip");
    return DenseOperator(psd_clip(a.matrix()), a.dims());
}

Complex frobenius_inner(const DenseOperator &a, const DenseOperator &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kDimension,
            "frobenius_inner: shapes differ");
    return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

double min_eigenvalue(const Matrix &a) {
    return hermitian_eigenvalues(a).back();
}

double second_largest_eigenvalue(const DenseOperator &a, double tol) {
    auto ev = hermitian_eigenvalues(a, tol);
    require(ev.size() >= 2, ErrorCode::kDimension, "second largest eigenvalue needs dimension >= 2");
    return ev[1];
}

}  // namespace gateverify
