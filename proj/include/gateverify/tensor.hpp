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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gateverify {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

/// Default relative tolerance for hermiticity and spectral comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

int dims_product(std::span<const int> dims);

/// Dense complex matrix whose row and column axes are tensor products of the
/// listed factor dimensions. Factor 0 is the most significant slot.
class DenseOperator {
   public:
    DenseOperator() = default;
    DenseOperator(Matrix entries, Dims dims);
    DenseOperator(Matrix entries, Dims row_dims, Dims col_dims);

    static DenseOperator identity(Dims dims);
    static DenseOperator zero(Dims dims);
    static DenseOperator projector(const Vector &ket, Dims dims);

    const Matrix &matrix() const {
        return m_;
    }
    const Dims &row_dims() const {
        return row_dims_;
    }
    const Dims &col_dims() const {
        return col_dims_;
    }
    /// Factor dims of a square operator.
    const Dims &dims() const {
        return row_dims_;
    }
    Eigen::Index rows() const {
        return m_.rows();
    }
    Eigen::Index cols() const {
        return m_.cols();
    }
    bool is_square() const {
        return m_.rows() == m_.cols() && row_dims_ == col_dims_;
    }
    bool is_hermitian(double rel_tol = kDefaultTolerance) const;
    Complex trace() const {
        return m_.trace();
    }

    DenseOperator adjoint() const;
    DenseOperator conjugate() const;

    DenseOperator &operator+=(const DenseOperator &other);
    DenseOperator &operator-=(const DenseOperator &other);
    DenseOperator &operator*=(Complex scale);

    friend DenseOperator operator+(DenseOperator a, const DenseOperator &b) {
        a += b;
        return a;
    }
    friend DenseOperator operator-(DenseOperator a, const DenseOperator &b) {
        a -= b;
        return a;
    }
    friend DenseOperator operator*(DenseOperator a, Complex s) {
        a *= s;
        return a;
    }
    friend DenseOperator operator*(Complex s, DenseOperator a) {
        a *= s;
        return a;
    }
    friend DenseOperator operator*(const DenseOperator &a, const DenseOperator &b);

   private:
    Matrix m_;
    Dims row_dims_;
    Dims col_dims_;
};

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

DenseOperator kron(const DenseOperator &a, const DenseOperator &b);
Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(const Vector &a, const Vector &b);

/// Reduced operator on the factors listed in `keep` (0-based, any order; the
/// result keeps them in ascending order).
DenseOperator partial_trace(const DenseOperator &a, std::span<const int> keep);

HermitianSpectrum hermitian_eig(const DenseOperator &a, double rel_tol = kDefaultTolerance);
/// Eigenvalues only, descending.
std::vector<double> hermitian_eigenvalues(const DenseOperator &a, double rel_tol = kDefaultTolerance);
std::vector<double> hermitian_eigenvalues(const Matrix &a);

/// Largest singular value.
double operator_norm(const DenseOperator &a);
double operator_norm(const Matrix &a);

/// Zeroes the negative eigenvalues of a Hermitian operator.
DenseOperator psd_clip(const DenseOperator &a, double rel_tol = kDefaultTolerance);
Matrix psd_clip(const Matrix &a);

/// tr(a† b).
Complex frobenius_inner(const DenseOperator &a, const DenseOperator &b);

/// Largest entrywise deviation from hermiticity, max_ij |A_ij - conj(A_ji)|.
double hermiticity_defect(const Matrix &a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix &a);

/// Second entry of the descending spectrum. A degenerate top eigenvalue is
/// returned as-is, which reads as a zero spectral gap.
double second_largest_eigenvalue(const DenseOperator &a, double tol = kDefaultTolerance);

}  // namespace gateverify
