// Copyright 2026 The Embezzle Authors
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

// Dense finite-dimensional numerics: complex matrices, a one-sided Jacobi
// SVD, Schmidt and polar decompositions, and the local-unitary invariance
// check for Schmidt coefficients.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "embezzle/exact_scalar.hpp"

namespace embezzle {

/// Row-major complex matrix.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    /// Builds a matrix from nested rows; all rows must have equal length.
    static Matrix from_rows(const std::vector<std::vector<FloatScalar>> &rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    FloatScalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const FloatScalar &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix operator*(const Matrix &o) const;
    Matrix operator+(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    Matrix operator*(FloatScalar c) const;
    std::vector<FloatScalar> apply(const std::vector<FloatScalar> &v) const;

    /// Largest entrywise magnitude.
    double max_abs() const;
    double frobenius() const;
    /// max |U*U - I| and max |UU* - I| both below eps.
    bool is_unitary(double eps = kDefaultEpsilon) const;

    std::vector<FloatScalar> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<FloatScalar> &v);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FloatScalar> data_;
};

using DenseOperator = Matrix;

Matrix kron(const Matrix &a, const Matrix &b);

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// A = U diag(sigma) V*, sigma descending, U is rows x k and V is cols x k
/// with k = min(rows, cols).
struct Svd {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
    int sweeps = 0;
};

/// One-sided Jacobi SVD.
Svd svd(const Matrix &a, double tol = kJacobiTolerance, int max_sweeps = kJacobiMaxSweeps);

/// Amplitudes over a product of finite registers, row-major over dims.
struct DenseState {
    std::vector<std::size_t> dims;
    std::vector<FloatScalar> amps;

    static DenseState zeros(std::vector<std::size_t> dims);
    static DenseState basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &index);

    std::size_t size() const { return amps.size(); }
    std::size_t flat_index(const std::vector<std::size_t> &index) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    FloatScalar &at(const std::vector<std::size_t> &index) { return amps[flat_index(index)]; }
    const FloatScalar &at(const std::vector<std::size_t> &index) const { return amps[flat_index(index)]; }
    double norm2() const;
    /// sum conj(this) * other.
    FloatScalar inner(const DenseState &other) const;
    /// Tensor product, registers of this first.
    DenseState tensor(const DenseState &other) const;
};

/// Registers on the left side of a bipartition; the rest form the right side
/// in their original order.
struct Cut {
    std::vector<std::size_t> left;
};

struct SchmidtDecomposition {
    /// Nonzero coefficients, descending.
    std::vector<double> coefficients;
    /// left[k] and right[k] pair with coefficients[k].
    std::vector<std::vector<FloatScalar>> left;
    std::vector<std::vector<FloatScalar>> right;
    std::size_t left_dim = 0;
    std::size_t right_dim = 0;
};

/// Coefficient matrix X with s = sum_ij X_ij |i>_left |j>_right.
Matrix coefficient_matrix(const DenseState &s, const Cut &cut);

/// Coefficients below `zero_tol` are dropped. The first nonzero component of
/// every left vector is made real and positive.
SchmidtDecomposition schmidt_decompose(const DenseState &s, const Cut &cut, double zero_tol = 1e-12);

/// Rebuilds sum_k d_k u_k (x) v_k in the register order of `like`.
DenseState schmidt_reconstruct(const SchmidtDecomposition &d, const DenseState &like, const Cut &cut);

struct PolarDecomposition {
    /// Partial isometry.
    Matrix w;
    /// (X*X)^(1/2).
    Matrix modulus;
};

PolarDecomposition polar_decompose(const Matrix &x, double zero_tol = 1e-12);

/// True iff the rows are orthonormal, i.e. the matrix with these rows is a
/// coisometry.
bool coisometry_check(const std::vector<std::vector<FloatScalar>> &rows, double eps = kDefaultEpsilon);

/// Haar-random unitary from the QR decomposition of a Gaussian matrix.
Matrix random_unitary(std::size_t n, std::mt19937_64 &rng);
DenseState random_state(std::vector<std::size_t> dims, std::mt19937_64 &rng);

/// Applies `op` to the registers listed in `regs`, in that order.
DenseState apply_local(const DenseState &s, const std::vector<std::size_t> &regs, const Matrix &op);

struct SchmidtInvarianceReport {
    std::vector<double> before;
    std::vector<double> after;
    double max_difference = 0;
    bool invariant = false;
    /// Top coefficient after evolution, and the top coefficient the
    /// embezzled target (state (x) Bell pair) would need.
    double evolved_top = 0;
    double target_top = 0;
};

/// `u_local` acts on the left side of the cut, `v_local` on the right side.
SchmidtInvarianceReport schmidt_invariance_demo(const DenseState &s, const Cut &cut, const Matrix &u_local,
                                                const Matrix &v_local, double eps = kDefaultEpsilon);

}  // namespace embezzle
