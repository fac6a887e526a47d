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


#include "embezzle/finite_dim.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

using namespace embezzle;

namespace {

const double kH = 1 / std::sqrt(2.0);

Eigen::MatrixXcd to_eigen(const Matrix &m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = m(i, j);
        }
    }
    return out;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = {g(rng), g(rng)};
        }
    }
    return m;
}

// Singular values from the eigenvalues of A A*, descending.
std::vector<double> oracle_singular_values(const Matrix &a) {
    Eigen::MatrixXcd e = to_eigen(a);
    Eigen::MatrixXcd gram = e.rows() <= e.cols() ? Eigen::MatrixXcd(e * e.adjoint()) : Eigen::MatrixXcd(e.adjoint() * e);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        out.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i))));
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Schmidt coefficients as square roots of the reduced density matrix spectrum.
std::vector<double> oracle_schmidt(const DenseState &s, const Cut &cut, double tol = 1e-12) {
    std::vector<double> sv = oracle_singular_values(coefficient_matrix(s, cut));
    std::vector<double> out;
    for (double v : sv) {
        if (v > tol) {
            out.push_back(v);
        }
    }
    return out;
}

double max_diff(const DenseState &a, const DenseState &b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
    }
    return m;
}

DenseState bell_pair() {
    DenseState s = DenseState::zeros({2, 2});
    s.at({0, 0}) = kH;
    s.at({1, 1}) = kH;
    return s;
}

}  // namespace

TEST(matrix, basics) {
    Matrix a = Matrix::from_rows({{1, 2}, {3, FloatScalar(0, 1)}});
    ASSERT_EQ(a.adjoint()(1, 1), FloatScalar(0, -1));
    ASSERT_EQ(a.transpose()(0, 1), FloatScalar(3));
    ASSERT_EQ((a * Matrix::identity(2))(1, 0), FloatScalar(3));
    ASSERT_EQ(a.apply({1, 1})[0], FloatScalar(3));
    ASSERT_EQ(kron(Matrix::identity(2), a).rows(), 4u);
    ASSERT_EQ(kron(Matrix::identity(2), a)(3, 2), FloatScalar(3));
    ASSERT_THROW(Matrix::from_rows({{1, 2}, {3}}), UsageError);
    ASSERT_TRUE(Matrix::from_rows({{kH, kH}, {kH, -kH}}).is_unitary());
    ASSERT_FALSE(a.is_unitary());
}

TEST(svd, matches_eigen_reference) {
    std::mt19937_64 rng(3);
    for (auto [r, c] : std::vector<std::pair<int, int>>{{3, 4}, {4, 3}, {5, 5}, {1, 6}}) {
        Matrix a = random_matrix(r, c, rng);
        Svd s = svd(a);
        auto want = oracle_singular_values(a);
        ASSERT_EQ(s.sigma.size(), want.size());
        for (std::size_t k = 0; k < want.size(); ++k) {
            ASSERT_NEAR(s.sigma[k], want[k], 1e-10);
        }
        Matrix sig(s.sigma.size(), s.sigma.size());
        for (std::size_t k = 0; k < s.sigma.size(); ++k) {
            sig(k, k) = s.sigma[k];
        }
        ASSERT_LT((s.u * sig * s.v.adjoint() - a).max_abs(), 1e-10);
        ASSERT_LT((s.u.adjoint() * s.u - Matrix::identity(s.sigma.size())).max_abs(), 1e-10);
        ASSERT_LT((s.v.adjoint() * s.v - Matrix::identity(s.sigma.size())).max_abs(), 1e-10);
    }
}

TEST(svd, rank_deficient_input) {
    Matrix a = Matrix::from_rows({{1, 1}, {1, 1}, {0, 0}});
    Svd s = svd(a);
    ASSERT_NEAR(s.sigma[0], 2, 1e-12);
    ASSERT_NEAR(s.sigma[1], 0, 1e-12);
    ASSERT_LT((s.u.adjoint() * s.u - Matrix::identity(2)).max_abs(), 1e-10);
}

TEST(dense_state, indexing) {
    DenseState s = DenseState::zeros({2, 3, 2});
    ASSERT_EQ(s.size(), 12u);
    ASSERT_EQ(s.flat_index({1, 2, 0}), 10u);
    ASSERT_EQ(s.multi_index(10), (std::vector<std::size_t>{1, 2, 0}));
    for (std::size_t f = 0; f < s.size(); ++f) {
        ASSERT_EQ(s.flat_index(s.multi_index(f)), f);
    }
    ASSERT_THROW(s.flat_index({2, 0, 0}), UsageError);
    auto t = DenseState::basis({2}, {1}).tensor(DenseState::basis({3}, {2}));
    ASSERT_EQ(t.at({1, 2}), FloatScalar(1));
    ASSERT_NEAR(bell_pair().norm2(), 1.0, 1e-15);
}

TEST(schmidt, bell_pair) {
    auto d = schmidt_decompose(bell_pair(), Cut{{0}});
    ASSERT_EQ(d.coefficients.size(), 2u);
    ASSERT_NEAR(d.coefficients[0], kH, 1e-12);
    ASSERT_NEAR(d.coefficients[1], kH, 1e-12);
}

TEST(schmidt, product_state_has_one_coefficient) {
    std::mt19937_64 rng(4);
    auto s = random_state({3}, rng).tensor(random_state({4}, rng));
    auto d = schmidt_decompose(s, Cut{{0}});
    ASSERT_EQ(d.coefficients.size(), 1u);
    ASSERT_NEAR(d.coefficients[0], 1.0, 1e-12);
}

TEST(schmidt, matches_reference_and_reconstructs) {
    std::mt19937_64 rng(6);
    for (int n = 0; n < 10; ++n) {
        auto s = random_state({2, 3, 2}, rng);
        for (const Cut &cut : {Cut{{0}}, Cut{{1}}, Cut{{0, 2}}, Cut{{2, 0}}}) {
            auto d = schmidt_decompose(s, cut);
            auto want = oracle_schmidt(s, cut);
            ASSERT_EQ(d.coefficients.size(), want.size());
            double sum = 0;
            for (std::size_t k = 0; k < want.size(); ++k) {
                ASSERT_NEAR(d.coefficients[k], want[k], 1e-10);
                sum += want[k] * want[k];
            }
            ASSERT_NEAR(sum, 1.0, 1e-10);
            ASSERT_LT(max_diff(schmidt_reconstruct(d, s, cut), s), 1e-10);
        }
    }
}

TEST(schmidt, normal_form_is_basis_independent) {
    // The same state written after a random local change of basis and its
    // inverse gives identical Schmidt data.
    std::mt19937_64 rng(21);
    auto s = random_state({3, 3}, rng);
    auto d1 = schmidt_decompose(s, Cut{{0}});
    Matrix u = random_unitary(3, rng);
    auto t = apply_local(apply_local(s, {0}, u), {0}, u.adjoint());
    auto d2 = schmidt_decompose(t, Cut{{0}});
    ASSERT_EQ(d1.coefficients.size(), d2.coefficients.size());
    for (std::size_t k = 0; k < d1.coefficients.size(); ++k) {
        ASSERT_NEAR(d1.coefficients[k], d2.coefficients[k], 1e-12);
        for (std::size_t i = 0; i < 3; ++i) {
            ASSERT_NEAR(std::abs(d1.left[k][i] - d2.left[k][i]), 0, 1e-9);
            ASSERT_NEAR(std::abs(d1.right[k][i] - d2.right[k][i]), 0, 1e-9);
        }
    }
    // First nonzero component of each left vector is real and positive.
    for (const auto &v : d1.left) {
        auto it = std::find_if(v.begin(), v.end(), [](FloatScalar z) { return std::abs(z) > 1e-12; });
        ASSERT_NE(it, v.end());
        ASSERT_GT(it->real(), 0);
        ASSERT_NEAR(it->imag(), 0, 1e-12);
    }
}

TEST(schmidt, invariant_under_local_unitaries) {
    std::mt19937_64 rng(13);
    auto s = random_state({2, 3, 2, 2}, rng);
    const Cut cut{{0, 2}};
    for (int n = 0; n < 20; ++n) {
        Matrix u = random_unitary(4, rng);
        Matrix v = random_unitary(6, rng);
        auto r = schmidt_invariance_demo(s, cut, u, v);
        ASSERT_TRUE(r.invariant) << r.max_difference;
        ASSERT_LT(r.max_difference, 1e-10);
        ASSERT_NEAR(r.target_top, r.before[0] * kH, 1e-15);
        ASSERT_NEAR(r.evolved_top, r.before[0], 1e-10);
        // Reaching the target would need a smaller top coefficient.
        ASSERT_GT(r.evolved_top - r.target_top, 0.1 * r.before[0]);
    }
}

TEST(schmidt, invariance_demo_rejects_non_unitaries) {
    auto s = bell_pair();
    Matrix bad = Matrix::from_rows({{1, 1}, {0, 1}});
    ASSERT_THROW(schmidt_invariance_demo(s, Cut{{0}}, bad, Matrix::identity(2)), UsageError);
    ASSERT_THROW(schmidt_invariance_demo(s, Cut{{0}}, Matrix::identity(3), Matrix::identity(2)), UsageError);
}

TEST(polar, unitary_input) {
    Matrix h = Matrix::from_rows({{kH, kH}, {kH, -kH}});
    auto p = polar_decompose(h);
    ASSERT_LT((p.w - h).max_abs(), 1e-12);
    ASSERT_LT((p.modulus - Matrix::identity(2)).max_abs(), 1e-12);
}

TEST(polar, zero_input) {
    auto p = polar_decompose(Matrix::zeros(3, 3));
    ASSERT_EQ(p.w.max_abs(), 0);
    ASSERT_EQ(p.modulus.max_abs(), 0);
}

TEST(polar, random_inputs) {
    std::mt19937_64 rng(17);
    for (std::size_t n : {4u, 8u}) {
        for (int k = 0; k < 5; ++k) {
            Matrix x = random_matrix(n, n, rng);
            auto p = polar_decompose(x);
            ASSERT_LT((p.w * p.modulus - x).max_abs(), 1e-9);
            ASSERT_TRUE(p.w.is_unitary(1e-9));
            ASSERT_LT((p.modulus - p.modulus.adjoint()).max_abs(), 1e-9);
            // The modulus is positive: its eigenvalues are the singular values.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(p.modulus));
            ASSERT_GT(solver.eigenvalues().minCoeff(), -1e-9);
        }
    }
}

TEST(polar, rank_deficient_partial_isometry) {
    Matrix x = Matrix::from_rows({{1, 0}, {0, 0}});
    auto p = polar_decompose(x);
    ASSERT_LT((p.w * p.modulus - x).max_abs(), 1e-12);
    ASSERT_LT((p.w * p.w.adjoint() * p.w - p.w).max_abs(), 1e-12);
}

TEST(coisometry, examples) {
    ASSERT_TRUE(coisometry_check({{1, 0, 0}, {0, 1, 0}}));
    ASSERT_TRUE(coisometry_check({{kH, kH}, {kH, -kH}}));
    ASSERT_FALSE(coisometry_check({{1, 0}, {1, 0}}));
    ASSERT_FALSE(coisometry_check({{1, 1}}));
}

TEST(random_unitary, is_unitary) {
    std::mt19937_64 rng(1);
    for (std::size_t n : {1u, 2u, 5u, 9u}) {
        ASSERT_TRUE(random_unitary(n, rng).is_unitary(1e-12));
    }
}

TEST(apply_local, acts_on_chosen_register) {
    auto s = DenseState::basis({2, 3}, {0, 1});
    Matrix x = Matrix::from_rows({{0, 1}, {1, 0}});
    auto t = apply_local(s, {0}, x);
    ASSERT_EQ(t.at({1, 1}), FloatScalar(1));
    Matrix swap3 = Matrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    ASSERT_EQ(apply_local(s, {1}, swap3).at({0, 0}), FloatScalar(1));
    // Reordered registers: op acts on (reg 1, reg 0).
    Matrix big = kron(swap3, Matrix::identity(2));
    ASSERT_EQ(apply_local(s, {1, 0}, big).at({0, 0}), FloatScalar(1));
}
