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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace embezzle {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<FloatScalar>> &rows) {
    if (rows.empty()) {
        return {};
    }
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) {
            throw UsageError("matrix rows must have equal length");
        }
        for (std::size_t j = 0; j < m.cols_; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_) {
        throw UsageError("matrix shape mismatch in product");
    }
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const FloatScalar a = (*this)(i, k);
            if (a == FloatScalar{}) {
                continue;
            }
            for (std::size_t j = 0; j < o.cols_; ++j) {
                out(i, j) += a * o(k, j);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw UsageError("matrix shape mismatch in sum");
    }
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] += o.data_[i];
    }
    return out;
}

Matrix Matrix::operator-(const Matrix &o) const { return *this + o * FloatScalar(-1.0); }

Matrix Matrix::operator*(FloatScalar c) const {
    Matrix out = *this;
    for (auto &x : out.data_) {
        x *= c;
    }
    return out;
}

std::vector<FloatScalar> Matrix::apply(const std::vector<FloatScalar> &v) const {
    if (v.size() != cols_) {
        throw UsageError("vector length does not match matrix");
    }
    std::vector<FloatScalar> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out[i] += (*this)(i, j) * v[j];
        }
    }
    return out;
}

double Matrix::max_abs() const {
    double m = 0;
    for (const auto &x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double Matrix::frobenius() const {
    double s = 0;
    for (const auto &x : data_) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

bool Matrix::is_unitary(double eps) const {
    if (!square()) {
        return false;
    }
    const Matrix id = identity(rows_);
    return (adjoint() * *this - id).max_abs() < eps && (*this * adjoint() - id).max_abs() < eps;
}

std::vector<FloatScalar> Matrix::column(std::size_t j) const {
    std::vector<FloatScalar> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        out[i] = (*this)(i, j);
    }
    return out;
}

void Matrix::set_column(std::size_t j, const std::vector<FloatScalar> &v) {
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = v[i];
    }
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

namespace {

// Jacobi on a matrix with at least as many rows as columns.
Svd svd_tall(const Matrix &a, double tol, int max_sweeps) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix work = a;
    Matrix v = Matrix::identity(n);
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0;
                FloatScalar gamma = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(work(i, p));
                    beta += std::norm(work(i, q));
                    gamma += std::conj(work(i, p)) * work(i, q);
                }
                const double g = std::abs(gamma);
                if (g <= tol * std::sqrt(alpha * beta) || g == 0.0) {
                    continue;
                }
                rotated = true;
                // Rotate the phase out of gamma, then do a real Jacobi step.
                const FloatScalar phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                const double c = 1 / std::sqrt(1 + t * t);
                const double s = c * t;
                auto rotate = [&](Matrix &x, std::size_t rows) {
                    for (std::size_t i = 0; i < rows; ++i) {
                        const FloatScalar xp = x(i, p);
                        const FloatScalar xq = phase * x(i, q);
                        x(i, p) = c * xp - s * xq;
                        x(i, q) = s * xp + c * xq;
                    }
                };
                rotate(work, m);
                rotate(v, n);
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::norm(work(i, j));
        }
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd out{Matrix(m, n), std::vector<double>(n), Matrix(n, n), sweep};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        out.v.set_column(k, v.column(j));
        if (norms[j] > 0) {
            auto col = work.column(j);
            for (auto &x : col) {
                x /= norms[j];
            }
            out.u.set_column(k, col);
        }
    }
    // Left vectors for vanishing singular values are completed to an
    // orthonormal set so U always has orthonormal columns.
    std::size_t next_basis = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (out.sigma[k] > tol * (out.sigma[0] > 0 ? out.sigma[0] : 1.0)) {
            continue;
        }
        while (next_basis < m) {
            std::vector<FloatScalar> e(m);
            e[next_basis++] = 1.0;
            for (std::size_t l = 0; l < n; ++l) {
                if (l == k) {
                    continue;
                }
                FloatScalar proj = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    proj += std::conj(out.u(i, l)) * e[i];
                }
                for (std::size_t i = 0; i < m; ++i) {
                    e[i] -= proj * out.u(i, l);
                }
            }
            double len = 0;
            for (const auto &x : e) {
                len += std::norm(x);
            }
            if (len > 1e-6) {
                len = std::sqrt(len);
                for (auto &x : e) {
                    x /= len;
                }
                out.u.set_column(k, e);
                break;
            }
        }
    }
    return out;
}

void check_cut(const std::vector<std::size_t> &dims, const Cut &cut) {
    std::set<std::size_t> seen;
    for (auto r : cut.left) {
        if (r >= dims.size() || !seen.insert(r).second) {
            throw UsageError("cut names an invalid or repeated register");
        }
    }
    if (cut.left.empty() || cut.left.size() == dims.size()) {
        throw UsageError("both sides of the cut must be nonempty");
    }
}

std::vector<std::size_t> right_side(std::size_t registers, const Cut &cut) {
    std::vector<std::size_t> right;
    for (std::size_t r = 0; r < registers; ++r) {
        if (std::find(cut.left.begin(), cut.left.end(), r) == cut.left.end()) {
            right.push_back(r);
        }
    }
    return right;
}

std::size_t sub_index(const std::vector<std::size_t> &index, const std::vector<std::size_t> &dims,
                      const std::vector<std::size_t> &regs) {
    std::size_t out = 0;
    for (auto r : regs) {
        out = out * dims[r] + index[r];
    }
    return out;
}

std::size_t side_dim(const std::vector<std::size_t> &dims, const std::vector<std::size_t> &regs) {
    std::size_t d = 1;
    for (auto r : regs) {
        d *= dims[r];
    }
    return d;
}

}  // namespace

Svd svd(const Matrix &a, double tol, int max_sweeps) {
    if (a.rows() >= a.cols()) {
        return svd_tall(a, tol, max_sweeps);
    }
    Svd t = svd_tall(a.adjoint(), tol, max_sweeps);
    return Svd{t.v, t.sigma, t.u, t.sweeps};
}

DenseState DenseState::zeros(std::vector<std::size_t> dims) {
    std::size_t n = 1;
    for (auto d : dims) {
        if (d == 0) {
            throw UsageError("register dimensions must be positive");
        }
        n *= d;
    }
    return DenseState{std::move(dims), std::vector<FloatScalar>(n)};
}

DenseState DenseState::basis(std::vector<std::size_t> dims, const std::vector<std::size_t> &index) {
    DenseState s = zeros(std::move(dims));
    s.at(index) = 1.0;
    return s;
}

std::size_t DenseState::flat_index(const std::vector<std::size_t> &index) const {
    if (index.size() != dims.size()) {
        throw UsageError("multi-index has wrong length");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (index[i] >= dims[i]) {
            throw UsageError("multi-index out of range");
        }
        flat = flat * dims[i] + index[i];
    }
    return flat;
}

std::vector<std::size_t> DenseState::multi_index(std::size_t flat) const {
    std::vector<std::size_t> index(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        index[i] = flat % dims[i];
        flat /= dims[i];
    }
    return index;
}

double DenseState::norm2() const {
    double s = 0;
    for (const auto &x : amps) {
        s += std::norm(x);
    }
    return s;
}

FloatScalar DenseState::inner(const DenseState &other) const {
    if (dims != other.dims) {
        throw UsageError("dense states have different register dimensions");
    }
    FloatScalar s = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        s += std::conj(amps[i]) * other.amps[i];
    }
    return s;
}

DenseState DenseState::tensor(const DenseState &other) const {
    std::vector<std::size_t> d = dims;
    d.insert(d.end(), other.dims.begin(), other.dims.end());
    DenseState out{std::move(d), std::vector<FloatScalar>(amps.size() * other.amps.size())};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        for (std::size_t j = 0; j < other.amps.size(); ++j) {
            out.amps[i * other.amps.size() + j] = amps[i] * other.amps[j];
        }
    }
    return out;
}

Matrix coefficient_matrix(const DenseState &s, const Cut &cut) {
    check_cut(s.dims, cut);
    const auto right = right_side(s.dims.size(), cut);
    Matrix x(side_dim(s.dims, cut.left), side_dim(s.dims, right));
    for (std::size_t flat = 0; flat < s.amps.size(); ++flat) {
        const auto index = s.multi_index(flat);
        x(sub_index(index, s.dims, cut.left), sub_index(index, s.dims, right)) = s.amps[flat];
    }
    return x;
}

SchmidtDecomposition schmidt_decompose(const DenseState &s, const Cut &cut, double zero_tol) {
    const Matrix x = coefficient_matrix(s, cut);
    const Svd d = svd(x);
    SchmidtDecomposition out;
    out.left_dim = x.rows();
    out.right_dim = x.cols();
    for (std::size_t k = 0; k < d.sigma.size(); ++k) {
        if (d.sigma[k] <= zero_tol) {
            continue;
        }
        auto u = d.u.column(k);
        // X = sum sigma u v*, so the right Schmidt vector is conj(v).
        auto v = d.v.column(k);
        for (auto &z : v) {
            z = std::conj(z);
        }
        for (const auto &z : u) {
            if (std::abs(z) > zero_tol) {
                const FloatScalar phase = std::conj(z) / std::abs(z);
                for (auto &w : u) {
                    w *= phase;
                }
                for (auto &w : v) {
                    w /= phase;
                }
                break;
            }
        }
        out.coefficients.push_back(d.sigma[k]);
        out.left.push_back(std::move(u));
        out.right.push_back(std::move(v));
    }
    return out;
}

DenseState schmidt_reconstruct(const SchmidtDecomposition &d, const DenseState &like, const Cut &cut) {
    check_cut(like.dims, cut);
    const auto right = right_side(like.dims.size(), cut);
    DenseState out = DenseState::zeros(like.dims);
    for (std::size_t flat = 0; flat < out.amps.size(); ++flat) {
        const auto index = out.multi_index(flat);
        const auto i = sub_index(index, out.dims, cut.left);
        const auto j = sub_index(index, out.dims, right);
        for (std::size_t k = 0; k < d.coefficients.size(); ++k) {
            out.amps[flat] += d.coefficients[k] * d.left[k][i] * d.right[k][j];
        }
    }
    return out;
}

PolarDecomposition polar_decompose(const Matrix &x, double zero_tol) {
    if (!x.square()) {
        throw UsageError("polar decomposition needs a square matrix");
    }
    const std::size_t n = x.rows();
    const Svd d = svd(x);
    PolarDecomposition out{Matrix(n, n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const FloatScalar vv = d.v(i, k) * std::conj(d.v(j, k));
                out.modulus(i, j) += d.sigma[k] * vv;
                if (d.sigma[k] > zero_tol) {
                    out.w(i, j) += d.u(i, k) * std::conj(d.v(j, k));
                }
            }
        }
    }
    return out;
}

bool coisometry_check(const std::vector<std::vector<FloatScalar>> &rows, double eps) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) {
            throw UsageError("coisometry rows must have equal length");
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            FloatScalar g = 0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                g += rows[i][k] * std::conj(rows[j][k]);
            }
            if (std::abs(g - FloatScalar(i == j ? 1.0 : 0.0)) >= eps) {
                return false;
            }
        }
    }
    return true;
}

Matrix random_unitary(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<FloatScalar> col(n);
        double len = 0;
        // Redraw in the (measure-zero) event of a dependent column.
        while (len < 1e-8) {
            for (auto &z : col) {
                z = FloatScalar(gauss(rng), gauss(rng));
            }
            for (std::size_t l = 0; l < j; ++l) {
                FloatScalar proj = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(q(i, l)) * col[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    col[i] -= proj * q(i, l);
                }
            }
            len = 0;
            for (const auto &z : col) {
                len += std::norm(z);
            }
            len = std::sqrt(len);
        }
        for (auto &z : col) {
            z /= len;
        }
        q.set_column(j, col);
    }
    return q;
}

DenseState random_state(std::vector<std::size_t> dims, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseState s = DenseState::zeros(std::move(dims));
    for (auto &z : s.amps) {
        z = FloatScalar(gauss(rng), gauss(rng));
    }
    const double len = std::sqrt(s.norm2());
    for (auto &z : s.amps) {
        z /= len;
    }
    return s;
}

DenseState apply_local(const DenseState &s, const std::vector<std::size_t> &regs, const Matrix &op) {
    const std::size_t local = side_dim(s.dims, regs);
    if (op.rows() != local || op.cols() != local) {
        throw UsageError("local operator dimension does not match its registers");
    }
    DenseState out = DenseState::zeros(s.dims);
    for (std::size_t flat = 0; flat < s.amps.size(); ++flat) {
        if (s.amps[flat] == FloatScalar{}) {
            continue;
        }
        auto index = s.multi_index(flat);
        const std::size_t col = sub_index(index, s.dims, regs);
        for (std::size_t row = 0; row < local; ++row) {
            const FloatScalar entry = op(row, col);
            if (entry == FloatScalar{}) {
                continue;
            }
            std::size_t rest = row;
            for (std::size_t k = regs.size(); k-- > 0;) {
                index[regs[k]] = rest % s.dims[regs[k]];
                rest /= s.dims[regs[k]];
            }
            out.amps[out.flat_index(index)] += entry * s.amps[flat];
        }
    }
    return out;
}

SchmidtInvarianceReport schmidt_invariance_demo(const DenseState &s, const Cut &cut, const Matrix &u_local,
                                                const Matrix &v_local, double eps) {
    if (!u_local.is_unitary(eps) || !v_local.is_unitary(eps)) {
        throw UsageError("local operators must be unitary");
    }
    SchmidtInvarianceReport report;
    report.before = schmidt_decompose(s, cut).coefficients;
    const auto right = right_side(s.dims.size(), cut);
    const DenseState evolved = apply_local(apply_local(s, cut.left, u_local), right, v_local);
    report.after = schmidt_decompose(evolved, cut).coefficients;
    report.invariant = report.before.size() == report.after.size();
    const std::size_t common = std::min(report.before.size(), report.after.size());
    for (std::size_t k = 0; k < std::max(report.before.size(), report.after.size()); ++k) {
        const double b = k < report.before.size() ? report.before[k] : 0.0;
        const double a = k < report.after.size() ? report.after[k] : 0.0;
        report.max_difference = std::max(report.max_difference, std::abs(a - b));
    }
    report.invariant = report.invariant && report.max_difference < eps && common > 0;
    report.evolved_top = report.after.empty() ? 0.0 : report.after[0];
    report.target_top = report.before.empty() ? 0.0 : report.before[0] / std::sqrt(2.0);
    return report;
}

}  // namespace embezzle
