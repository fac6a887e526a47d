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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "embezzle/finite_dim.hpp"
#include "embezzle/games.hpp"
#include "embezzle/general_protocol.hpp"
#include "embezzle/shift_protocol.hpp"
#include "embezzle/vdh.hpp"
#include "embezzle/verify.hpp"

using namespace embezzle;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            passed = false;
            notes.push_back("failed: " + what);
        }
    }
};

std::string fmt(double v, int digits = 12) {
    std::ostringstream out;
    out << std::setprecision(digits) << v;
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ResourceSampler<ResourceLabel> shift_sampler(LabelBounds b) {
    return [b](std::mt19937_64 &rng) { return random_resource_label(rng, b); };
}

// 1/sqrt2 |00> (x) |0, 0, 0> + 1/sqrt2 |11> (x) |0, 0, 0>, written out by hand.
SparseState expected_bell_output() {
    const ExactScalar h(0, Rational(1, 2));
    SparseState s(2);
    s.accumulate(CompositeLabel{{0, 0}, ResourceLabel{0, Dyadic(), Dyadic()}}, h);
    s.accumulate(CompositeLabel{{1, 1}, ResourceLabel{0, Dyadic(), Dyadic()}}, h);
    return s;
}

Outcome criterion_1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = run_protocol(shift_protocol(), 0, 0);
    const double t = seconds_since(t0);
    o.require(out.equals(expected_bell_output(), 0.0), "exact Bell output");
    o.require(t < 1.0, "runtime < 1 s");
    o.notes.push_back("output " + out.str());
    o.notes.push_back("runtime " + fmt(t, 3) + " s");
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const LabelBounds bounds{8, 8, 8};
    const auto p = shift_protocol();
    const auto r = commutation_check(p, 2026, 200, shift_sampler(bounds));
    o.require(r.passed, "U_A U_B == U_B U_A and block *-commutation (" + r.relation + " at " + r.witness + ")");
    const double t = seconds_since(t0);
    o.require(t < 10.0, "runtime < 10 s");
    o.notes.push_back(std::to_string(r.checked) + " checks, runtime " + fmt(t, 3) + " s");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const auto states = sample_states(7, 40, LabelBounds{4, 8, 8}, 2);
    const auto p = shift_protocol();
    std::vector<ExactKernel> ks{p.alice, p.bob};
    for (const auto &k : construction_kernels()) {
        ks.push_back(k);
    }
    for (const auto &k : ks) {
        const auto r = unitarity_check(k, states);
        o.require(r.passed, k.name + ": " + r.relation);
    }
    o.notes.push_back(std::to_string(ks.size()) + " kernels on " + std::to_string(states.size()) + " states");

    // U00* U00 + U10* U10 == I on register-free samples.
    const auto u00 = extract_block(p, Party::kAlice, 0, 0);
    const auto u10 = extract_block(p, Party::kAlice, 1, 0);
    std::mt19937_64 rng(8);
    bool column_ok = true;
    for (int n = 0; n < 200; ++n) {
        auto h = SparseState::basis(CompositeLabel{{}, random_resource_label(rng, LabelBounds{})});
        auto sum = u00.apply_adjoint(u00.apply(h)) + u10.apply_adjoint(u10.apply(h));
        column_ok = column_ok && sum.equals(h, 0.0);
    }
    o.require(column_ok, "U00* U00 + U10* U10 == I");
    for (auto party : {Party::kAlice, Party::kBob}) {
        const auto r = block_unitarity_check(p, party, 9, 200, shift_sampler(LabelBounds{}));
        o.require(r.passed, "block unitarity: " + r.relation);
    }
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const auto values = state_functional(shift_protocol()).bell_order();
    const std::array<ExactScalar, 4> want{ExactScalar(0, Rational(1, 2)), ExactScalar(), ExactScalar(),
                                          ExactScalar(0, Rational(1, 2))};
    std::string got;
    for (std::size_t i = 0; i < 4; ++i) {
        o.require(values[i] == want[i], "s[" + std::to_string(i) + "] == " + want[i].str());
        got += (i ? ", " : "") + values[i].str();
    }
    o.notes.push_back("(s00, s10, s01, s11) = (" + got + ")");
    return o;
}

Outcome criterion_5() {
    Outcome o;
    const auto w = isometry_witness(shift_protocol(), 8, 0.0);
    o.require(w.gram.size() == 9, "9 x 9 Gram matrix");
    bool identity = true;
    for (std::size_t m = 0; m < w.gram.size(); ++m) {
        for (std::size_t n = 0; n < w.gram.size(); ++n) {
            identity = identity && w.gram[m][n] == (m == n ? ExactScalar(1) : ExactScalar());
        }
    }
    o.require(identity, "Gram matrix equals identity");
    o.require(w.left_inverse, "U00^n U00*^n psi == psi");
    o.require(w.bob_adjoint_relation, "(V00*)^n psi == (sqrt2 U00)^n psi");
    o.require(w.bob_relation, "V00^n psi == (U00* / sqrt2)^n psi");
    o.require(w.psi_outside_range, "psi orthogonal to the range of U00* on the orbit");
    o.notes.push_back("||U00 psi||^2 = " + w.u00_psi_norm2.str());
    return o;
}

// Fidelity from an independently built permutation table and dense vectors.
double dense_vdh_fidelity(long n) {
    const auto N = static_cast<std::size_t>(n);
    double H = 0;
    for (std::size_t j = N; j >= 1; --j) {
        H += 1.0 / static_cast<double>(j);
    }
    std::vector<double> c(N + 1);
    for (std::size_t j = 1; j <= N; ++j) {
        c[j] = 1.0 / std::sqrt(H * static_cast<double>(j));
    }
    Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    for (std::size_t k = 1; k <= 2 * N; ++k) {
        std::size_t t = k <= N ? 0 : 1;
        std::size_t j = k <= N ? k : k - N;
        perm(((k - 1) % 2) * N + (k + 1) / 2 - 1, t * N + j - 1) = 1;
    }
    // Joint state as a matrix: rows (A, a), columns (B, b).
    Eigen::MatrixXd in = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    for (std::size_t j = 1; j <= N; ++j) {
        in(j - 1, j - 1) = c[j];
        target(j - 1, j - 1) = c[j] / std::sqrt(2.0);
        target(N + j - 1, N + j - 1) = c[j] / std::sqrt(2.0);
    }
    Eigen::MatrixXd out = perm * in * perm.transpose();
    return std::abs((target.array() * out.array()).sum());
}

Outcome criterion_6() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double f1 = vdh_fidelity(1);
    const double f2 = vdh_fidelity(2);
    o.require(std::abs(f1 - 1 / std::sqrt(2.0)) <= 1e-12, "fidelity(1) == 1/sqrt2");
    o.require(std::abs(f1 - dense_vdh_fidelity(1)) <= 1e-12, "fidelity(1) matches dense oracle");
    o.require(std::abs(f2 - dense_vdh_fidelity(2)) <= 1e-9, "fidelity(2) matches dense oracle");
    o.require(f2 >= 0.804737 && f2 < 0.804738, "fidelity(2) == 0.804737...");
    o.notes.push_back("fidelity(1) = " + fmt(f1) + ", fidelity(2) = " + fmt(f2));

    const auto rows = vdh_sweep(1, 4096);
    bool monotone = true, below_one = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        below_one = below_one && rows[i].fidelity < 1.0;
        if (i > 0) {
            monotone = monotone && rows[i].fidelity >= rows[i - 1].fidelity;
        }
    }
    o.require(rows.size() == 13, "13 sweep rows for n = 2^0..2^12");
    o.require(monotone, "fidelity nondecreasing");
    o.require(below_one, "fidelity < 1");
    o.notes.push_back("fidelity(4096) = " + fmt(rows.back().fidelity));

    const VdhSweepRow *r256 = nullptr;
    for (const auto &r : rows) {
        if (r.n == 256) {
            r256 = &r;
        }
    }
    const auto &r4096 = rows.back();
    const char *names[] = {"s00", "s10", "s01", "s11"};
    for (std::size_t i = 0; i < 4; ++i) {
        const bool smaller = r4096.deviations[i] < r256->deviations[i];
        o.require(smaller, std::string(names[i]) + " deviation strictly smaller at 4096 than at 256");
        o.notes.push_back(std::string(names[i]) + " deviation: n=256 " + fmt(r256->deviations[i]) + ", n=4096 " +
                          fmt(r4096.deviations[i]));
    }
    const double t = seconds_since(t0);
    o.require(t < 60.0, "runtime < 60 s");
    o.notes.push_back("runtime " + fmt(t, 3) + " s");
    return o;
}

Outcome criterion_7() {
    Outcome o;
    std::mt19937_64 rng(77);
    const double tol = 1e-9;

    DenseState bell = DenseState::zeros({2, 2});
    bell.at({0, 0}) = 1 / std::sqrt(2.0);
    bell.at({1, 1}) = 1 / std::sqrt(2.0);
    const auto b = schmidt_decompose(bell, Cut{{0}});
    o.require(b.coefficients.size() == 2 && std::abs(b.coefficients[0] - 1 / std::sqrt(2.0)) <= tol &&
                  std::abs(b.coefficients[1] - 1 / std::sqrt(2.0)) <= tol,
              "Bell pair coefficients (1/sqrt2, 1/sqrt2)");

    struct Case {
        DenseState state;
        Cut cut;
        std::size_t left_dim;
        std::size_t right_dim;
    };
    std::vector<Case> cases{{bell, Cut{{0}}, 2, 2},
                            {random_state({3, 3}, rng), Cut{{0}}, 3, 3},
                            {random_state({2, 3, 2, 2}, rng), Cut{{0, 2}}, 4, 6}};
    double worst = 0;
    for (const auto &c : cases) {
        for (int n = 0; n < 20; ++n) {
            const auto r = schmidt_invariance_demo(c.state, c.cut, random_unitary(c.left_dim, rng),
                                                   random_unitary(c.right_dim, rng), tol);
            worst = std::max(worst, r.max_difference);
            o.require(r.invariant, "local-unitary invariance");
        }
        // Two independent random bases on each side give the same coefficients.
        auto in_basis = [&](const Matrix &u, const Matrix &v) {
            auto left = c.cut.left;
            std::vector<std::size_t> right;
            for (std::size_t r = 0; r < c.state.dims.size(); ++r) {
                if (std::find(left.begin(), left.end(), r) == left.end()) {
                    right.push_back(r);
                }
            }
            return schmidt_decompose(apply_local(apply_local(c.state, left, u), right, v), c.cut).coefficients;
        };
        const auto x = in_basis(random_unitary(c.left_dim, rng), random_unitary(c.right_dim, rng));
        const auto y = in_basis(random_unitary(c.left_dim, rng), random_unitary(c.right_dim, rng));
        bool same = x.size() == y.size();
        for (std::size_t k = 0; same && k < x.size(); ++k) {
            same = std::abs(x[k] - y[k]) <= tol;
        }
        o.require(same, "coefficients agree across two random bases");
    }
    o.notes.push_back("worst invariance deviation " + fmt(worst, 3));

    double residual = 0;
    std::normal_distribution<double> g;
    for (std::size_t n : {4u, 8u}) {
        Matrix x(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                x(i, j) = {g(rng), g(rng)};
            }
        }
        const auto p = polar_decompose(x);
        residual = std::max(residual, (p.w * p.modulus - x).max_abs());
    }
    o.require(residual < 1e-9, "polar reconstruction residual < 1e-9");
    o.notes.push_back("polar residual " + fmt(residual, 3));
    return o;
}

Outcome criterion_8() {
    Outcome o;
    const auto st = perfect_strategy();
    for (std::uint8_t c : {0, 1}) {
        o.require(play(st, c).win_probability == ExactScalar(1), "perfect win probability 1 for c=" + std::to_string(c));
    }
    const auto reduced = reduction_to_embezzlement(st);
    o.require(reduced.equals(reduction_target(st.catalyst), 0.0), "reduction returns outer registers to |0>");
    const auto inner = reduced.relabeled(
        [](const CompositeLabel &k) { return CompositeLabel{{k.regs[kA2], k.regs[kB2]}, k.res}; }, 2);
    o.require(inner.equals(expected_bell_output(), 0.0), "reduction reproduces the exact Bell output on A2 B2");

    double prev = 0;
    bool below = true, monotone = true;
    std::string trace;
    for (long n = 1; n <= 1024; n *= 2) {
        const auto v = vdh_strategy(n);
        // Average over a uniformly random referee input.
        const double w = 0.5 * (play(v, 0).win_probability.real() + play(v, 1).win_probability.real());
        below = below && w < 1.0;
        monotone = monotone && w >= prev;
        prev = w;
        if (n == 2 || n == 1024) {
            trace += " n=" + std::to_string(n) + ": " + fmt(w);
        }
    }
    o.require(below, "vdH strategy win probability < 1");
    o.require(monotone, "vdH strategy win probability nondecreasing");
    o.notes.push_back("vdH win probability" + trace);
    return o;
}

Outcome criterion_9() {
    Outcome o;
    const std::vector<FloatScalar> a2{std::sqrt(1.0 / 3), 0, 0, std::sqrt(2.0 / 3)};
    std::vector<FloatScalar> a3(9);
    for (std::size_t i = 0; i < 3; ++i) {
        a3[i * 3 + i] = 1 / std::sqrt(3.0);
    }
    for (const auto &[d, alpha] : std::vector<std::pair<std::size_t, std::vector<FloatScalar>>>{{2, a2}, {3, a3}}) {
        const auto p = general_protocol(d, alpha);
        const auto s = state_functional(p);
        double worst = 0;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            worst = std::max(worst, std::abs(s.values[k] - alpha[k]));
        }
        o.require(worst <= 1e-9, "d=" + std::to_string(d) + " functional matches target");
        o.require(run_protocol(p, 0, 0).equals(embezzlement_target(p, alpha), 1e-9),
                  "d=" + std::to_string(d) + " output matches target");
        o.notes.push_back("d=" + std::to_string(d) + " max deviation " + fmt(worst, 3));
    }
    return o;
}

std::string run_cli(const std::string &args, int &code) {
    const std::string cmd = std::string(EMBEZZLE_CLI) + " " + args + " 2>/dev/null";
    std::string out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        code = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

Outcome criterion_10() {
    Outcome o;
    const auto a = verify_protocol(VerifyConfig{});
    const auto b = verify_protocol(VerifyConfig{});
    o.require(a.passed, "default verify passes");
    o.require(a.report.dump(2) == b.report.dump(2), "library report identical across runs");
    int c1 = 0, c2 = 0;
    const auto r1 = run_cli("verify", c1);
    const auto r2 = run_cli("verify", c2);
    o.require(c1 == 0 && c2 == 0, "verify command exits 0");
    o.require(!r1.empty() && r1 == r2, "verify command output byte-identical across runs");
    o.notes.push_back(std::to_string(r1.size()) + " bytes per report");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                         criterion_5, criterion_6, criterion_7, criterion_8,
                                                         criterion_9, criterion_10};
    const char *titles[] = {"perfect embezzlement, exact",
                            "commutation",
                            "unitarity relations",
                            "state functional",
                            "isometry witness",
                            "finite-catalyst sweep",
                            "Schmidt suite",
                            "games",
                            "d-dimensional targets",
                            "reproducibility"};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o.passed = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double t = seconds_since(t0);
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << titles[i] << " ("
                  << fmt(t, 3) << " s)\n";
        for (const auto &n : o.notes) {
            std::cout << "    " << n << "\n";
        }
        failures += o.passed ? 0 : 1;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
