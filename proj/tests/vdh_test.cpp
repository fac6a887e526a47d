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


#include "embezzle/vdh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace embezzle;

namespace {

// Catalyst amplitudes 1 / sqrt(H_n j), recomputed from scratch.
std::vector<double> catalyst_amplitudes(long n) {
    double h = 0;
    for (long j = n; j >= 1; --j) {
        h += 1.0 / static_cast<double>(j);
    }
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (long j = 1; j <= n; ++j) {
        c[static_cast<std::size_t>(j)] = 1.0 / std::sqrt(h * static_cast<double>(j));
    }
    return c;
}

// Both parties map |0, j> to |(j - 1) mod 2, ceil(j / 2)>, so the output
// overlaps the target only through the terms j -> ceil(j / 2).
double closed_form_fidelity(long n) {
    auto c = catalyst_amplitudes(n);
    double sum = 0;
    for (long j = 1; j <= n; ++j) {
        sum += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>((j + 1) / 2)];
    }
    return sum / std::sqrt(2.0);
}

// Dense inner product with P built by hand as an index table.
double dense_fidelity(long n) {
    auto c = catalyst_amplitudes(n);
    const auto N = static_cast<std::size_t>(n);
    // perm[t * n + j - 1] = flat index of the image.
    std::vector<std::size_t> perm(2 * N);
    for (std::size_t k = 1; k <= 2 * N; ++k) {
        std::size_t t = k <= N ? 0 : 1;
        std::size_t j = k <= N ? k : k - N;
        std::size_t bit = (k - 1) % 2;
        std::size_t pos = (k + 1) / 2;
        perm[t * N + j - 1] = bit * N + pos - 1;
    }
    // Output amplitudes over (A, a, b, B), A and a from Alice's side.
    std::vector<double> out(4 * N * N, 0.0);
    for (std::size_t j = 1; j <= N; ++j) {
        std::size_t left = perm[j - 1];
        std::size_t right = perm[j - 1];
        std::size_t A = left / N, a = left % N, B = right / N, b = right % N;
        out[((A * N + a) * N + b) * 2 + B] += c[j];
    }
    double f = 0;
    for (std::size_t t = 0; t < 2; ++t) {
        for (std::size_t j = 1; j <= N; ++j) {
            f += c[j] / std::sqrt(2.0) * out[((t * N + j - 1) * N + j - 1) * 2 + t];
        }
    }
    return std::abs(f);
}

}  // namespace

TEST(vdh, permutation_examples) {
    VdhProtocol v(2);
    ASSERT_EQ(v.permute(0, 1), (std::pair<std::uint8_t, long>{0, 1}));
    ASSERT_EQ(v.permute(0, 2), (std::pair<std::uint8_t, long>{1, 1}));
    ASSERT_EQ(v.permute(1, 1), (std::pair<std::uint8_t, long>{0, 2}));
    ASSERT_EQ(v.permute(1, 2), (std::pair<std::uint8_t, long>{1, 2}));
    ASSERT_THROW(v.permute(0, 3), UsageError);
    ASSERT_THROW(v.permute(2, 1), UsageError);
}

TEST(vdh, permutation_is_a_bijection) {
    for (long n : {1, 2, 3, 7, 64, 1000}) {
        VdhProtocol v(n);
        ASSERT_TRUE(v.is_bijection()) << n;
        for (std::uint8_t t = 0; t < 2; ++t) {
            for (long j = 1; j <= n; ++j) {
                auto [b, jj] = v.permute(t, j);
                ASSERT_EQ(v.unpermute(b, jj), (std::pair<std::uint8_t, long>{t, j}));
            }
        }
    }
    ASSERT_TRUE(VdhProtocol(5).matrix().is_unitary(1e-15));
}

TEST(vdh, catalyst_is_normalized) {
    for (long n : {1, 2, 10, 4096}) {
        VdhProtocol v(n);
        ASSERT_NEAR(v.catalyst().norm2().real(), 1.0, 1e-12);
        auto c = catalyst_amplitudes(n);
        ASSERT_NEAR(v.amplitude(n), c[static_cast<std::size_t>(n)], 1e-15);
    }
    ASSERT_THROW(VdhProtocol(0), UsageError);
}

TEST(vdh, fidelity_small_n) {
    ASSERT_NEAR(vdh_fidelity(1), 1 / std::sqrt(2.0), 1e-12);
    ASSERT_NEAR(vdh_fidelity(2), 0.804737, 1e-6);
    ASSERT_NEAR(vdh_fidelity(2), closed_form_fidelity(2), 1e-12);
    ASSERT_NEAR(vdh_fidelity(2), dense_fidelity(2), 1e-12);
}

TEST(vdh, fidelity_matches_references) {
    for (long n : {1, 3, 5, 16, 33, 64}) {
        ASSERT_NEAR(vdh_fidelity(n), closed_form_fidelity(n), 1e-12) << n;
        ASSERT_NEAR(vdh_fidelity(n), dense_fidelity(n), 1e-12) << n;
        VdhProtocol v(n);
        ASSERT_NEAR(std::abs(v.dense_target().inner(v.dense_output())), dense_fidelity(n), 1e-12) << n;
    }
}

TEST(vdh, fidelity_increases_towards_one) {
    double prev = 0;
    for (long n = 1; n <= 4096; n *= 2) {
        double f = vdh_fidelity(n);
        ASSERT_GE(f, prev) << n;
        ASSERT_LT(f, 1.0) << n;
        prev = f;
    }
    ASSERT_GT(prev, 0.9);
}

TEST(vdh, sparse_and_dense_outputs_agree) {
    const long n = 6;
    VdhProtocol v(n);
    auto sparse = run_protocol(vdh_as_protocol(n), 0, 0);
    auto dense = v.dense_output();
    double total = 0;
    for (const auto &[k, amp] : sparse) {
        std::vector<std::size_t> idx{k.regs[0], static_cast<std::size_t>(k.res.a - 1),
                                     static_cast<std::size_t>(k.res.b - 1), k.regs[1]};
        ASSERT_NEAR(std::abs(dense.at(idx) - amp), 0, 1e-15);
        total += std::norm(amp);
    }
    ASSERT_NEAR(total, dense.norm2(), 1e-12);
}

TEST(vdh, schmidt_top_coefficient_is_untouched) {
    // The top Schmidt coefficient across Alice | Bob is fixed by local unitaries,
    // while the target needs it smaller by a factor sqrt2.
    VdhProtocol v(8);
    const Cut cut{{0, 1}};
    auto in = schmidt_decompose(v.dense_input(), cut);
    auto out = schmidt_decompose(v.dense_output(), cut);
    auto target = schmidt_decompose(v.dense_target(), cut);
    ASSERT_NEAR(in.coefficients[0], out.coefficients[0], 1e-12);
    ASSERT_NEAR(in.coefficients[0] / target.coefficients[0], std::sqrt(2.0), 1e-12);
}

TEST(vdh, state_functional_deviations) {
    auto small = vdh_sweep_row(256);
    auto large = vdh_sweep_row(4096);
    ASSERT_EQ(small.deviations.size(), 4u);
    ASSERT_LT(large.deviations[0], small.deviations[0]);
    ASSERT_LT(large.deviations[3], small.deviations[3]);
    // P keeps both register bits equal on the catalyst support, so the
    // off-diagonal values vanish identically.
    for (long n : {1, 2, 256, 4096}) {
        auto row = vdh_sweep_row(n);
        ASSERT_EQ(row.deviations[1], 0.0) << n;
        ASSERT_EQ(row.deviations[2], 0.0) << n;
    }
}

TEST(vdh, sweep_csv) {
    auto rows = vdh_sweep(1, 8);
    ASSERT_EQ(rows.size(), 4u);
    ASSERT_EQ(rows[3].n, 8);
    auto csv = vdh_sweep_csv(rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line, "n,fidelity,s00_dev,s10_dev,s01_dev,s11_dev");
    std::getline(in, line);
    ASSERT_EQ(line.substr(0, 21), "1,0.70710678118654757");
    int count = 1;
    while (std::getline(in, line)) {
        ++count;
    }
    ASSERT_EQ(count, 4);
    ASSERT_THROW(vdh_sweep(0, 4), UsageError);
    ASSERT_THROW(vdh_sweep(8, 4), UsageError);
}
