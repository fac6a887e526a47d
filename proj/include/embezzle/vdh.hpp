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

// The finite-dimensional approximate embezzlement family: catalyst
// mu_n = sum_j |j>|j> / sqrt(H_n j) on C^n (x) C^n and a fixed permutation
// P of C^2 (x) C^n applied by each party.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "embezzle/finite_dim.hpp"
#include "embezzle/kernel.hpp"
#include "embezzle/protocol.hpp"

namespace embezzle {

/// Catalyst basis label |a>|b>, 1-based: a is Alice's half, b is Bob's.
struct CatalystPair {
    long a = 1;
    long b = 1;

    auto operator<=>(const CatalystPair &) const = default;
    bool operator==(const CatalystPair &) const = default;
};

std::ostream &operator<<(std::ostream &out, const CatalystPair &label);

using PairKey = Labeled<CatalystPair>;
using PairState = SparseVector<PairKey, FloatScalar>;
using PairKernel = Kernel<PairKey, FloatScalar>;
using PairProtocol = Protocol<CatalystPair, FloatScalar>;

class VdhProtocol {
   public:
    explicit VdhProtocol(long n);

    long n() const { return n_; }
    /// H_n = sum_{j <= n} 1/j.
    double harmonic() const { return harmonic_; }
    /// Catalyst amplitude on |j>|j>, j = 1..n.
    double amplitude(long j) const { return amplitudes_.at(static_cast<std::size_t>(j - 1)); }

    /// P on a label (t, j) of C^2 (x) C^n. Domain slot k is (0, k) for
    /// k <= n and (1, k - n) otherwise; slot k goes to
    /// ((k - 1) mod 2, ceil(k / 2)).
    std::pair<std::uint8_t, long> permute(std::uint8_t t, long j) const;
    std::pair<std::uint8_t, long> unpermute(std::uint8_t b, long j) const;
    /// Checks that P hits every label exactly once.
    bool is_bijection() const;
    /// P as a 2n x 2n matrix, row/column index t * n + (j - 1).
    Matrix matrix() const;

    /// Register-free catalyst over CatalystPair labels.
    PairState catalyst() const;
    /// P acting on register `reg` and one half of the catalyst.
    PairKernel party_unitary(std::size_t reg, bool alice_half) const;

    /// Dense |0>_A mu_n |0>_B over registers [A, a, b, B].
    DenseState dense_input() const;
    /// Dense Phi+ (x) mu_n over the same registers.
    DenseState dense_target() const;
    /// Dense (P (x) P) applied to dense_input().
    DenseState dense_output() const;

   private:
    long n_;
    double harmonic_;
    std::vector<double> amplitudes_;
};

/// |<Phi+ (x) mu_n, (P (x) P)(|00> (x) mu_n)>|.
double vdh_fidelity(long n);

/// Packages both parties' P as a protocol on the shared catalyst labels.
PairProtocol vdh_as_protocol(long n);

struct VdhSweepRow {
    long n = 0;
    double fidelity = 0;
    /// |s_ij - target_ij| in the order s00, s10, s01, s11.
    std::vector<double> deviations;
};

VdhSweepRow vdh_sweep_row(long n);
/// Rows for n = n_min, 2 n_min, ... up to n_max.
std::vector<VdhSweepRow> vdh_sweep(long n_min, long n_max);
/// Header plus one line per row: n,fidelity,s00_dev,s10_dev,s01_dev,s11_dev.
std::string vdh_sweep_csv(const std::vector<VdhSweepRow> &rows);

}  // namespace embezzle
