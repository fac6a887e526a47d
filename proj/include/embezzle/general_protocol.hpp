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

// The d-dimensional analogue of the shift construction, in float mode.
//
// Labels carry base-d digit strings x, y. The basis change at each digit
// pair is a unitary W on C^d (x) C^d whose first column is the target
// state alpha, so shifting a fresh pair of zero digits across the point
// prepares one copy of alpha.

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <vector>

#include "embezzle/finite_dim.hpp"
#include "embezzle/kernel.hpp"
#include "embezzle/protocol.hpp"

namespace embezzle {

/// Finitely many nonzero base-d digits indexed by integer position; digit j
/// has weight d^j. Zero digits are never stored.
class DigitString {
   public:
    DigitString() = default;
    explicit DigitString(std::map<long, std::uint8_t> digits);

    std::uint8_t digit(long position) const;
    DigitString with_digit(long position, std::uint8_t value) const;
    /// Multiplies by d: every digit moves one position up.
    DigitString shifted_up() const;
    DigitString shifted_down() const;
    const std::map<long, std::uint8_t> &digits() const { return digits_; }

    auto operator<=>(const DigitString &) const = default;
    bool operator==(const DigitString &) const = default;

   private:
    std::map<long, std::uint8_t> digits_;
};

std::ostream &operator<<(std::ostream &out, const DigitString &x);

struct AdicLabel {
    long r = 0;
    DigitString x;
    DigitString y;

    auto operator<=>(const AdicLabel &) const = default;
    bool operator==(const AdicLabel &) const = default;
};

std::ostream &operator<<(std::ostream &out, const AdicLabel &label);

using AdicKey = Labeled<AdicLabel>;
using AdicState = SparseVector<AdicKey, FloatScalar>;
using AdicKernel = Kernel<AdicKey, FloatScalar>;
using AdicProtocol = Protocol<AdicLabel, FloatScalar>;

/// Unitary on C^d (x) C^d with first column alpha, indexed i * d + j. The
/// remaining columns come from Gram-Schmidt on the standard basis.
Matrix unitary_completion(const std::vector<FloatScalar> &alpha, std::size_t d);

/// The d-adic kernels for a given pair basis change `w`.
struct AdicKernels {
    std::size_t d;
    Matrix w;

    AdicKernel digit_shift() const;
    AdicKernel pair_basis_change(long position) const;
    AdicKernel left_shift() const;
    AdicKernel alice_shift() const;
    AdicKernel bob_shift() const;
    AdicKernel controlled_shift() const;
    AdicKernel bob_swap(std::size_t reg) const;
    AdicKernel naive_alice_swap(std::size_t reg) const;
    AdicKernel alice_swap(std::size_t reg) const;
    AdicKernel alice_swap_by_conjugation(std::size_t reg) const;
    AdicKernel alice_unitary(std::size_t reg) const;
    AdicKernel bob_unitary(std::size_t reg) const;
};

/// Protocol embezzling sum_ij alpha_ij |i>|j> from the catalyst |0, 0, 0>.
/// alpha must have d^2 entries and unit norm.
AdicProtocol general_protocol(std::size_t d, const std::vector<FloatScalar> &alpha, double eps = kDefaultEpsilon);
AdicKernels general_kernels(std::size_t d, const std::vector<FloatScalar> &alpha, double eps = kDefaultEpsilon);

/// Random label with |r| <= max_r and digits at positions -frac..int-1.
AdicLabel random_adic_label(std::mt19937_64 &rng, std::size_t d, long max_r, int int_digits, int frac_digits);

}  // namespace embezzle
