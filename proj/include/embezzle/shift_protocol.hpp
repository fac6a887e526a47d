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

// The exact commuting-operator embezzlement construction on the resource
// space spanned by |r, x, y>, r an integer and x, y nonnegative dyadics.
//
// Digit positions j >= 0 of (x, y) hold computational-basis qubit pairs,
// positions j < 0 hold pairs in the basis 1/sqrt2 |0 y_j> + (-1)^x_j/sqrt2 |1 ~y_j>.
// Alice's logical qubit j + r sits in the same literal pair as Bob's logical
// qubit j.

#include <cstddef>
#include <random>

#include "embezzle/kernel.hpp"
#include "embezzle/protocol.hpp"

namespace embezzle {

using ExactKernel = Kernel<CompositeLabel, ExactScalar>;
using ExactProtocol = Protocol<ResourceLabel, ExactScalar>;

// Resource-only kernels. They act on the (r, x, y) part of a label and leave
// every register untouched.

/// |x, y> -> |2x, 2y>.
ExactKernel digit_shift();
/// Basis change on the pair at digit position `position`:
/// |x, y> -> 1/sqrt2 |x - x_p 2^p, y> + (-1)^x_p/sqrt2 |x with x_p=1, y with y_p flipped>.
ExactKernel pair_basis_change(long position = 0);
/// L = (basis change at 0) after (digit shift).
ExactKernel left_shift();
/// |r, x, y> -> |r + 1, x, y>.
ExactKernel alice_shift();
/// Alice's shift undone on top of a full left shift.
ExactKernel bob_shift();
/// |r, x, y> -> L^r |r, x, y>, with L^r == (L*)^|r| for negative r.
ExactKernel controlled_shift();

// Register/resource swaps. `reg` is the index of the swapped register.

/// |t> (x) |r, x, y> -> |y_0> (x) |r, x, y with y_0 := t>.
ExactKernel bob_swap(std::size_t reg);
/// |s> (x) |r, x, y> -> |x_0> (x) |r, x with x_0 := s, y>.
ExactKernel naive_alice_swap(std::size_t reg);
/// Swap with Alice's logical qubit 0, computed locally on the single literal
/// pair at position -r.
ExactKernel alice_swap(std::size_t reg);
/// C* . naive swap . C, composed literally; agrees with alice_swap.
ExactKernel alice_swap_by_conjugation(std::size_t reg);
/// C . naive swap . C*, computed locally on the pair at position r. Does not
/// commute with bob_shift once r != 0; kept so the failure can be exhibited.
ExactKernel alice_swap_reversed_conjugation(std::size_t reg);
/// The same operator composed literally.
ExactKernel alice_swap_reversed_by_conjugation(std::size_t reg);

/// U_A = S_A L_A acting on register `reg` and the resource.
ExactKernel alice_unitary(std::size_t reg);
/// U_B = S_B L_B acting on register `reg` and the resource.
ExactKernel bob_unitary(std::size_t reg);

/// Catalyst |0, 0.0, 0.0>.
SparseState shift_catalyst();

enum class ShiftVariant {
    kStandard,
    /// U_A = U_B = I.
    kIdentity,
    /// Alice uses the naive swap instead of the conjugated one.
    kNaiveAliceSwap,
    /// Alice conjugates the naive swap the other way round.
    kReversedConjugation,
    /// Test hook: the left shift drops its basis change.
    kCorruptedShift,
};

ExactProtocol shift_protocol(ShiftVariant variant = ShiftVariant::kStandard);

// Convenience wrappers over the kernels above. Register defaults follow the
// [A, B] layout: Alice's register first, Bob's last.
SparseState apply_L1(const SparseState &s);
SparseState apply_L1_adj(const SparseState &s);
SparseState apply_L2(const SparseState &s);
SparseState apply_L2_adj(const SparseState &s);
SparseState apply_L(const SparseState &s);
SparseState apply_L_adj(const SparseState &s);
SparseState apply_LA(const SparseState &s);
SparseState apply_LA_adj(const SparseState &s);
SparseState apply_LB(const SparseState &s);
SparseState apply_LB_adj(const SparseState &s);
SparseState apply_C(const SparseState &s);
SparseState apply_C_adj(const SparseState &s);
SparseState apply_SB(const SparseState &s);
SparseState apply_SA_naive(const SparseState &s, std::size_t reg = 0);
SparseState apply_SA(const SparseState &s, std::size_t reg = 0);
SparseState apply_UA(const SparseState &s, std::size_t reg = 0);
SparseState apply_UB(const SparseState &s);

/// Bounds for random resource labels: |r| <= max_r, and x, y drawn with up to
/// `int_bits` integer and `frac_bits` fractional binary digits.
struct LabelBounds {
    long max_r = 8;
    int int_bits = 8;
    int frac_bits = 8;
};

ResourceLabel random_resource_label(std::mt19937_64 &rng, const LabelBounds &bounds);
Dyadic random_dyadic(std::mt19937_64 &rng, int int_bits, int frac_bits);

/// Basis state builder: registers followed by |r, x, y>.
CompositeLabel label(std::vector<std::uint8_t> regs, long r, const Dyadic &x, const Dyadic &y);
inline CompositeLabel resource_label(long r, const Dyadic &x, const Dyadic &y) { return label({}, r, x, y); }

}  // namespace embezzle
