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

#include "embezzle/shift_protocol.hpp"

#include <algorithm>
#include <cstdlib>

namespace embezzle {

namespace {

using Key = CompositeLabel;

Key with_res(const Key &k, long r, Dyadic x, Dyadic y) { return Key{k.regs, ResourceLabel{r, std::move(x), std::move(y)}}; }

// Basis change on the pair (x_p, y_p); every other digit is untouched.
void basis_change_at(long p, const Key &k, const ExactScalar &c, SparseState &out) {
    const auto &[r, x, y] = k.res;
    ExactScalar h = c * ExactScalar::inv_sqrt2();
    int xp = x.bit(p);
    int yp = y.bit(p);
    out.accumulate(with_res(k, r, x.with_bit(p, 0), y), h);
    out.accumulate(with_res(k, r, x.with_bit(p, 1), y.with_bit(p, 1 - yp)), xp ? -h : h);
}

// Inverse of basis_change_at:
//   |0, b> -> 1/sqrt2 (|0, b> + |1, b>),  |1, b> -> 1/sqrt2 (|0, ~b> - |1, ~b>).
void basis_change_adjoint_at(long p, const Key &k, const ExactScalar &c, SparseState &out) {
    const auto &[r, x, y] = k.res;
    ExactScalar h = c * ExactScalar::inv_sqrt2();
    int xp = x.bit(p);
    Dyadic y_out = xp ? y.with_bit(p, 1 - y.bit(p)) : y;
    out.accumulate(with_res(k, r, x.with_bit(p, 0), y_out), h);
    out.accumulate(with_res(k, r, x.with_bit(p, 1), y_out), xp ? -h : h);
}

// Exchanges register `reg` with digit p of x (or of y).
Key swap_digit(const Key &k, std::size_t reg, long p, bool with_x) {
    Key out = k;
    int reg_value = out.regs.at(reg);
    if (reg_value > 1) {
        throw UsageError("swap register must hold a qubit value");
    }
    Dyadic &digits = with_x ? out.res.x : out.res.y;
    out.regs[reg] = static_cast<std::uint8_t>(digits.bit(p));
    digits = digits.with_bit(p, reg_value);
    return out;
}

ExactKernel self_adjoint(std::string name, ExactKernel::Action action) { return {std::move(name), action, action}; }

// L^n on a single label, with L^n == (L*)^|n| for negative n.
void shift_power(long n, const Key &k, const ExactScalar &c, SparseState &out) {
    static const ExactKernel shift = left_shift();
    SparseState s(k.regs.size(), out.cap());
    s.accumulate(k, c);
    for (long i = 0; i < std::labs(n); ++i) {
        s = n > 0 ? shift.apply(s) : shift.apply_adjoint(s);
    }
    out += s;
}

// Swap of register `reg` with the x digit of the literal pair at position p.
// Pairs at p >= 0 are in the computational basis and the swap is a plain
// digit exchange. Pairs at p < 0 are in the entangled basis: rotate to the
// computational basis, exchange, rotate back.
void swap_at(std::size_t reg, long p, const Key &k, const ExactScalar &c, SparseState &out) {
    if (p >= 0) {
        out.accumulate(swap_digit(k, reg, p, true), c);
        return;
    }
    SparseState rotated(k.regs.size(), out.cap());
    basis_change_at(p, k, c, rotated);
    for (const auto &[k2, v2] : rotated) {
        basis_change_adjoint_at(p, swap_digit(k2, reg, p, true), v2, out);
    }
}

}  // namespace

CompositeLabel label(std::vector<std::uint8_t> regs, long r, const Dyadic &x, const Dyadic &y) {
    return CompositeLabel{std::move(regs), ResourceLabel{r, x, y}};
}

ExactKernel digit_shift() {
    return {"L1",
            [](const Key &k, const ExactScalar &c, SparseState &out) {
                out.accumulate(with_res(k, k.res.r, k.res.x.doubled(), k.res.y.doubled()), c);
            },
            [](const Key &k, const ExactScalar &c, SparseState &out) {
                out.accumulate(with_res(k, k.res.r, k.res.x.halved(), k.res.y.halved()), c);
            }};
}

ExactKernel pair_basis_change(long position) {
    return {position == 0 ? "L2" : "L2@" + std::to_string(position),
            [position](const Key &k, const ExactScalar &c, SparseState &out) { basis_change_at(position, k, c, out); },
            [position](const Key &k, const ExactScalar &c, SparseState &out) {
                basis_change_adjoint_at(position, k, c, out);
            }};
}

ExactKernel left_shift() {
    auto l = compose(pair_basis_change(0), digit_shift());
    l.name = "L";
    return l;
}

ExactKernel alice_shift() {
    return {"LA",
            [](const Key &k, const ExactScalar &c, SparseState &out) {
                out.accumulate(with_res(k, k.res.r + 1, k.res.x, k.res.y), c);
            },
            [](const Key &k, const ExactScalar &c, SparseState &out) {
                out.accumulate(with_res(k, k.res.r - 1, k.res.x, k.res.y), c);
            }};
}

ExactKernel bob_shift() {
    auto l = compose(alice_shift().adjoint(), left_shift());
    l.name = "LB";
    return l;
}

ExactKernel controlled_shift() {
    return {"C", [](const Key &k, const ExactScalar &c, SparseState &out) { shift_power(k.res.r, k, c, out); },
            [](const Key &k, const ExactScalar &c, SparseState &out) { shift_power(-k.res.r, k, c, out); }};
}

ExactKernel bob_swap(std::size_t reg) {
    return self_adjoint("SB", [reg](const Key &k, const ExactScalar &c, SparseState &out) {
        out.accumulate(swap_digit(k, reg, 0, false), c);
    });
}

ExactKernel naive_alice_swap(std::size_t reg) {
    return self_adjoint("SA~", [reg](const Key &k, const ExactScalar &c, SparseState &out) {
        out.accumulate(swap_digit(k, reg, 0, true), c);
    });
}

ExactKernel alice_swap(std::size_t reg) {
    // Alice's logical qubit 0 lives in the literal pair at position -r.
    return self_adjoint("SA", [reg](const Key &k, const ExactScalar &c, SparseState &out) {
        swap_at(reg, -k.res.r, k, c, out);
    });
}

ExactKernel alice_swap_by_conjugation(std::size_t reg) {
    auto c = controlled_shift();
    auto s = compose_all({c.adjoint(), naive_alice_swap(reg), c});
    s.name = "C*.SA~.C";
    return s;
}

ExactKernel alice_swap_reversed_conjugation(std::size_t reg) {
    // C . naive swap . C* reaches the pair at position +r instead.
    return self_adjoint("C.SA~.C*", [reg](const Key &k, const ExactScalar &c, SparseState &out) {
        swap_at(reg, k.res.r, k, c, out);
    });
}

ExactKernel alice_swap_reversed_by_conjugation(std::size_t reg) {
    auto c = controlled_shift();
    auto s = compose_all({c, naive_alice_swap(reg), c.adjoint()});
    s.name = "C.SA~.C*";
    return s;
}

ExactKernel alice_unitary(std::size_t reg) {
    auto u = compose(alice_swap(reg), alice_shift());
    u.name = "UA";
    return u;
}

ExactKernel bob_unitary(std::size_t reg) {
    auto u = compose(bob_swap(reg), bob_shift());
    u.name = "UB";
    return u;
}

SparseState shift_catalyst() { return SparseState::basis(resource_label(0, Dyadic(), Dyadic())); }

ExactProtocol shift_protocol(ShiftVariant variant) {
    constexpr std::size_t a = ExactProtocol::alice_reg;
    constexpr std::size_t b = ExactProtocol::bob_reg;
    switch (variant) {
        case ShiftVariant::kStandard:
            return {"standard", alice_unitary(a), bob_unitary(b), shift_catalyst()};
        case ShiftVariant::kIdentity:
            return {"identity", identity_kernel<Key, ExactScalar>(), identity_kernel<Key, ExactScalar>(),
                    shift_catalyst()};
        case ShiftVariant::kNaiveAliceSwap:
            return {"naive-alice-swap", compose(naive_alice_swap(a), alice_shift()), bob_unitary(b),
                    shift_catalyst()};
        case ShiftVariant::kReversedConjugation:
            return {"reversed-conjugation", compose(alice_swap_reversed_conjugation(a), alice_shift()),
                    bob_unitary(b), shift_catalyst()};
        case ShiftVariant::kCorruptedShift: {
            auto broken_bob = compose(bob_swap(b), compose(alice_shift().adjoint(), digit_shift()));
            return {"corrupted-shift", alice_unitary(a), broken_bob, shift_catalyst()};
        }
    }
    throw UsageError("unknown protocol variant");
}

Dyadic random_dyadic(std::mt19937_64 &rng, int int_bits, int frac_bits) {
    // Draw the digits one 32-bit chunk at a time so any width works.
    mpz_class m = 0;
    int remaining = int_bits + frac_bits;
    while (remaining > 0) {
        int take = std::min(remaining, 32);
        std::uniform_int_distribution<unsigned long> chunk(0, (1UL << take) - 1);
        m <<= static_cast<mp_bitcnt_t>(take);
        m += chunk(rng);
        remaining -= take;
    }
    return Dyadic(m, frac_bits);
}

ResourceLabel random_resource_label(std::mt19937_64 &rng, const LabelBounds &bounds) {
    std::uniform_int_distribution<long> r_dist(-bounds.max_r, bounds.max_r);
    long r = r_dist(rng);
    Dyadic x = random_dyadic(rng, bounds.int_bits, bounds.frac_bits);
    Dyadic y = random_dyadic(rng, bounds.int_bits, bounds.frac_bits);
    return ResourceLabel{r, std::move(x), std::move(y)};
}

SparseState apply_L1(const SparseState &s) { return digit_shift().apply(s); }
SparseState apply_L1_adj(const SparseState &s) { return digit_shift().apply_adjoint(s); }
SparseState apply_L2(const SparseState &s) { return pair_basis_change(0).apply(s); }
SparseState apply_L2_adj(const SparseState &s) { return pair_basis_change(0).apply_adjoint(s); }
SparseState apply_L(const SparseState &s) { return left_shift().apply(s); }
SparseState apply_L_adj(const SparseState &s) { return left_shift().apply_adjoint(s); }
SparseState apply_LA(const SparseState &s) { return alice_shift().apply(s); }
SparseState apply_LA_adj(const SparseState &s) { return alice_shift().apply_adjoint(s); }
SparseState apply_LB(const SparseState &s) { return bob_shift().apply(s); }
SparseState apply_LB_adj(const SparseState &s) { return bob_shift().apply_adjoint(s); }
SparseState apply_C(const SparseState &s) { return controlled_shift().apply(s); }
SparseState apply_C_adj(const SparseState &s) { return controlled_shift().apply_adjoint(s); }

SparseState apply_SB(const SparseState &s) {
    if (s.arity() == 0) {
        throw UsageError("Bob's swap needs a register");
    }
    return bob_swap(s.arity() - 1).apply(s);
}

SparseState apply_SA_naive(const SparseState &s, std::size_t reg) { return naive_alice_swap(reg).apply(s); }
SparseState apply_SA(const SparseState &s, std::size_t reg) { return alice_swap(reg).apply(s); }
SparseState apply_UA(const SparseState &s, std::size_t reg) { return alice_unitary(reg).apply(s); }

SparseState apply_UB(const SparseState &s) {
    if (s.arity() == 0) {
        throw UsageError("Bob's unitary needs a register");
    }
    return bob_unitary(s.arity() - 1).apply(s);
}

}  // namespace embezzle
