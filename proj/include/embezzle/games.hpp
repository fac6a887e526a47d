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

// The coherent embezzlement game. The referee hands Alice registers A1 A2
// and Bob registers B2 B1 of
//
//   phi_c = 1/sqrt2 |00>|00> + (-1)^c (1/2 |10>|01> + 1/2 |11>|11>),
//
// each player applies a local unitary and measures its outer register (A1,
// B1). They win when a xor b == c. Register layout is [A1, A2, B2, B1].

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "embezzle/finite_dim.hpp"
#include "embezzle/kernel.hpp"
#include "embezzle/protocol.hpp"
#include "embezzle/shift_protocol.hpp"
#include "embezzle/vdh.hpp"

namespace embezzle {

inline constexpr std::size_t kA1 = 0;
inline constexpr std::size_t kA2 = 1;
inline constexpr std::size_t kB2 = 2;
inline constexpr std::size_t kB1 = 3;
inline constexpr std::size_t kGameRegisters = 4;

template <class Res, class Scalar>
struct Strategy {
    using Key = Labeled<Res>;
    using K = Kernel<Key, Scalar>;
    using State = SparseVector<Key, Scalar>;

    std::string name;
    /// Alice's local unitary on A1, A2 and the resource.
    K alice;
    /// Bob's local unitary on B2, B1 and the resource.
    K bob;
    /// Register-free shared state.
    State catalyst;
};

template <class Res, class Scalar>
Kernel<Labeled<Res>, Scalar> hadamard(std::size_t reg) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    auto act = [reg](const Key &k, const Scalar &c, State &out) {
        const Scalar h = c * ScalarTraits<Scalar>::inv_sqrt2();
        const bool one = k.regs.at(reg) == 1;
        Key k0 = k, k1 = k;
        k0.regs[reg] = 0;
        k1.regs[reg] = 1;
        out.accumulate(k0, h);
        out.accumulate(k1, one ? -h : h);
    };
    return {"H" + std::to_string(reg), act, act};
}

template <class Res, class Scalar>
Kernel<Labeled<Res>, Scalar> pauli_x(std::size_t reg) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    auto act = [reg](const Key &k, const Scalar &c, State &out) {
        Key k2 = k;
        k2.regs.at(reg) ^= 1;
        out.accumulate(k2, c);
    };
    return {"X" + std::to_string(reg), act, act};
}

template <class Res, class Scalar>
Kernel<Labeled<Res>, Scalar> pauli_z(std::size_t reg) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    auto act = [reg](const Key &k, const Scalar &c, State &out) { out.accumulate(k, k.regs.at(reg) ? -c : c); };
    return {"Z" + std::to_string(reg), act, act};
}

/// phi_c on [A1, A2, B2, B1] tensored with a register-free catalyst.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> build_phi(std::uint8_t c, const SparseVector<Labeled<Res>, Scalar> &catalyst) {
    using T = ScalarTraits<Scalar>;
    if (c > 1) {
        throw UsageError("game input must be 0 or 1");
    }
    const Scalar half = T::inv_sqrt2() * T::inv_sqrt2();
    const Scalar sign = c ? -T::one() : T::one();
    SparseVector<Labeled<Res>, Scalar> out(kGameRegisters);
    out += T::inv_sqrt2() * with_registers<Res, Scalar>({0, 0, 0, 0}, catalyst);
    out += (sign * half) * with_registers<Res, Scalar>({1, 0, 0, 1}, catalyst);
    out += (sign * half) * with_registers<Res, Scalar>({1, 1, 1, 1}, catalyst);
    return out;
}

/// phi_c alone, with the trivial catalyst |0, 0, 0>.
SparseState build_phi(std::uint8_t c);
/// phi_c as a dense state over four qubits.
DenseState build_phi_dense(std::uint8_t c);

template <class Scalar>
struct GameResult {
    /// P(a, b) indexed a * 2 + b.
    std::array<Scalar, 4> distribution{};
    Scalar win_probability{};
};

/// Applies both local unitaries to phi_c (x) catalyst and reads off the exact
/// distribution of the measured bits (A1, B1).
template <class Res, class Scalar>
GameResult<Scalar> play(const Strategy<Res, Scalar> &st, std::uint8_t c) {
    using T = ScalarTraits<Scalar>;
    const auto final_state = st.alice.apply(st.bob.apply(build_phi<Res, Scalar>(c, st.catalyst)));
    GameResult<Scalar> result;
    result.distribution.fill(T::zero());
    for (const auto &[k, v] : final_state) {
        result.distribution[k.regs[kA1] * 2 + k.regs[kB1]] += T::abs2(v);
    }
    result.win_probability = T::zero();
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            if ((a ^ b) == c) {
                result.win_probability += result.distribution[a * 2 + b];
            }
        }
    }
    return result;
}

/// Local unitaries W_A, W_B, then Z on A1 and B1, then W_A*, W_B*, then X on
/// A1 and B1, starting from |0000> (x) catalyst. For a perfect strategy the
/// result is |0> (Bell pair on A2 B2) |0> (x) catalyst.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> reduction_to_embezzlement(const Strategy<Res, Scalar> &st) {
    auto s = with_registers<Res, Scalar>({0, 0, 0, 0}, st.catalyst);
    s = st.alice.apply(st.bob.apply(s));
    s = pauli_z<Res, Scalar>(kB1).apply(pauli_z<Res, Scalar>(kA1).apply(s));
    s = st.bob.apply_adjoint(st.alice.apply_adjoint(s));
    return pauli_x<Res, Scalar>(kB1).apply(pauli_x<Res, Scalar>(kA1).apply(s));
}

/// |0> (1/sqrt2 |00> + 1/sqrt2 |11>) |0> (x) catalyst on the game layout.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> reduction_target(const SparseVector<Labeled<Res>, Scalar> &catalyst) {
    using T = ScalarTraits<Scalar>;
    SparseVector<Labeled<Res>, Scalar> out(kGameRegisters);
    out += T::inv_sqrt2() * with_registers<Res, Scalar>({0, 0, 0, 0}, catalyst);
    out += T::inv_sqrt2() * with_registers<Res, Scalar>({0, 1, 1, 0}, catalyst);
    return out;
}

/// Alice's and Bob's unitaries commute on random labels of the game layout.
template <class Res, class Scalar>
CheckReport strategy_commutation_check(const Strategy<Res, Scalar> &st, std::uint64_t seed, std::size_t samples,
                                       const ResourceSampler<Res> &sampler, double eps = kDefaultEpsilon) {
    CheckReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t n = 0; n < samples && report.passed; ++n) {
        Labeled<Res> k{{}, sampler(rng)};
        for (std::size_t r = 0; r < kGameRegisters; ++r) {
            k.regs.push_back(static_cast<std::uint8_t>(bit(rng)));
        }
        ++report.checked;
        if (!st.alice.apply(st.bob.apply(k)).equals(st.bob.apply(st.alice.apply(k)), eps)) {
            report.fail("W_A W_B == W_B W_A", describe(k));
        }
    }
    return report;
}

/// Controlled U_A* on (A1; A2, resource) and controlled U_B* on (B1; resource,
/// B2), each followed by a Hadamard on the control.
Strategy<ResourceLabel, ExactScalar> perfect_strategy();

/// The same circuit built from the finite permutation protocol of size n.
Strategy<CatalystPair, FloatScalar> vdh_strategy(long n);

}  // namespace embezzle
