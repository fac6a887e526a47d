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

// Protocol-level operations shared by every construction: running the
// protocol, extracting the operator blocks U_ij of a party's unitary,
// evaluating the state functional, and the randomized commutation and
// unitarity checks. Everything is generic over the resource label and the
// scalar type, so exact, d-adic and finite protocols go through the same code.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embezzle/kernel.hpp"

namespace embezzle {

/// Alice and Bob each hold one local register of dimension `local_dim` and
/// share the resource. Both unitaries are written against the two-register
/// layout [A, B]; each must leave the other party's register alone.
template <class Res, class Scalar>
struct Protocol {
    using Key = Labeled<Res>;
    using K = Kernel<Key, Scalar>;
    using State = SparseVector<Key, Scalar>;

    std::string name;
    K alice;
    K bob;
    /// Register-free catalyst state.
    State catalyst;
    std::size_t local_dim = 2;
    static constexpr std::size_t alice_reg = 0;
    static constexpr std::size_t bob_reg = 1;
};

enum class Party { kAlice, kBob };

/// (U_A (x) I)(I (x) U_B) |a0> (x) psi (x) |b0>.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> run_protocol(const Protocol<Res, Scalar> &p, std::uint8_t a0, std::uint8_t b0) {
    auto input = with_registers<Res, Scalar>({a0, b0}, p.catalyst);
    return p.alice.apply(p.bob.apply(input));
}

/// sum_ij alpha_ij |i> (x) psi (x) |j>, alpha row-major (i * d + j).
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> embezzlement_target(const Protocol<Res, Scalar> &p,
                                                       const std::vector<Scalar> &alpha) {
    const auto d = p.local_dim;
    if (alpha.size() != d * d) {
        throw UsageError("target needs local_dim^2 coefficients");
    }
    SparseVector<Labeled<Res>, Scalar> out(2);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            auto branch = with_registers<Res, Scalar>(
                {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)}, p.catalyst);
            out += alpha[i * d + j] * branch;
        }
    }
    return out;
}

/// Bell target 1/sqrt2 (|0> psi |0> + |1> psi |1>) for qubit protocols.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> bell_target(const Protocol<Res, Scalar> &p) {
    using T = ScalarTraits<Scalar>;
    return embezzlement_target(p, std::vector<Scalar>{T::inv_sqrt2(), T::zero(), T::zero(), T::inv_sqrt2()});
}

/// The block U_ij of a party's unitary: U(|j> (x) h) = sum_i |i> (x) U_ij h.
/// Returned as a kernel on register-free states; its adjoint is (U*)_ji.
template <class Res, class Scalar>
Kernel<Labeled<Res>, Scalar> extract_block(const Protocol<Res, Scalar> &p, Party party, std::size_t i,
                                           std::size_t j) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    const auto &unitary = party == Party::kAlice ? p.alice : p.bob;
    const std::size_t reg = party == Party::kAlice ? p.alice_reg : p.bob_reg;
    const std::size_t other = party == Party::kAlice ? p.bob_reg : p.alice_reg;

    auto block_of = [reg, other](typename Kernel<Key, Scalar>::Action action, std::size_t in, std::size_t out_value) {
        return [=](const Key &k, const Scalar &c, State &out) {
            if (!k.regs.empty()) {
                throw UsageError("operator blocks act on register-free states");
            }
            std::vector<std::uint8_t> regs(2, 0);
            regs[reg] = static_cast<std::uint8_t>(in);
            State image(2, out.cap());
            action(Key{regs, k.res}, c, image);
            for (const auto &[k2, v2] : image) {
                if (k2.regs[other] != 0) {
                    throw DomainError("party unitary touched the other party's register");
                }
                if (k2.regs[reg] == out_value) {
                    out.accumulate(Key{{}, k2.res}, v2);
                }
            }
        };
    };
    std::string who = party == Party::kAlice ? "U" : "V";
    return {who + std::to_string(i) + std::to_string(j), block_of(unitary.forward, j, i),
            block_of(unitary.backward, i, j)};
}

/// Values s(u_i0 (x) u_j0) = <U_i0 V_j0 psi, psi>, stored row-major by (i, j).
template <class Scalar>
struct FunctionalValues {
    std::size_t local_dim = 2;
    std::vector<Scalar> values;

    const Scalar &at(std::size_t i, std::size_t j) const { return values.at(i * local_dim + j); }
    /// (s00, s10, s01, s11) for qubit protocols.
    std::vector<Scalar> bell_order() const { return {at(0, 0), at(1, 0), at(0, 1), at(1, 1)}; }
};

template <class Res, class Scalar>
FunctionalValues<Scalar> state_functional(const Protocol<Res, Scalar> &p) {
    const auto d = p.local_dim;
    FunctionalValues<Scalar> out{d, std::vector<Scalar>(d * d, ScalarTraits<Scalar>::zero())};
    for (std::size_t j = 0; j < d; ++j) {
        auto bob_image = extract_block(p, Party::kBob, j, 0).apply(p.catalyst);
        for (std::size_t i = 0; i < d; ++i) {
            auto both = extract_block(p, Party::kAlice, i, 0).apply(bob_image);
            // <U V psi, psi> is conjugate-linear in psi, matching inner(psi, U V psi).
            out.values[i * d + j] = p.catalyst.inner(both);
        }
    }
    return out;
}

struct CheckReport {
    bool passed = true;
    std::size_t checked = 0;
    /// Which relation failed, empty on success.
    std::string relation;
    /// The offending label or state, empty on success.
    std::string witness;

    void fail(std::string rel, std::string wit) {
        if (passed) {
            passed = false;
            relation = std::move(rel);
            witness = std::move(wit);
        }
    }
};

template <class T>
std::string describe(const T &value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

/// Draws register-free resource labels for randomized checks.
template <class Res>
using ResourceSampler = std::function<Res(std::mt19937_64 &)>;

/// U_A U_B == U_B U_A on random composite labels, then block-level
/// *-commutation U_ij V_kl == V_kl U_ij and U_ij* V_kl == V_kl U_ij* on
/// random resource labels. Stops at the first counterexample.
template <class Res, class Scalar>
CheckReport commutation_check(const Protocol<Res, Scalar> &p, std::uint64_t seed, std::size_t samples,
                              const ResourceSampler<Res> &sampler, double eps = kDefaultEpsilon) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    CheckReport report;
    std::mt19937_64 rng(seed);
    const auto d = p.local_dim;
    std::uniform_int_distribution<int> reg_dist(0, static_cast<int>(d) - 1);

    for (std::size_t n = 0; n < samples && report.passed; ++n) {
        Key k{{static_cast<std::uint8_t>(reg_dist(rng)), static_cast<std::uint8_t>(reg_dist(rng))}, sampler(rng)};
        auto ab = p.alice.apply(p.bob.apply(k));
        auto ba = p.bob.apply(p.alice.apply(k));
        ++report.checked;
        if (!ab.equals(ba, eps)) {
            report.fail("U_A U_B == U_B U_A", describe(k));
        }
    }

    std::vector<Kernel<Key, Scalar>> u_blocks, v_blocks;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            u_blocks.push_back(extract_block(p, Party::kAlice, i, j));
            v_blocks.push_back(extract_block(p, Party::kBob, i, j));
        }
    }
    for (std::size_t n = 0; n < samples && report.passed; ++n) {
        State h = State::basis(Key{{}, sampler(rng)});
        ++report.checked;
        for (const auto &u : u_blocks) {
            for (const auto &v : v_blocks) {
                if (!u.apply(v.apply(h)).equals(v.apply(u.apply(h)), eps)) {
                    report.fail(u.name + " " + v.name + " == " + v.name + " " + u.name, describe(h.begin()->first));
                    return report;
                }
                if (!u.apply_adjoint(v.apply(h)).equals(v.apply(u.apply_adjoint(h)), eps)) {
                    report.fail(u.name + "* " + v.name + " == " + v.name + " " + u.name + "*",
                                describe(h.begin()->first));
                    return report;
                }
            }
        }
    }
    return report;
}

/// Exact (or eps-close) unitarity of a kernel on the given states:
/// K* K s == s, K K* s == s, <Ks, Ks> == <s, s>, and the adjoint pairing
/// <K u, v> == <u, K* v> for every basis label u of s and v in the support
/// of K u.
template <class Key, class Scalar>
CheckReport unitarity_check(const Kernel<Key, Scalar> &k, const std::vector<SparseVector<Key, Scalar>> &states,
                            double eps = kDefaultEpsilon) {
    using T = ScalarTraits<Scalar>;
    CheckReport report;
    for (const auto &s : states) {
        ++report.checked;
        auto ks = k.apply(s);
        if (!k.apply_adjoint(ks).equals(s, eps)) {
            report.fail(k.name + "* " + k.name + " == I", s.str());
            return report;
        }
        if (!k.apply(k.apply_adjoint(s)).equals(s, eps)) {
            report.fail(k.name + " " + k.name + "* == I", s.str());
            return report;
        }
        if (!T::close(ks.norm2(), s.norm2(), eps)) {
            report.fail("norm preserved by " + k.name, s.str());
            return report;
        }
        for (const auto &[u, amp] : s) {
            (void)amp;
            auto ku = k.apply(u);
            for (const auto &[v, amp_v] : ku) {
                (void)amp_v;
                // Matrix entries: (K)_vu == conj((K*)_uv).
                auto entry = ku.amplitude(v);
                auto adjoint_entry = k.apply_adjoint(v).amplitude(u);
                if (!T::close(entry, T::conj(adjoint_entry), eps)) {
                    report.fail("adjoint pairing of " + k.name, describe(u) + " / " + describe(v));
                    return report;
                }
            }
        }
    }
    return report;
}

/// The block form of unitarity on random resource labels:
/// sum_i U_ij* U_il == delta_jl I and sum_j U_ij U_kj* == delta_ik I.
template <class Res, class Scalar>
CheckReport block_unitarity_check(const Protocol<Res, Scalar> &p, Party party, std::uint64_t seed,
                                  std::size_t samples, const ResourceSampler<Res> &sampler,
                                  double eps = kDefaultEpsilon) {
    using Key = Labeled<Res>;
    using State = SparseVector<Key, Scalar>;
    CheckReport report;
    std::mt19937_64 rng(seed);
    const auto d = p.local_dim;
    std::vector<Kernel<Key, Scalar>> blocks;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            blocks.push_back(extract_block(p, party, i, j));
        }
    }
    auto block = [&](std::size_t i, std::size_t j) -> const Kernel<Key, Scalar> & { return blocks[i * d + j]; };
    const std::string who = party == Party::kAlice ? "U" : "V";

    for (std::size_t n = 0; n < samples; ++n) {
        State h = State::basis(Key{{}, sampler(rng)});
        ++report.checked;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                State star_first(0), star_last(0);
                for (std::size_t m = 0; m < d; ++m) {
                    star_first += block(m, a).apply_adjoint(block(m, b).apply(h));
                    star_last += block(a, m).apply(block(b, m).apply_adjoint(h));
                }
                State expected = a == b ? h : State(0);
                if (!star_first.equals(expected, eps)) {
                    report.fail("sum_m " + who + "_m" + std::to_string(a) + "* " + who + "_m" + std::to_string(b) +
                                    (a == b ? " == I" : " == 0"),
                                describe(h.begin()->first));
                    return report;
                }
                if (!star_last.equals(expected, eps)) {
                    report.fail("sum_m " + who + "_" + std::to_string(a) + "m " + who + "_" + std::to_string(b) +
                                    "m*" + (a == b ? " == I" : " == 0"),
                                describe(h.begin()->first));
                    return report;
                }
            }
        }
    }
    return report;
}

/// Evidence that U_00* restricted to span{U_00*^n psi} is a non-unitary
/// isometry.
template <class Scalar>
struct IsometryWitness {
    std::size_t depth = 0;
    /// gram[m][n] = <e_m, e_n> with e_n = U_00*^n psi, n = 0..depth.
    std::vector<std::vector<Scalar>> gram;
    bool gram_is_identity = false;
    /// U_00^n U_00*^n psi == psi for every n <= depth.
    bool left_inverse = false;
    /// (V_00*)^n psi == (sqrt2 U_00)^n psi.
    bool bob_adjoint_relation = false;
    /// V_00^n psi == (U_00* / sqrt2)^n psi.
    bool bob_relation = false;
    /// ||U_00 psi||^2; below 1 means U_00 is not isometric on the orbit, so
    /// U_00* cannot be onto it.
    Scalar u00_psi_norm2{};
    /// psi is orthogonal to U_00* e_n for n < depth: psi lies outside the range.
    bool psi_outside_range = false;

    bool passed() const {
        return gram_is_identity && left_inverse && bob_adjoint_relation && bob_relation && psi_outside_range;
    }
};

template <class Res, class Scalar>
IsometryWitness<Scalar> isometry_witness(const Protocol<Res, Scalar> &p, std::size_t depth,
                                         double eps = kDefaultEpsilon) {
    using T = ScalarTraits<Scalar>;
    using State = SparseVector<Labeled<Res>, Scalar>;
    if (depth < 1) {
        throw UsageError("isometry witness needs depth >= 1");
    }
    auto u00 = extract_block(p, Party::kAlice, 0, 0);
    auto v00 = extract_block(p, Party::kBob, 0, 0);
    const State &psi = p.catalyst;

    IsometryWitness<Scalar> w;
    w.depth = depth;
    std::vector<State> orbit{psi};
    for (std::size_t n = 1; n <= depth; ++n) {
        orbit.push_back(u00.apply_adjoint(orbit.back()));
    }
    w.gram.assign(depth + 1, std::vector<Scalar>(depth + 1, T::zero()));
    w.gram_is_identity = true;
    for (std::size_t m = 0; m <= depth; ++m) {
        for (std::size_t n = 0; n <= depth; ++n) {
            w.gram[m][n] = orbit[m].inner(orbit[n]);
            Scalar expected = m == n ? T::one() : T::zero();
            if (!T::close(w.gram[m][n], expected, eps)) {
                w.gram_is_identity = false;
            }
        }
    }

    w.left_inverse = true;
    for (std::size_t n = 1; n <= depth; ++n) {
        State back = orbit[n];
        for (std::size_t k = 0; k < n; ++k) {
            back = u00.apply(back);
        }
        w.left_inverse = w.left_inverse && back.equals(psi, eps);
    }

    w.bob_adjoint_relation = true;
    w.bob_relation = true;
    State v_adj = psi, scaled_u = psi, v_fwd = psi, scaled_u_adj = psi;
    for (std::size_t n = 1; n <= depth; ++n) {
        v_adj = v00.apply_adjoint(v_adj);
        scaled_u = T::sqrt2() * u00.apply(scaled_u);
        v_fwd = v00.apply(v_fwd);
        scaled_u_adj = T::inv_sqrt2() * u00.apply_adjoint(scaled_u_adj);
        w.bob_adjoint_relation = w.bob_adjoint_relation && v_adj.equals(scaled_u, eps);
        w.bob_relation = w.bob_relation && v_fwd.equals(scaled_u_adj, eps);
    }

    w.u00_psi_norm2 = u00.apply(psi).norm2();
    w.psi_outside_range = true;
    for (std::size_t n = 0; n < depth; ++n) {
        auto image = u00.apply_adjoint(orbit[n]);
        w.psi_outside_range = w.psi_outside_range && T::close(psi.inner(image), T::zero(), eps);
    }
    return w;
}

/// Compression of a party's unitary onto a finite set of labels: reports the
/// largest norm loss 1 - ||P U k||^2 over basis labels k in the set. A
/// finite-dimensional unitary protocol would show zero loss everywhere.
template <class Res, class Scalar>
struct TruncationReport {
    Scalar max_leak{};
    std::string witness;
    std::size_t labels = 0;
};

template <class Res, class Scalar>
TruncationReport<Res, Scalar> truncation_check(const Protocol<Res, Scalar> &p, Party party,
                                               const std::vector<Res> &label_set) {
    using T = ScalarTraits<Scalar>;
    using Key = Labeled<Res>;
    TruncationReport<Res, Scalar> report;
    report.max_leak = T::zero();
    report.labels = label_set.size();
    const auto &unitary = party == Party::kAlice ? p.alice : p.bob;
    const std::size_t reg = party == Party::kAlice ? p.alice_reg : p.bob_reg;
    std::set<Res> members(label_set.begin(), label_set.end());
    for (const auto &r : label_set) {
        for (std::size_t v = 0; v < p.local_dim; ++v) {
            std::vector<std::uint8_t> regs(2, 0);
            regs[reg] = static_cast<std::uint8_t>(v);
            Key k{regs, r};
            auto image = unitary.apply(k).filtered([&](const Key &k2) { return members.contains(k2.res); });
            Scalar leak = T::one() - image.norm2();
            if (std::abs(T::to_float(leak)) > std::abs(T::to_float(report.max_leak))) {
                report.max_leak = leak;
                report.witness = describe(k);
            }
        }
    }
    return report;
}

}  // namespace embezzle
