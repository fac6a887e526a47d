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


#include "embezzle/verify.hpp"

namespace embezzle {

namespace {

Json check_json(const CheckReport &r) {
    Json j{{"passed", r.passed}, {"checked", r.checked}};
    if (!r.passed) {
        j["relation"] = r.relation;
        j["witness"] = r.witness;
    }
    return j;
}

template <class Scalar>
Protocol<ResourceLabel, Scalar> in_mode(const ExactProtocol &p);

template <>
Protocol<ResourceLabel, ExactScalar> in_mode<ExactScalar>(const ExactProtocol &p) {
    return p;
}

template <>
Protocol<ResourceLabel, FloatScalar> in_mode<FloatScalar>(const ExactProtocol &p) {
    return {p.name, to_float(p.alice), to_float(p.bob), to_float(p.catalyst)};
}

template <class Scalar>
Json scalar_json(const Scalar &x) {
    return to_json(x);
}

template <class Scalar>
VerifyOutcome run_verify(const VerifyConfig &cfg) {
    using T = ScalarTraits<Scalar>;
    using State = SparseVector<CompositeLabel, Scalar>;
    const auto exact = shift_protocol(cfg.variant);
    const auto p = in_mode<Scalar>(exact);
    const ResourceSampler<ResourceLabel> sampler = [b = cfg.bounds](std::mt19937_64 &rng) {
        return random_resource_label(rng, b);
    };

    VerifyOutcome out;
    Json &report = out.report;
    report["protocol"] = p.name;
    report["mode"] = T::mode;
    report["seed"] = cfg.seed;
    report["samples"] = cfg.samples;
    report["bounds"] = Json{{"max_r", cfg.bounds.max_r},
                            {"int_bits", cfg.bounds.int_bits},
                            {"frac_bits", cfg.bounds.frac_bits}};
    auto record = [&](const std::string &id, bool passed) {
        if (!passed) {
            out.failures.push_back(id);
        }
    };

    const auto comm = commutation_check(p, cfg.seed, cfg.samples, sampler);
    report["commutation"] = check_json(comm);
    record("commutation", comm.passed);

    Json blocks;
    bool blocks_ok = true;
    for (auto [party, label] : {std::pair{Party::kAlice, "alice"}, std::pair{Party::kBob, "bob"}}) {
        const auto r = block_unitarity_check(p, party, cfg.seed + 1, cfg.samples, sampler);
        blocks[label] = check_json(r);
        blocks_ok = blocks_ok && r.passed;
    }
    report["block_unitarity"] = blocks;
    record("block_unitarity", blocks_ok);

    Json kernels;
    bool kernels_ok = true;
    const auto exact_states = sample_states(cfg.seed + 2, std::max<std::size_t>(1, cfg.samples / 20),
                                            LabelBounds{std::min<long>(cfg.bounds.max_r, 4), cfg.bounds.int_bits,
                                                        cfg.bounds.frac_bits},
                                            2);
    std::vector<State> states;
    for (const auto &s : exact_states) {
        if constexpr (std::is_same_v<Scalar, ExactScalar>) {
            states.push_back(s);
        } else {
            states.push_back(to_float(s));
        }
    }
    std::vector<Kernel<CompositeLabel, Scalar>> ks{p.alice, p.bob};
    for (const auto &k : construction_kernels()) {
        if constexpr (std::is_same_v<Scalar, ExactScalar>) {
            ks.push_back(k);
        } else {
            ks.push_back(to_float(k));
        }
    }
    for (const auto &k : ks) {
        const auto r = unitarity_check(k, states);
        if (!kernels.contains(k.name)) {
            kernels[k.name] = check_json(r);
        }
        kernels_ok = kernels_ok && r.passed;
    }
    report["kernel_unitarity"] = kernels;
    record("kernel_unitarity", kernels_ok);

    const State output = run_protocol(p, 0, 0);
    const bool embezzles = output.equals(bell_target(p));
    report["embezzlement_exact"] = embezzles;
    record("embezzlement_exact", embezzles);

    const auto values = state_functional(p).bell_order();
    const std::vector<Scalar> target{T::inv_sqrt2(), T::zero(), T::zero(), T::inv_sqrt2()};
    bool functional_ok = true;
    Json fvals = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        fvals.push_back(scalar_json(values[i]));
        functional_ok = functional_ok && T::close(values[i], target[i], kDefaultEpsilon);
    }
    report["state_functional"] = Json{{"order", "s00,s10,s01,s11"}, {"values", fvals}, {"matches_target", functional_ok}};
    record("state_functional", functional_ok);

    const auto w = isometry_witness(p, cfg.depth);
    report["isometry"] = Json{{"depth", w.depth},
                              {"gram_is_identity", w.gram_is_identity},
                              {"left_inverse", w.left_inverse},
                              {"bob_adjoint_relation", w.bob_adjoint_relation},
                              {"bob_relation", w.bob_relation},
                              {"psi_outside_range", w.psi_outside_range},
                              {"u00_psi_norm2", scalar_json(w.u00_psi_norm2)},
                              {"passed", w.passed()}};
    record("isometry", w.passed());

    out.passed = out.failures.empty();
    report["failures"] = out.failures;
    report["passed"] = out.passed;
    return out;
}

}  // namespace

std::vector<ExactKernel> construction_kernels() {
    return {digit_shift(),   pair_basis_change(0), left_shift(), alice_shift(),    bob_shift(),
            controlled_shift(), bob_swap(1),       alice_swap(0), naive_alice_swap(0), alice_unitary(0),
            bob_unitary(1)};
}

std::vector<SparseState> sample_states(std::uint64_t seed, std::size_t count, const LabelBounds &bounds,
                                       std::size_t arity) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> pick(0, 3);
    const std::vector<ExactScalar> coeffs{ExactScalar(1), ExactScalar(-1), ExactScalar(Rational(1, 2)),
                                          ExactScalar::inv_sqrt2()};
    auto random_key = [&] {
        CompositeLabel k{{}, random_resource_label(rng, bounds)};
        for (std::size_t i = 0; i < arity; ++i) {
            k.regs.push_back(static_cast<std::uint8_t>(bit(rng)));
        }
        return k;
    };
    std::vector<SparseState> out;
    for (std::size_t n = 0; n < count; ++n) {
        SparseState s(arity);
        s.accumulate(random_key(), coeffs[pick(rng)]);
        if (n % 2 == 1) {
            s.accumulate(random_key(), coeffs[pick(rng)]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

VerifyOutcome verify_protocol(const VerifyConfig &cfg) {
    if (cfg.mode == "exact") {
        return run_verify<ExactScalar>(cfg);
    }
    if (cfg.mode == "float") {
        return run_verify<FloatScalar>(cfg);
    }
    throw UsageError("mode must be 'exact' or 'float'");
}

ShiftVariant parse_variant(const std::string &name) {
    for (auto v : {ShiftVariant::kStandard, ShiftVariant::kIdentity, ShiftVariant::kNaiveAliceSwap,
                   ShiftVariant::kReversedConjugation, ShiftVariant::kCorruptedShift}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    throw UsageError("unknown protocol '" + name + "'");
}

std::string variant_name(ShiftVariant v) { return shift_protocol(v).name; }

}  // namespace embezzle
