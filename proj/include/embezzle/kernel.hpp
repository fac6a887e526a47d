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

#include <functional>
#include <string>
#include <utility>

#include "embezzle/sparse_state.hpp"

namespace embezzle {

/// A linear operator given by its action on basis labels, together with the
/// action of its adjoint. Nothing is ever materialized as a matrix.
///
/// An action receives a label and a coefficient and accumulates
/// coefficient * K|label> into the output state.
template <class Key, class Scalar>
struct Kernel {
    using State = SparseVector<Key, Scalar>;
    using Action = std::function<void(const Key &, const Scalar &, State &)>;

    std::string name;
    Action forward;
    Action backward;

    State apply(const State &s) const { return run(forward, s); }
    State apply_adjoint(const State &s) const { return run(backward, s); }
    State apply(const Key &k) const { return apply(State::basis(k)); }
    State apply_adjoint(const Key &k) const { return apply_adjoint(State::basis(k)); }

    Kernel adjoint() const { return Kernel{name + "*", backward, forward}; }

   private:
    static State run(const Action &action, const State &s) {
        State out(s.arity(), s.cap());
        for (const auto &[k, v] : s) {
            action(k, v, out);
        }
        return out;
    }
};

/// outer after inner, i.e. the operator product outer * inner.
template <class Key, class Scalar>
Kernel<Key, Scalar> compose(const Kernel<Key, Scalar> &outer, const Kernel<Key, Scalar> &inner) {
    using K = Kernel<Key, Scalar>;
    using State = typename K::State;
    auto chain = [](typename K::Action first, typename K::Action second) {
        return [first = std::move(first), second = std::move(second)](const Key &k, const Scalar &c, State &out) {
            State mid(k.regs.size(), out.cap());
            first(k, c, mid);
            for (const auto &[k2, v2] : mid) {
                second(k2, v2, out);
            }
        };
    };
    return K{outer.name + "." + inner.name, chain(inner.forward, outer.forward),
             chain(outer.backward, inner.backward)};
}

/// Operator product of a list, applied right to left: compose_all({A, B, C}) == A B C.
template <class Key, class Scalar>
Kernel<Key, Scalar> compose_all(std::initializer_list<Kernel<Key, Scalar>> factors) {
    auto it = std::rbegin(factors);
    Kernel<Key, Scalar> acc = *it;
    for (++it; it != std::rend(factors); ++it) {
        acc = compose(*it, acc);
    }
    return acc;
}

template <class Key, class Scalar>
Kernel<Key, Scalar> identity_kernel() {
    using State = SparseVector<Key, Scalar>;
    auto id = [](const Key &k, const Scalar &c, State &out) { out.accumulate(k, c); };
    return {"I", id, id};
}

/// Lifts an exact kernel to float mode by embedding its amplitudes.
template <class Key>
Kernel<Key, FloatScalar> to_float(const Kernel<Key, ExactScalar> &k) {
    using FState = SparseVector<Key, FloatScalar>;
    auto lift = [](typename Kernel<Key, ExactScalar>::Action action) {
        return [action = std::move(action)](const Key &key, const FloatScalar &c, FState &out) {
            SparseVector<Key, ExactScalar> image(key.regs.size());
            action(key, ExactScalar(1), image);
            for (const auto &[k2, v2] : image) {
                out.accumulate(k2, c * exact_to_float(v2));
            }
        };
    };
    return {k.name, lift(k.forward), lift(k.backward)};
}

/// Applies k only on the branch where register `control` holds 1.
template <class Key, class Scalar>
Kernel<Key, Scalar> controlled(std::size_t control, const Kernel<Key, Scalar> &k) {
    using State = SparseVector<Key, Scalar>;
    auto wrap = [control](typename Kernel<Key, Scalar>::Action action) {
        return [control, action = std::move(action)](const Key &key, const Scalar &c, State &out) {
            if (key.regs.at(control) == 1) {
                action(key, c, out);
            } else {
                out.accumulate(key, c);
            }
        };
    };
    return {"c" + std::to_string(control) + "-" + k.name, wrap(k.forward), wrap(k.backward)};
}

}  // namespace embezzle
