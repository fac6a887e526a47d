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


#include "embezzle/games.hpp"

#include <cmath>

namespace embezzle {

SparseState build_phi(std::uint8_t c) { return build_phi<ResourceLabel, ExactScalar>(c, shift_catalyst()); }

DenseState build_phi_dense(std::uint8_t c) {
    if (c > 1) {
        throw UsageError("game input must be 0 or 1");
    }
    const double sign = c ? -1.0 : 1.0;
    DenseState s = DenseState::zeros({2, 2, 2, 2});
    s.at({0, 0, 0, 0}) = 1.0 / std::sqrt(2.0);
    s.at({1, 0, 0, 1}) = sign * 0.5;
    s.at({1, 1, 1, 1}) = sign * 0.5;
    return s;
}

Strategy<ResourceLabel, ExactScalar> perfect_strategy() {
    using H = ExactKernel;
    H alice = compose(hadamard<ResourceLabel, ExactScalar>(kA1), controlled(kA1, alice_unitary(kA2).adjoint()));
    H bob = compose(hadamard<ResourceLabel, ExactScalar>(kB1), controlled(kB1, bob_unitary(kB2).adjoint()));
    return {"perfect", alice, bob, shift_catalyst()};
}

Strategy<CatalystPair, FloatScalar> vdh_strategy(long n) {
    const VdhProtocol v(n);
    auto alice = compose(hadamard<CatalystPair, FloatScalar>(kA1),
                         controlled(kA1, v.party_unitary(kA2, true).adjoint()));
    auto bob = compose(hadamard<CatalystPair, FloatScalar>(kB1),
                       controlled(kB1, v.party_unitary(kB2, false).adjoint()));
    return {"vdh-" + std::to_string(n), alice, bob, v.catalyst()};
}

}  // namespace embezzle
