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

// Aggregated verification of a shift-protocol variant, producing the JSON
// report printed by the command line tool.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "embezzle/io.hpp"
#include "embezzle/shift_protocol.hpp"

namespace embezzle {

struct VerifyConfig {
    /// "exact" or "float".
    std::string mode = "exact";
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    LabelBounds bounds;
    /// Orbit length for the isometry witness.
    std::size_t depth = 8;
    ShiftVariant variant = ShiftVariant::kStandard;
};

struct VerifyOutcome {
    Json report;
    bool passed = false;
    /// Ids of the failed checks, in report order.
    std::vector<std::string> failures;
};

/// Runs commutation, block and kernel unitarity, exact embezzlement, the
/// state functional and the isometry witness.
VerifyOutcome verify_protocol(const VerifyConfig &cfg);

/// Exact kernels of the construction, by name, for unitarity sweeps.
std::vector<ExactKernel> construction_kernels();

/// Random test states: basis labels and two-term superpositions with
/// coefficients in Q(sqrt2).
std::vector<SparseState> sample_states(std::uint64_t seed, std::size_t count, const LabelBounds &bounds,
                                       std::size_t arity);

ShiftVariant parse_variant(const std::string &name);
std::string variant_name(ShiftVariant v);

}  // namespace embezzle
