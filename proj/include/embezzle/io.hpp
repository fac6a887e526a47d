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

// JSON Lines state files and JSON helpers.
//
// Sparse files start with a header {"mode": "exact"|"float", "arity": k}
// followed by one term per line in label order:
//   {"label": {"regs": [0, 1], "r": 0, "x": "1/2^1", "y": "0/2^0"},
//    "amp": {"a": "0/1", "b": "1/2"}}           (exact)
//   "amp": {"re": 0.7071067811865476, "im": 0.0}  (float)
// Dense files start with {"mode": "float", "dims": [2, 2]} and label terms
// by integer multi-indices: {"label": [1, 0], "amp": {"re": .., "im": ..}}.

#include <istream>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "embezzle/finite_dim.hpp"
#include "embezzle/sparse_state.hpp"

namespace embezzle {

using Json = nlohmann::ordered_json;

/// Malformed input; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

Json to_json(const ExactScalar &x);
Json to_json(const FloatScalar &x);
Json to_json(const CompositeLabel &label);
ExactScalar exact_scalar_from_json(const Json &j);
FloatScalar float_scalar_from_json(const Json &j);
CompositeLabel label_from_json(const Json &j);

std::string write_state_jsonl(const SparseState &s);
std::string write_state_jsonl(const FloatSparseState &s);
/// Either mode, chosen by the header.
std::variant<SparseState, FloatSparseState> read_state_jsonl(std::istream &in);

std::string write_dense_jsonl(const DenseState &s);
DenseState read_dense_jsonl(std::istream &in);

}  // namespace embezzle
