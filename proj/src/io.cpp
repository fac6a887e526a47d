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


#include "embezzle/io.hpp"

#include <sstream>

namespace embezzle {

Json to_json(const ExactScalar &x) {
    return Json{{"a", format_rational(x.a())}, {"b", format_rational(x.b())}};
}

Json to_json(const FloatScalar &x) { return Json{{"re", x.real()}, {"im", x.imag()}}; }

Json to_json(const CompositeLabel &label) {
    Json regs = Json::array();
    for (auto b : label.regs) {
        regs.push_back(static_cast<int>(b));
    }
    return Json{{"regs", regs},
                {"r", label.res.r},
                {"x", label.res.x.to_fraction()},
                {"y", label.res.y.to_fraction()}};
}

ExactScalar exact_scalar_from_json(const Json &j) {
    return ExactScalar(parse_rational(j.at("a").get<std::string>()), parse_rational(j.at("b").get<std::string>()));
}

FloatScalar float_scalar_from_json(const Json &j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

CompositeLabel label_from_json(const Json &j) {
    CompositeLabel label;
    for (const auto &b : j.at("regs")) {
        const int v = b.get<int>();
        if (v < 0 || v > 255) {
            throw UsageError("register value out of range");
        }
        label.regs.push_back(static_cast<std::uint8_t>(v));
    }
    label.res.r = j.at("r").get<long>();
    label.res.x = Dyadic::from_fraction(j.at("x").get<std::string>());
    label.res.y = Dyadic::from_fraction(j.at("y").get<std::string>());
    return label;
}

namespace {

template <class Scalar>
std::string write_sparse(const SparseVector<CompositeLabel, Scalar> &s) {
    std::ostringstream out;
    out << Json{{"mode", ScalarTraits<Scalar>::mode}, {"arity", s.arity()}}.dump() << "\n";
    for (const auto &[k, v] : s) {
        out << Json{{"label", to_json(k)}, {"amp", to_json(v)}}.dump() << "\n";
    }
    return out.str();
}

// Reads nonblank lines, tracking line numbers for error messages.
struct LineReader {
    std::istream &in;
    std::size_t line = 0;

    bool next(Json &j) {
        std::string text;
        while (std::getline(in, text)) {
            ++line;
            if (text.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            try {
                j = Json::parse(text);
            } catch (const Json::exception &e) {
                throw ParseError(line, std::string("invalid JSON: ") + e.what());
            }
            return true;
        }
        return false;
    }
};

template <class F>
auto at_line(std::size_t line, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(line, e.what());
    }
}

template <class Scalar>
SparseVector<CompositeLabel, Scalar> read_terms(LineReader &reader, std::size_t arity) {
    SparseVector<CompositeLabel, Scalar> s(arity);
    Json j;
    while (reader.next(j)) {
        at_line(reader.line, [&] {
            auto label = label_from_json(j.at("label"));
            Scalar amp;
            if constexpr (std::is_same_v<Scalar, ExactScalar>) {
                amp = exact_scalar_from_json(j.at("amp"));
            } else {
                amp = float_scalar_from_json(j.at("amp"));
            }
            s.accumulate(label, amp);
            return 0;
        });
    }
    return s;
}

}  // namespace

std::string write_state_jsonl(const SparseState &s) { return write_sparse(s); }
std::string write_state_jsonl(const FloatSparseState &s) { return write_sparse(s); }

std::variant<SparseState, FloatSparseState> read_state_jsonl(std::istream &in) {
    LineReader reader{in};
    Json header;
    if (!reader.next(header)) {
        throw ParseError(reader.line, "missing header line");
    }
    const auto [mode, arity] = at_line(reader.line, [&] {
        return std::pair{header.at("mode").get<std::string>(), header.at("arity").get<std::size_t>()};
    });
    if (mode == "exact") {
        return read_terms<ExactScalar>(reader, arity);
    }
    if (mode == "float") {
        return read_terms<FloatScalar>(reader, arity);
    }
    throw ParseError(reader.line, "unknown mode '" + mode + "'");
}

std::string write_dense_jsonl(const DenseState &s) {
    std::ostringstream out;
    out << Json{{"mode", "float"}, {"dims", s.dims}}.dump() << "\n";
    for (std::size_t flat = 0; flat < s.amps.size(); ++flat) {
        if (s.amps[flat] == FloatScalar{}) {
            continue;
        }
        out << Json{{"label", s.multi_index(flat)}, {"amp", to_json(s.amps[flat])}}.dump() << "\n";
    }
    return out.str();
}

DenseState read_dense_jsonl(std::istream &in) {
    LineReader reader{in};
    Json header;
    if (!reader.next(header)) {
        throw ParseError(reader.line, "missing header line");
    }
    DenseState s = at_line(reader.line, [&] {
        if (header.at("mode").get<std::string>() != "float") {
            throw UsageError("dense states are float mode only");
        }
        return DenseState::zeros(header.at("dims").get<std::vector<std::size_t>>());
    });
    Json j;
    while (reader.next(j)) {
        at_line(reader.line, [&] {
            s.at(j.at("label").get<std::vector<std::size_t>>()) += float_scalar_from_json(j.at("amp"));
            return 0;
        });
    }
    return s;
}

}  // namespace embezzle
