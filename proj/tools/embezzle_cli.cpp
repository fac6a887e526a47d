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


// Command line front end: embezzle, verify, vdh, game, schmidt, witness.
// Exit codes: 0 success, 1 invariant failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "embezzle/games.hpp"
#include "embezzle/io.hpp"
#include "embezzle/verify.hpp"
#include "embezzle/vdh.hpp"

namespace {

using namespace embezzle;

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::string mode = "exact";
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    long max_r = 8;
    int max_bits = 8;
    std::string format = "json";
    std::string out;
    std::string protocol = "standard";
    std::size_t depth = 8;
    long n_min = 1;
    long n_max = 4096;
    long n = 2;
    int input_c = 0;
    std::string strategy = "perfect";
    std::string state;
    std::string cut;
    std::string input_out;
    bool inject_fault = false;
};

void add_common(CLI::App *cmd, RunConfig &cfg) {
    cmd->add_option("--mode", cfg.mode, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--seed", cfg.seed, "Seed for randomized checks");
    cmd->add_option("--samples", cfg.samples, "Random samples per check");
    cmd->add_option("--max-r", cfg.max_r, "Largest |r| in sampled labels")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-bits", cfg.max_bits, "Binary digits on each side of the point")
        ->check(CLI::Range(0, 64));
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", cfg.out, "Output path (default stdout)");
}

void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out);
    if (!file) {
        throw UsageError("cannot open output file '" + cfg.out + "'");
    }
    file << text;
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

// Flattens a JSON object into "path: value" lines.
void text_lines(const Json &j, const std::string &prefix, std::ostringstream &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            text_lines(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

std::string render(const RunConfig &cfg, const Json &j) {
    if (cfg.format == "text") {
        std::ostringstream out;
        text_lines(j, "", out);
        return out.str();
    }
    if (cfg.format == "csv") {
        throw UsageError("csv output is only available for vdh");
    }
    return json_text(j);
}

LabelBounds bounds_of(const RunConfig &cfg) { return LabelBounds{cfg.max_r, cfg.max_bits, cfg.max_bits}; }

template <class Scalar>
Json diff_report(const SparseVector<CompositeLabel, Scalar> &got, const SparseVector<CompositeLabel, Scalar> &want) {
    Json missing = Json::array(), unexpected = Json::array();
    for (const auto &[k, v] : want) {
        if (!ScalarTraits<Scalar>::close(got.amplitude(k), v, kDefaultEpsilon)) {
            missing.push_back(Json{{"label", to_json(k)}, {"expected", to_json(v)}, {"got", to_json(got.amplitude(k))}});
        }
    }
    for (const auto &[k, v] : got) {
        if (ScalarTraits<Scalar>::negligible(want.amplitude(k))) {
            unexpected.push_back(Json{{"label", to_json(k)}, {"amp", to_json(v)}});
        }
    }
    return Json{{"check", "embezzlement_exact"}, {"passed", false}, {"mismatched", missing}, {"unexpected", unexpected}};
}

template <class Scalar>
int embezzle_in_mode(const RunConfig &cfg, const ExactProtocol &exact) {
    Protocol<ResourceLabel, Scalar> p;
    if constexpr (std::is_same_v<Scalar, ExactScalar>) {
        p = exact;
    } else {
        p = {exact.name, to_float(exact.alice), to_float(exact.bob), to_float(exact.catalyst)};
    }
    if (!cfg.input_out.empty()) {
        std::ofstream file(cfg.input_out);
        if (!file) {
            throw UsageError("cannot open input state file '" + cfg.input_out + "'");
        }
        file << write_state_jsonl(with_registers<ResourceLabel, Scalar>({0, 0}, p.catalyst));
    }
    const auto output = run_protocol(p, 0, 0);
    emit(cfg, write_state_jsonl(output));
    const auto target = bell_target(p);
    if (!output.equals(target)) {
        std::cerr << json_text(diff_report(output, target));
        return kInvariantFailure;
    }
    return kOk;
}

int cmd_embezzle(const RunConfig &cfg) {
    const auto variant = cfg.inject_fault ? ShiftVariant::kCorruptedShift : parse_variant(cfg.protocol);
    const auto p = shift_protocol(variant);
    return cfg.mode == "exact" ? embezzle_in_mode<ExactScalar>(cfg, p) : embezzle_in_mode<FloatScalar>(cfg, p);
}

int cmd_verify(const RunConfig &cfg) {
    VerifyConfig v;
    v.mode = cfg.mode;
    v.seed = cfg.seed;
    v.samples = cfg.samples;
    v.bounds = bounds_of(cfg);
    v.depth = cfg.depth;
    v.variant = parse_variant(cfg.protocol);
    const auto outcome = verify_protocol(v);
    emit(cfg, render(cfg, outcome.report));
    return outcome.passed ? kOk : kInvariantFailure;
}

int cmd_vdh(const RunConfig &cfg, bool format_given) {
    const auto rows = vdh_sweep(cfg.n_min, cfg.n_max);
    bool nondecreasing = true, below_one = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        below_one = below_one && rows[i].fidelity < 1.0;
        if (i > 0) {
            nondecreasing = nondecreasing && rows[i].fidelity >= rows[i - 1].fidelity;
        }
    }
    if (!format_given || cfg.format == "csv") {
        emit(cfg, vdh_sweep_csv(rows));
    } else {
        Json j{{"rows", Json::array()}};
        for (const auto &r : rows) {
            j["rows"].push_back(Json{{"n", r.n},
                                     {"fidelity", r.fidelity},
                                     {"s00_dev", r.deviations[0]},
                                     {"s10_dev", r.deviations[1]},
                                     {"s01_dev", r.deviations[2]},
                                     {"s11_dev", r.deviations[3]}});
        }
        j["fidelity_nondecreasing"] = nondecreasing;
        j["fidelity_below_one"] = below_one;
        emit(cfg, render(cfg, j));
    }
    return nondecreasing && below_one ? kOk : kInvariantFailure;
}

template <class Scalar>
Json game_json(const std::string &name, int c, const GameResult<Scalar> &g) {
    using T = ScalarTraits<Scalar>;
    Json dist;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            dist[std::to_string(a) + std::to_string(b)] = T::to_float(g.distribution[a * 2 + b]).real();
        }
    }
    Json j{{"strategy", name}, {"c", c}, {"win_probability", T::to_float(g.win_probability).real()}, {"distribution", dist}};
    if constexpr (std::is_same_v<Scalar, ExactScalar>) {
        j["win_probability_exact"] = to_json(g.win_probability);
    }
    return j;
}

int cmd_game(const RunConfig &cfg) {
    if (cfg.input_c != 0 && cfg.input_c != 1) {
        throw UsageError("--input-c must be 0 or 1");
    }
    const auto c = static_cast<std::uint8_t>(cfg.input_c);
    Json j;
    if (cfg.strategy == "perfect") {
        if (cfg.mode == "float") {
            const auto st = perfect_strategy();
            Strategy<ResourceLabel, FloatScalar> fs{st.name, to_float(st.alice), to_float(st.bob), to_float(st.catalyst)};
            j = game_json(fs.name, c, play(fs, c));
        } else {
            const auto st = perfect_strategy();
            j = game_json(st.name, c, play(st, c));
        }
    } else if (cfg.strategy == "vdh") {
        const auto st = vdh_strategy(cfg.n);
        j = game_json(st.name, c, play(st, c));
    } else {
        throw UsageError("unknown strategy '" + cfg.strategy + "'");
    }
    emit(cfg, render(cfg, j));
    return kOk;
}

Cut parse_cut(const std::string &text, std::size_t registers) {
    Cut cut;
    if (text.empty()) {
        for (std::size_t r = 0; r < registers / 2; ++r) {
            cut.left.push_back(r);
        }
        return cut;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long r = std::stoul(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            cut.left.push_back(r);
        } catch (const std::logic_error &) {
            throw UsageError("--cut expects comma-separated register indices");
        }
    }
    return cut;
}

int cmd_schmidt(const RunConfig &cfg) {
    if (cfg.state.empty()) {
        throw UsageError("--state is required");
    }
    std::ifstream file(cfg.state);
    if (!file) {
        throw UsageError("cannot open state file '" + cfg.state + "'");
    }
    const DenseState s = read_dense_jsonl(file);
    const Cut cut = parse_cut(cfg.cut, s.dims.size());
    const auto d = schmidt_decompose(s, cut);
    Json j{{"dims", s.dims}, {"cut", cut.left}, {"left_dim", d.left_dim}, {"right_dim", d.right_dim},
           {"coefficients", d.coefficients}};
    emit(cfg, render(cfg, j));
    return kOk;
}

template <class Scalar>
int witness_in_mode(const RunConfig &cfg, const Protocol<ResourceLabel, Scalar> &p) {
    const auto w = isometry_witness(p, cfg.depth);
    Json gram = Json::array();
    for (const auto &row : w.gram) {
        Json r = Json::array();
        for (const auto &x : row) {
            r.push_back(to_json(x));
        }
        gram.push_back(r);
    }
    Json j{{"protocol", p.name},
           {"depth", w.depth},
           {"gram", gram},
           {"gram_is_identity", w.gram_is_identity},
           {"left_inverse", w.left_inverse},
           {"bob_adjoint_relation", w.bob_adjoint_relation},
           {"bob_relation", w.bob_relation},
           {"psi_outside_range", w.psi_outside_range},
           {"u00_psi_norm2", to_json(w.u00_psi_norm2)},
           {"passed", w.passed()}};
    emit(cfg, render(cfg, j));
    return w.passed() ? kOk : kInvariantFailure;
}

int cmd_witness(const RunConfig &cfg) {
    const auto p = shift_protocol(parse_variant(cfg.protocol));
    if (cfg.mode == "float") {
        return witness_in_mode(cfg, Protocol<ResourceLabel, FloatScalar>{p.name, to_float(p.alice), to_float(p.bob),
                                                                         to_float(p.catalyst)});
    }
    return witness_in_mode(cfg, p);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact sparse simulator for entanglement embezzlement"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *embezzle = app.add_subcommand("embezzle", "Run the protocol on |0> psi |0> and check the Bell output");
    add_common(embezzle, cfg);
    embezzle->add_option("--protocol", cfg.protocol, "Protocol variant");
    embezzle->add_option("--input-out", cfg.input_out, "Also write the input state here");
    embezzle->add_flag("--inject-fault", cfg.inject_fault, "Drop the basis change from Bob's shift (test hook)");

    auto *verify = app.add_subcommand("verify", "Randomized commutation, unitarity and witness checks");
    add_common(verify, cfg);
    verify->add_option("--protocol", cfg.protocol, "Protocol variant");
    verify->add_option("--depth", cfg.depth, "Orbit length for the isometry witness")->check(CLI::PositiveNumber);

    auto *vdh = app.add_subcommand("vdh", "Fidelity and functional deviations of the finite family");
    add_common(vdh, cfg);
    vdh->add_option("--n-min", cfg.n_min, "Smallest catalyst size")->check(CLI::PositiveNumber);
    vdh->add_option("--n-max", cfg.n_max, "Largest catalyst size")->check(CLI::PositiveNumber);

    auto *game = app.add_subcommand("game", "Win probability in the coherent embezzlement game");
    add_common(game, cfg);
    game->add_option("--strategy", cfg.strategy, "perfect or vdh");
    game->add_option("--input-c", cfg.input_c, "Referee input c");
    game->add_option("--n", cfg.n, "Catalyst size for the vdh strategy")->check(CLI::PositiveNumber);

    auto *schmidt = app.add_subcommand("schmidt", "Schmidt coefficients of a dense state file");
    add_common(schmidt, cfg);
    schmidt->add_option("--state", cfg.state, "Dense JSON Lines state");
    schmidt->add_option("--cut", cfg.cut, "Comma-separated left registers (default: first half)");

    auto *witness = app.add_subcommand("witness", "Gram matrix of the U_00* orbit of the catalyst");
    add_common(witness, cfg);
    witness->add_option("--protocol", cfg.protocol, "Protocol variant");
    witness->add_option("--depth", cfg.depth, "Orbit length")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*embezzle) {
            return cmd_embezzle(cfg);
        }
        if (*verify) {
            return cmd_verify(cfg);
        }
        if (*vdh) {
            return cmd_vdh(cfg, vdh->count("--format") > 0);
        }
        if (*game) {
            return cmd_game(cfg);
        }
        if (*schmidt) {
            return cmd_schmidt(cfg);
        }
        return cmd_witness(cfg);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvariantFailure;
    }
}
