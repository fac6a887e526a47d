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


#include "embezzle/vdh.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace embezzle {

std::ostream &operator<<(std::ostream &out, const CatalystPair &label) {
    return out << "|" << label.a << ", " << label.b << ">";
}

VdhProtocol::VdhProtocol(long n) : n_(n), harmonic_(0) {
    if (n < 1) {
        throw UsageError("catalyst size must be at least 1");
    }
    for (long j = 1; j <= n; ++j) {
        harmonic_ += 1.0 / static_cast<double>(j);
    }
    amplitudes_.reserve(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j) {
        amplitudes_.push_back(1.0 / std::sqrt(harmonic_ * static_cast<double>(j)));
    }
}

std::pair<std::uint8_t, long> VdhProtocol::permute(std::uint8_t t, long j) const {
    if (t > 1 || j < 1 || j > n_) {
        throw UsageError("label outside C^2 (x) C^n");
    }
    const long k = t == 0 ? j : n_ + j;
    return {static_cast<std::uint8_t>((k - 1) % 2), (k + 1) / 2};
}

std::pair<std::uint8_t, long> VdhProtocol::unpermute(std::uint8_t b, long j) const {
    if (b > 1 || j < 1 || j > n_) {
        throw UsageError("label outside C^2 (x) C^n");
    }
    const long k = 2 * j - 1 + b;
    return k <= n_ ? std::pair<std::uint8_t, long>{0, k} : std::pair<std::uint8_t, long>{1, k - n_};
}

bool VdhProtocol::is_bijection() const {
    std::set<std::pair<std::uint8_t, long>> images;
    for (std::uint8_t t = 0; t < 2; ++t) {
        for (long j = 1; j <= n_; ++j) {
            auto img = permute(t, j);
            if (img.second < 1 || img.second > n_ || unpermute(img.first, img.second) != std::pair{t, j}) {
                return false;
            }
            images.insert(img);
        }
    }
    return images.size() == static_cast<std::size_t>(2 * n_);
}

Matrix VdhProtocol::matrix() const {
    const auto n = static_cast<std::size_t>(n_);
    Matrix m(2 * n, 2 * n);
    for (std::uint8_t t = 0; t < 2; ++t) {
        for (long j = 1; j <= n_; ++j) {
            auto [b, jj] = permute(t, j);
            m(b * n + static_cast<std::size_t>(jj - 1), t * n + static_cast<std::size_t>(j - 1)) = 1.0;
        }
    }
    return m;
}

PairState VdhProtocol::catalyst() const {
    PairState s(0);
    for (long j = 1; j <= n_; ++j) {
        s.accumulate(PairKey{{}, CatalystPair{j, j}}, amplitude(j));
    }
    return s;
}

PairKernel VdhProtocol::party_unitary(std::size_t reg, bool alice_half) const {
    auto act = [this_copy = *this, reg, alice_half](bool inverse) {
        return [=](const PairKey &k, const FloatScalar &c, PairState &out) {
            PairKey img = k;
            long &half = alice_half ? img.res.a : img.res.b;
            auto [t, j] = inverse ? this_copy.unpermute(k.regs.at(reg), half) : this_copy.permute(k.regs.at(reg), half);
            img.regs[reg] = t;
            half = j;
            out.accumulate(img, c);
        };
    };
    return {alice_half ? "PA" : "PB", act(false), act(true)};
}

DenseState VdhProtocol::dense_input() const {
    const auto n = static_cast<std::size_t>(n_);
    DenseState s = DenseState::zeros({2, n, n, 2});
    for (long j = 1; j <= n_; ++j) {
        const auto jj = static_cast<std::size_t>(j - 1);
        s.at({0, jj, jj, 0}) = amplitude(j);
    }
    return s;
}

DenseState VdhProtocol::dense_target() const {
    const auto n = static_cast<std::size_t>(n_);
    DenseState s = DenseState::zeros({2, n, n, 2});
    for (long j = 1; j <= n_; ++j) {
        const auto jj = static_cast<std::size_t>(j - 1);
        s.at({0, jj, jj, 0}) = amplitude(j) / std::sqrt(2.0);
        s.at({1, jj, jj, 1}) = amplitude(j) / std::sqrt(2.0);
    }
    return s;
}

DenseState VdhProtocol::dense_output() const {
    const Matrix p = matrix();
    return apply_local(apply_local(dense_input(), {0, 1}, p), {3, 2}, p);
}

double vdh_fidelity(long n) {
    const PairProtocol p = vdh_as_protocol(n);
    return std::abs(bell_target(p).inner(run_protocol(p, 0, 0)));
}

PairProtocol vdh_as_protocol(long n) {
    const VdhProtocol v(n);
    return PairProtocol{"vdh-" + std::to_string(n), v.party_unitary(PairProtocol::alice_reg, true),
                        v.party_unitary(PairProtocol::bob_reg, false), v.catalyst()};
}

VdhSweepRow vdh_sweep_row(long n) {
    const PairProtocol p = vdh_as_protocol(n);
    VdhSweepRow row;
    row.n = n;
    row.fidelity = std::abs(bell_target(p).inner(run_protocol(p, 0, 0)));
    const auto values = state_functional(p).bell_order();
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<double> target{h, 0.0, 0.0, h};
    for (std::size_t i = 0; i < 4; ++i) {
        row.deviations.push_back(std::abs(values[i] - target[i]));
    }
    return row;
}

std::vector<VdhSweepRow> vdh_sweep(long n_min, long n_max) {
    if (n_min < 1 || n_max < n_min) {
        throw UsageError("sweep needs 1 <= n_min <= n_max");
    }
    std::vector<VdhSweepRow> rows;
    for (long n = n_min; n <= n_max; n *= 2) {
        rows.push_back(vdh_sweep_row(n));
    }
    return rows;
}

std::string vdh_sweep_csv(const std::vector<VdhSweepRow> &rows) {
    std::ostringstream out;
    out << "n,fidelity,s00_dev,s10_dev,s01_dev,s11_dev\n";
    out << std::setprecision(17);
    for (const auto &row : rows) {
        out << row.n << "," << row.fidelity;
        for (double d : row.deviations) {
            out << "," << d;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace embezzle
