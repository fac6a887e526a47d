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


#include "embezzle/general_protocol.hpp"

#include <cmath>
#include <cstdlib>

namespace embezzle {

DigitString::DigitString(std::map<long, std::uint8_t> digits) {
    for (const auto &[p, v] : digits) {
        if (v != 0) {
            digits_.emplace(p, v);
        }
    }
}

std::uint8_t DigitString::digit(long position) const {
    auto it = digits_.find(position);
    return it == digits_.end() ? 0 : it->second;
}

DigitString DigitString::with_digit(long position, std::uint8_t value) const {
    DigitString out = *this;
    if (value == 0) {
        out.digits_.erase(position);
    } else {
        out.digits_[position] = value;
    }
    return out;
}

DigitString DigitString::shifted_up() const {
    DigitString out;
    for (const auto &[p, v] : digits_) {
        out.digits_.emplace_hint(out.digits_.end(), p + 1, v);
    }
    return out;
}

DigitString DigitString::shifted_down() const {
    DigitString out;
    for (const auto &[p, v] : digits_) {
        out.digits_.emplace_hint(out.digits_.end(), p - 1, v);
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const DigitString &x) {
    if (x.digits().empty()) {
        return out << "0";
    }
    out << "[";
    bool first = true;
    for (auto it = x.digits().rbegin(); it != x.digits().rend(); ++it) {
        out << (first ? "" : " ") << static_cast<int>(it->second) << "@" << it->first;
        first = false;
    }
    return out << "]";
}

std::ostream &operator<<(std::ostream &out, const AdicLabel &label) {
    return out << "|" << label.r << ", " << label.x << ", " << label.y << ">";
}

Matrix unitary_completion(const std::vector<FloatScalar> &alpha, std::size_t d) {
    const std::size_t n = d * d;
    if (alpha.size() != n) {
        throw UsageError("target needs d^2 coefficients");
    }
    Matrix w(n, n);
    w.set_column(0, alpha);
    std::size_t filled = 1;
    for (std::size_t e = 0; e < n && filled < n; ++e) {
        std::vector<FloatScalar> v(n);
        v[e] = 1.0;
        // Two passes of projection keep the columns orthonormal to ~1e-16.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t l = 0; l < filled; ++l) {
                FloatScalar proj = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(w(i, l)) * v[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= proj * w(i, l);
                }
            }
        }
        double len = 0;
        for (const auto &z : v) {
            len += std::norm(z);
        }
        len = std::sqrt(len);
        if (len < 1e-8) {
            continue;
        }
        for (auto &z : v) {
            z /= len;
        }
        w.set_column(filled++, v);
    }
    return w;
}

namespace {

using Key = AdicKey;

Key with_res(const Key &k, long r, DigitString x, DigitString y) {
    return Key{k.regs, AdicLabel{r, std::move(x), std::move(y)}};
}

// Sends the literal digit pair at `position` through the given matrix.
void pair_map(const Matrix &m, bool adjoint, std::size_t d, long position, const Key &k, const FloatScalar &c,
              AdicState &out) {
    const std::size_t col = k.res.x.digit(position) * d + k.res.y.digit(position);
    for (std::size_t row = 0; row < d * d; ++row) {
        const FloatScalar entry = adjoint ? std::conj(m(col, row)) : m(row, col);
        if (ScalarTraits<FloatScalar>::negligible(entry)) {
            continue;
        }
        out.accumulate(with_res(k, k.res.r, k.res.x.with_digit(position, static_cast<std::uint8_t>(row / d)),
                                k.res.y.with_digit(position, static_cast<std::uint8_t>(row % d))),
                       c * entry);
    }
}

Key swap_digit(const Key &k, std::size_t reg, long position, bool with_x, std::size_t d) {
    Key out = k;
    const std::uint8_t held = out.regs.at(reg);
    if (held >= d) {
        throw UsageError("register value exceeds the local dimension");
    }
    DigitString &digits = with_x ? out.res.x : out.res.y;
    out.regs[reg] = digits.digit(position);
    digits = digits.with_digit(position, held);
    return out;
}

AdicKernel self_adjoint(std::string name, AdicKernel::Action action) { return {std::move(name), action, action}; }

}  // namespace

AdicKernel AdicKernels::digit_shift() const {
    return {"L1",
            [](const Key &k, const FloatScalar &c, AdicState &out) {
                out.accumulate(with_res(k, k.res.r, k.res.x.shifted_up(), k.res.y.shifted_up()), c);
            },
            [](const Key &k, const FloatScalar &c, AdicState &out) {
                out.accumulate(with_res(k, k.res.r, k.res.x.shifted_down(), k.res.y.shifted_down()), c);
            }};
}

AdicKernel AdicKernels::pair_basis_change(long position) const {
    return {"L2@" + std::to_string(position),
            [w = w, d = d, position](const Key &k, const FloatScalar &c, AdicState &out) {
                pair_map(w, false, d, position, k, c, out);
            },
            [w = w, d = d, position](const Key &k, const FloatScalar &c, AdicState &out) {
                pair_map(w, true, d, position, k, c, out);
            }};
}

AdicKernel AdicKernels::left_shift() const {
    auto l = compose(pair_basis_change(0), digit_shift());
    l.name = "L";
    return l;
}

AdicKernel AdicKernels::alice_shift() const {
    return {"LA",
            [](const Key &k, const FloatScalar &c, AdicState &out) {
                out.accumulate(with_res(k, k.res.r + 1, k.res.x, k.res.y), c);
            },
            [](const Key &k, const FloatScalar &c, AdicState &out) {
                out.accumulate(with_res(k, k.res.r - 1, k.res.x, k.res.y), c);
            }};
}

AdicKernel AdicKernels::bob_shift() const {
    auto l = compose(alice_shift().adjoint(), left_shift());
    l.name = "LB";
    return l;
}

AdicKernel AdicKernels::controlled_shift() const {
    auto power = [shift = left_shift()](bool forward) {
        return [shift, forward](const Key &k, const FloatScalar &c, AdicState &out) {
            AdicState s(k.regs.size(), out.cap());
            s.accumulate(k, c);
            const long n = forward ? k.res.r : -k.res.r;
            for (long i = 0; i < std::labs(n); ++i) {
                s = n > 0 ? shift.apply(s) : shift.apply_adjoint(s);
            }
            out += s;
        };
    };
    return {"C", power(true), power(false)};
}

AdicKernel AdicKernels::bob_swap(std::size_t reg) const {
    return self_adjoint("SB", [reg, d = d](const Key &k, const FloatScalar &c, AdicState &out) {
        out.accumulate(swap_digit(k, reg, 0, false, d), c);
    });
}

AdicKernel AdicKernels::naive_alice_swap(std::size_t reg) const {
    return self_adjoint("SA~", [reg, d = d](const Key &k, const FloatScalar &c, AdicState &out) {
        out.accumulate(swap_digit(k, reg, 0, true, d), c);
    });
}

AdicKernel AdicKernels::alice_swap(std::size_t reg) const {
    // Same local form as the qubit case: rotate the pair at -r to the
    // computational basis, exchange, rotate back.
    return self_adjoint("SA", [reg, d = d, w = w](const Key &k, const FloatScalar &c, AdicState &out) {
        const long p = -k.res.r;
        if (p >= 0) {
            out.accumulate(swap_digit(k, reg, p, true, d), c);
            return;
        }
        AdicState rotated(k.regs.size(), out.cap());
        pair_map(w, false, d, p, k, c, rotated);
        for (const auto &[k2, v2] : rotated) {
            pair_map(w, true, d, p, swap_digit(k2, reg, p, true, d), v2, out);
        }
    });
}

AdicKernel AdicKernels::alice_swap_by_conjugation(std::size_t reg) const {
    auto c = controlled_shift();
    auto s = compose_all({c.adjoint(), naive_alice_swap(reg), c});
    s.name = "C*.SA~.C";
    return s;
}

AdicKernel AdicKernels::alice_unitary(std::size_t reg) const {
    auto u = compose(alice_swap(reg), alice_shift());
    u.name = "UA";
    return u;
}

AdicKernel AdicKernels::bob_unitary(std::size_t reg) const {
    auto u = compose(bob_swap(reg), bob_shift());
    u.name = "UB";
    return u;
}

AdicKernels general_kernels(std::size_t d, const std::vector<FloatScalar> &alpha, double eps) {
    if (d < 2 || d > 255) {
        throw UsageError("local dimension must be between 2 and 255");
    }
    if (alpha.size() != d * d) {
        throw UsageError("target needs d^2 coefficients");
    }
    double norm2 = 0;
    for (const auto &a : alpha) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) >= eps) {
        throw UsageError("target coefficients are not normalized");
    }
    return AdicKernels{d, unitary_completion(alpha, d)};
}

AdicProtocol general_protocol(std::size_t d, const std::vector<FloatScalar> &alpha, double eps) {
    const AdicKernels k = general_kernels(d, alpha, eps);
    AdicState catalyst(0);
    catalyst.accumulate(Key{{}, AdicLabel{}}, 1.0);
    AdicProtocol p{"general-d" + std::to_string(d), k.alice_unitary(AdicProtocol::alice_reg),
                   k.bob_unitary(AdicProtocol::bob_reg), std::move(catalyst)};
    p.local_dim = d;
    return p;
}

AdicLabel random_adic_label(std::mt19937_64 &rng, std::size_t d, long max_r, int int_digits, int frac_digits) {
    std::uniform_int_distribution<long> r_dist(-max_r, max_r);
    std::uniform_int_distribution<int> digit_dist(0, static_cast<int>(d) - 1);
    AdicLabel label;
    label.r = r_dist(rng);
    for (auto *digits : {&label.x, &label.y}) {
        for (long p = -frac_digits; p < int_digits; ++p) {
            *digits = digits->with_digit(p, static_cast<std::uint8_t>(digit_dist(rng)));
        }
    }
    return label;
}

}  // namespace embezzle
