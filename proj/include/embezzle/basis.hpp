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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "embezzle/exact_scalar.hpp"

namespace embezzle {

/// A nonnegative dyadic rational m / 2^e.
///
/// Canonical form: m odd, or m == 0 with e == 0. The exponent may be negative
/// (6 is stored as 3 / 2^-1), so two equal values always share an encoding.
class Dyadic {
   public:
    Dyadic() = default;
    Dyadic(unsigned long value) : Dyadic(mpz_class(value), 0) {}  // NOLINT
    /// Throws DomainError when mantissa < 0.
    Dyadic(mpz_class mantissa, long exponent);

    /// Parses "110.01" style binary strings.
    static Dyadic from_binary(const std::string &text);
    /// Parses "m/2^e" (e may be negative) or a plain nonnegative integer.
    static Dyadic from_fraction(const std::string &text);
    /// Throws DomainError unless q is nonnegative with a power-of-two denominator.
    static Dyadic from_rational(const Rational &q);

    const mpz_class &mantissa() const { return m_; }
    long exponent() const { return e_; }
    bool is_zero() const { return sgn(m_) == 0; }

    /// Bit j of the binary expansion, floor(x * 2^-j) mod 2, for any integer j.
    int bit(long j) const;
    /// Same value with bit j forced to v; arithmetically x +- 2^j or x.
    Dyadic with_bit(long j, int v) const;
    Dyadic doubled() const;
    Dyadic halved() const;
    /// Highest set bit position; only meaningful when nonzero.
    long top_bit() const;
    /// Lowest set bit position (== -exponent); only meaningful when nonzero.
    long low_bit() const { return -e_; }

    Dyadic operator+(const Dyadic &o) const;
    /// Throws DomainError if the result would be negative.
    Dyadic operator-(const Dyadic &o) const;

    friend bool operator==(const Dyadic &x, const Dyadic &y) { return x.e_ == y.e_ && x.m_ == y.m_; }
    friend std::strong_ordering operator<=>(const Dyadic &x, const Dyadic &y);

    Rational to_rational() const;
    double to_double() const;
    /// Binary with a point, e.g. "110.01"; integers print as "110.0".
    std::string to_binary() const;
    /// "m/2^e" with e >= 0.
    std::string to_fraction() const;

   private:
    mpz_class m_ = 0;
    long e_ = 0;
};

inline int bit(const Dyadic &x, long j) { return x.bit(j); }
inline Dyadic set_bit(const Dyadic &x, long j, int v) { return x.with_bit(j, v); }

std::ostream &operator<<(std::ostream &out, const Dyadic &x);

/// Basis label |r, x, y> of the resource space. r is the offset of Alice's
/// logical qubits relative to the literal digit positions.
struct ResourceLabel {
    long r = 0;
    Dyadic x;
    Dyadic y;

    friend bool operator==(const ResourceLabel &, const ResourceLabel &) = default;
    friend std::strong_ordering operator<=>(const ResourceLabel &, const ResourceLabel &) = default;
};

std::ostream &operator<<(std::ostream &out, const ResourceLabel &label);

/// A resource label prefixed by a fixed number of finite registers (qubits,
/// or qudits for the d-dimensional construction).
template <class Res>
struct Labeled {
    std::vector<std::uint8_t> regs;
    Res res;

    friend bool operator==(const Labeled &, const Labeled &) = default;
    friend std::strong_ordering operator<=>(const Labeled &a, const Labeled &b) {
        if (auto c = a.regs <=> b.regs; c != 0) {
            return c;
        }
        return a.res <=> b.res;
    }
};

using CompositeLabel = Labeled<ResourceLabel>;

template <class Res>
std::ostream &operator<<(std::ostream &out, const Labeled<Res> &label) {
    out << "|";
    for (auto b : label.regs) {
        out << static_cast<int>(b);
    }
    return out << "> (x) " << label.res;
}

}  // namespace embezzle
