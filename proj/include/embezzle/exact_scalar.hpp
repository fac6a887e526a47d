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

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace embezzle {

/// Raised when an operation is called outside its mathematical domain
/// (inverting zero, a dyadic going negative).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Raised on caller mistakes: mismatched register arity, malformed input.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Complex double used by every floating-point code path.
using FloatScalar = std::complex<double>;

/// Default comparison tolerance for floating-point results.
inline constexpr double kDefaultEpsilon = 1e-9;

Rational parse_rational(const std::string &text);
/// Always "p/q", including integers ("2/1").
std::string format_rational(const Rational &q);

/// An element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
///
/// The representation is unique because sqrt(2) is irrational, so equality
/// is plain component equality and stays decidable under any amount of
/// arithmetic.
class ExactScalar {
   public:
    ExactScalar() = default;
    ExactScalar(long a) : a_(a), b_(0) {}  // NOLINT: integers embed implicitly
    ExactScalar(Rational a, Rational b = 0);

    static ExactScalar sqrt2() { return ExactScalar(0, 1); }
    /// 1/sqrt(2) == (0, 1/2).
    static ExactScalar inv_sqrt2() { return ExactScalar(0, Rational(1, 2)); }

    const Rational &a() const { return a_; }
    const Rational &b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    /// Exact sign of a + b*sqrt(2).
    int sign() const;

    /// The Galois conjugate a - b*sqrt(2).
    ExactScalar galois_conjugate() const { return ExactScalar(a_, -b_); }
    /// Field norm a^2 - 2 b^2; zero only for zero.
    Rational field_norm() const { return a_ * a_ - 2 * b_ * b_; }
    /// Throws DomainError on zero.
    ExactScalar inverse() const;

    double to_double() const;

    ExactScalar &operator+=(const ExactScalar &o);
    ExactScalar &operator-=(const ExactScalar &o);
    ExactScalar &operator*=(const ExactScalar &o);
    ExactScalar &operator/=(const ExactScalar &o) { return *this *= o.inverse(); }

    friend ExactScalar operator+(ExactScalar x, const ExactScalar &y) { return x += y; }
    friend ExactScalar operator-(ExactScalar x, const ExactScalar &y) { return x -= y; }
    friend ExactScalar operator*(ExactScalar x, const ExactScalar &y) { return x *= y; }
    friend ExactScalar operator/(ExactScalar x, const ExactScalar &y) { return x /= y; }
    ExactScalar operator-() const { return ExactScalar(-a_, -b_); }

    friend bool operator==(const ExactScalar &x, const ExactScalar &y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator<(const ExactScalar &x, const ExactScalar &y) {
        return (x - y).sign() < 0;
    }

    std::string str() const;
    friend std::ostream &operator<<(std::ostream &out, const ExactScalar &x) { return out << x.str(); }

   private:
    Rational a_ = 0;
    Rational b_ = 0;
};

inline ExactScalar exact_add(const ExactScalar &x, const ExactScalar &y) { return x + y; }
inline ExactScalar exact_mul(const ExactScalar &x, const ExactScalar &y) { return x * y; }
inline ExactScalar exact_neg(const ExactScalar &x) { return -x; }
inline ExactScalar exact_inv(const ExactScalar &x) { return x.inverse(); }
inline FloatScalar exact_to_float(const ExactScalar &x) { return {x.to_double(), 0.0}; }

/// Per-scalar hooks used by the generic state and kernel templates.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
    static constexpr const char *mode = "exact";
    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return ExactScalar(1); }
    static ExactScalar inv_sqrt2() { return ExactScalar::inv_sqrt2(); }
    static ExactScalar sqrt2() { return ExactScalar::sqrt2(); }
    static ExactScalar conj(const ExactScalar &x) { return x; }
    static bool negligible(const ExactScalar &x) { return x.is_zero(); }
    static bool close(const ExactScalar &x, const ExactScalar &y, double) { return x == y; }
    static FloatScalar to_float(const ExactScalar &x) { return exact_to_float(x); }
    /// |x|^2 stays exact because the field is real.
    static ExactScalar abs2(const ExactScalar &x) { return x * x; }
};

template <>
struct ScalarTraits<FloatScalar> {
    static constexpr const char *mode = "float";
    /// Amplitudes below this magnitude are dropped from sparse states.
    static constexpr double prune_threshold = 1e-14;
    static FloatScalar zero() { return {}; }
    static FloatScalar one() { return {1.0, 0.0}; }
    static FloatScalar inv_sqrt2() { return {0.70710678118654752440, 0.0}; }
    static FloatScalar sqrt2() { return {1.41421356237309504880, 0.0}; }
    static FloatScalar conj(const FloatScalar &x) { return std::conj(x); }
    static bool negligible(const FloatScalar &x) { return std::abs(x) < prune_threshold; }
    static bool close(const FloatScalar &x, const FloatScalar &y, double eps) { return std::abs(x - y) < eps; }
    static FloatScalar to_float(const FloatScalar &x) { return x; }
    static FloatScalar abs2(const FloatScalar &x) { return {std::norm(x), 0.0}; }
};

}  // namespace embezzle
