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

#include "embezzle/basis.hpp"

#include <algorithm>

namespace embezzle {

Dyadic::Dyadic(mpz_class mantissa, long exponent) : m_(std::move(mantissa)), e_(exponent) {
    if (sgn(m_) < 0) {
        throw DomainError("dyadic rationals here are nonnegative");
    }
    if (sgn(m_) == 0) {
        e_ = 0;
        return;
    }
    auto zeros = static_cast<long>(mpz_scan1(m_.get_mpz_t(), 0));
    if (zeros > 0) {
        mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), static_cast<mp_bitcnt_t>(zeros));
        e_ -= zeros;
    }
}

Dyadic Dyadic::from_binary(const std::string &text) {
    auto point = text.find('.');
    std::string integer_part = text.substr(0, point);
    std::string fraction_part = point == std::string::npos ? "" : text.substr(point + 1);
    std::string digits = integer_part + fraction_part;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0' || c == '1'; })) {
        throw UsageError("malformed binary dyadic '" + text + "'");
    }
    return Dyadic(mpz_class(digits, 2), static_cast<long>(fraction_part.size()));
}

Dyadic Dyadic::from_fraction(const std::string &text) {
    auto slash = text.find("/2^");
    try {
        if (slash == std::string::npos) {
            mpz_class m(text, 10);
            return Dyadic(m, 0);
        }
        mpz_class m(text.substr(0, slash), 10);
        long e = std::stol(text.substr(slash + 3));
        return Dyadic(m, e);
    } catch (const std::invalid_argument &) {
        throw UsageError("malformed dyadic fraction '" + text + "'");
    } catch (const std::out_of_range &) {
        throw UsageError("dyadic exponent out of range in '" + text + "'");
    }
}

Dyadic Dyadic::from_rational(const Rational &q) {
    const mpz_class &den = q.get_den();
    const auto e = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
    if (den != (mpz_class(1) << static_cast<mp_bitcnt_t>(e))) {
        throw DomainError("not a dyadic rational");
    }
    return Dyadic(q.get_num(), e);
}

int Dyadic::bit(long j) const {
    long shift = e_ + j;
    if (shift < 0) {
        return 0;
    }
    return mpz_tstbit(m_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
}

Dyadic Dyadic::with_bit(long j, int v) const {
    if (bit(j) == (v & 1)) {
        return *this;
    }
    // Express over a common exponent so that bit j is an integer bit, flip it.
    long exp = std::max(e_, -j);
    mpz_class m = m_;
    if (exp > e_) {
        m <<= static_cast<mp_bitcnt_t>(exp - e_);
    }
    mpz_combit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(exp + j));
    return Dyadic(m, exp);
}

Dyadic Dyadic::doubled() const {
    Dyadic out = *this;
    if (!is_zero()) {
        out.e_ -= 1;
    }
    return out;
}

Dyadic Dyadic::halved() const {
    Dyadic out = *this;
    if (!is_zero()) {
        out.e_ += 1;
    }
    return out;
}

long Dyadic::top_bit() const {
    return static_cast<long>(mpz_sizeinbase(m_.get_mpz_t(), 2)) - 1 - e_;
}

namespace {

// Both mantissas rescaled to the larger exponent.
std::pair<mpz_class, mpz_class> aligned(const Dyadic &x, const Dyadic &y, long exp) {
    mpz_class mx = x.mantissa();
    mpz_class my = y.mantissa();
    mx <<= static_cast<mp_bitcnt_t>(exp - x.exponent());
    my <<= static_cast<mp_bitcnt_t>(exp - y.exponent());
    return {mx, my};
}

}  // namespace

Dyadic Dyadic::operator+(const Dyadic &o) const {
    long exp = std::max(e_, o.e_);
    auto [mx, my] = aligned(*this, o, exp);
    return Dyadic(mx + my, exp);
}

Dyadic Dyadic::operator-(const Dyadic &o) const {
    long exp = std::max(e_, o.e_);
    auto [mx, my] = aligned(*this, o, exp);
    if (mx < my) {
        throw DomainError("dyadic subtraction would go negative");
    }
    return Dyadic(mx - my, exp);
}

std::strong_ordering operator<=>(const Dyadic &x, const Dyadic &y) {
    if (x == y) {
        return std::strong_ordering::equal;
    }
    long exp = std::max(x.exponent(), y.exponent());
    auto [mx, my] = aligned(x, y, exp);
    int c = cmp(mx, my);
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Rational Dyadic::to_rational() const {
    Rational q;
    if (e_ >= 0) {
        mpz_class den = 1;
        den <<= static_cast<mp_bitcnt_t>(e_);
        q = Rational(m_, den);
    } else {
        mpz_class num = m_;
        num <<= static_cast<mp_bitcnt_t>(-e_);
        q = Rational(num, 1);
    }
    q.canonicalize();
    return q;
}

double Dyadic::to_double() const { return to_rational().get_d(); }

std::string Dyadic::to_binary() const {
    if (is_zero()) {
        return "0.0";
    }
    long hi = std::max(top_bit(), 0L);
    long lo = std::min(low_bit(), -1L);
    std::string out;
    for (long j = hi; j >= lo; --j) {
        out.push_back(static_cast<char>('0' + bit(j)));
        if (j == 0) {
            out.push_back('.');
        }
    }
    return out;
}

std::string Dyadic::to_fraction() const {
    if (e_ <= 0) {
        mpz_class m = m_;
        m <<= static_cast<mp_bitcnt_t>(-e_);
        return m.get_str() + "/2^0";
    }
    return m_.get_str() + "/2^" + std::to_string(e_);
}

std::ostream &operator<<(std::ostream &out, const Dyadic &x) { return out << x.to_binary(); }

std::ostream &operator<<(std::ostream &out, const ResourceLabel &label) {
    return out << "|" << label.r << ", " << label.x << ", " << label.y << ">";
}

}  // namespace embezzle
