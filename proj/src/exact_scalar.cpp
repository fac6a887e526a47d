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

#include "embezzle/exact_scalar.hpp"

#include <cmath>

namespace embezzle {

Rational parse_rational(const std::string &text) {
    std::string cleaned = text;
    // Accept a unicode minus sign, which shows up in hand-written files.
    const std::string unicode_minus = "\xE2\x88\x92";
    if (cleaned.rfind(unicode_minus, 0) == 0) {
        cleaned = "-" + cleaned.substr(unicode_minus.size());
    }
    if (cleaned.empty()) {
        throw UsageError("empty rational literal");
    }
    Rational q;
    if (q.set_str(cleaned, 10) != 0) {
        throw UsageError("malformed rational literal '" + text + "'");
    }
    if (sgn(q.get_den()) == 0) {
        throw UsageError("zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational &q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactScalar::ExactScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

int ExactScalar::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sa == sb) {
        return sa;
    }
    if (sa == 0) {
        return sb;
    }
    if (sb == 0) {
        return sa;
    }
    // Opposite signs: compare a^2 against 2 b^2.
    int cmp_sq = ::cmp(a_ * a_, 2 * b_ * b_);
    return cmp_sq > 0 ? sa : (cmp_sq < 0 ? sb : 0);
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) {
        throw DomainError("inverse of zero in Q(sqrt 2)");
    }
    Rational n = field_norm();
    return ExactScalar(a_ / n, -b_ / n);
}

double ExactScalar::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(2.0);
}

ExactScalar &ExactScalar::operator+=(const ExactScalar &o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

ExactScalar &ExactScalar::operator-=(const ExactScalar &o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

ExactScalar &ExactScalar::operator*=(const ExactScalar &o) {
    Rational a = a_ * o.a_ + 2 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

std::string ExactScalar::str() const {
    return "(" + format_rational(a_) + ", " + format_rational(b_) + ")";
}

}  // namespace embezzle
