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

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "embezzle/basis.hpp"
#include "embezzle/exact_scalar.hpp"

namespace embezzle {

/// Raised when a state grows past its support cap.
class CapacityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// A finitely supported vector over labels of type Key.
///
/// Terms are kept in label order and zero amplitudes are never stored, so two
/// states holding the same vector compare equal term by term. States are not
/// normalized automatically.
template <class Key, class Scalar>
class SparseVector {
   public:
    using key_type = Key;
    using scalar_type = Scalar;
    using Traits = ScalarTraits<Scalar>;
    using const_iterator = typename std::map<Key, Scalar>::const_iterator;

    explicit SparseVector(std::size_t arity = 0, std::size_t cap = kDefaultSupportCap) : arity_(arity), cap_(cap) {}

    static SparseVector basis(const Key &key, const Scalar &amp = Traits::one()) {
        SparseVector s(key.regs.size());
        s.accumulate(key, amp);
        return s;
    }

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    std::size_t cap() const { return cap_; }
    void set_cap(std::size_t cap) { cap_ = cap; }

    Scalar amplitude(const Key &key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// Adds amp to the coefficient of key, dropping the term if it cancels.
    void accumulate(const Key &key, const Scalar &amp) {
        if (key.regs.size() != arity_) {
            throw UsageError("register arity mismatch: state has " + std::to_string(arity_) + ", label has " +
                             std::to_string(key.regs.size()));
        }
        if (Traits::negligible(amp)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(key, amp);
        if (!inserted) {
            it->second += amp;
            if (Traits::negligible(it->second)) {
                terms_.erase(it);
            }
        } else if (terms_.size() > cap_) {
            throw CapacityError("sparse state exceeded support cap of " + std::to_string(cap_) + " terms");
        }
    }

    SparseVector &operator+=(const SparseVector &o) {
        require_compatible(o);
        for (const auto &[k, v] : o.terms_) {
            accumulate(k, v);
        }
        return *this;
    }
    SparseVector &operator-=(const SparseVector &o) {
        require_compatible(o);
        for (const auto &[k, v] : o.terms_) {
            accumulate(k, -v);
        }
        return *this;
    }
    SparseVector &operator*=(const Scalar &c) {
        if (Traits::negligible(c)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= c;
            it = Traits::negligible(it->second) ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend SparseVector operator+(SparseVector s, const SparseVector &t) { return s += t; }
    friend SparseVector operator-(SparseVector s, const SparseVector &t) { return s -= t; }
    friend SparseVector operator*(const Scalar &c, SparseVector s) { return s *= c; }

    /// Sum over shared labels of conj(this) * other.
    Scalar inner(const SparseVector &o) const {
        require_compatible(o);
        Scalar acc = Traits::zero();
        const auto *small = this;
        const auto *large = &o;
        if (small->size() > large->size()) {
            std::swap(small, large);
        }
        for (const auto &[k, v] : small->terms_) {
            auto it = large->terms_.find(k);
            if (it == large->terms_.end()) {
                continue;
            }
            const Scalar &mine = small == this ? v : it->second;
            const Scalar &theirs = small == this ? it->second : v;
            acc += Traits::conj(mine) * theirs;
        }
        return acc;
    }

    Scalar norm2() const { return inner(*this); }

    /// Exact term equality in exact mode; sup-norm difference below eps in
    /// float mode.
    bool equals(const SparseVector &o, double eps = kDefaultEpsilon) const {
        require_compatible(o);
        return max_difference_within(o, eps);
    }

    void require_compatible(const SparseVector &o) const {
        if (arity_ != o.arity_) {
            throw UsageError("register arity mismatch between states: " + std::to_string(arity_) + " vs " +
                             std::to_string(o.arity_));
        }
    }

    /// Applies f to every label, summing amplitudes that collide.
    template <class F>
    SparseVector relabeled(F &&f, std::size_t new_arity) const {
        SparseVector out(new_arity, cap_);
        for (const auto &[k, v] : terms_) {
            out.accumulate(f(k), v);
        }
        return out;
    }

    /// Keeps only terms whose label satisfies pred.
    template <class P>
    SparseVector filtered(P &&pred) const {
        SparseVector out(arity_, cap_);
        for (const auto &[k, v] : terms_) {
            if (pred(k)) {
                out.terms_.emplace(k, v);
            }
        }
        return out;
    }

    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (const auto &[k, v] : terms_) {
            out << (first ? "" : " + ") << v << " " << k;
            first = false;
        }
        if (first) {
            out << "0";
        }
        return out.str();
    }

   private:
    bool max_difference_within(const SparseVector &o, double eps) const {
        for (const auto &[k, v] : terms_) {
            if (!Traits::close(v, o.amplitude(k), eps)) {
                return false;
            }
        }
        for (const auto &[k, v] : o.terms_) {
            if (!terms_.contains(k) && !Traits::close(Traits::zero(), v, eps)) {
                return false;
            }
        }
        return true;
    }

    std::map<Key, Scalar> terms_;
    std::size_t arity_;
    std::size_t cap_;
};

using SparseState = SparseVector<CompositeLabel, ExactScalar>;
using FloatSparseState = SparseVector<CompositeLabel, FloatScalar>;

template <class Key, class Scalar>
Scalar inner(const SparseVector<Key, Scalar> &s, const SparseVector<Key, Scalar> &t) {
    return s.inner(t);
}

template <class Key, class Scalar>
bool equal(const SparseVector<Key, Scalar> &s, const SparseVector<Key, Scalar> &t, double eps = kDefaultEpsilon) {
    return s.equals(t, eps);
}

/// Embeds an exact state into float mode.
template <class Key>
SparseVector<Key, FloatScalar> to_float(const SparseVector<Key, ExactScalar> &s) {
    SparseVector<Key, FloatScalar> out(s.arity(), s.cap());
    for (const auto &[k, v] : s) {
        out.accumulate(k, exact_to_float(v));
    }
    return out;
}

/// Tensor product of register values with a register-free state.
template <class Res, class Scalar>
SparseVector<Labeled<Res>, Scalar> with_registers(const std::vector<std::uint8_t> &regs,
                                                  const SparseVector<Labeled<Res>, Scalar> &resource) {
    if (resource.arity() != 0) {
        throw UsageError("with_registers expects a register-free state");
    }
    return resource.relabeled([&](const Labeled<Res> &k) { return Labeled<Res>{regs, k.res}; }, regs.size());
}

}  // namespace embezzle
