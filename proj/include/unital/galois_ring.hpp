// Copyright 2026 The unital Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace unital {

/// Element of Z/p^k[X]/(F). Coefficients are kept reduced into [0, p^k).
struct GaloisRingElem {
    std::vector<std::uint64_t> coeffs;

    friend bool operator==(const GaloisRingElem&, const GaloisRingElem&) = default;
};

class GaloisRing;
using GaloisRingPtr = std::shared_ptr<const GaloisRing>;

/// The Galois ring GR(p^k, d) whose residue field is a given GF(p^d).
///
/// The defining polynomial is the Hensel lift of the field modulus whose
/// roots are Teichmuller elements, so reducing coefficients mod p maps ring
/// elements onto field elements in the same polynomial basis.
class GaloisRing {
public:
    static GaloisRingPtr make(FieldPtr field, int k) { return GaloisRingPtr(new GaloisRing(std::move(field), k)); }

    const FieldPtr& field() const { return field_; }
    const Field& residue_field() const { return *field_; }
    int precision() const { return k_; }
    int degree() const { return d_; }
    std::uint64_t characteristic() const { return mod_; }
    /// Lower coefficients of the monic defining polynomial.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    /// p^(dk), as a floating value since it overflows integers quickly.
    long double element_count() const {
        long double c = 1;
        for (int i = 0; i < d_ * k_; ++i) c *= field_->p();
        return c;
    }

    GaloisRingElem zero() const { return GaloisRingElem{std::vector<std::uint64_t>(static_cast<std::size_t>(d_), 0)}; }
    GaloisRingElem scalar(long long v) const {
        auto r = zero();
        const long long m = static_cast<long long>(mod_);
        r.coeffs[0] = static_cast<std::uint64_t>(((v % m) + m) % m);
        return r;
    }
    GaloisRingElem one() const { return scalar(1); }

    GaloisRingElem add(const GaloisRingElem& a, const GaloisRingElem& b) const {
        auto r = zero();
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % mod_;
        return r;
    }

    GaloisRingElem sub(const GaloisRingElem& a, const GaloisRingElem& b) const {
        auto r = zero();
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = (a.coeffs[i] + mod_ - b.coeffs[i]) % mod_;
        return r;
    }

    GaloisRingElem mul(const GaloisRingElem& a, const GaloisRingElem& b) const { return mul_with(a, b, modulus_); }

    GaloisRingElem pow(GaloisRingElem a, std::uint64_t e) const {
        auto r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    /// Coefficientwise reduction mod p.
    Elem reduce(const GaloisRingElem& a) const {
        std::vector<int> c(static_cast<std::size_t>(d_));
        const auto p = static_cast<std::uint64_t>(field_->p());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<int>(a.coeffs[i] % p);
        return field_->from_coeffs(c);
    }

    /// Coefficientwise reduction mod p^e, e <= k.
    GaloisRingElem reduce_mod_power(const GaloisRingElem& a, int e) const {
        if (e < 0 || e > k_) throw std::out_of_range("reduction exponent exceeds ring precision");
        const std::uint64_t m = detail::ipow(static_cast<std::uint64_t>(field_->p()), static_cast<unsigned>(e));
        auto r = a;
        for (auto& c : r.coeffs) c %= m;
        return r;
    }

    /// True when a is congruent to the integer v modulo p^e.
    bool congruent(const GaloisRingElem& a, long long v, int e) const {
        return reduce_mod_power(a, e) == reduce_mod_power(scalar(v), e);
    }

    /// Lift of a field element with coefficients copied into [0, p).
    GaloisRingElem naive_lift(Elem x) const {
        auto r = zero();
        const auto c = field_->coeffs(x);
        for (std::size_t i = 0; i < c.size(); ++i) r.coeffs[i] = static_cast<std::uint64_t>(c[i]);
        return r;
    }

    /// The unique y with y^(p^d) = y and y = x mod p.
    GaloisRingElem teichmuller(Elem x) const {
        const std::uint64_t frob = field_->size();
        auto y = naive_lift(x);
        // Each pass gains at least one p-adic digit.
        for (int i = 0; i <= k_; ++i) {
            auto next = pow(y, frob);
            if (next == y) return y;
            y = std::move(next);
        }
        throw std::logic_error("Teichmuller iteration did not converge");
    }

    /// sum over x in the residue field of T(x)^j.
    GaloisRingElem teichmuller_power_sum(std::uint64_t j) const {
        auto acc = zero();
        for (std::uint32_t c = 0; c < field_->size(); ++c) acc = add(acc, pow(teichmuller(Elem{c}), j));
        return acc;
    }

    /// (sum_i T(x_i)^(q+1))^(q^(2l+1) - q^(2l)). Modulo q^(2l) this is the
    /// 0/1 indicator of the complement of x_0^(q+1) + ... + x_n^(q+1) = 0.
    GaloisRingElem herm_char_value(std::span<const Elem> coords, int ell) const {
        if (ell < 1) throw std::invalid_argument("ell must be positive");
        const int t = field_->t();
        if (k_ < 2 * ell * t)
            throw std::invalid_argument("ring precision " + std::to_string(k_) + " below 2*ell*t = " + std::to_string(2 * ell * t));
        const std::uint64_t q = field_->q();
        auto acc = zero();
        for (Elem x : coords) acc = add(acc, pow(teichmuller(x), q + 1));
        const std::uint64_t q2l = checked_pow(q, static_cast<unsigned>(2 * ell));
        const std::uint64_t exponent = checked_mul(q2l, q) - q2l;
        return pow(acc, exponent);
    }

private:
    GaloisRing(FieldPtr field, int k) : field_(std::move(field)), k_(k) {
        if (k < 1) throw std::invalid_argument("ring precision must be positive");
        d_ = field_->degree();
        long double m = 1;
        for (int i = 0; i < k; ++i) m *= field_->p();
        if (m > static_cast<long double>(1u << 31)) throw std::invalid_argument("p^k exceeds 2^31");
        mod_ = detail::ipow(static_cast<std::uint64_t>(field_->p()), static_cast<unsigned>(k));
        modulus_ = hensel_lift_modulus();
    }

    static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > UINT64_MAX / a) throw std::overflow_error("exponent overflow");
        return a * b;
    }

    static std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
        std::uint64_t r = 1;
        while (e--) r = checked_mul(r, b);
        return r;
    }

    GaloisRingElem mul_with(const GaloisRingElem& a, const GaloisRingElem& b, const std::vector<std::uint64_t>& lower) const {
        std::vector<std::uint64_t> prod(2 * static_cast<std::size_t>(d_) - 1, 0);
        for (int i = 0; i < d_; ++i) {
            if (a.coeffs[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < d_; ++j) {
                auto& slot = prod[static_cast<std::size_t>(i + j)];
                slot = (slot + a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(j)]) % mod_;
            }
        }
        // X^d = -sum lower_i X^i
        for (int deg = 2 * d_ - 2; deg >= d_; --deg) {
            const std::uint64_t lead = prod[static_cast<std::size_t>(deg)];
            if (lead == 0) continue;
            prod[static_cast<std::size_t>(deg)] = 0;
            for (int i = 0; i < d_; ++i) {
                auto& slot = prod[static_cast<std::size_t>(deg - d_ + i)];
                slot = (slot + mod_ - (lead * lower[static_cast<std::size_t>(i)]) % mod_) % mod_;
            }
        }
        prod.resize(static_cast<std::size_t>(d_));
        return GaloisRingElem{std::move(prod)};
    }

    // Build GR from the naive lift F0 of the field modulus, take the
    // Teichmuller lift xi of the root X, and return the coefficients of
    // prod_i (Y - xi^(p^i)); those coefficients are scalars in Z/p^k.
    std::vector<std::uint64_t> hensel_lift_modulus() const {
        std::vector<std::uint64_t> lower(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) lower[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(field_->modulus()[static_cast<std::size_t>(i)]);
        if (k_ == 1) return lower;

        auto mul0 = [&](const GaloisRingElem& a, const GaloisRingElem& b) { return mul_with(a, b, lower); };
        auto pow0 = [&](GaloisRingElem a, std::uint64_t e) {
            auto r = scalar(1);
            while (e) {
                if (e & 1) r = mul0(r, a);
                e >>= 1;
                if (e) a = mul0(a, a);
            }
            return r;
        };

        GaloisRingElem root = zero();
        if (d_ == 1) {
            root.coeffs[0] = (mod_ - lower[0]) % mod_;
        } else {
            root.coeffs[1] = 1;
        }
        const std::uint64_t frob = field_->size();
        for (int i = 0; i <= k_; ++i) {
            auto next = pow0(root, frob);
            if (next == root) break;
            root = std::move(next);
        }

        // Polynomial in Y with ring-element coefficients, low degree first.
        std::vector<GaloisRingElem> poly{scalar(1)};
        GaloisRingElem conjugate = root;
        for (int i = 0; i < d_; ++i) {
            std::vector<GaloisRingElem> next(poly.size() + 1, zero());
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] = add(next[j + 1], poly[j]);
                next[j] = sub(next[j], mul0(poly[j], conjugate));
            }
            poly = std::move(next);
            conjugate = pow0(conjugate, static_cast<std::uint64_t>(field_->p()));
        }
        std::vector<std::uint64_t> out(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) {
            const auto& c = poly[static_cast<std::size_t>(i)].coeffs;
            for (int j = 1; j < d_; ++j)
                if (c[static_cast<std::size_t>(j)] != 0) throw std::logic_error("lifted modulus has non-scalar coefficient");
            out[static_cast<std::size_t>(i)] = c[0];
            if (c[0] % static_cast<std::uint64_t>(field_->p()) != lower[static_cast<std::size_t>(i)])
                throw std::logic_error("lifted modulus does not reduce to the field modulus");
        }
        return out;
    }

    FieldPtr field_;
    int k_;
    int d_ = 0;
    std::uint64_t mod_ = 0;
    std::vector<std::uint64_t> modulus_;
};

inline GaloisRingPtr make_ring(FieldPtr field, int k) { return GaloisRing::make(std::move(field), k); }

}  // namespace unital
