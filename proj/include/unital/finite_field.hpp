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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace unital {

/// Element of a finite field in its integer encoding e = sum c_i p^i over the
/// polynomial-basis coefficients. Code 0 is zero and code 1 is one.
struct Elem {
    std::uint32_t code = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint32_t c) : code(c) {}

    constexpr bool is_zero() const { return code == 0; }
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline std::ostream& operator<<(std::ostream& os, Elem e) { return os << e.code; }

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// Dense polynomials over GF(p), index = degree. Only used while building
// tables, so clarity wins over speed here.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    // m is monic
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int lead = a.back();
        for (int i = 0; i <= dm; ++i) {
            int& c = a[static_cast<std::size_t>(i + shift)];
            c = ((c - lead * m[static_cast<std::size_t>(i)]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^d) in polynomial basis modulo a monic irreducible of degree d, with
/// Zech-logarithm tables for the multiplicative and additive structure.
///
/// Fields built by make_field(p, t) have d = 2t and play the role of GF(q^2),
/// q = p^t; GF(q) is identified as the fixed field of x -> x^q. General
/// degrees are accepted so that prime fields can back Galois-ring tests.
class Field {
public:
    static constexpr std::uint32_t kMaxSize = 1u << 16;

    /// Builds GF(p^degree). Without an explicit modulus the lexicographically
    /// smallest monic irreducible is used, comparing coefficients from the
    /// constant term upward.
    static FieldPtr make(int p, int degree, std::optional<std::vector<int>> modulus = std::nullopt) {
        return FieldPtr(new Field(p, degree, std::move(modulus)));
    }

    int p() const { return p_; }
    int degree() const { return degree_; }
    std::uint32_t size() const { return size_; }
    bool has_subfield_half() const { return degree_ % 2 == 0; }
    /// t with q = p^t; requires even degree.
    int t() const {
        require_even();
        return degree_ / 2;
    }
    /// q = p^t, the order of the index-2 subfield.
    std::uint32_t q() const {
        require_even();
        return q_;
    }
    /// Coefficients of the modulus, constant term first, leading 1 included.
    const std::vector<int>& modulus() const { return modulus_; }
    Elem generator() const { return exp_[1]; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }

    Elem element(std::uint32_t code) const {
        if (code >= size_) throw std::out_of_range("field element code " + std::to_string(code) + " out of range");
        return Elem{code};
    }

    std::vector<int> coeffs(Elem a) const {
        std::vector<int> c(static_cast<std::size_t>(degree_));
        std::uint32_t v = a.code;
        for (auto& x : c) {
            x = static_cast<int>(v % static_cast<std::uint32_t>(p_));
            v /= static_cast<std::uint32_t>(p_);
        }
        return c;
    }

    Elem from_coeffs(std::span<const int> c) const {
        if (c.size() > static_cast<std::size_t>(degree_)) throw std::invalid_argument("too many coefficients");
        std::uint32_t code = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            const int v = ((c[i] % p_) + p_) % p_;
            code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(v);
        }
        return Elem{code};
    }

    /// Image of an integer under Z -> GF(p) -> GF(p^d).
    Elem from_int(long long v) const {
        const long long r = ((v % p_) + p_) % p_;
        return Elem{static_cast<std::uint32_t>(r)};
    }

    // Arithmetic. Logs live in [0, size-1); exp_ is doubled to skip a modulo.

    Elem add(Elem a, Elem b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (p_ == 2) return Elem{a.code ^ b.code};
        const std::uint32_t la = log_[a.code];
        const std::uint32_t lb = log_[b.code];
        const std::uint32_t d = lb >= la ? lb - la : lb + order_ - la;
        const std::uint32_t z = zech_[d];
        if (z == kNoLog) return Elem{0};
        return exp_[la + z];
    }

    Elem neg(Elem a) const {
        if (a.is_zero() || p_ == 2) return a;
        return exp_[log_[a.code] + order_ / 2];
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a.is_zero() || b.is_zero()) return Elem{0};
        return exp_[log_[a.code] + log_[b.code]];
    }

    Elem inv(Elem a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero");
        const std::uint32_t l = log_[a.code];
        return exp_[l == 0 ? 0 : order_ - l];
    }

    Elem div(Elem a, Elem b) const {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return mul(a, inv(b));
    }

    Elem pow(Elem a, std::uint64_t k) const {
        if (k == 0) return one();
        if (a.is_zero()) return a;
        const std::uint64_t l = (static_cast<std::uint64_t>(log_[a.code]) * (k % order_)) % order_;
        return exp_[l];
    }

    /// Discrete log to the base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const {
        if (a.is_zero()) throw std::domain_error("log of zero");
        return log_[a.code];
    }

    Elem exp(std::uint64_t l) const { return exp_[l % order_]; }

    /// x^(p^k).
    Elem frobenius(Elem x, long long k) const {
        if (x.is_zero()) return x;
        long long kk = k % degree_;
        if (kk < 0) kk += degree_;
        std::uint64_t l = log_[x.code];
        for (long long i = 0; i < kk; ++i) l = (l * static_cast<std::uint64_t>(p_)) % order_;
        return exp_[l];
    }

    /// x^q, the involution of GF(q^2) over GF(q).
    Elem conj(Elem x) const { return frobenius(x, t()); }

    bool in_subfield(Elem x) const { return conj(x) == x; }

    /// x^(q+1).
    Elem norm(Elem x) const { return mul(x, conj(x)); }

    /// x + x^q.
    Elem trace(Elem x) const { return add(x, conj(x)); }

    /// Trace from GF(q) down to GF(p); x must lie in GF(q).
    int abs_trace(Elem x) const {
        if (!in_subfield(x)) throw std::domain_error("abs_trace: element not in GF(q)");
        Elem acc = zero();
        Elem y = x;
        for (int i = 0; i < t(); ++i) {
            acc = add(acc, y);
            y = frobenius(y, 1);
        }
        if (acc.code >= static_cast<std::uint32_t>(p_)) throw std::logic_error("abs_trace left GF(p)");
        return static_cast<int>(acc.code);
    }

    /// Square test in GF(q) for odd q; zero counts as a square.
    bool is_square(Elem x) const {
        if (p_ == 2) throw std::domain_error("is_square: q must be odd");
        if (!in_subfield(x)) throw std::domain_error("is_square: element not in GF(q)");
        if (x.is_zero()) return true;
        return pow(x, (q_ - 1) / 2) == one();
    }

    /// Elements of GF(q) in increasing code order.
    const std::vector<Elem>& subfield_elements() const {
        require_even();
        return subfield_;
    }

private:
    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    Field(int p, int degree, std::optional<std::vector<int>> modulus) : p_(p), degree_(degree) {
        if (p < 2 || !detail::is_prime(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
        if (degree < 1) throw std::invalid_argument("field degree must be positive");
        std::uint64_t sz = 1;
        for (int i = 0; i < degree; ++i) {
            sz *= static_cast<std::uint64_t>(p);
            if (sz > kMaxSize) throw std::invalid_argument("field size exceeds table limit 2^16");
        }
        size_ = static_cast<std::uint32_t>(sz);
        order_ = size_ - 1;
        if (degree % 2 == 0) q_ = static_cast<std::uint32_t>(detail::ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(degree / 2)));

        if (modulus) {
            modulus_ = *modulus;
            if (modulus_.size() != static_cast<std::size_t>(degree + 1) || modulus_.back() != 1)
                throw std::invalid_argument("modulus must be monic of the field degree");
            for (int c : modulus_)
                if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
            if (!is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is reducible");
        } else {
            modulus_ = smallest_irreducible(p, degree);
        }
        build_tables();
    }

    void require_even() const {
        if (degree_ % 2 != 0) throw std::logic_error("field has no index-2 subfield");
    }

    // Trial division by every monic polynomial of degree 1..deg/2.
    static bool is_irreducible(const detail::Poly& f, int p) {
        const int deg = static_cast<int>(f.size()) - 1;
        for (int d = 1; 2 * d <= deg; ++d) {
            const std::uint64_t count = detail::ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(d));
            for (std::uint64_t code = 0; code < count; ++code) {
                detail::Poly g(static_cast<std::size_t>(d + 1));
                std::uint64_t v = code;
                for (int i = 0; i < d; ++i) {
                    g[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p));
                    v /= static_cast<std::uint64_t>(p);
                }
                g[static_cast<std::size_t>(d)] = 1;
                if (detail::poly_mod(f, g, p).empty()) return false;
            }
        }
        return true;
    }

    static detail::Poly smallest_irreducible(int p, int deg) {
        // Enumerate (c_0, ..., c_{deg-1}) lexicographically with c_0 most significant.
        const std::uint64_t count = detail::ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(deg));
        for (std::uint64_t m = 0; m < count; ++m) {
            detail::Poly f(static_cast<std::size_t>(deg + 1));
            std::uint64_t v = m;
            for (int i = deg - 1; i >= 0; --i) {
                f[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p));
                v /= static_cast<std::uint64_t>(p);
            }
            f[static_cast<std::size_t>(deg)] = 1;
            if (is_irreducible(f, p)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    std::uint32_t encode(const detail::Poly& a) const {
        std::uint32_t code = 0;
        for (std::size_t i = a.size(); i-- > 0;) code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(a[i]);
        return code;
    }

    detail::Poly decode(std::uint32_t code) const {
        detail::Poly a;
        while (code) {
            a.push_back(static_cast<int>(code % static_cast<std::uint32_t>(p_)));
            code /= static_cast<std::uint32_t>(p_);
        }
        return a;
    }

    void build_tables() {
        log_.assign(size_, kNoLog);
        exp_.assign(2 * static_cast<std::size_t>(order_) + 1, Elem{});
        if (size_ == 2) {
            log_[1] = 0;
            exp_.assign(3, Elem{1});
            zech_.assign(1, kNoLog);
            build_subfield();
            return;
        }
        // Search for a primitive element by walking its powers.
        for (std::uint32_t cand = 2; cand < size_; ++cand) {
            const detail::Poly g = decode(cand);
            detail::Poly cur{1};
            std::uint32_t k = 0;
            bool primitive = true;
            std::fill(log_.begin(), log_.end(), kNoLog);
            while (true) {
                const std::uint32_t c = encode(cur);
                if (k > 0 && c == 1) break;
                if (log_[c] != kNoLog) {
                    primitive = false;
                    break;
                }
                log_[c] = k;
                exp_[k] = Elem{c};
                cur = detail::poly_mulmod(cur, g, modulus_, p_);
                ++k;
            }
            if (primitive && k == order_) break;
            if (cand + 1 == size_) throw std::logic_error("no primitive element");
        }
        for (std::uint32_t i = order_; i < exp_.size(); ++i) exp_[i] = exp_[i - order_];

        // zech_[k] = log(1 + g^k), computed coefficientwise.
        zech_.assign(order_, kNoLog);
        for (std::uint32_t k = 0; k < order_; ++k) {
            detail::Poly a = decode(exp_[k].code);
            if (a.empty()) a.push_back(0);
            a[0] = (a[0] + 1) % p_;
            detail::trim(a);
            const std::uint32_t c = encode(a);
            zech_[k] = c == 0 ? kNoLog : log_[c];
        }
        build_subfield();
    }

    void build_subfield() {
        if (degree_ % 2 != 0) return;
        for (std::uint32_t c = 0; c < size_; ++c)
            if (conj(Elem{c}) == Elem{c}) subfield_.push_back(Elem{c});
    }

    int p_;
    int degree_;
    std::uint32_t size_ = 0;
    std::uint32_t order_ = 0;
    std::uint32_t q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> zech_;
    std::vector<Elem> subfield_;
};

/// GF(q^2) with q = p^t.
inline FieldPtr make_field(int p, int t) {
    if (t < 1) throw std::invalid_argument("t must be positive");
    return Field::make(p, 2 * t);
}

/// Value-semantic element bound to its field. Arithmetic between elements of
/// different fields throws.
class FieldElem {
public:
    FieldElem(FieldPtr f, Elem e) : field_(std::move(f)), e_(e) {
        if (e_.code >= field_->size()) throw std::out_of_range("element code out of range");
    }

    const FieldPtr& field() const { return field_; }
    Elem elem() const { return e_; }
    std::uint32_t code() const { return e_.code; }
    bool is_zero() const { return e_.is_zero(); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) { return {a.same(b), a.field_->add(a.e_, b.e_)}; }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return {a.same(b), a.field_->sub(a.e_, b.e_)}; }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) { return {a.same(b), a.field_->mul(a.e_, b.e_)}; }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return {a.same(b), a.field_->div(a.e_, b.e_)}; }
    FieldElem operator-() const { return {field_, field_->neg(e_)}; }
    FieldElem inv() const { return {field_, field_->inv(e_)}; }
    FieldElem pow(std::uint64_t k) const { return {field_, field_->pow(e_, k)}; }
    FieldElem frobenius(long long k) const { return {field_, field_->frobenius(e_, k)}; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.field_ == b.field_ && a.e_ == b.e_; }

private:
    const FieldPtr& same(const FieldElem& other) const {
        if (field_ != other.field_) throw std::invalid_argument("operands belong to different fields");
        return field_;
    }

    FieldPtr field_;
    Elem e_;
};

}  // namespace unital
