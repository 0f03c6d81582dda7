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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace unital {

// ---------------------------------------------------------------------------
// Digit sums and valuations

inline std::uint64_t digit_sum(std::uint64_t u, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("digit_sum: base must be at least 2");
    std::uint64_t s = 0;
    while (u) {
        s += u % p;
        u /= p;
    }
    return s;
}

inline int val_p(long long u, long long p) {
    if (u == 0) throw std::domain_error("val_p(0) is infinite");
    if (p < 2) throw std::invalid_argument("val_p: p must be at least 2");
    if (u < 0) u = -u;
    int v = 0;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
    return v;
}

/// Legendre: nu_p(n!) = (n - sigma_p(n)) / (p - 1).
inline std::uint64_t factorial_val(std::uint64_t n, std::uint64_t p) { return (n - digit_sum(n, p)) / (p - 1); }

/// nu_p of N! / (k_1! ... k_m!), i.e. the number of carries when adding the
/// k_i in base p.
inline std::uint64_t multinomial_val(std::uint64_t N, std::span<const std::uint64_t> parts, std::uint64_t p) {
    std::uint64_t total = 0, sigma = 0;
    for (auto k : parts) {
        total += k;
        sigma += digit_sum(k, p);
    }
    if (total != N) throw std::invalid_argument("multinomial_val: parts do not sum to N");
    return (sigma - digit_sum(N, p)) / (p - 1);
}

// ---------------------------------------------------------------------------
// Basis monomials and their types

/// Exponent tuple (b_0, ..., b_n) of x_0^b_0 ... x_n^b_n, 0 <= b_i <= q^2 - 1.
struct Monomial {
    std::vector<std::uint32_t> exponents;

    bool is_constant() const {
        return std::all_of(exponents.begin(), exponents.end(), [](auto b) { return b == 0; });
    }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Parameters of the residue field GF(q^2), q = p^t.
struct FieldShape {
    int p;
    int t;
    std::uint64_t q() const { return detail::ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(t)); }
    std::uint64_t q2() const { return q() * q(); }
    int digits() const { return 2 * t; }
};

/// Whether m belongs to the monomial basis of functions on the points of
/// PG(n, q^2): degree divisible by q^2 - 1, not all exponents q^2 - 1.
inline bool is_basis_monomial(const Monomial& m, const FieldShape& fs) {
    const std::uint64_t top = fs.q2() - 1;
    std::uint64_t sum = 0;
    bool all_top = true;
    for (auto b : m.exponents) {
        if (b > top) return false;
        sum += b;
        all_top = all_top && b == top;
    }
    return sum % top == 0 && !all_top;
}

/// All basis monomials in lexicographic order of exponent tuples.
inline std::vector<Monomial> enum_basis_monomials(int n, const FieldShape& fs) {
    const std::uint64_t base = fs.q2();
    long double total = 1;
    for (int i = 0; i <= n; ++i) total *= static_cast<long double>(base);
    if (total > 1e8L) throw std::invalid_argument("enum_basis_monomials: too many exponent tuples");
    const std::size_t len = static_cast<std::size_t>(n) + 1;
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(len, 0);
    while (true) {
        Monomial m{e};
        if (is_basis_monomial(m, fs)) out.push_back(std::move(m));
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++e[i] < base) break;
            e[i] = 0;
            if (i == 0) return out;
        }
    }
}

struct TypeTuples {
    std::vector<int> lambda;               // digit column sums
    std::vector<int> s;                    // H-type
    std::vector<std::uint64_t> twisted;    // (q^2 - 1) s_j
};

/// Type and H-type of a nonconstant monomial.
///
/// lambda_j sums the j-th base-p digits of the exponents. s_j is
/// (1/(q^2-1)) sum_i (p^(2t-j) b_i mod (q^2-1)), where a nonzero b_i whose
/// residue is 0 contributes q^2 - 1. The all-(q^2-1) tuple therefore gets
/// s_j = n + 1.
inline TypeTuples type_of(const Monomial& m, const FieldShape& fs) {
    if (m.is_constant()) throw std::invalid_argument("type_of: the constant monomial has no H-type");
    const std::uint64_t top = fs.q2() - 1;
    const int D = fs.digits();
    const auto p = static_cast<std::uint64_t>(fs.p);
    TypeTuples tt;
    tt.lambda.assign(static_cast<std::size_t>(D), 0);
    tt.s.assign(static_cast<std::size_t>(D), 0);
    tt.twisted.assign(static_cast<std::size_t>(D), 0);
    for (auto b : m.exponents) {
        if (b > top) throw std::invalid_argument("type_of: exponent exceeds q^2 - 1");
        std::uint64_t v = b;
        for (int j = 0; j < D; ++j) {
            tt.lambda[static_cast<std::size_t>(j)] += static_cast<int>(v % p);
            v /= p;
        }
    }
    for (int j = 0; j < D; ++j) {
        const std::uint64_t mult = detail::ipow(p, static_cast<unsigned>(D - j)) % top;
        std::uint64_t sum = 0;
        for (auto b : m.exponents) {
            if (b == 0) continue;
            std::uint64_t r = (mult * b) % top;
            if (r == 0) r = top;
            sum += r;
        }
        if (sum % top != 0) throw std::invalid_argument("type_of: degree not divisible by q^2 - 1");
        tt.twisted[static_cast<std::size_t>(j)] = sum;
        tt.s[static_cast<std::size_t>(j)] = static_cast<int>(sum / top);
    }
    return tt;
}

/// alpha = sum_j max(0, r - s_j).
inline int invariant_exponent(std::span<const int> s, int r) {
    int a = 0;
    for (int sj : s) a += std::max(0, r - sj);
    return a;
}

/// Exponent of the p-adic invariant of A_{r,1} attached to a basis
/// monomial; the constant monomial gives 0.
inline int invariant_exponent(const Monomial& m, const FieldShape& fs, int r) {
    if (m.is_constant()) return 0;
    return invariant_exponent(type_of(m, fs).s, r);
}

/// Predicted multiset (sorted) of invariant exponents for A_{r,1} over
/// PG(n, q^2).
inline std::vector<int> predicted_invariant_multiset(int n, const FieldShape& fs, int r) {
    std::vector<int> out;
    for (const auto& m : enum_basis_monomials(n, fs)) out.push_back(invariant_exponent(m, fs, r));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

/// Exponent theta with p^theta | |S cap H| for S with Property I(r, beta).
/// theta = beta when 2r <= n + 1; otherwise with a = floor(beta/(r-1)) and
/// g = beta - (r-1) a, theta = ceil((n-1)a/2 + min((n-r+g)/2, g)).
inline int theta_bound(int n, int r, int beta) {
    if (r <= 1 || r > n) throw std::invalid_argument("theta_bound: need 1 < r <= n");
    if (beta < 1) throw std::invalid_argument("theta_bound: beta must be positive");
    if (2 * r <= n + 1) return beta;
    const int a = beta / (r - 1);
    const int g = beta - (r - 1) * a;
    const int twice = (n - 1) * a + std::min(n - r + g, 2 * g);
    return (twice + 1) / 2;
}

}  // namespace unital
