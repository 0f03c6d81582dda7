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

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace unital {

namespace detail {

inline int mpz_val(const mpz_class& x, unsigned long p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    mpz_class y = abs(x);
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline int mpq_val(const mpq_class& x, unsigned long p) {
    return mpz_val(x.get_num(), p) - mpz_val(x.get_den(), p);
}

}  // namespace detail

/// p-adic valuations of the nonzero elementary divisors of an integer
/// matrix, sorted ascending.
///
/// Exact elimination over the local ring Z_(p) with rational arithmetic:
/// each step pivots on an entry of minimal valuation, so every multiplier
/// used to clear the pivot column is p-integral and all row operations are
/// invertible over Z_(p). The recorded pivot valuations are exactly the
/// p-parts of the integer Smith invariants.
inline std::vector<int> snf_valuation_multiset(const std::vector<std::vector<int>>& matrix, unsigned long p) {
    constexpr std::size_t kMaxDim = 1024;
    const std::size_t rows = matrix.size();
    const std::size_t cols = rows ? matrix[0].size() : 0;
    if (rows > kMaxDim || cols > kMaxDim) throw std::invalid_argument("snf_valuation_multiset: matrix too large");

    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (matrix[i].size() != cols) throw std::invalid_argument("snf_valuation_multiset: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = matrix[i][j];
    }
    std::vector<std::size_t> live_rows(rows), live_cols(cols);
    for (std::size_t i = 0; i < rows; ++i) live_rows[i] = i;
    for (std::size_t j = 0; j < cols; ++j) live_cols[j] = j;

    std::vector<int> out;
    while (!live_rows.empty() && !live_cols.empty()) {
        int best = -1;
        std::size_t bi = 0, bj = 0;
        for (std::size_t ii = 0; ii < live_rows.size(); ++ii) {
            for (std::size_t jj = 0; jj < live_cols.size(); ++jj) {
                const auto& x = a[live_rows[ii]][live_cols[jj]];
                if (sgn(x) == 0) continue;
                const int v = detail::mpq_val(x, p);
                if (best < 0 || v < best) {
                    best = v;
                    bi = ii;
                    bj = jj;
                    if (v == 0) break;
                }
            }
            if (best == 0) break;
        }
        if (best < 0) break;  // remaining block is zero
        const std::size_t pr = live_rows[bi], pc = live_cols[bj];
        const mpq_class pivot = a[pr][pc];
        for (std::size_t r : live_rows) {
            if (r == pr || sgn(a[r][pc]) == 0) continue;
            const mpq_class factor = a[r][pc] / pivot;
            for (std::size_t c : live_cols) {
                if (sgn(a[pr][c]) == 0) continue;
                a[r][c] -= factor * a[pr][c];
            }
        }
        // Column operations would clear the pivot row without touching the
        // rest, so the row and column are simply retired.
        out.push_back(best);
        live_rows.erase(live_rows.begin() + static_cast<std::ptrdiff_t>(bi));
        live_cols.erase(live_cols.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace unital
