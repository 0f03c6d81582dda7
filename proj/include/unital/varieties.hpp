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
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"
#include "proj_geom.hpp"

namespace unital {

/// Deterministic uniform draw in [0, n) from a 64-bit engine. Rejection
/// sampling keeps the stream identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Sesquilinear form x^q^T M x over GF(q^2) with M conjugate-symmetric:
/// M(j, i) = M(i, j)^q.
class HermitianForm {
public:
    HermitianForm(FieldPtr field, FieldMatrix matrix, bool allow_degenerate = false)
        : field_(std::move(field)), m_(std::move(matrix)) {
        if (m_.rows != m_.cols || m_.rows < 2) throw std::invalid_argument("Hermitian form needs a square matrix of size >= 2");
        for (std::size_t i = 0; i < m_.rows; ++i)
            for (std::size_t j = 0; j < m_.cols; ++j)
                if (m_(j, i) != field_->conj(m_(i, j))) throw std::invalid_argument("matrix is not conjugate-symmetric");
        degenerate_ = determinant(*field_, m_).is_zero();
        if (degenerate_ && !allow_degenerate) throw std::invalid_argument("Hermitian form is singular");
    }

    /// x_0^(q+1) + ... + x_n^(q+1).
    static HermitianForm canonical(FieldPtr field, int n) {
        return HermitianForm(std::move(field), FieldMatrix::identity(static_cast<std::size_t>(n) + 1));
    }

    const FieldPtr& field() const { return field_; }
    const FieldMatrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows) - 1; }
    bool degenerate() const { return degenerate_; }

    /// sum_{i,j} x_i^q M(i,j) x_j; always lies in GF(q).
    Elem evaluate(std::span<const Elem> x) const {
        const Field& f = *field_;
        Elem acc{};
        for (std::size_t i = 0; i < m_.rows; ++i) {
            if (x[i].is_zero()) continue;
            Elem row{};
            for (std::size_t j = 0; j < m_.cols; ++j) row = f.add(row, f.mul(m_(i, j), x[j]));
            acc = f.add(acc, f.mul(f.conj(x[i]), row));
        }
        return acc;
    }

    friend bool operator==(const HermitianForm& a, const HermitianForm& b) { return a.field_ == b.field_ && a.m_ == b.m_; }

private:
    FieldPtr field_;
    FieldMatrix m_;
    bool degenerate_ = false;
};

inline PointSet hermitian_variety(const SpacePtr& space, const HermitianForm& form) {
    if (form.degenerate()) throw std::invalid_argument("hermitian_variety: singular form");
    if (form.dim() != space->dim() || form.field() != space->field_ptr()) throw std::invalid_argument("form and space do not match");
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < space->num_points(); ++i)
        if (form.evaluate(space->coords(i)).is_zero()) out.push_back(i);
    return PointSet(space, std::move(out));
}

/// Random fill of the upper triangle (diagonal drawn from GF(q)), rejected
/// until nonsingular. `resampled` receives the number of singular draws.
inline HermitianForm random_hermitian_form(int n, const FieldPtr& field, std::uint64_t seed, std::size_t* resampled = nullptr) {
    std::mt19937_64 rng(seed);
    const auto& sub = field->subfield_elements();
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    while (true) {
        FieldMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = sub[uniform_below(rng, sub.size())];
            for (std::size_t j = i + 1; j < dim; ++j) {
                m(i, j) = Elem{static_cast<std::uint32_t>(uniform_below(rng, field->size()))};
                m(j, i) = field->conj(m(i, j));
            }
        }
        if (!determinant(*field, m).is_zero()) return HermitianForm(field, std::move(m));
        if (resampled) ++*resampled;
    }
}

/// Random nonsingular (n+1) x (n+1) matrix.
inline FieldMatrix random_collineation(int n, const Field& field, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    while (true) {
        FieldMatrix m(dim, dim);
        for (auto& e : m.data) e = Elem{static_cast<std::uint32_t>(uniform_below(rng, field.size()))};
        if (!determinant(field, m).is_zero()) return m;
    }
}

/// Image of the canonical Hermitian variety under a random collineation.
inline PointSet hermitian_via_collineation(const SpacePtr& space, std::uint64_t seed) {
    const auto H = hermitian_variety(space, HermitianForm::canonical(space->field_ptr(), space->dim()));
    return apply_collineation(random_collineation(space->dim(), space->field(), seed), H);
}

// ---------------------------------------------------------------------------
// Buekenhout-Metz unitals
//
// U_{a,b} = {(1, y, a y^2 + b y^(q+1) + r) : y in GF(q^2), r in GF(q)} u {(0,0,1)}.

struct BMParams {
    Elem a;
    Elem b;
};

/// a = 0 and b outside GF(q): U_{0,b} is a Hermitian curve.
inline bool bm_is_hermitian_case(const Field& f, const BMParams& params) {
    return params.a.is_zero() && !f.in_subfield(params.b);
}

/// Unital condition for a != 0. For odd q: (b^q - b)^2 + 4 a^(q+1) is a
/// nonsquare of GF(q). For even q: b is outside GF(q) and
/// Tr_{GF(q)/GF(2)}(a^(q+1) / (b^q + b)^2) = 0.
/// With a = 0 this reports the Hermitian case instead.
inline bool bm_is_valid(const Field& f, const BMParams& params) {
    if (params.a.is_zero()) return bm_is_hermitian_case(f, params);
    const Elem bq = f.conj(params.b);
    const Elem na = f.norm(params.a);
    if (f.p() == 2) {
        const Elem s = f.add(bq, params.b);
        if (s.is_zero()) return false;
        const Elem w = f.div(na, f.mul(s, s));
        if (!f.in_subfield(w)) throw std::logic_error("B-M trace argument left GF(q)");
        return f.abs_trace(w) == 0;
    }
    const Elem d = f.sub(bq, params.b);
    const Elem v = f.add(f.mul(d, d), f.mul(f.from_int(4), na));
    if (!f.in_subfield(v)) throw std::logic_error("B-M discriminant left GF(q)");
    return !f.is_square(v);
}

/// Points of U_{a,b} without any validity check.
inline PointSet bm_point_set(const SpacePtr& space, const BMParams& params) {
    const Field& f = space->field();
    if (space->dim() != 2) throw std::invalid_argument("B-M unitals live in PG(2, q^2)");
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(f.q()) * f.q() * f.q() + 1);
    const std::uint64_t q1 = static_cast<std::uint64_t>(f.q()) + 1;
    std::vector<Elem> v(3);
    for (std::uint32_t yc = 0; yc < f.size(); ++yc) {
        const Elem y{yc};
        const Elem base = f.add(f.mul(params.a, f.mul(y, y)), f.mul(params.b, f.pow(y, q1)));
        for (Elem r : f.subfield_elements()) {
            v = {f.one(), y, f.add(base, r)};
            out.push_back(space->index_of(v));
        }
    }
    out.push_back(space->index_of(std::vector<Elem>{f.zero(), f.zero(), f.one()}));
    const std::size_t expected = out.size();
    PointSet s(space, std::move(out));
    if (s.size() != expected) throw std::logic_error("B-M construction produced repeated points");
    return s;
}

inline PointSet bm_unital(const SpacePtr& space, const BMParams& params) {
    const Field& f = space->field();
    if (f.q() <= 2) throw std::invalid_argument("B-M unitals require q > 2");
    if (!bm_is_valid(f, params)) {
        if (params.a.is_zero()) throw std::invalid_argument("B-M parameters invalid: a = 0 requires b outside GF(q)");
        throw std::invalid_argument(f.p() == 2 ? "B-M parameters invalid: trace condition fails"
                                               : "B-M parameters invalid: discriminant is a square in GF(q)");
    }
    return bm_point_set(space, params);
}

/// Left side of a^q y^(2q) - a y^2 + (b^q - b) y^(q+1) - z^q + z at (1, y, z).
inline Elem bm_affine_equation(const Field& f, const BMParams& params, Elem y, Elem z) {
    const std::uint64_t q = f.q();
    Elem v = f.mul(f.conj(params.a), f.pow(y, 2 * q));
    v = f.sub(v, f.mul(params.a, f.mul(y, y)));
    v = f.add(v, f.mul(f.sub(f.conj(params.b), params.b), f.pow(y, q + 1)));
    v = f.sub(v, f.conj(z));
    return f.add(v, z);
}

// ---------------------------------------------------------------------------

struct UnitalProfile {
    bool is_unital = false;
    std::size_t set_size = 0;
    std::size_t tangents = 0;
    std::size_t secants = 0;
    /// Intersection size -> number of lines, over all lines.
    std::map<std::size_t, std::size_t> line_histogram;
    std::string diagnostic;
};

/// Intersection size of S with every r-subspace, in canonical order.
inline std::vector<std::size_t> subspace_intersections(const PointSet& S, std::size_t r) {
    const auto& table = S.space()->subspaces(r);
    const auto bits = S.bitset();
    std::vector<std::size_t> out(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::size_t c = 0;
        for (auto pt : table.points_of(i)) c += (bits[pt / 64] >> (pt % 64)) & 1u;
        out[i] = c;
    }
    return out;
}

/// Line sweep: |S| = q^3 + 1 and every line meets S in 1 or q + 1 points.
inline UnitalProfile is_unital_embedded(const PointSet& S) {
    const auto& space = *S.space();
    if (space.dim() != 2) throw std::invalid_argument("is_unital_embedded: ambient space must be a plane");
    const std::size_t q = space.field().q();
    UnitalProfile prof;
    prof.set_size = S.size();
    for (auto c : subspace_intersections(S, 2)) ++prof.line_histogram[c];
    bool lines_ok = true;
    for (const auto& [size, count] : prof.line_histogram) {
        if (size == 1)
            prof.tangents = count;
        else if (size == q + 1)
            prof.secants = count;
        else
            lines_ok = false;
    }
    const bool size_ok = S.size() == q * q * q + 1;
    prof.is_unital = size_ok && lines_ok;
    if (!size_ok)
        prof.diagnostic = "set has " + std::to_string(S.size()) + " points, expected " + std::to_string(q * q * q + 1);
    else if (!lines_ok)
        prof.diagnostic = "some line meets the set in neither 1 nor " + std::to_string(q + 1) + " points";
    return prof;
}

/// Secant-line blocks of a unital, each checked against the 2-(q^3+1, q+1, 1)
/// design axioms.
inline std::vector<std::vector<std::uint32_t>> blocks_of(const PointSet& S) {
    const auto prof = is_unital_embedded(S);
    if (!prof.is_unital) throw std::invalid_argument("blocks_of: not a unital (" + prof.diagnostic + ")");
    const auto& space = *S.space();
    const std::size_t q = space.field().q();
    const auto& lines = space.subspaces(2);
    std::vector<std::vector<std::uint32_t>> blocks;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::vector<std::uint32_t> blk;
        for (auto pt : lines.points_of(i))
            if (S.contains(pt)) blk.push_back(pt);
        if (blk.size() == q + 1) blocks.push_back(std::move(blk));
    }
    // Every pair of points in exactly one block.
    const auto& mem = S.members();
    std::vector<std::uint32_t> local(space.num_points(), UINT32_MAX);
    for (std::uint32_t k = 0; k < mem.size(); ++k) local[mem[k]] = k;
    const std::size_t v = mem.size();
    std::vector<std::uint8_t> covered(v * v, 0);
    for (const auto& blk : blocks)
        for (std::size_t x = 0; x < blk.size(); ++x)
            for (std::size_t y = x + 1; y < blk.size(); ++y) {
                auto& c = covered[local[blk[x]] * v + local[blk[y]]];
                if (c) throw std::logic_error("blocks_of: a point pair lies in two blocks");
                c = 1;
            }
    for (std::size_t x = 0; x < v; ++x)
        for (std::size_t y = x + 1; y < v; ++y)
            if (!covered[x * v + y]) throw std::logic_error("blocks_of: a point pair lies in no block");
    return blocks;
}

/// Every r-subspace meets S in a multiple of p^beta points.
inline bool check_property_I(const PointSet& S, std::size_t r, int beta) {
    const auto& space = *S.space();
    if (r <= 1 || r > static_cast<std::size_t>(space.dim())) throw std::invalid_argument("check_property_I: need 1 < r <= n");
    if (beta < 0) throw std::invalid_argument("check_property_I: beta must be nonnegative");
    const std::uint64_t mod = detail::ipow(static_cast<std::uint64_t>(space.field().p()), static_cast<unsigned>(beta));
    for (auto c : subspace_intersections(S, r))
        if (c % mod != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace detail {

// Nullspace basis of a matrix over GF(p), entries in [0, p).
inline std::vector<std::vector<int>> nullspace_mod_p(std::vector<std::vector<int>> a, std::size_t cols, int p) {
    auto inv = [p](int x) {
        for (int y = 1; y < p; ++y)
            if (x * y % p == 1) return y;
        throw std::domain_error("no inverse mod p");
    };
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][col] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[row], a[sel]);
        const int s = inv(a[row][col]);
        for (auto& x : a[row]) x = x * s % p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            const int fct = a[i][col];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - fct * a[row][j]) % p + p) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<std::vector<int>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<int> v(cols, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = (p - a[k][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// Looks for a nonsingular Hermitian form vanishing on every point of S.
///
/// Unknowns are the GF(p) coordinates of the upper-triangular entries; the
/// lower triangle is their conjugate. Both the vanishing conditions and the
/// requirement that diagonal entries lie in GF(q) are GF(p)-linear.
inline std::optional<HermitianForm> fit_hermitian_form(const PointSet& S) {
    const auto& space = *S.space();
    const Field& f = space.field();
    const int p = f.p();
    const std::size_t d = static_cast<std::size_t>(f.degree());
    const std::size_t dim = space.coord_count();

    struct Unknown {
        std::size_t i, j, k;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            for (std::size_t k = 0; k < d; ++k) unknowns.push_back({i, j, k});
    const std::size_t nu = unknowns.size();

    auto basis_elem = [&](std::size_t k) {
        std::vector<int> c(d, 0);
        c[k] = 1;
        return f.from_coeffs(c);
    };
    auto matrix_for = [&](const std::vector<int>& x) {
        FieldMatrix m(dim, dim);
        for (std::size_t u = 0; u < nu; ++u) {
            if (x[u] == 0) continue;
            const auto& [i, j, k] = unknowns[u];
            const Elem e = f.mul(f.from_int(x[u]), basis_elem(k));
            m(i, j) = f.add(m(i, j), e);
            if (i != j) m(j, i) = f.add(m(j, i), f.conj(e));
        }
        return m;
    };

    // Column u holds the image of the u-th unit vector under the linear map.
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> columns(nu);
    for (std::size_t u = 0; u < nu; ++u) {
        std::vector<int> unit(nu, 0);
        unit[u] = 1;
        const FieldMatrix m = matrix_for(unit);
        auto& col = columns[u];
        for (auto idx : S.members()) {
            auto x = space.coords(idx);
            Elem acc{};
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    acc = f.add(acc, f.mul(f.conj(x[i]), f.mul(m(i, j), x[j])));
            for (int c : f.coeffs(acc)) col.push_back(c);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            const Elem e = f.sub(f.conj(m(i, i)), m(i, i));
            for (int c : f.coeffs(e)) col.push_back(c);
        }
    }
    const std::size_t neq = columns[0].size();
    rows.assign(neq, std::vector<int>(nu, 0));
    for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t e = 0; e < neq; ++e) rows[e][u] = columns[u][e];

    const auto kernel = detail::nullspace_mod_p(std::move(rows), nu, p);
    if (kernel.empty()) return std::nullopt;

    auto combine = [&](std::uint64_t code) {
        std::vector<int> x(nu, 0);
        for (const auto& v : kernel) {
            const int c = static_cast<int>(code % static_cast<std::uint64_t>(p));
            code /= static_cast<std::uint64_t>(p);
            for (std::size_t u = 0; u < nu; ++u) x[u] = (x[u] + c * v[u]) % p;
        }
        return x;
    };
    auto try_vector = [&](const std::vector<int>& x) -> std::optional<HermitianForm> {
        FieldMatrix m = matrix_for(x);
        if (determinant(f, m).is_zero()) return std::nullopt;
        return HermitianForm(space.field_ptr(), std::move(m));
    };

    long double total = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) total *= p;
    if (total <= 65536) {
        const auto count = static_cast<std::uint64_t>(total);
        for (std::uint64_t code = 1; code < count; ++code)
            if (auto h = try_vector(combine(code))) return h;
        return std::nullopt;
    }
    for (const auto& v : kernel)
        if (auto h = try_vector(v)) return h;
    std::mt19937_64 rng(0x5eed);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<int> x(nu, 0);
        for (const auto& v : kernel) {
            const int c = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(p)));
            for (std::size_t u = 0; u < nu; ++u) x[u] = (x[u] + c * v[u]) % p;
        }
        if (auto h = try_vector(x)) return h;
    }
    return std::nullopt;
}

}  // namespace unital
