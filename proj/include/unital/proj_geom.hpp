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
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finite_field.hpp"

namespace unital {

// ---------------------------------------------------------------------------
// Dense matrices over a field, row-major. Small helpers shared by the
// geometry and variety code.

struct FieldMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data;

    FieldMatrix() = default;
    FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static FieldMatrix identity(std::size_t n) {
        FieldMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
        return m;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

/// Reduced row-echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(const Field& f, FieldMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(sel, j));
        const Elem s = f.inv(m(row, col));
        for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), s);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Elem factor = m(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const Field& f, FieldMatrix m) { return rref(f, m).size(); }

inline Elem determinant(const Field& f, FieldMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    Elem det = f.one();
    const std::size_t n = m.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m(sel, col).is_zero()) ++sel;
        if (sel == n) return f.zero();
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(sel, j));
            det = f.neg(det);
        }
        det = f.mul(det, m(col, col));
        const Elem s = f.inv(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            const Elem factor = f.mul(m(i, col), s);
            for (std::size_t j = col; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(col, j)));
        }
    }
    return det;
}

// ---------------------------------------------------------------------------

/// Normalized homogeneous coordinates: first nonzero coordinate is 1.
struct ProjPoint {
    std::vector<Elem> coords;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// r-dimensional vector subspace given by an r x (n+1) basis in reduced
/// row-echelon form.
struct Subspace {
    FieldMatrix basis;
    std::size_t dim() const { return basis.rows; }
    friend bool operator==(const Subspace&, const Subspace&) = default;
};

/// Gaussian binomial [m choose r]_Q.
inline std::uint64_t gaussian_binomial(unsigned m, unsigned r, std::uint64_t Q) {
    if (r > m) return 0;
    // Exact: numerator product divided step by step keeps values integral.
    std::uint64_t num = 1, den = 1;
    for (unsigned i = 0; i < r; ++i) {
        num *= detail::ipow(Q, m - i) - 1;
        den *= detail::ipow(Q, i + 1) - 1;
        const std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return num / den;
}

class ProjectiveSpace;
using SpacePtr = std::shared_ptr<const ProjectiveSpace>;

/// Point-to-subspace incidence lists for one dimension r, in the canonical
/// subspace order. Each list is sorted.
struct SubspaceTable {
    std::size_t r = 0;
    std::size_t points_per_subspace = 0;
    std::vector<Subspace> subspaces;
    std::vector<std::uint32_t> members;  // flattened, points_per_subspace per row

    std::size_t size() const { return subspaces.size(); }
    std::span<const std::uint32_t> points_of(std::size_t i) const {
        return {members.data() + i * points_per_subspace, points_per_subspace};
    }
};

/// PG(n, F). Points are enumerated eagerly in lexicographic order of their
/// normalized coordinate codes; the index of a point has a closed form.
class ProjectiveSpace {
public:
    static constexpr std::uint64_t kMaxPoints = 1u << 22;
    static constexpr std::uint64_t kMaxSubspaces = 1u << 22;

    static SpacePtr make(int n, FieldPtr field) { return SpacePtr(new ProjectiveSpace(n, std::move(field))); }

    int dim() const { return n_; }
    std::size_t coord_count() const { return static_cast<std::size_t>(n_) + 1; }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::uint32_t num_points() const { return num_points_; }

    std::span<const Elem> coords(std::uint32_t idx) const {
        if (idx >= num_points_) throw std::out_of_range("point index out of range");
        return {points_.data() + static_cast<std::size_t>(idx) * coord_count(), coord_count()};
    }

    ProjPoint point(std::uint32_t idx) const {
        auto c = coords(idx);
        return ProjPoint{{c.begin(), c.end()}};
    }

    /// Scales v so that its first nonzero entry is 1. Throws on the zero vector.
    std::vector<Elem> normalize(std::span<const Elem> v) const {
        if (v.size() != coord_count()) throw std::invalid_argument("coordinate vector has wrong length");
        std::size_t lead = 0;
        while (lead < v.size() && v[lead].is_zero()) ++lead;
        if (lead == v.size()) throw std::invalid_argument("zero vector is not a projective point");
        const Elem s = field_->inv(v[lead]);
        std::vector<Elem> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = field_->mul(v[i], s);
        return out;
    }

    /// Index of the point spanned by v (any nonzero representative).
    std::uint32_t index_of(std::span<const Elem> v) const {
        if (v.size() != coord_count()) throw std::invalid_argument("coordinate vector has wrong length");
        std::size_t lead = 0;
        while (lead < v.size() && v[lead].is_zero()) ++lead;
        if (lead == v.size()) throw std::invalid_argument("zero vector is not a projective point");
        const Elem s = field_->inv(v[lead]);
        // A later leading position sorts first (a leading 0 compares below 1).
        const std::uint64_t N = field_->size();
        const std::size_t tail = v.size() - lead - 1;
        std::uint64_t idx = (detail::ipow(N, static_cast<unsigned>(tail)) - 1) / (N - 1);
        std::uint64_t off = 0;
        for (std::size_t i = lead + 1; i < v.size(); ++i) off = off * N + field_->mul(v[i], s).code;
        return static_cast<std::uint32_t>(idx + off);
    }

    std::uint64_t subspace_count(std::size_t r) const {
        return gaussian_binomial(static_cast<unsigned>(n_ + 1), static_cast<unsigned>(r), field_->size());
    }

    /// The r-subspaces with their point lists, built on first use.
    const SubspaceTable& subspaces(std::size_t r) const {
        if (r < 1 || r > static_cast<std::size_t>(n_)) throw std::invalid_argument("subspace dimension must lie in [1, n]");
        std::call_once(flags_[r], [&] { tables_[r] = build_table(r); });
        return tables_[r];
    }

    /// Points of the span of the rows of an echelonized basis, sorted.
    std::vector<std::uint32_t> span_points(const FieldMatrix& basis) const {
        const std::size_t r = basis.rows;
        const std::uint64_t N = field_->size();
        std::vector<std::uint32_t> out;
        std::vector<Elem> lambda(r);
        std::vector<Elem> v(coord_count());
        // Normalized coefficient vectors: leading 1 at position lead.
        for (std::size_t lead = 0; lead < r; ++lead) {
            const std::size_t free = r - lead - 1;
            const std::uint64_t cnt = detail::ipow(N, static_cast<unsigned>(free));
            for (std::uint64_t m = 0; m < cnt; ++m) {
                std::fill(lambda.begin(), lambda.end(), Elem{});
                lambda[lead] = Elem{1};
                std::uint64_t x = m;
                for (std::size_t i = r; i-- > lead + 1;) {
                    lambda[i] = Elem{static_cast<std::uint32_t>(x % N)};
                    x /= N;
                }
                std::fill(v.begin(), v.end(), Elem{});
                for (std::size_t i = lead; i < r; ++i) {
                    if (lambda[i].is_zero()) continue;
                    for (std::size_t j = 0; j < coord_count(); ++j)
                        v[j] = field_->add(v[j], field_->mul(lambda[i], basis(i, j)));
                }
                out.push_back(index_of(v));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    ProjectiveSpace(int n, FieldPtr field) : n_(n), field_(std::move(field)) {
        if (n < 1) throw std::invalid_argument("projective dimension must be at least 1");
        const std::uint64_t N = field_->size();
        long double total = 1;
        for (int i = 0; i <= n; ++i) total *= static_cast<long double>(N);
        if ((total - 1) / static_cast<long double>(N - 1) > static_cast<long double>(kMaxPoints))
            throw std::invalid_argument("projective space too large to enumerate");
        num_points_ = static_cast<std::uint32_t>((detail::ipow(N, static_cast<unsigned>(n + 1)) - 1) / (N - 1));
        points_.reserve(static_cast<std::size_t>(num_points_) * coord_count());
        // Lexicographic order: later leading position first.
        for (std::size_t lead = coord_count(); lead-- > 0;) {
            const std::size_t tail = coord_count() - lead - 1;
            const std::uint64_t cnt = detail::ipow(N, static_cast<unsigned>(tail));
            for (std::uint64_t m = 0; m < cnt; ++m) {
                std::vector<Elem> c(coord_count());
                c[lead] = Elem{1};
                std::uint64_t x = m;
                for (std::size_t i = coord_count(); i-- > lead + 1;) {
                    c[i] = Elem{static_cast<std::uint32_t>(x % N)};
                    x /= N;
                }
                points_.insert(points_.end(), c.begin(), c.end());
            }
        }
        flags_ = std::make_unique<std::once_flag[]>(static_cast<std::size_t>(n) + 1);
        tables_.resize(static_cast<std::size_t>(n) + 1);
    }

    SubspaceTable build_table(std::size_t r) const {
        if (subspace_count(r) > kMaxSubspaces) throw std::invalid_argument("too many subspaces to enumerate");
        const std::size_t cols = coord_count();
        const std::uint64_t N = field_->size();
        SubspaceTable table;
        table.r = r;
        table.points_per_subspace = static_cast<std::size_t>((detail::ipow(N, static_cast<unsigned>(r)) - 1) / (N - 1));
        table.subspaces.reserve(static_cast<std::size_t>(subspace_count(r)));

        // Pivot column sets in lexicographic order.
        std::vector<std::size_t> piv(r);
        for (std::size_t i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            // Free positions: row i, column c > piv[i], c not a pivot.
            std::vector<std::pair<std::size_t, std::size_t>> free;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t c = piv[i] + 1; c < cols; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
            const std::uint64_t cnt = detail::ipow(N, static_cast<unsigned>(free.size()));
            for (std::uint64_t m = 0; m < cnt; ++m) {
                Subspace s{FieldMatrix(r, cols)};
                for (std::size_t i = 0; i < r; ++i) s.basis(i, piv[i]) = Elem{1};
                std::uint64_t x = m;
                for (std::size_t k = free.size(); k-- > 0;) {
                    s.basis(free[k].first, free[k].second) = Elem{static_cast<std::uint32_t>(x % N)};
                    x /= N;
                }
                auto pts = span_points(s.basis);
                table.members.insert(table.members.end(), pts.begin(), pts.end());
                table.subspaces.push_back(std::move(s));
            }
            // next combination
            std::size_t i = r;
            while (i > 0 && piv[i - 1] == cols - r + (i - 1)) --i;
            if (i == 0) return table;
            ++piv[--i];
            for (std::size_t j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        }
    }

    int n_;
    FieldPtr field_;
    std::uint32_t num_points_ = 0;
    std::vector<Elem> points_;
    mutable std::unique_ptr<std::once_flag[]> flags_;
    mutable std::vector<SubspaceTable> tables_;
};

inline SpacePtr make_space(int n, FieldPtr field) { return ProjectiveSpace::make(n, std::move(field)); }

inline std::vector<ProjPoint> enum_points(const ProjectiveSpace& space) {
    std::vector<ProjPoint> out;
    out.reserve(space.num_points());
    for (std::uint32_t i = 0; i < space.num_points(); ++i) out.push_back(space.point(i));
    return out;
}

inline const std::vector<Subspace>& enum_subspaces(const ProjectiveSpace& space, std::size_t r) {
    return space.subspaces(r).subspaces;
}

// ---------------------------------------------------------------------------

/// Bit-packed 0/1 matrix with rows indexed by r-subspaces and columns by
/// points; entry (Y, Z) is 1 iff Z lies in Y.
class IncidenceMatrix {
public:
    IncidenceMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

    std::span<const std::uint64_t> row_words(std::size_t i) const { return {bits_.data() + i * words_, words_}; }

    std::size_t row_sum(std::size_t i) const {
        std::size_t s = 0;
        for (auto w : row_words(i)) s += static_cast<std::size_t>(std::popcount(w));
        return s;
    }

    std::size_t col_sum(std::size_t j) const {
        std::size_t s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += at(i, j);
        return s;
    }

    /// Number of rows containing both columns a and b (entry of A^T A).
    std::size_t col_dot(std::size_t a, std::size_t b) const {
        std::size_t s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += at(i, a) && at(i, b);
        return s;
    }

    std::vector<std::vector<int>> dense() const {
        std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j) ? 1 : 0;
        return out;
    }

private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> bits_;
};

inline IncidenceMatrix incidence_matrix(const ProjectiveSpace& space, std::size_t r) {
    const auto& table = space.subspaces(r);
    IncidenceMatrix m(table.size(), space.num_points());
    for (std::size_t i = 0; i < table.size(); ++i)
        for (auto pt : table.points_of(i)) m.set(i, pt);
    return m;
}

// ---------------------------------------------------------------------------

/// Sorted set of point indices into the canonical enumeration of a space.
class PointSet {
public:
    PointSet() = default;
    /// Accepts indices in any order; duplicates are merged.
    PointSet(SpacePtr space, std::vector<std::uint32_t> members) : space_(std::move(space)), members_(std::move(members)) {
        if (!space_) throw std::invalid_argument("point set without ambient space");
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && members_.back() >= space_->num_points()) throw std::out_of_range("point index out of range");
    }

    static PointSet all(SpacePtr space) {
        std::vector<std::uint32_t> m(space->num_points());
        for (std::uint32_t i = 0; i < m.size(); ++i) m[i] = i;
        return PointSet(std::move(space), std::move(m));
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<std::uint32_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    bool contains(std::uint32_t idx) const { return std::binary_search(members_.begin(), members_.end(), idx); }

    PointSet complement() const {
        std::vector<std::uint32_t> out;
        out.reserve(space_->num_points() - members_.size());
        std::size_t k = 0;
        for (std::uint32_t i = 0; i < space_->num_points(); ++i) {
            if (k < members_.size() && members_[k] == i) {
                ++k;
                continue;
            }
            out.push_back(i);
        }
        return PointSet(space_, std::move(out));
    }

    std::vector<std::uint64_t> bitset() const {
        std::vector<std::uint64_t> bits((space_->num_points() + 63) / 64, 0);
        for (auto i : members_) bits[i / 64] |= std::uint64_t{1} << (i % 64);
        return bits;
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    SpacePtr space_;
    std::vector<std::uint32_t> members_;
};

inline void require_same_space(const PointSet& a, const PointSet& b) {
    if (a.space() != b.space()) throw std::invalid_argument("point sets live in different ambient spaces");
}

/// Points on the line through two distinct points.
inline PointSet line_through(const SpacePtr& space, std::uint32_t P, std::uint32_t Q) {
    if (P == Q) throw std::invalid_argument("line_through needs two distinct points");
    FieldMatrix b(2, space->coord_count());
    auto cp = space->coords(P);
    auto cq = space->coords(Q);
    for (std::size_t j = 0; j < b.cols; ++j) {
        b(0, j) = cp[j];
        b(1, j) = cq[j];
    }
    rref(space->field(), b);
    return PointSet(space, space->span_points(b));
}

/// Image of v under M acting on column vectors.
inline std::vector<Elem> apply_matrix(const Field& f, const FieldMatrix& M, std::span<const Elem> v) {
    std::vector<Elem> out(M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        Elem acc{};
        for (std::size_t j = 0; j < M.cols; ++j) acc = f.add(acc, f.mul(M(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

inline PointSet apply_collineation(const FieldMatrix& M, const PointSet& S) {
    const auto& space = *S.space();
    if (M.rows != space.coord_count() || M.cols != space.coord_count()) throw std::invalid_argument("collineation matrix has wrong shape");
    if (determinant(space.field(), M).is_zero()) throw std::invalid_argument("collineation matrix is singular");
    std::vector<std::uint32_t> out;
    out.reserve(S.size());
    for (auto idx : S.members()) out.push_back(space.index_of(apply_matrix(space.field(), M, space.coords(idx))));
    return PointSet(S.space(), std::move(out));
}

}  // namespace unital
