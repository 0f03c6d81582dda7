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

#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "unital/galois_ring.hpp"
#include "unital/proj_geom.hpp"

namespace unital {
namespace {

TEST(GaloisRing, IntegersModNine) {
    auto ring = make_ring(Field::make(3, 1), 2);
    EXPECT_EQ(ring->characteristic(), 9u);
    EXPECT_EQ(ring->element_count(), 9.0L);
    std::set<std::uint64_t> teich;
    for (std::uint32_t c = 0; c < 3; ++c) teich.insert(ring->teichmuller(Elem{c}).coeffs[0]);
    // Residues r mod 9 with r^3 = r: 0, 1, 8.
    std::set<std::uint64_t> oracle;
    for (std::uint64_t r = 0; r < 9; ++r)
        if (r * r * r % 9 == r) oracle.insert(r);
    EXPECT_EQ(teich, oracle);
    EXPECT_EQ(teich, (std::set<std::uint64_t>{0, 1, 8}));
}

TEST(GaloisRing, ElementCount) {
    // GR(p^k, 2): p^(2k) elements.
    EXPECT_EQ(make_ring(make_field(2, 1), 2)->element_count(), 16.0L);
    EXPECT_EQ(make_ring(make_field(3, 1), 2)->element_count(), 81.0L);
    EXPECT_EQ(make_ring(make_field(2, 2), 3)->element_count(), 4096.0L);
    EXPECT_THROW(make_ring(make_field(2, 1), 0), std::invalid_argument);
    EXPECT_THROW(make_ring(make_field(2, 1), 40), std::invalid_argument);
}

TEST(GaloisRing, ModulusLiftsFieldModulus) {
    for (auto [p, t, k] : std::vector<std::tuple<int, int, int>>{{2, 1, 4}, {3, 1, 4}, {2, 2, 6}, {5, 1, 3}}) {
        auto f = make_field(p, t);
        auto ring = make_ring(f, k);
        ASSERT_EQ(ring->modulus().size(), static_cast<std::size_t>(2 * t));
        for (std::size_t i = 0; i < ring->modulus().size(); ++i)
            EXPECT_EQ(ring->modulus()[i] % static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(f->modulus()[i]));
    }
}

TEST(GaloisRing, ReductionRecoversField) {
    auto f = make_field(3, 1);
    auto ring = make_ring(f, 3);
    for (std::uint32_t a = 0; a < f->size(); ++a) {
        const Elem x{a};
        EXPECT_EQ(ring->reduce(ring->naive_lift(x)), x);
        EXPECT_EQ(ring->reduce(ring->teichmuller(x)), x);
        for (std::uint32_t b = 0; b < f->size(); ++b) {
            const Elem y{b};
            EXPECT_EQ(ring->reduce(ring->mul(ring->naive_lift(x), ring->naive_lift(y))), f->mul(x, y));
            EXPECT_EQ(ring->reduce(ring->add(ring->naive_lift(x), ring->naive_lift(y))), f->add(x, y));
        }
    }
}

TEST(GaloisRing, TeichmullerCharacter) {
    for (auto [p, t, k] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {2, 1, 5}, {3, 1, 2}, {3, 1, 4}, {2, 2, 4}}) {
        auto f = make_field(p, t);
        auto ring = make_ring(f, k);
        EXPECT_EQ(ring->teichmuller(f->zero()), ring->zero());
        EXPECT_EQ(ring->teichmuller(f->one()), ring->one());
        for (std::uint32_t a = 0; a < f->size(); ++a) {
            const auto Ta = ring->teichmuller(Elem{a});
            EXPECT_EQ(ring->pow(Ta, f->size()), Ta);
            for (std::uint32_t b = 0; b < f->size(); ++b)
                ASSERT_EQ(ring->mul(Ta, ring->teichmuller(Elem{b})), ring->teichmuller(f->mul(Elem{a}, Elem{b})));
        }
    }
}

// T(a+b) = (T(a)+T(b))^(q^l) mod q^l for a, b in GF(q). Over all of
// GF(q^2) the exponent must be a power of q^2: (T(a)+T(b))^(q^(2l)).
TEST(GaloisRing, TeichmullerAdditivity) {
    for (auto [p, t] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto f = make_field(p, t);
        const std::uint64_t q = f->q();
        for (int ell = 1; ell <= 2; ++ell) {
            auto ring = make_ring(f, 2 * ell * t);
            const std::uint64_t ql = detail::ipow(q, static_cast<unsigned>(ell));
            const auto& sub = f->subfield_elements();
            for (Elem a : sub)
                for (Elem b : sub) {
                    const auto lhs = ring->teichmuller(f->add(a, b));
                    const auto rhs = ring->pow(ring->add(ring->teichmuller(a), ring->teichmuller(b)), ql);
                    ASSERT_EQ(ring->reduce_mod_power(lhs, ell * t), ring->reduce_mod_power(rhs, ell * t));
                }
            for (std::uint32_t a = 0; a < f->size(); ++a)
                for (std::uint32_t b = 0; b < f->size(); ++b) {
                    const auto lhs = ring->teichmuller(f->add(Elem{a}, Elem{b}));
                    const auto rhs = ring->pow(ring->add(ring->teichmuller(Elem{a}), ring->teichmuller(Elem{b})), ql * ql);
                    ASSERT_EQ(ring->reduce_mod_power(lhs, 2 * ell * t), ring->reduce_mod_power(rhs, 2 * ell * t));
                }
        }
    }
}

// With 0^0 = 1: q^2 at j = 0, q^2 - 1 at positive multiples of q^2 - 1,
// otherwise 0.
TEST(GaloisRing, MonomialSums) {
    for (int p : {2, 3}) {
        auto f = make_field(p, 1);
        auto ring = make_ring(f, 4);
        const long long Q = f->size();
        for (long long j = 0; j <= 2 * (Q - 1); ++j) {
            long long expected = 0;
            if (j == 0)
                expected = Q;
            else if (j % (Q - 1) == 0)
                expected = Q - 1;
            EXPECT_EQ(ring->teichmuller_power_sum(static_cast<std::uint64_t>(j)), ring->scalar(expected)) << "p=" << p << " j=" << j;
        }
    }
}

TEST(GaloisRing, HermitianCharacteristicFunction) {
    for (int p : {2, 3}) {
        auto f = make_field(p, 1);
        auto ring = make_ring(f, 2);
        auto space = make_space(2, f);
        const std::uint64_t q = f->q();
        std::size_t on = 0;
        for (std::uint32_t i = 0; i < space->num_points(); ++i) {
            const auto x = space->coords(i);
            Elem s = f->zero();
            for (Elem c : x) s = f->add(s, f->pow(c, q + 1));
            const auto v = ring->herm_char_value(x, 1);
            EXPECT_TRUE(ring->congruent(v, s.is_zero() ? 0 : 1, 2)) << "point " << i;
            on += s.is_zero();
        }
        EXPECT_EQ(on, q * q * q + 1);
    }
}

TEST(GaloisRing, CharacteristicFunctionNeedsPrecision) {
    auto f = make_field(2, 1);
    const std::vector<Elem> pt{f->one(), f->zero(), f->zero()};
    EXPECT_THROW(make_ring(f, 1)->herm_char_value(pt, 1), std::invalid_argument);
    EXPECT_THROW(make_ring(f, 3)->herm_char_value(pt, 2), std::invalid_argument);
    EXPECT_THROW(make_ring(f, 2)->herm_char_value(pt, 0), std::invalid_argument);
    EXPECT_NO_THROW(make_ring(f, 4)->herm_char_value(pt, 2));
}

TEST(GaloisRing, CongruenceLevelTwo) {
    auto f = make_field(2, 1);
    auto ring = make_ring(f, 4);
    auto space = make_space(2, f);
    for (std::uint32_t i = 0; i < space->num_points(); ++i) {
        const auto x = space->coords(i);
        Elem s = f->zero();
        for (Elem c : x) s = f->add(s, f->pow(c, 3));
        EXPECT_TRUE(ring->congruent(ring->herm_char_value(x, 2), s.is_zero() ? 0 : 1, 4));
    }
}

}  // namespace
}  // namespace unital
