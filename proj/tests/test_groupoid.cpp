#include "doctest.h"

#include "qgd/groupoid.hpp"

#include <stdexcept>

using namespace qgd;

namespace {

// independent composable-pair oracle used to freeze expected counts
long count_composable(const FiniteGroupoid& g) {
    long n = 0;
    for (int p = 0; p < g.arrow_count(); ++p)
        for (int q = 0; q < g.arrow_count(); ++q)
            if (g.arrow(p).src == g.arrow(q).tgt) ++n;
    return n;
}

} // namespace

TEST_CASE("trivial and pair groupoids validate") {
    auto t = FiniteGroupoid::trivial();
    CHECK(t.validate().empty());
    CHECK(t.units().size() == 1);
    CHECK(t.arrow_count() == 1);

    auto p2 = FiniteGroupoid::pair_groupoid(2);
    CHECK(p2.validate().empty());
    CHECK(p2.arrow_count() == 4);
    CHECK(count_composable(p2) == 8);
    CHECK(p2.composable_pair_count() == 8);

    auto p3 = FiniteGroupoid::pair_groupoid(3);
    CHECK(p3.validate().empty());
    CHECK(p3.arrow_count() == 9);
    CHECK(p3.composable_pair_count() == 27);
    CHECK_THROWS(FiniteGroupoid::pair_groupoid(0));
}

TEST_CASE("groups become one-unit groupoids") {
    auto z2 = FiniteGroupoid::cyclic(2);
    CHECK(z2.validate().empty());
    CHECK(z2.units().size() == 1);
    CHECK(z2.arrow_count() == 2);

    auto s3 = FiniteGroupoid::symmetric3();
    CHECK(s3.validate().empty());
    CHECK(s3.units().size() == 1);
    CHECK(s3.arrow_count() == 6);
    CHECK(s3.composable_pair_count() == 36);
}

TEST_CASE("non-group Latin square is rejected") {
    // a quasigroup without associativity: x*y = x - y mod 3
    std::vector<std::vector<int>> tab(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) tab[a][b] = ((a - b) % 3 + 3) % 3;
    CHECK_THROWS_AS(FiniteGroupoid::from_group(tab), std::invalid_argument);
}

TEST_CASE("disjoint unions") {
    auto u = FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2), FiniteGroupoid::trivial());
    CHECK(u.validate().empty());
    CHECK(u.units().size() == 2);
    CHECK(u.arrow_count() == 3);
    CHECK(u.composable_pair_count() == 5);

    auto tt = FiniteGroupoid::disjoint_union(FiniteGroupoid::trivial(), FiniteGroupoid::trivial());
    CHECK(tt.units().size() == 2);
    CHECK(tt.arrow_count() == 2);

    auto pu = FiniteGroupoid::disjoint_union(FiniteGroupoid::pair_groupoid(2),
                                             FiniteGroupoid::cyclic(2));
    CHECK(pu.units().size() == 3);
    CHECK(pu.arrow_count() == 6);
    CHECK(pu.validate().empty());
}

TEST_CASE("products") {
    auto prod = FiniteGroupoid::product(FiniteGroupoid::cyclic(2), FiniteGroupoid::pair_groupoid(2));
    CHECK(prod.validate().empty());
    CHECK(prod.units().size() == 2);
    CHECK(prod.arrow_count() == 8);
}

TEST_CASE("conjugation follows the composition order") {
    auto z2 = FiniteGroupoid::cyclic(2);
    int s = z2.arrow_index("c1");
    auto c = z2.conjugate(s, s);
    REQUIRE(c.has_value());
    CHECK(*c == s);

    auto p2 = FiniteGroupoid::pair_groupoid(2);
    int a12 = p2.arrow_index("(1,2)");
    int e1 = p2.arrow_index("(1,1)");
    int e2 = p2.arrow_index("(2,2)");
    auto conj = p2.conjugate(a12, e1);
    REQUIRE(conj.has_value());
    CHECK(*conj == e2);
    CHECK_FALSE(p2.conjugate(a12, e2).has_value());
}

TEST_CASE("inverse anti-homomorphism and pair-count formula") {
    auto g = FiniteGroupoid::disjoint_union(FiniteGroupoid::pair_groupoid(2),
                                            FiniteGroupoid::cyclic(2));
    for (int p = 0; p < g.arrow_count(); ++p)
        for (int q = 0; q < g.arrow_count(); ++q) {
            auto pq = g.compose(p, q);
            if (!pq) continue;
            auto lhs = g.inverse(*pq);
            auto rhs = g.compose(g.inverse(q), g.inverse(p));
            REQUIRE(rhs.has_value());
            CHECK(lhs == *rhs);
        }
    long total = 0;
    for (const auto& u : g.units()) {
        long src = 0, tgt = 0;
        for (int p = 0; p < g.arrow_count(); ++p) {
            if (g.arrow(p).src == u) ++src;
            if (g.arrow(p).tgt == u) ++tgt;
        }
        total += src * tgt;
    }
    CHECK(total == g.composable_pair_count());
}

TEST_CASE("corrupted compose table yields witnesses") {
    using Arrow = FiniteGroupoid::Arrow;
    std::vector<Arrow> arrows{{"e1", "u1", "u1"}, {"e2", "u2", "u2"},
                              {"f", "u1", "u2"}, {"g", "u2", "u1"}};
    std::map<std::pair<int, int>, int> comp{
        {{0, 0}, 0}, {{1, 1}, 1}, {{2, 0}, 2}, {{1, 2}, 2}, {{3, 1}, 3}, {{0, 3}, 3},
        {{3, 2}, 1}, // wrong: g after f lands at u1, table says e2
        {{2, 3}, 1},
    };
    auto g = FiniteGroupoid::from_tables({"u1", "u2"}, arrows, comp, {0, 1, 3, 2});
    auto fails = g.validate();
    CHECK_FALSE(fails.empty());
    bool has_witness = false;
    for (const auto& f : fails)
        if (!f.witness.empty()) has_witness = true;
    CHECK(has_witness);
}
