#include "doctest.h"

#include "qgd/yd.hpp"

using namespace qgd;

TEST_CASE("characters of small algebras") {
    // D(Z/2) is 4-dimensional commutative with 4 characters
    auto g = FiniteGroupoid::cyclic(2);
    DoubleAlgebra dbl = build_double(canonical_pairing(g));
    auto chars = one_dim_reps(dbl.d.alg);
    CHECK(chars.size() == 4);

    // the 2x2 matrix algebra (pair groupoid algebra) has none
    auto p2 = FiniteGroupoid::pair_groupoid(2);
    auto none = one_dim_reps(groupoid_algebra(p2).alg);
    CHECK(none.empty());

    // Z/3 group algebra over Q(i) has only the trivial rational character
    auto z3 = FiniteGroupoid::cyclic(3);
    auto z3_chars = one_dim_reps(groupoid_algebra(z3).alg);
    CHECK(z3_chars.size() == 1);

    // Z/4 has the four characters with values in the fourth roots of unity
    auto z4 = FiniteGroupoid::cyclic(4);
    auto z4_chars = one_dim_reps(groupoid_algebra(z4).alg);
    CHECK(z4_chars.size() == 4);
}

TEST_CASE("grouplikes") {
    auto g = FiniteGroupoid::cyclic(2);
    auto gl = grouplikes(groupoid_algebra(g));
    CHECK(gl.size() == 2); // l_e and l_s
    auto glf = grouplikes(function_algebra(g));
    CHECK(glf.size() == 2); // 1 and the sign character as a function

    auto u = FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2), FiniteGroupoid::trivial());
    auto glu = grouplikes(groupoid_algebra(u));
    CHECK(glu.size() == 3); // each arrow of the union is grouplike
}

TEST_CASE("one-dimensional Yetter-Drinfeld structures over Z/2") {
    WeakHopf w = groupoid_algebra(FiniteGroupoid::cyclic(2));
    auto list = enumerate_one_dim_yd(w);
    CHECK(list.size() == 4);
    // the function-algebra side carries four as well (self-dual fixture)
    CHECK(enumerate_one_dim_yd(function_algebra(FiniteGroupoid::cyclic(2))).size() == 4);
    for (const auto& od : list) {
        YdModule v;
        v.dim = 1;
        v.action = LinearMap(1, w.dim());
        for (int i = 0; i < w.dim(); ++i) v.action.set(0, i, od.character.get(i));
        v.coaction = LinearMap(w.dim(), 1);
        for (const auto& [i, c] : od.grouplike.entries()) v.coaction.set(i, 0, c);
        CHECK(yd_check(w, v).ok());
    }
}

TEST_CASE("zero-dimensional module passes vacuously") {
    WeakHopf w = groupoid_algebra(FiniteGroupoid::cyclic(2));
    YdModule v;
    v.dim = 0;
    CHECK(yd_check(w, v).ok());
}

TEST_CASE("projection condition detects block-mismatched coactions") {
    // on a union of groups the idempotent is a genuine projection and a
    // coaction pointing at the wrong block violates it
    auto u = FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2), FiniteGroupoid::trivial());
    WeakHopf w = groupoid_algebra(u);
    auto chars = one_dim_reps(w.alg);
    auto gls = grouplikes(w);
    REQUIRE(chars.size() == 3);
    REQUIRE(gls.size() == 3);
    int pass = 0, proj_fail = 0;
    for (const auto& alpha : chars)
        for (const auto& gl : gls) {
            YdModule v;
            v.dim = 1;
            v.action = LinearMap(1, w.dim());
            for (int i = 0; i < w.dim(); ++i) v.action.set(0, i, alpha.get(i));
            v.coaction = LinearMap(w.dim(), 1);
            for (const auto& [i, c] : gl.entries()) v.coaction.set(i, 0, c);
            Report rep = yd_check(w, v);
            if (rep.ok()) ++pass;
            for (const auto& c : rep.checks)
                if (c.id == "yd.projection" && c.status == CheckStatus::Fail) ++proj_fail;
        }
    CHECK(pass == 5);      // matching blocks: 2 characters x 2 grouplikes + 1 x 1
    CHECK(proj_fail == 4); // cross-block combinations fail the projection law
    CHECK(enumerate_one_dim_yd(w).size() == 5);

    // and the double of the union has exactly five characters
    WmhaPairing dp = flip_pairing(dual_pairing(w));
    DoubleAlgebra dbl = build_double(dp);
    CHECK(one_dim_reps(dbl.d.alg).size() == 5);
}

TEST_CASE("induced modules over the double biject with the enumeration") {
    for (auto base : {FiniteGroupoid::trivial(), FiniteGroupoid::cyclic(2)}) {
        WeakHopf w = groupoid_algebra(base);
        WmhaPairing dp = flip_pairing(dual_pairing(w));
        DoubleAlgebra dbl = build_double(dp);
        auto list = enumerate_one_dim_yd(w);
        auto chars = one_dim_reps(dbl.d.alg);
        CHECK(list.size() == chars.size());

        std::vector<SparseVec> induced;
        for (const auto& od : list) {
            YdModule v;
            v.dim = 1;
            v.action = LinearMap(1, w.dim());
            for (int i = 0; i < w.dim(); ++i) v.action.set(0, i, od.character.get(i));
            v.coaction = LinearMap(w.dim(), 1);
            for (const auto& [i, c] : od.grouplike.entries()) v.coaction.set(i, 0, c);
            Report rep;
            LinearMap act = yd_to_double_module(dbl, v, &rep);
            INFO(rep.to_text());
            CHECK(rep.ok());
            SparseVec chi;
            for (int d = 0; d < dbl.dim(); ++d) chi.set(d, act.get(0, d));
            induced.push_back(chi);
        }
        // induced actions are exactly the characters of the double
        for (const auto& chi : induced) {
            bool found = false;
            for (const auto& c : chars)
                if (c == chi) found = true;
            CHECK(found);
        }
        for (size_t i = 0; i < induced.size(); ++i)
            for (size_t k = i + 1; k < induced.size(); ++k) CHECK(induced[i] != induced[k]);
    }
}

TEST_CASE("a non-compatible pair induces a non-module") {
    // dropping the projection condition breaks associativity of the induced
    // action on the union fixture
    auto u = FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2), FiniteGroupoid::trivial());
    WeakHopf w = groupoid_algebra(u);
    WmhaPairing dp = flip_pairing(dual_pairing(w));
    DoubleAlgebra dbl = build_double(dp);
    auto chars = one_dim_reps(w.alg);
    auto gls = grouplikes(w);
    bool found_counterexample = false;
    for (const auto& alpha : chars)
        for (const auto& gl : gls) {
            YdModule v;
            v.dim = 1;
            v.action = LinearMap(1, w.dim());
            for (int i = 0; i < w.dim(); ++i) v.action.set(0, i, alpha.get(i));
            v.coaction = LinearMap(w.dim(), 1);
            for (const auto& [i, c] : gl.entries()) v.coaction.set(i, 0, c);
            if (yd_check(w, v).ok()) continue;
            Report rep;
            yd_to_double_module(dbl, v, &rep);
            if (!rep.ok()) found_counterexample = true;
        }
    CHECK(found_counterexample);
}
