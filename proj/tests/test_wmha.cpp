#include "doctest.h"

#include "qgd/wmha.hpp"

using namespace qgd;

namespace {

SparseVec unit_tensor(int i, int j, int n) { return SparseVec::unit(tensor_index(i, j, n)); }

} // namespace

TEST_CASE("function algebra of Z/2") {
    auto g = FiniteGroupoid::cyclic(2);
    WeakHopf w = function_algebra(g);
    int e = g.arrow_index("e"), s = g.arrow_index("c1");
    REQUIRE(w.dim() == 2);

    // delta(d_s) = d_e (x) d_s + d_s (x) d_e
    SparseVec expected = unit_tensor(e, s, 2) + unit_tensor(s, e, 2);
    CHECK(w.delta.col(s) == expected);
    // E = 1 (x) 1 since every pair composes
    SparseVec one_one;
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) one_one.add(tensor_index(p, q, 2), Scalar::one());
    CHECK(w.E == one_one);
    CHECK(w.counit.get(e) == Scalar::one());
    CHECK(w.counit.get(s) == Scalar::zero());
}

TEST_CASE("function algebra of pair(2) has the composable-pair idempotent") {
    auto g = FiniteGroupoid::pair_groupoid(2);
    WeakHopf w = function_algebra(g);
    CHECK(w.E.nnz() == 8);
    long composable = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            if (g.composable(p, q)) ++composable;
    CHECK(static_cast<long>(w.E.nnz()) == composable);
}

TEST_CASE("groupoid algebra structure") {
    auto g = FiniteGroupoid::pair_groupoid(2);
    WeakHopf w = groupoid_algebra(g);
    int a12 = g.arrow_index("(1,2)");
    int e1 = g.arrow_index("(1,1)");
    int e2 = g.arrow_index("(2,2)");
    // E_B = l_(1,1) (x) l_(1,1) + l_(2,2) (x) l_(2,2)
    SparseVec eb = unit_tensor(e1, e1, 4) + unit_tensor(e2, e2, 4);
    CHECK(w.E == eb);
    // l_(1,2) l_(1,2) = 0
    CHECK(w.alg.product(a12, a12).empty());

    auto z2 = FiniteGroupoid::cyclic(2);
    WeakHopf h = groupoid_algebra(z2);
    int s = z2.arrow_index("c1");
    CHECK(h.antipode.col(s) == SparseVec::unit(s));
    CHECK(h.E == unit_tensor(0, 0, 2));
}

TEST_CASE("canonical maps: hopf case inverts, weak case has rank 8") {
    auto z2 = FiniteGroupoid::cyclic(2);
    WeakHopf w = function_algebra(z2);
    CanonicalMaps cm = canonical_maps(w);
    auto t1_inv = inverse(cm.t1);
    REQUIRE(t1_inv.has_value());
    CHECK(*t1_inv == cm.p1);

    auto trivial = FiniteGroupoid::trivial();
    CanonicalMaps cmt = canonical_maps(function_algebra(trivial));
    CHECK(cmt.t1 == LinearMap::identity(1));
    CHECK(cmt.t2 == LinearMap::identity(1));
    CHECK(cmt.p1 == LinearMap::identity(1));

    auto p2 = FiniteGroupoid::pair_groupoid(2);
    WeakHopf wp = function_algebra(p2);
    CanonicalMaps cmp = canonical_maps(wp);
    CHECK(range_basis(cmp.t1).size() == 8);
    LinearMap mul_e(16, 16);
    for (int c = 0; c < 16; ++c) mul_e.col(c) = wp.mult2(wp.E, SparseVec::unit(c));
    CHECK(range_basis(mul_e).size() == 8);
    CHECK(generalized_inverse_check(cmp.t1, cmp.p1).ok());
    CHECK(generalized_inverse_check(cmp.t2, cmp.p2).ok());
}

TEST_CASE("full verification across the fixture zoo") {
    std::vector<FiniteGroupoid> zoo;
    zoo.push_back(FiniteGroupoid::trivial());
    zoo.push_back(FiniteGroupoid::cyclic(2));
    zoo.push_back(FiniteGroupoid::pair_groupoid(2));
    zoo.push_back(FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2),
                                                 FiniteGroupoid::trivial()));
    for (const auto& g : zoo) {
        Report rf = verify_wmha(function_algebra(g));
        INFO("function algebra: ", rf.to_text());
        CHECK(rf.ok());
        Report rg = verify_wmha(groupoid_algebra(g));
        INFO("groupoid algebra: ", rg.to_text());
        CHECK(rg.ok());
    }
}

TEST_CASE("verification catches a broken antipode") {
    auto p2 = FiniteGroupoid::pair_groupoid(2);
    WeakHopf w = groupoid_algebra(p2);
    w.antipode = LinearMap::identity(4);
    Report rep = verify_wmha(w, false);
    CHECK_FALSE(rep.ok());
    bool antipode_failed = false;
    for (const auto& c : rep.checks)
        if (c.id.rfind("antipode.triple", 0) == 0 && c.status == CheckStatus::Fail)
            antipode_failed = true;
    CHECK(antipode_failed);
    const Check* f = rep.first_failure();
    REQUIRE(f != nullptr);
    CHECK(f->witness.has_value());
}

TEST_CASE("source and target subalgebras") {
    auto z2 = FiniteGroupoid::cyclic(2);
    SourceTargetData st = source_target(function_algebra(z2));
    CHECK(st.target_basis.size() == 1); // hopf case: scalars
    CHECK(st.source_basis.size() == 1);
    CHECK(st.resolved_t_prime == 0);

    auto p2 = FiniteGroupoid::pair_groupoid(2);
    SourceTargetData stp = source_target(function_algebra(p2));
    CHECK(stp.target_basis.size() == 2);
    CHECK(stp.source_basis.size() == 2);
    CHECK(stp.resolved_t_prime == 0);

    // eps_t(l_p) = l_{tgt(p)} in a groupoid algebra
    WeakHopf gb = groupoid_algebra(p2);
    SourceTargetData stg = source_target(gb);
    for (int p = 0; p < 4; ++p) {
        int tgt_id = p2.identity_arrow(p2.arrow(p).tgt);
        CHECK(stg.eps_t.col(p) == SparseVec::unit(tgt_id));
    }
    // the two primed-target readings genuinely differ on pair(2) functions
    SourceTargetData stf = source_target(function_algebra(p2));
    CHECK(stf.eps_t_prime != stf.eps_t_prime_alt);
}

TEST_CASE("module algebra law detects the counit pseudo-action") {
    auto p2 = FiniteGroupoid::pair_groupoid(2);
    WeakHopf w = function_algebra(p2);
    const int n = w.dim();
    // a |> r := eps(a) r is not an action for a genuinely weak structure
    LinearMap action(n, n * n);
    for (int a = 0; a < n; ++a)
        for (int r = 0; r < n; ++r)
            action.col(a * n + r) = SparseVec::unit(r).scaled(w.counit.get(a));
    Report rep = module_algebra_check(w, w.alg, action);
    CHECK_FALSE(rep.ok());

    // the trivial groupoid version passes
    auto t = FiniteGroupoid::trivial();
    WeakHopf wt = function_algebra(t);
    LinearMap act1(1, 1);
    act1.set(0, 0, Scalar::one());
    CHECK(module_algebra_check(wt, wt.alg, act1).ok());
}

TEST_CASE("integrals of the small fixtures") {
    auto z2 = FiniteGroupoid::cyclic(2);
    {
        // left integrals of the function algebra: the total sum
        IntegralSpace ints = integrals(function_algebra(z2));
        REQUIRE(ints.left.size() == 1);
        SparseVec haar;
        haar.add(0, Scalar::one());
        haar.add(1, Scalar::one());
        CHECK(subspace_equal(ints.left, {haar}, 2));
        CHECK(ints.faithful);
    }
    {
        // left integrals of the group algebra: the coefficient of l_e
        IntegralSpace ints = integrals(groupoid_algebra(z2));
        REQUIRE(ints.left.size() == 1);
        CHECK(subspace_equal(ints.left, {SparseVec::unit(0)}, 2));
        CHECK(ints.faithful);
    }
    {
        IntegralSpace ints = integrals(function_algebra(FiniteGroupoid::trivial()));
        REQUIRE(ints.left.size() == 1);
        CHECK(ints.faithful);
    }
}

TEST_CASE("dual of the function algebra is the groupoid algebra") {
    for (auto g : {FiniteGroupoid::cyclic(2), FiniteGroupoid::pair_groupoid(2)}) {
        WeakHopf fn = function_algebra(g);
        WeakHopf dual_fn = dual(fn);
        WeakHopf gb = groupoid_algebra(g);
        const int n = fn.dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(dual_fn.alg.product(i, j) == gb.alg.product(i, j));
        CHECK(dual_fn.delta == gb.delta);
        CHECK(dual_fn.counit == gb.counit);
        CHECK(dual_fn.antipode == gb.antipode);
        CHECK(dual_fn.E == gb.E);
        Report rep = verify_wmha(dual_fn);
        CHECK(rep.ok());

        // double dual is the original under the evaluation identification
        WeakHopf ddual = dual(dual_fn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(ddual.alg.product(i, j) == fn.alg.product(i, j));
        CHECK(ddual.delta == fn.delta);
    }
    WeakHopf trivial_dual = dual(function_algebra(FiniteGroupoid::trivial()));
    CHECK(trivial_dual.dim() == 1);
}
