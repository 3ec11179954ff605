#include "doctest.h"

#include "qgd/pairing.hpp"

using namespace qgd;

TEST_CASE("canonical pairing is the dual basis form") {
    auto g = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(g);
    CHECK(p.form == LinearMap::identity(2));
    // <d_p, l_q> = [p = q]
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(p.pair(SparseVec::unit(i), SparseVec::unit(j)) ==
                  (i == j ? Scalar::one() : Scalar::zero()));

    WmhaPairing t = canonical_pairing(FiniteGroupoid::trivial());
    CHECK(t.form == LinearMap::identity(1));
}

TEST_CASE("pairing verification across fixtures") {
    for (auto g : {FiniteGroupoid::trivial(), FiniteGroupoid::cyclic(2),
                   FiniteGroupoid::pair_groupoid(2),
                   FiniteGroupoid::disjoint_union(FiniteGroupoid::cyclic(2),
                                                  FiniteGroupoid::trivial())}) {
        WmhaPairing p = canonical_pairing(g);
        Report rep = verify_pairing(p);
        INFO(rep.to_text());
        CHECK(rep.ok());
    }
}

TEST_CASE("perturbed form fails with a witness") {
    auto g = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(g);
    p.form.set(0, 1, Scalar(1)); // still full rank, no longer multiplicative
    Report rep = verify_pairing(p);
    CHECK_FALSE(rep.ok());
    bool product_law_failed = false;
    for (const auto& c : rep.checks)
        if (c.id.rfind("def.product", 0) == 0 && c.status == CheckStatus::Fail)
            product_law_failed = true;
    CHECK(product_law_failed);
}

TEST_CASE("dual pairing coincides with the canonical one for function algebras") {
    auto g = FiniteGroupoid::pair_groupoid(2);
    WeakHopf fn = function_algebra(g);
    WmhaPairing dp = dual_pairing(fn);
    WmhaPairing cp = canonical_pairing(g);
    // dual(fn) has the groupoid algebra structure, and the evaluation form is
    // the identity matrix in the dual basis, exactly like the canonical form
    CHECK(dp.form == cp.form);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(dp.b.alg.product(i, j) == cp.b.alg.product(i, j));
    CHECK(verify_pairing(dp).ok());

    // <a, 1> = eps_A(a), <1, b> = eps_B(b)
    int s = g.arrow_index("(1,2)");
    CHECK(dp.pair(SparseVec::unit(s), *dp.b.alg.unit()) == Scalar::zero());
    CHECK(dp.pair(*dp.a.alg.unit(), SparseVec::unit(s)) == Scalar::one());
}

TEST_CASE("flip pairing transposes the form and still verifies") {
    auto g = FiniteGroupoid::cyclic(2);
    WmhaPairing p = flip_pairing(canonical_pairing(g));
    CHECK(verify_pairing(p).ok());
}

TEST_CASE("actions of the canonical pairing") {
    auto g = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(g);
    PairActions act = actions(p);
    const int n = 2;
    // d_q |> l_p = [p = q] l_p (diagonal action on grouplikes)
    for (int q = 0; q < n; ++q)
        for (int pp = 0; pp < n; ++pp) {
            SparseVec got = act.a_on_b.apply(tensor_vec(SparseVec::unit(q), SparseVec::unit(pp), n));
            SparseVec want = (q == pp) ? SparseVec::unit(pp) : SparseVec();
            CHECK(got == want);
        }
    // trivial groupoid: all four actions are the identity
    WmhaPairing t = canonical_pairing(FiniteGroupoid::trivial());
    PairActions ta = actions(t);
    CHECK(ta.a_on_b == LinearMap::identity(1));
    CHECK(ta.b_on_a == LinearMap::identity(1));
    CHECK(ta.b_back_a == LinearMap::identity(1));
    CHECK(ta.a_back_b == LinearMap::identity(1));
}

TEST_CASE("the map R and its generalized inverse") {
    auto z2 = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(z2);
    RMaps rm = r_maps(p);
    int e = z2.arrow_index("e"), s = z2.arrow_index("c1");
    // R(d_e (x) l_s) = d_s (x) l_s
    CHECK(rm.r.col(tensor_index(e, s, 2)) == SparseVec::unit(tensor_index(s, s, 2)));
    // hopf case: R R' = R' R = id
    CHECK(rm.r * rm.r_prime == LinearMap::identity(4));
    CHECK(rm.r_prime * rm.r == LinearMap::identity(4));

    WmhaPairing t = canonical_pairing(FiniteGroupoid::trivial());
    RMaps rt = r_maps(t);
    CHECK(rt.r == LinearMap::identity(1));
    CHECK(rt.r_prime == LinearMap::identity(1));
    CHECK(rt.r_opcop == LinearMap::identity(1));

    // pair(2): R R' is the idempotent projecting onto composable pairs,
    // whose range matches the action of the second idempotent
    auto p2 = FiniteGroupoid::pair_groupoid(2);
    WmhaPairing pp = canonical_pairing(p2);
    RMaps rp = r_maps(pp);
    CHECK(generalized_inverse_check(rp.r, rp.r_prime).ok());
    LinearMap nmap = rp.r * rp.r_prime;
    CHECK(nmap * nmap == nmap);
    CHECK(range_basis(rp.r).size() == 8);
    CHECK(subspace_equal(range_basis(rp.r), range_basis(nmap), 16));
    // op-cop exchange, as matrices
    CHECK(rp.r * rp.r_opcop == rp.r_opcop * rp.r);
}

TEST_CASE("extension of the pairing to multipliers") {
    auto z2 = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(z2);
    // m = embed(1): <a, 1> = eps_A(a)
    Multiplier munit = embed_as_multiplier(p.b.alg, *p.b.alg.unit());
    for (int i = 0; i < 2; ++i)
        CHECK(extend_to_multiplier(p, munit, SparseVec::unit(i)) ==
              p.a.eps(SparseVec::unit(i)));
    // m = embed(b): agrees with the form entry
    for (int j = 0; j < 2; ++j) {
        Multiplier mb = embed_as_multiplier(p.b.alg, SparseVec::unit(j));
        for (int i = 0; i < 2; ++i)
            CHECK(extend_to_multiplier(p, mb, SparseVec::unit(i)) ==
                  p.pair(SparseVec::unit(i), SparseVec::unit(j)));
    }
    // well-definedness on pair(2) for every basis element and multiplier
    auto p2 = FiniteGroupoid::pair_groupoid(2);
    WmhaPairing pp = canonical_pairing(p2);
    for (int j = 0; j < 4; ++j) {
        Multiplier mb = embed_as_multiplier(pp.b.alg, SparseVec::unit(j));
        for (int i = 0; i < 4; ++i)
            CHECK(extend_to_multiplier(pp, mb, SparseVec::unit(i)) ==
                  pp.pair(SparseVec::unit(i), SparseVec::unit(j)));
    }
}

TEST_CASE("functionals are represented by multipliers") {
    auto z2 = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(z2);
    int s = z2.arrow_index("c1");
    // omega = coefficient of d_s
    auto m = functional_to_multiplier(p, SparseVec::unit(s));
    REQUIRE(m.has_value());
    CHECK(p.pair(SparseVec::unit(s), *m) == Scalar::one());
    CHECK(p.pair(SparseVec::unit(z2.arrow_index("e")), *m) == Scalar::zero());
    // omega = eps_A represents the unit multiplier
    auto mu = functional_to_multiplier(p, p.a.counit);
    REQUIRE(mu.has_value());
    CHECK(*mu == *p.b.alg.unit());
}
