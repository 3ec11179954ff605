#include "qgd/wmha.hpp"

#include <array>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qgd {

namespace {

std::string pair_witness(const WeakHopf& w, int i, int j) {
    return "(" + w.alg.label(i) + ", " + w.alg.label(j) + ")";
}

} // namespace

SparseVec WeakHopf::delta2_of(const SparseVec& x) const {
    const int n = dim();
    SparseVec out;
    SparseVec d = delta.apply(x);
    for (const auto& [ij, c] : d.entries()) {
        int i = ij / n, j = ij % n;
        SparseVec di = delta.col(i); // delta of basis i
        for (const auto& [uv, cc] : di.entries()) out.add(uv * n + j, c * cc);
    }
    return out;
}

Scalar WeakHopf::eps(const SparseVec& x) const {
    Scalar out = Scalar::zero();
    for (const auto& [i, c] : x.entries()) out += c * counit.get(i);
    return out;
}

WeakHopf function_algebra(const FiniteGroupoid& g) {
    const int n = g.arrow_count();
    std::vector<std::string> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) basis.push_back("d_" + g.arrow(i).id);
    FiniteAlgebra alg(std::move(basis));
    for (int i = 0; i < n; ++i) alg.set_product(i, i, SparseVec::unit(i));
    SparseVec unit;
    for (int i = 0; i < n; ++i) unit.add(i, Scalar::one());
    alg.set_unit(unit);
    alg.set_star({LinearMap::identity(n)});

    WeakHopf w;
    w.delta = LinearMap(n * n, n);
    w.E = SparseVec();
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            auto pq = g.compose(p, q);
            if (!pq) continue;
            w.delta.col(*pq).add(tensor_index(p, q, n), Scalar::one());
            w.E.add(tensor_index(p, q, n), Scalar::one());
        }
    w.counit = SparseVec();
    for (const auto& u : g.units()) w.counit.add(g.identity_arrow(u), Scalar::one());
    w.antipode = LinearMap(n, n);
    for (int p = 0; p < n; ++p) w.antipode.col(p) = SparseVec::unit(g.inverse(p));
    w.alg = std::move(alg);
    return w;
}

WeakHopf groupoid_algebra(const FiniteGroupoid& g) {
    const int n = g.arrow_count();
    std::vector<std::string> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) basis.push_back("l_" + g.arrow(i).id);
    FiniteAlgebra alg(std::move(basis));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            auto pq = g.compose(p, q);
            if (pq) alg.set_product(p, q, SparseVec::unit(*pq));
        }
    SparseVec unit;
    for (const auto& u : g.units()) unit.add(g.identity_arrow(u), Scalar::one());
    alg.set_unit(unit);
    LinearMap star_mat(n, n);
    for (int p = 0; p < n; ++p) star_mat.col(p) = SparseVec::unit(g.inverse(p));
    alg.set_star({star_mat});

    WeakHopf w;
    w.delta = LinearMap(n * n, n);
    for (int p = 0; p < n; ++p) w.delta.col(p) = SparseVec::unit(tensor_index(p, p, n));
    w.counit = SparseVec();
    for (int p = 0; p < n; ++p) w.counit.add(p, Scalar::one());
    w.antipode = LinearMap(n, n);
    for (int p = 0; p < n; ++p) w.antipode.col(p) = SparseVec::unit(g.inverse(p));
    w.E = SparseVec();
    for (const auto& u : g.units()) {
        int e = g.identity_arrow(u);
        w.E.add(tensor_index(e, e, n), Scalar::one());
    }
    w.alg = std::move(alg);
    return w;
}

CanonicalMaps canonical_maps(const WeakHopf& w) {
    const int n = w.dim();
    const LinearMap& s = w.antipode;
    CanonicalMaps cm;
    auto build = [&](const std::function<SparseVec(int, int)>& f) {
        return LinearMap::from_function(n * n, n * n, [&](int col) {
            return f(col / n, col % n);
        });
    };
    cm.t1 = build([&](int i, int j) { // delta(a)(1 (x) b)
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(i).entries()) {
            int u = uv / n, v = uv % n;
            const SparseVec& vb = w.alg.product(v, j);
            for (const auto& [k, ck] : vb.entries()) out.add(tensor_index(u, k, n), c * ck);
        }
        return out;
    });
    cm.t2 = build([&](int i, int j) { // (a (x) 1) delta(b)
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(j).entries()) {
            int u = uv / n, v = uv % n;
            const SparseVec& au = w.alg.product(i, u);
            for (const auto& [k, ck] : au.entries()) out.add(tensor_index(k, v, n), c * ck);
        }
        return out;
    });
    cm.t3 = build([&](int i, int j) { // (1 (x) b) delta(a)
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(i).entries()) {
            int u = uv / n, v = uv % n;
            const SparseVec& bv = w.alg.product(j, v);
            for (const auto& [k, ck] : bv.entries()) out.add(tensor_index(u, k, n), c * ck);
        }
        return out;
    });
    cm.t4 = build([&](int i, int j) { // delta(b)(a (x) 1)
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(j).entries()) {
            int u = uv / n, v = uv % n;
            const SparseVec& ua = w.alg.product(u, i);
            for (const auto& [k, ck] : ua.entries()) out.add(tensor_index(k, v, n), c * ck);
        }
        return out;
    });
    cm.p1 = build([&](int i, int j) { // a_(1) (x) S(a_(2)) a'
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(i).entries()) {
            int u = uv / n, v = uv % n;
            SparseVec sv = w.alg.multiply(s.col(v), SparseVec::unit(j));
            for (const auto& [k, ck] : sv.entries()) out.add(tensor_index(u, k, n), c * ck);
        }
        return out;
    });
    cm.p2 = build([&](int i, int j) { // a S(a'_(1)) (x) a'_(2)
        SparseVec out;
        for (const auto& [uv, c] : w.delta.col(j).entries()) {
            int u = uv / n, v = uv % n;
            SparseVec as = w.alg.multiply(SparseVec::unit(i), s.col(u));
            for (const auto& [k, ck] : as.entries()) out.add(tensor_index(k, v, n), c * ck);
        }
        return out;
    });
    return cm;
}

WeakHopf cop_structure(const WeakHopf& w) {
    const int n = w.dim();
    auto sinv = inverse(w.antipode);
    if (!sinv) throw std::domain_error("antipode is not invertible");
    WeakHopf c;
    c.alg = w.alg;
    c.delta = flip_map(n, n) * w.delta;
    c.counit = w.counit;
    c.antipode = *sinv;
    c.E = flip_map(n, n).apply(w.E);
    return c;
}

SourceTargetData source_target(const WeakHopf& w) {
    const int n = w.dim();
    auto sinv_opt = inverse(w.antipode);
    if (!sinv_opt) throw std::domain_error("antipode is not invertible");
    const LinearMap& s = w.antipode;
    const LinearMap& sinv = *sinv_opt;

    SourceTargetData st;
    auto build = [&](const std::function<SparseVec(int, int, const Scalar&)>& term) {
        // assembles a map from the Sweedler legs of delta(a_i)
        return LinearMap::from_function(n, n, [&](int i) {
            SparseVec out;
            for (const auto& [uv, c] : w.delta.col(i).entries())
                out += term(uv / n, uv % n, c);
            return out;
        });
    };
    st.eps_s = build([&](int u, int v, const Scalar& c) { // S(a_(1)) a_(2)
        return w.alg.multiply(s.col(u), SparseVec::unit(v)).scaled(c);
    });
    st.eps_t = build([&](int u, int v, const Scalar& c) { // a_(1) S(a_(2))
        return w.alg.multiply(SparseVec::unit(u), s.col(v)).scaled(c);
    });
    st.eps_s_prime = build([&](int u, int v, const Scalar& c) { // a_(2) S^{-1}(a_(1))
        return w.alg.multiply(SparseVec::unit(v), sinv.col(u)).scaled(c);
    });
    st.eps_t_prime = build([&](int u, int v, const Scalar& c) { // S^{-1}(a_(2)) a_(1)
        return w.alg.multiply(sinv.col(v), SparseVec::unit(u)).scaled(c);
    });
    st.eps_t_prime_alt = build([&](int u, int v, const Scalar& c) { // S^{-1}(a_(1)) a_(2)
        return w.alg.multiply(sinv.col(u), SparseVec::unit(v)).scaled(c);
    });

    Echelon src(n), tgt(n);
    for (int i = 0; i < n; ++i) {
        src.insert(st.eps_s.col(i));
        tgt.insert(st.eps_t.col(i));
    }
    st.source_basis = src.basis();
    st.target_basis = tgt.basis();

    // Resolve the primed target map against the idempotent: the valid
    // reading satisfies eps'_t(a) = (eps (x) id)((a (x) 1) E) for all a.
    st.resolved_t_prime = -1;
    if (w.alg.unit()) {
        bool primary = true, alt = true;
        for (int i = 0; i < n; ++i) {
            SparseVec ae = w.mult2(tensor_vec(SparseVec::unit(i), *w.alg.unit(), n), w.E);
            SparseVec expected;
            for (const auto& [uv, c] : ae.entries())
                expected.add(uv % n, c * w.counit.get(uv / n));
            if (st.eps_t_prime.col(i) != expected) primary = false;
            if (st.eps_t_prime_alt.col(i) != expected) alt = false;
        }
        if (primary) st.resolved_t_prime = 0;
        else if (alt) st.resolved_t_prime = 1;
    }
    return st;
}

namespace {

// Shared scan helpers for the verifier.
struct Verifier {
    const WeakHopf& w;
    Report& rep;
    int n;

    void scan_basis(const std::string& id, const std::string& anchor,
                    const std::function<bool(int)>& check) {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            if (!check(i)) {
                ok = false;
                wit = w.alg.label(i);
            }
        rep.record(id, anchor, ok, [&] { return wit; });
    }
    void scan_pairs(const std::string& id, const std::string& anchor,
                    const std::function<bool(int, int)>& check) {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (!check(i, j)) {
                    ok = false;
                    wit = pair_witness(w, i, j);
                }
        rep.record(id, anchor, ok, [&] { return wit; });
    }
};

SparseVec tensor3(const SparseVec& a, const SparseVec& b, const SparseVec& c, int n) {
    return tensor_vec(tensor_vec(a, b, n), c, n);
}

// product in A (x) A (x) A computed legwise
SparseVec mult3(const FiniteAlgebra& alg, const SparseVec& x, const SparseVec& y) {
    const int n = alg.dim();
    SparseVec out;
    for (const auto& [i, ci] : x.entries())
        for (const auto& [j, cj] : y.entries()) {
            int i1 = i / (n * n), i2 = (i / n) % n, i3 = i % n;
            int j1 = j / (n * n), j2 = (j / n) % n, j3 = j % n;
            const SparseVec& p1 = alg.product(i1, j1);
            if (p1.empty()) continue;
            const SparseVec& p2 = alg.product(i2, j2);
            if (p2.empty()) continue;
            const SparseVec& p3 = alg.product(i3, j3);
            if (p3.empty()) continue;
            out.axpy(ci * cj, tensor3(p1, p2, p3, n));
        }
    return out;
}

} // namespace

Report verify_wmha(const WeakHopf& w, bool include_cop, std::uint64_t seed) {
    Report rep;
    rep.subject = "weak-hopf";
    const int n = w.dim();
    Verifier v{w, rep, n};

    rep.absorb(verify_algebra(w.alg), "alg");

    // coproduct is a homomorphism
    v.scan_pairs("delta.hom", "coproduct is multiplicative", [&](int i, int j) {
        return w.delta.apply(w.alg.product(i, j)) == w.mult2(w.delta.col(i), w.delta.col(j));
    });

    // coassociativity as a matrix identity
    {
        LinearMap lhs =
            LinearMap::from_function(n * n * n, n, [&](int i) { return w.delta2_of(SparseVec::unit(i)); });
        LinearMap rhs = LinearMap::from_function(n * n * n, n, [&](int i) {
            SparseVec out;
            for (const auto& [uv, c] : w.delta.col(i).entries()) {
                int u = uv / n, vv = uv % n;
                for (const auto& [jk, cc] : w.delta.col(vv).entries())
                    out.add(u * n * n + jk, c * cc);
            }
            return out;
        });
        rep.record("delta.coassoc", "coproduct is coassociative", lhs == rhs,
                   [] { return std::string("matrix mismatch"); });
    }

    // fullness: legs of delta(a)(1 (x) b) span A, legs of (a (x) 1) delta(b) span A
    {
        CanonicalMaps cm = canonical_maps(w);
        Echelon first_legs(n), second_legs(n);
        for (int col = 0; col < n * n; ++col) {
            const SparseVec& img1 = cm.t1.col(col);
            std::map<int, SparseVec> slices1;
            for (const auto& [uv, c] : img1.entries()) slices1[uv % n].add(uv / n, c);
            for (auto& [k, s] : slices1) first_legs.insert(s);
            const SparseVec& img2 = cm.t2.col(col);
            std::map<int, SparseVec> slices2;
            for (const auto& [uv, c] : img2.entries()) slices2[uv / n].add(uv % n, c);
            for (auto& [k, s] : slices2) second_legs.insert(s);
        }
        rep.record("delta.full.left", "first legs of the coproduct span the algebra",
                   first_legs.rank() == n,
                   [&] { return "rank " + std::to_string(first_legs.rank()); });
        rep.record("delta.full.right", "second legs of the coproduct span the algebra",
                   second_legs.rank() == n,
                   [&] { return "rank " + std::to_string(second_legs.rank()); });

        // counit laws
        v.scan_pairs("counit.left", "counit cancels the first canonical leg", [&](int i, int j) {
            SparseVec t = cm.t1.col(tensor_index(i, j, n));
            SparseVec out;
            for (const auto& [uv, c] : t.entries()) out.add(uv % n, c * w.counit.get(uv / n));
            return out == w.alg.product(i, j);
        });
        v.scan_pairs("counit.right", "counit cancels the second canonical leg", [&](int i, int j) {
            SparseVec t = cm.t2.col(tensor_index(i, j, n));
            SparseVec out;
            for (const auto& [uv, c] : t.entries()) out.add(uv / n, c * w.counit.get(uv % n));
            return out == w.alg.product(i, j);
        });

        // canonical idempotent conditions
        rep.record("e.idempotent", "canonical idempotent squares to itself",
                   w.mult2(w.E, w.E) == w.E, [] { return std::string("E^2 != E"); });

        LinearMap mul_by_E_left = LinearMap::from_function(n * n, n * n, [&](int col) {
            return w.mult2(w.E, SparseVec::unit(col));
        });
        LinearMap mul_by_E_right = LinearMap::from_function(n * n, n * n, [&](int col) {
            return w.mult2(SparseVec::unit(col), w.E);
        });
        rep.record("e.range.t1", "idempotent gives the range of the first canonical map",
                   subspace_equal(range_basis(cm.t1), range_basis(mul_by_E_left), n * n),
                   [] { return std::string("range mismatch"); });
        rep.record("e.range.t2", "idempotent gives the range of the second canonical map",
                   subspace_equal(range_basis(cm.t2), range_basis(mul_by_E_right), n * n),
                   [] { return std::string("range mismatch"); });

        // generalized inverses and the idempotent composites
        auto g1 = generalized_inverse_check(cm.t1, cm.p1);
        auto g2 = generalized_inverse_check(cm.t2, cm.p2);
        rep.record("geninv.t1p1", "first canonical map has its stated generalized inverse", g1.ok(),
                   [&] { return std::string(g1.first ? "PTP != P" : "TPT != T"); });
        rep.record("geninv.t2p2", "second canonical map has its stated generalized inverse", g2.ok(),
                   [&] { return std::string(g2.first ? "PTP != P" : "TPT != T"); });
        rep.record("e.t1p1", "composite T1 P1 is multiplication by the idempotent",
                   cm.t1 * cm.p1 == mul_by_E_left, [] { return std::string("matrix mismatch"); });
        rep.record("e.t2p2", "composite T2 P2 is multiplication by the idempotent",
                   cm.t2 * cm.p2 == mul_by_E_right, [] { return std::string("matrix mismatch"); });

        // kernel descriptions
        LinearMap id2 = LinearMap::identity(n * n);
        rep.record("ker.t1", "kernel of T1 is the complement of the G1 idempotent",
                   subspace_equal(kernel_basis(cm.t1), range_basis(id2 - cm.p1 * cm.t1), n * n),
                   [] { return std::string("subspace mismatch"); });
        rep.record("ker.t2", "kernel of T2 is the complement of the G2 idempotent",
                   subspace_equal(kernel_basis(cm.t2), range_basis(id2 - cm.p2 * cm.t2), n * n),
                   [] { return std::string("subspace mismatch"); });
        {
            // exact splitting: range of G1 plus kernel of T1 is everything
            LinearMap g1m = cm.p1 * cm.t1;
            auto g1_range = range_basis(g1m);
            auto t1_kernel = kernel_basis(cm.t1);
            Echelon sum(n * n);
            sum.insert_all(g1_range);
            sum.insert_all(t1_kernel);
            bool ok = g1m * g1m == g1m &&
                      static_cast<int>(g1_range.size() + t1_kernel.size()) == n * n &&
                      sum.rank() == n * n;
            rep.record("ker.split", "G1 range and T1 kernel decompose the tensor square exactly",
                       ok, [] { return std::string("decomposition fails"); });
        }

        // G1/G2 characterization on triple legs; the one scan that can
        // outgrow the tuple budget, sampled when it does
        {
            LinearMap g1m = cm.p1 * cm.t1;
            LinearMap g2m = cm.p2 * cm.t2;
            bool ok1 = true, ok2 = true;
            std::string wit1, wit2;
            const long total = static_cast<long>(n) * n * n;
            const long budget = 100000;
            std::vector<std::array<int, 3>> plan;
            if (total > budget) {
                rep.sampled = true;
                rep.seed = seed;
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<int> pick(0, n - 1);
                plan.reserve(budget);
                for (long t_ = 0; t_ < budget; ++t_)
                    plan.push_back({pick(rng), pick(rng), pick(rng)});
            } else {
                plan.reserve(total);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c) plan.push_back({a, b, c});
            }
            for (const auto& [a, b, c] : plan) {
                if (!ok1 && !ok2) break;
                {
                        if (ok1) {
                            // delta_13(a)(1 (x) b (x) c), G1 on legs 1,2
                            SparseVec lhs, rhs;
                            for (const auto& [uv, cf] : w.delta.col(a).entries()) {
                                int u = uv / n, vv = uv % n;
                                SparseVec vc = w.alg.product(vv, c);
                                // lhs term: G1(u (x) b) (x) (a_(2) c)
                                SparseVec g = g1m.col(tensor_index(u, b, n));
                                for (const auto& [gk, gc] : g.entries())
                                    for (const auto& [k3, c3] : vc.entries())
                                        lhs.add(gk * n + k3, cf * gc * c3);
                                // rhs term: a_(1) (x) E_1 b (x) a_(2) E_2 c
                                for (const auto& [ee, ec] : w.E.entries()) {
                                    int e1 = ee / n, e2 = ee % n;
                                    SparseVec e1b = w.alg.product(e1, b);
                                    SparseVec ve2 = w.alg.multiply(SparseVec::unit(vv),
                                                                   w.alg.product(e2, c));
                                    for (const auto& [k2, c2] : e1b.entries())
                                        for (const auto& [k3, c3] : ve2.entries())
                                            rhs.add((u * n + k2) * n + k3, cf * ec * c2 * c3);
                                }
                            }
                            if (lhs != rhs) {
                                ok1 = false;
                                wit1 = "(" + w.alg.label(a) + ", " + w.alg.label(b) + ", " +
                                       w.alg.label(c) + ")";
                            }
                        }
                        if (ok2) {
                            // (a (x) b (x) 1) delta_13(c), G2 on legs 2,3
                            SparseVec lhs, rhs;
                            for (const auto& [uv, cf] : w.delta.col(c).entries()) {
                                int u = uv / n, vv = uv % n;
                                SparseVec au = w.alg.product(a, u);
                                SparseVec g = g2m.col(tensor_index(b, vv, n));
                                for (const auto& [k1, c1] : au.entries())
                                    for (const auto& [gk, gc] : g.entries())
                                        lhs.add(k1 * n * n + gk, cf * c1 * gc);
                                for (const auto& [ee, ec] : w.E.entries()) {
                                    int e1 = ee / n, e2 = ee % n;
                                    SparseVec ae1u = w.alg.multiply(SparseVec::unit(a),
                                                                    w.alg.product(e1, u));
                                    SparseVec be2 = w.alg.product(b, e2);
                                    for (const auto& [k1, c1] : ae1u.entries())
                                        for (const auto& [k2, c2] : be2.entries())
                                            rhs.add((k1 * n + k2) * n + vv, cf * ec * c1 * c2);
                                }
                            }
                            if (lhs != rhs) {
                                ok2 = false;
                                wit2 = "(" + w.alg.label(a) + ", " + w.alg.label(b) + ", " +
                                       w.alg.label(c) + ")";
                            }
                        }
                }
            }
            rep.record("g1.legs", "G1 acts as the idempotent on spread coproduct legs", ok1,
                       [&] { return wit1; });
            rep.record("g2.legs", "G2 acts as the idempotent on spread coproduct legs", ok2,
                       [&] { return wit2; });
        }
    }

    // E absorbs coproducts and (co)associates with itself
    v.scan_basis("e.absorb", "idempotent absorbs every coproduct value", [&](int i) {
        const SparseVec d = w.delta.col(i);
        return w.mult2(w.E, d) == d && w.mult2(d, w.E) == d;
    });
    if (w.alg.unit()) {
        const SparseVec& one = *w.alg.unit();
        SparseVec e_1 = tensor_vec(w.E, one, n);       // E (x) 1
        SparseVec one_e = tensor_vec(one, w.E, n * n); // 1 (x) E
        SparseVec prod1 = mult3(w.alg, e_1, one_e);
        SparseVec prod2 = mult3(w.alg, one_e, e_1);
        SparseVec id_delta_e;
        for (const auto& [uv, c] : w.E.entries())
            for (const auto& [jk, cc] : w.delta.col(uv % n).entries())
                id_delta_e.add((uv / n) * n * n + jk, c * cc);
        SparseVec delta_id_e;
        for (const auto& [uv, c] : w.E.entries())
            for (const auto& [jk, cc] : w.delta.col(uv / n).entries())
                delta_id_e.add(jk * n + uv % n, c * cc);
        rep.record("e.coassoc.right", "spreading the idempotent right matches its staircase products",
                   id_delta_e == prod1 && id_delta_e == prod2,
                   [] { return std::string("element mismatch"); });
        rep.record("e.coassoc.left", "spreading the idempotent left matches its staircase products",
                   delta_id_e == prod1,
                   [] { return std::string("element mismatch"); });
    } else {
        rep.skip("e.coassoc.right", "spreading the idempotent right matches its staircase products");
        rep.skip("e.coassoc.left", "spreading the idempotent left matches its staircase products");
    }

    // antipode identities; a singular antipode short-circuits everything
    // that needs its inverse
    auto sinv_opt = inverse(w.antipode);
    rep.record("antipode.bijective", "antipode is invertible", sinv_opt.has_value(),
               [] { return std::string("singular antipode matrix"); });
    if (!sinv_opt) {
        rep.sort();
        return rep;
    }
    v.scan_basis("antipode.triple.a", "triple product with the antipode returns the element",
                 [&](int i) {
                     SparseVec out;
                     SparseVec d2 = w.delta2_of(SparseVec::unit(i));
                     for (const auto& [ijk, c] : d2.entries()) {
                         int u = ijk / (n * n), vv = (ijk / n) % n, k = ijk % n;
                         SparseVec t = w.alg.multiply(
                             w.alg.multiply(SparseVec::unit(u), w.antipode.col(vv)),
                             SparseVec::unit(k));
                         out.axpy(c, t);
                     }
                     return out == SparseVec::unit(i);
                 });
    v.scan_basis("antipode.triple.s", "triple product with the antipode returns the antipode",
                 [&](int i) {
                     SparseVec out;
                     SparseVec d2 = w.delta2_of(SparseVec::unit(i));
                     for (const auto& [ijk, c] : d2.entries()) {
                         int u = ijk / (n * n), vv = (ijk / n) % n, k = ijk % n;
                         SparseVec t = w.alg.multiply(
                             w.alg.multiply(w.antipode.col(u), SparseVec::unit(vv)),
                             w.antipode.col(k));
                         out.axpy(c, t);
                     }
                     return out == w.antipode.col(i);
                 });
    v.scan_pairs("antipode.antimult", "antipode reverses products", [&](int i, int j) {
        return w.antipode.apply(w.alg.product(i, j)) ==
               w.alg.multiply(w.antipode.col(j), w.antipode.col(i));
    });
    v.scan_basis("antipode.anticomult", "antipode reverses the coproduct", [&](int i) {
        SparseVec lhs; // (S (x) S) delta(a)
        for (const auto& [uv, c] : w.delta.col(i).entries())
            lhs.axpy(c, tensor_vec(w.antipode.col(uv / n), w.antipode.col(uv % n), n));
        SparseVec rhs = flip_map(n, n).apply(w.delta.apply(w.antipode.col(i)));
        return lhs == rhs;
    });

    // source/target structure
    {
        SourceTargetData st = source_target(w);
        bool ok = true;
        std::string wit;
        if (w.alg.unit()) {
            for (const auto& x : st.target_basis) {
                SparseVec dx = w.delta.apply(x);
                SparseVec x_1 = w.mult2(tensor_vec(x, *w.alg.unit(), n), w.E);
                SparseVec x_1b = w.mult2(w.E, tensor_vec(x, *w.alg.unit(), n));
                if (dx != x_1 || dx != x_1b) {
                    ok = false;
                    wit = x.str();
                    break;
                }
            }
            rep.record("st.delta.target", "target elements split the coproduct across the idempotent",
                       ok, [&] { return wit; });
            ok = true;
            for (const auto& y : st.source_basis) {
                SparseVec dy = w.delta.apply(y);
                SparseVec y_1 = w.mult2(w.E, tensor_vec(*w.alg.unit(), y, n));
                SparseVec y_1b = w.mult2(tensor_vec(*w.alg.unit(), y, n), w.E);
                if (dy != y_1 || dy != y_1b) {
                    ok = false;
                    wit = y.str();
                    break;
                }
            }
            rep.record("st.delta.source", "source elements split the coproduct across the idempotent",
                       ok, [&] { return wit; });
        } else {
            rep.skip("st.delta.target", "target elements split the coproduct across the idempotent");
            rep.skip("st.delta.source", "source elements split the coproduct across the idempotent");
        }

        ok = true;
        for (const auto& x : st.target_basis) {
            for (const auto& y : st.source_basis)
                if (w.alg.multiply(x, y) != w.alg.multiply(y, x)) {
                    ok = false;
                    wit = x.str() + " vs " + y.str();
                    break;
                }
            if (!ok) break;
        }
        rep.record("st.commute", "source and target subalgebras commute", ok, [&] { return wit; });

        if (w.alg.unit()) {
            ok = true;
            for (const auto& x : st.target_basis) {
                SparseVec lhs = w.mult2(tensor_vec(*w.alg.unit(), x, n), w.E);
                SparseVec rhs = w.mult2(tensor_vec(w.antipode.apply(x), *w.alg.unit(), n), w.E);
                if (lhs != rhs) {
                    ok = false;
                    wit = x.str();
                    break;
                }
            }
            rep.record("st.swap.target", "target elements slide across the idempotent via the antipode",
                       ok, [&] { return wit; });
            ok = true;
            for (const auto& y : st.source_basis) {
                SparseVec lhs = w.mult2(w.E, tensor_vec(y, *w.alg.unit(), n));
                SparseVec rhs = w.mult2(w.E, tensor_vec(*w.alg.unit(), w.antipode.apply(y), n));
                if (lhs != rhs) {
                    ok = false;
                    wit = y.str();
                    break;
                }
            }
            rep.record("st.swap.source", "source elements slide across the idempotent via the antipode",
                       ok, [&] { return wit; });

            // E(a (x) 1) and (1 (x) a)E expansions
            v.scan_basis("st.e.left", "left multiplication of the idempotent expands through the antipode",
                         [&](int i) {
                             SparseVec lhs = w.mult2(w.E, tensor_vec(SparseVec::unit(i), *w.alg.unit(), n));
                             SparseVec rhs;
                             for (const auto& [uv, c] : w.delta.col(i).entries()) {
                                 SparseVec term = w.mult2(
                                     w.delta.col(uv / n),
                                     tensor_vec(*w.alg.unit(), w.antipode.col(uv % n), n));
                                 rhs.axpy(c, term);
                             }
                             return lhs == rhs;
                         });
            v.scan_basis("st.e.right", "right multiplication of the idempotent expands through the antipode",
                         [&](int i) {
                             SparseVec lhs = w.mult2(tensor_vec(*w.alg.unit(), SparseVec::unit(i), n), w.E);
                             SparseVec rhs;
                             for (const auto& [uv, c] : w.delta.col(i).entries()) {
                                 SparseVec term = w.mult2(
                                     tensor_vec(w.antipode.col(uv / n), *w.alg.unit(), n),
                                     w.delta.col(uv % n));
                                 rhs.axpy(c, term);
                             }
                             return lhs == rhs;
                         });
            if (sinv_opt) {
                const LinearMap& sinv = *sinv_opt;
                v.scan_basis("st.e.left.regular", "regular-case expansion of the idempotent on the right leg",
                             [&](int i) {
                                 SparseVec lhs = w.mult2(w.E, tensor_vec(*w.alg.unit(), SparseVec::unit(i), n));
                                 SparseVec rhs;
                                 for (const auto& [uv, c] : w.delta.col(i).entries()) {
                                     SparseVec term = w.mult2(
                                         w.delta.col(uv % n),
                                         tensor_vec(sinv.col(uv / n), *w.alg.unit(), n));
                                     rhs.axpy(c, term);
                                 }
                                 return lhs == rhs;
                             });
                v.scan_basis("st.e.right.regular", "regular-case expansion of the idempotent on the left leg",
                             [&](int i) {
                                 SparseVec lhs = w.mult2(tensor_vec(SparseVec::unit(i), *w.alg.unit(), n), w.E);
                                 SparseVec rhs;
                                 for (const auto& [uv, c] : w.delta.col(i).entries()) {
                                     SparseVec term = w.mult2(
                                         tensor_vec(*w.alg.unit(), sinv.col(uv % n), n),
                                         w.delta.col(uv / n));
                                     rhs.axpy(c, term);
                                 }
                                 return lhs == rhs;
                             });
            }

            // characterizations of the target/source subalgebras
            {
                std::vector<SparseVec> cons_t, cons_s;
                for (int u = 0; u < n; ++u) {
                    // delta(x) - (x (x) 1)E = 0 as linear condition on x
                    SparseVec dcol = w.delta.col(u);
                    SparseVec me = w.mult2(tensor_vec(SparseVec::unit(u), *w.alg.unit(), n), w.E);
                    SparseVec diff_t = dcol - me;
                    SparseVec me2 = w.mult2(w.E, tensor_vec(*w.alg.unit(), SparseVec::unit(u), n));
                    SparseVec diff_s = dcol - me2;
                    cons_t.push_back(diff_t);
                    cons_s.push_back(diff_s);
                }
                // unknown x: sum_u x_u * diff(u) = 0
                std::vector<SparseVec> rows_t, rows_s;
                for (int coord = 0; coord < n * n; ++coord) {
                    SparseVec r1, r2;
                    for (int u = 0; u < n; ++u) {
                        Scalar c1 = cons_t[u].get(coord);
                        if (!c1.is_zero()) r1.add(u, c1);
                        Scalar c2 = cons_s[u].get(coord);
                        if (!c2.is_zero()) r2.add(u, c2);
                    }
                    if (!r1.empty()) rows_t.push_back(std::move(r1));
                    if (!r2.empty()) rows_s.push_back(std::move(r2));
                }
                rep.record("st.char.target", "target subalgebra matches its coproduct characterization",
                           subspace_equal(solve_homogeneous(rows_t, n), st.target_basis, n),
                           [] { return std::string("span mismatch"); });
                rep.record("st.char.source", "source subalgebra matches its coproduct characterization",
                           subspace_equal(solve_homogeneous(rows_s, n), st.source_basis, n),
                           [] { return std::string("span mismatch"); });
            }

            rep.record("st.prime.resolved", "exactly one reading of the primed target map fits the idempotent",
                       st.resolved_t_prime == 0,
                       [&] { return "resolution state " + std::to_string(st.resolved_t_prime); });
        }
    }

    // star structure
    if (w.alg.star()) {
        const StarMap& star = *w.alg.star();
        v.scan_basis("star.delta", "coproduct preserves the involution", [&](int i) {
            SparseVec lhs = w.delta.apply(star.apply(SparseVec::unit(i)));
            SparseVec d = w.delta.col(i);
            SparseVec rhs;
            for (const auto& [uv, c] : d.entries())
                rhs.axpy(c.conj(), tensor_vec(star.apply(SparseVec::unit(uv / n)),
                                              star.apply(SparseVec::unit(uv % n)), n));
            return lhs == rhs;
        });
        v.scan_basis("star.counit", "counit conjugates across the involution", [&](int i) {
            return w.eps(star.apply(SparseVec::unit(i))) == w.eps(SparseVec::unit(i)).conj();
        });
        v.scan_basis("star.antipode", "star composed with the antipode twice is the identity",
                     [&](int i) {
                         SparseVec x = SparseVec::unit(i);
                         SparseVec y = star.apply(w.antipode.apply(star.apply(w.antipode.apply(x))));
                         return y == x;
                     });
    }

    if (include_cop) {
        WeakHopf cop = cop_structure(w);
        Report crep = verify_wmha(cop, false);
        // keep only the structural essentials of the opposite side
        Report filtered;
        for (const auto& c : crep.checks) {
            if (c.id.rfind("alg.", 0) == 0) continue; // same algebra
            filtered.checks.push_back(c);
        }
        rep.absorb(filtered, "cop");
    }

    rep.sort();
    return rep;
}

Report module_algebra_check(const WeakHopf& w, const FiniteAlgebra& m, const LinearMap& action) {
    Report rep;
    rep.subject = "module-algebra";
    const int n = w.dim();
    const int md = m.dim();
    auto act = [&](const SparseVec& a, const SparseVec& r) {
        return action.apply(tensor_vec(a, r, md));
    };

    {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                for (int r = 0; r < md && ok; ++r) {
                    SparseVec lhs = act(w.alg.product(i, j), SparseVec::unit(r));
                    SparseVec rhs = act(SparseVec::unit(i), act(SparseVec::unit(j), SparseVec::unit(r)));
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + w.alg.label(i) + ", " + w.alg.label(j) + ", " + m.label(r) + ")";
                    }
                }
        rep.record("mod.action", "action respects the product", ok, [&] { return wit; });
    }
    {
        Echelon span(md);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < md; ++r) span.insert(act(SparseVec::unit(i), SparseVec::unit(r)));
        rep.record("mod.unital", "module is unital", span.rank() == md,
                   [&] { return "span has dimension " + std::to_string(span.rank()); });
    }
    {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            for (int r = 0; r < md && ok; ++r)
                for (int rp = 0; rp < md && ok; ++rp) {
                    SparseVec lhs = act(SparseVec::unit(i), m.product(r, rp));
                    SparseVec rhs;
                    for (const auto& [uv, c] : w.delta.col(i).entries())
                        rhs.axpy(c, m.multiply(act(SparseVec::unit(uv / n), SparseVec::unit(r)),
                                               act(SparseVec::unit(uv % n), SparseVec::unit(rp))));
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + w.alg.label(i) + ", " + m.label(r) + ", " + m.label(rp) + ")";
                    }
                }
        rep.record("mod.algebra-law", "action distributes over products through the coproduct", ok,
                   [&] { return wit; });
    }
    {
        bool ok = true;
        std::string wit;
        for (int r = 0; r < md && ok; ++r)
            for (int rp = 0; rp < md && ok; ++rp) {
                SparseVec lhs;
                for (const auto& [uv, c] : w.E.entries())
                    lhs.axpy(c, m.multiply(act(SparseVec::unit(uv / n), SparseVec::unit(r)),
                                           act(SparseVec::unit(uv % n), SparseVec::unit(rp))));
                if (lhs != m.product(r, rp)) {
                    ok = false;
                    wit = "(" + m.label(r) + ", " + m.label(rp) + ")";
                }
            }
        rep.record("mod.idempotent-product", "idempotent acting legwise reproduces the product", ok,
                   [&] { return wit; });
    }
    {
        SourceTargetData st = source_target(w);
        bool ok = true;
        std::string wit;
        for (const auto& y : st.source_basis) {
            for (int r = 0; r < md && ok; ++r)
                for (int rp = 0; rp < md && ok; ++rp) {
                    SparseVec lhs = m.multiply(act(y, SparseVec::unit(r)), SparseVec::unit(rp));
                    SparseVec rhs = m.multiply(SparseVec::unit(r),
                                               act(w.antipode.apply(y), SparseVec::unit(rp)));
                    if (lhs != rhs) {
                        ok = false;
                        wit = y.str();
                    }
                }
            if (!ok) break;
        }
        rep.record("mod.source-slide", "source elements slide across the product via the antipode",
                   ok, [&] { return wit; });
    }
    rep.sort();
    return rep;
}

IntegralSpace integrals(const WeakHopf& w) {
    const int n = w.dim();
    SourceTargetData st = source_target(w);
    Echelon tgt(n), src(n);
    tgt.insert_all(st.target_basis);
    src.insert_all(st.source_basis);

    IntegralSpace space;
    // left: (id (x) phi) delta(a) must land in the target subalgebra
    {
        std::vector<SparseVec> rows;
        for (int k = 0; k < n; ++k) {
            // residue of M_k * phi after reduction against A_t, per output coord
            std::vector<SparseVec> cols(n); // cols[j] = residue vector contribution of phi_j
            for (int j = 0; j < n; ++j) {
                SparseVec img;
                for (const auto& [uv, c] : w.delta.col(k).entries())
                    if (uv % n == j) img.add(uv / n, c);
                cols[j] = tgt.reduce(img);
            }
            for (int coord = 0; coord < n; ++coord) {
                SparseVec row;
                for (int j = 0; j < n; ++j) {
                    Scalar c = cols[j].get(coord);
                    if (!c.is_zero()) row.add(j, c);
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        space.left = solve_homogeneous(rows, n);
    }
    // right: (phi (x) id) delta(a) must land in the source subalgebra
    {
        std::vector<SparseVec> rows;
        for (int k = 0; k < n; ++k) {
            std::vector<SparseVec> cols(n);
            for (int j = 0; j < n; ++j) {
                SparseVec img;
                for (const auto& [uv, c] : w.delta.col(k).entries())
                    if (uv / n == j) img.add(uv % n, c);
                cols[j] = src.reduce(img);
            }
            for (int coord = 0; coord < n; ++coord) {
                SparseVec row;
                for (int j = 0; j < n; ++j) {
                    Scalar c = cols[j].get(coord);
                    if (!c.is_zero()) row.add(j, c);
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        space.right = solve_homogeneous(rows, n);
    }

    // faithfulness via the rank of [phi_l(a_j a_k)] in the j slot, both sides
    auto full_rank = [&](bool left_slot) {
        if (space.left.empty()) return false;
        Echelon e(n);
        for (const auto& phi : space.left)
            for (int k = 0; k < n; ++k) {
                SparseVec row;
                for (int j = 0; j < n; ++j) {
                    const SparseVec& p = left_slot ? w.alg.product(j, k) : w.alg.product(k, j);
                    Scalar val = Scalar::zero();
                    for (const auto& [idx, c] : p.entries()) val += c * phi.get(idx);
                    if (!val.is_zero()) row.add(j, val);
                }
                if (!row.empty()) e.insert(row);
            }
        return e.rank() == n;
    };
    space.faithful = full_rank(true) && full_rank(false);
    return space;
}

WeakHopf dual(const WeakHopf& w) {
    IntegralSpace ints = integrals(w);
    if (!ints.faithful) throw std::domain_error("dual construction requires a faithful set of integrals");
    const int n = w.dim();

    std::vector<std::string> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) basis.push_back("^" + w.alg.label(i));
    FiniteAlgebra alg(std::move(basis));
    // (f_i f_j)(a_k) = delta(a_k)_{ij}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec prod;
            for (int k = 0; k < n; ++k) {
                Scalar c = w.delta.col(k).get(tensor_index(i, j, n));
                if (!c.is_zero()) prod.add(k, c);
            }
            if (!prod.empty()) alg.set_product(i, j, std::move(prod));
        }
    alg.set_unit(w.counit);

    WeakHopf d;
    d.delta = LinearMap(n * n, n);
    for (const auto& [ij, v] : w.alg.structure())
        for (const auto& [k, c] : v.entries())
            d.delta.col(k).add(tensor_index(ij.first, ij.second, n), c);
    d.counit = w.alg.unit() ? *w.alg.unit() : *w.alg.solve_unit();
    d.antipode = w.antipode.transpose();
    d.E = SparseVec();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar c = w.eps(w.alg.product(i, j));
            if (!c.is_zero()) d.E.add(tensor_index(i, j, n), c);
        }
    if (w.alg.star()) {
        // omega^*(a) = conj(omega(S(a)^*))
        LinearMap k(n, n); // a -> (S(a))^*
        for (int j = 0; j < n; ++j) k.col(j) = w.alg.star()->apply(w.antipode.col(j));
        LinearMap mat = k.transpose();
        LinearMap conj_mat(n, n);
        for (int j = 0; j < n; ++j) conj_mat.col(j) = mat.col(j).conjugated();
        alg.set_star({conj_mat});
    }
    d.alg = std::move(alg);
    return d;
}

} // namespace qgd
