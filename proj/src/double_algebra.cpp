#include "qgd/double_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace qgd {

namespace {

// Twisted product of x, y in A (x) B through a precomputed twist matrix.
SparseVec mul_ab_impl(const WmhaPairing& p, const LinearMap& twist, const SparseVec& x,
                      const SparseVec& y) {
    const int na = p.a.dim();
    const int nb = p.b.dim();
    SparseVec out;
    for (const auto& [ij, c] : x.entries()) {
        int i = ij / nb, j = ij % nb;
        for (const auto& [kl, d] : y.entries()) {
            int k = kl / nb, l = kl % nb;
            const SparseVec& t = twist.col(tensor_index(j, k, na));
            for (const auto& [uv, e] : t.entries()) {
                int u = uv / nb, v = uv % nb;
                const SparseVec& pa = p.a.alg.product(i, u);
                if (pa.empty()) continue;
                const SparseVec& pb = p.b.alg.product(v, l);
                if (pb.empty()) continue;
                out.axpy(c * d * e, tensor_vec(pa, pb, nb));
            }
        }
    }
    return out;
}

} // namespace

SparseVec DoubleAlgebra::mul_ab(const SparseVec& x, const SparseVec& y) const {
    return mul_ab_impl(pairing, twist, x, y);
}

std::pair<LinearMap, LinearMap> twist_maps(const WmhaPairing& p) {
    RMaps rm = r_maps(p);
    const int na = p.a.dim();
    const int nb = p.b.dim();
    LinearMap t = rm.r * rm.r_opcop_prime * flip_map(nb, na);
    LinearMap t_inv = flip_map(na, nb) * rm.r_opcop * rm.r_prime;
    return {t, t_inv};
}

DoubleAlgebra build_double(const WmhaPairing& p) {
    DoubleAlgebra dbl;
    dbl.pairing = p;
    dbl.rmaps = r_maps(p);
    const int na = p.a.dim();
    const int nb = p.b.dim();
    const int nn = na * nb;
    dbl.twist = dbl.rmaps.r * dbl.rmaps.r_opcop_prime * flip_map(nb, na);
    dbl.twist_inv = flip_map(na, nb) * dbl.rmaps.r_opcop * dbl.rmaps.r_prime;
    Report& rep = dbl.build_report;
    rep.subject = "double-build";

    // twist generalized-inverse laws
    {
        auto g = generalized_inverse_check(dbl.twist, dbl.twist_inv);
        rep.record("twist.geninv", "twist map has its stated generalized inverse", g.ok(),
                   [&] { return std::string(g.first ? "second law fails" : "first law fails"); });
    }

    // carrier level 0: range of R
    dbl.range_r = range_basis(dbl.rmaps.r);
    LinearMap nmap = dbl.rmaps.r * dbl.rmaps.r_prime;

    // products of range elements must stay in the range
    Echelon range_ech(nn);
    range_ech.insert_all(dbl.range_r);
    const int r0 = static_cast<int>(dbl.range_r.size());
    std::vector<std::vector<SparseVec>> prod0(r0, std::vector<SparseVec>(r0));
    for (int x = 0; x < r0; ++x)
        for (int y = 0; y < r0; ++y) {
            SparseVec pr = mul_ab_impl(p, dbl.twist, dbl.range_r[x], dbl.range_r[y]);
            auto coords = range_ech.coordinates(pr);
            if (!coords) throw std::domain_error("twisted product leaves the range of R");
            prod0[x][y] = *coords;
        }
    rep.pass("carrier.closed", "twisted product closes on the range of R");

    // projection transparency: multiplying by the range projector changes nothing
    {
        bool ok = true;
        for (int x = 0; x < nn && ok; ++x)
            for (int y = 0; y < nn && ok; ++y) {
                SparseVec ex = SparseVec::unit(x), ey = SparseVec::unit(y);
                SparseVec plain = mul_ab_impl(p, dbl.twist, ex, ey);
                if (mul_ab_impl(p, dbl.twist, nmap.apply(ex), ey) != plain ||
                    mul_ab_impl(p, dbl.twist, ex, nmap.apply(ey)) != plain)
                    ok = false;
            }
        rep.record("carrier.transparent", "range projector is invisible to the twisted product", ok,
                   [] { return std::string("projector changed a product"); });
    }

    // iterated non-degenerate quotient of the range algebra
    std::vector<SparseVec> reps = dbl.range_r;            // ambient representatives
    std::vector<std::vector<SparseVec>> mul = std::move(prod0); // structure in level coords
    std::vector<LinearMap> stages;                        // level_k -> level_{k+1}
    int killed = 0;
    while (true) {
        const int r = static_cast<int>(reps.size());
        // two-sided annihilator: x with x e_k = 0 and e_k x = 0 for all k
        std::vector<SparseVec> cons;
        for (int k = 0; k < r; ++k)
            for (int coord = 0; coord < r; ++coord) {
                SparseVec row1, row2;
                for (int u = 0; u < r; ++u) {
                    Scalar c1 = mul[u][k].get(coord);
                    if (!c1.is_zero()) row1.add(u, c1);
                    Scalar c2 = mul[k][u].get(coord);
                    if (!c2.is_zero()) row2.add(u, c2);
                }
                if (!row1.empty()) cons.push_back(std::move(row1));
                if (!row2.empty()) cons.push_back(std::move(row2));
            }
        std::vector<SparseVec> ann = solve_homogeneous(cons, r);
        if (ann.empty()) break;
        killed += static_cast<int>(ann.size());

        Echelon ej(r);
        ej.insert_all(ann);
        std::vector<int> free_idx;
        {
            std::map<int, bool> pivot;
            for (const auto& row : ej.basis()) pivot[row.leading_index()] = true;
            for (int i = 0; i < r; ++i)
                if (!pivot.count(i)) free_idx.push_back(i);
        }
        const int rq = static_cast<int>(free_idx.size());
        LinearMap stage(rq, r); // residue mod annihilator, in complement coordinates
        for (int i = 0; i < r; ++i) {
            SparseVec res = ej.reduce(SparseVec::unit(i));
            SparseVec col;
            for (int m = 0; m < rq; ++m) {
                Scalar c = res.get(free_idx[m]);
                if (!c.is_zero()) col.add(m, c);
            }
            stage.col(i) = std::move(col);
        }
        std::vector<SparseVec> new_reps(rq);
        for (int m = 0; m < rq; ++m) new_reps[m] = reps[free_idx[m]];
        std::vector<std::vector<SparseVec>> new_mul(rq, std::vector<SparseVec>(rq));
        for (int x = 0; x < rq; ++x)
            for (int y = 0; y < rq; ++y)
                new_mul[x][y] = stage.apply(mul[free_idx[x]][free_idx[y]]);
        stages.push_back(std::move(stage));
        reps = std::move(new_reps);
        mul = std::move(new_mul);
    }
    dbl.annihilator_dim = killed;
    rep.pass("carrier.annihilator",
             "range of R has a two-sided annihilator of dimension " + std::to_string(killed) +
                 "; the double lives on the non-degenerate quotient");

    const int nd = static_cast<int>(reps.size());
    // total projection: coordinates in the range, then the quotient stages
    LinearMap proj0(r0, nn);
    for (int col = 0; col < nn; ++col) {
        auto coords = range_ech.coordinates(nmap.apply(SparseVec::unit(col)));
        proj0.col(col) = *coords;
    }
    dbl.proj = proj0;
    for (const auto& st : stages) dbl.proj = st * dbl.proj;
    dbl.incl = LinearMap(nn, nd);
    for (int m = 0; m < nd; ++m) dbl.incl.col(m) = reps[m];

    // carrier algebra
    std::vector<std::string> labels(nd);
    for (int m = 0; m < nd; ++m) {
        int lead = reps[m].leading_index();
        labels[m] = p.a.alg.label(lead / nb) + "(x)" + p.b.alg.label(lead % nb);
    }
    FiniteAlgebra alg(labels);
    for (int x = 0; x < nd; ++x)
        for (int y = 0; y < nd; ++y) {
            SparseVec pr = dbl.proj.apply(mul_ab_impl(p, dbl.twist, reps[x], reps[y]));
            if (!pr.empty()) alg.set_product(x, y, std::move(pr));
        }
    if (auto u = alg.solve_unit()) alg.set_unit(*u);

    // star structure when both sides carry one
    if (p.a.alg.star() && p.b.alg.star()) {
        LinearMap mat(nd, nd);
        for (int m = 0; m < nd; ++m) {
            SparseVec img;
            for (const auto& [ij, c] : reps[m].entries()) {
                SparseVec sa = p.a.alg.star()->apply(SparseVec::unit(ij / nb));
                SparseVec sb = p.b.alg.star()->apply(SparseVec::unit(ij % nb));
                // T(b^* (x) a^*)
                SparseVec arg = tensor_vec(sb, sa, na);
                img.axpy(c.conj(), dbl.twist.apply(arg));
            }
            mat.col(m) = dbl.proj.apply(img);
        }
        alg.set_star({mat});
    }

    // assembled weak Hopf structure
    WeakHopf d;
    d.alg = std::move(alg);
    d.delta = LinearMap(nd * nd, nd);
    for (int m = 0; m < nd; ++m) {
        SparseVec out;
        for (const auto& [ij, c] : reps[m].entries()) {
            int i = ij / nb, j = ij % nb;
            for (const auto& [uv, ca] : p.a.delta.col(i).entries())
                for (const auto& [pq, cb] : p.b.delta.col(j).entries()) {
                    // a_(1) (x)_D b_(2)  (x)  a_(2) (x)_D b_(1)
                    SparseVec leg1 = dbl.proj.apply(
                        tensor_vec(SparseVec::unit(uv / na), SparseVec::unit(pq % nb), nb));
                    SparseVec leg2 = dbl.proj.apply(
                        tensor_vec(SparseVec::unit(uv % na), SparseVec::unit(pq / nb), nb));
                    out.axpy(c * ca * cb, tensor_vec(leg1, leg2, nd));
                }
        }
        d.delta.col(m) = std::move(out);
    }
    SourceTargetData stb = source_target(p.b);
    d.counit = SparseVec();
    for (int m = 0; m < nd; ++m) {
        Scalar val = Scalar::zero();
        for (const auto& [ij, c] : reps[m].entries())
            val += c * p.pair(SparseVec::unit(ij / nb), stb.eps_s_prime.col(ij % nb));
        d.counit.set(m, val);
    }
    {
        auto sb_inv = inverse(p.b.antipode);
        LinearMap s_pair = p.a.antipode.kronecker(*sb_inv); // on A (x) B
        d.antipode = dbl.proj * dbl.twist * flip_map(na, nb) * s_pair * dbl.incl;
    }
    {
        SparseVec e_d;
        for (const auto& [uv, ca] : p.a.E.entries())
            for (const auto& [pq, cb] : p.b.E.entries()) {
                SparseVec leg1 = dbl.proj.apply(
                    tensor_vec(SparseVec::unit(uv / na), SparseVec::unit(pq % nb), nb));
                SparseVec leg2 = dbl.proj.apply(
                    tensor_vec(SparseVec::unit(uv % na), SparseVec::unit(pq / nb), nb));
                e_d.axpy(ca * cb, tensor_vec(leg1, leg2, nd));
            }
        d.E = std::move(e_d);
    }
    dbl.d = std::move(d);

    // embeddings
    if (!p.a.alg.unit() || !p.b.alg.unit())
        throw std::domain_error("double construction expects unital factors at finite dimension");
    dbl.f1 = LinearMap::from_function(nd, na, [&](int i) {
        return dbl.proj.apply(tensor_vec(SparseVec::unit(i), *p.b.alg.unit(), nb));
    });
    dbl.f2 = LinearMap::from_function(nd, nb, [&](int j) {
        return dbl.proj.apply(tensor_vec(*p.a.alg.unit(), SparseVec::unit(j), nb));
    });

    // structure maps must vanish on everything the quotient removed
    {
        bool ok = true;
        Echelon carrier_ech(nn);
        for (int m = 0; m < nd; ++m) carrier_ech.insert(reps[m]);
        for (const auto& v : dbl.range_r) {
            SparseVec res = carrier_ech.reduce(v);
            if (res.empty()) continue; // inside the carrier span
            // res is a annihilator-direction representative
            if (!dbl.proj.apply(res).empty()) { ok = false; break; }
            SparseVec dd;
            for (const auto& [ij, c] : res.entries()) {
                int i = ij / nb, j = ij % nb;
                for (const auto& [uv, ca] : p.a.delta.col(i).entries())
                    for (const auto& [pq, cb] : p.b.delta.col(j).entries()) {
                        SparseVec leg1 = dbl.proj.apply(
                            tensor_vec(SparseVec::unit(uv / na), SparseVec::unit(pq % nb), nb));
                        SparseVec leg2 = dbl.proj.apply(
                            tensor_vec(SparseVec::unit(uv % na), SparseVec::unit(pq / nb), nb));
                        dd.axpy(c * ca * cb, tensor_vec(leg1, leg2, nd));
                    }
            }
            if (!dd.empty()) { ok = false; break; }
        }
        rep.record("carrier.quotient-compatible", "structure maps descend to the carrier", ok,
                   [] { return std::string("a removed direction survives a structure map"); });
    }

    // sliding relations on the carrier
    {
        SourceTargetData sta = source_target(p.a);
        PairActions act = actions(p);
        bool ok1 = true, ok2 = true, ok3 = true, ok4 = true;
        for (const auto& x : sta.target_basis) {
            for (int i = 0; i < na && (ok1 || ok2); ++i)
                for (int j = 0; j < nb; ++j) {
                    SparseVec xb = act.a_on_b.apply(tensor_vec(x, SparseVec::unit(j), nb));
                    SparseVec lhs1 = dbl.proj.apply(tensor_vec(SparseVec::unit(i), xb, nb));
                    SparseVec rhs1 = dbl.proj.apply(
                        tensor_vec(p.a.alg.multiply(SparseVec::unit(i), x), SparseVec::unit(j), nb));
                    if (lhs1 != rhs1) ok1 = false;
                    SparseVec bx = act.b_back_a.apply(tensor_vec(SparseVec::unit(j), x, na));
                    SparseVec lhs2 = dbl.proj.apply(tensor_vec(SparseVec::unit(i), bx, nb));
                    SparseVec rhs2 = dbl.proj.apply(tensor_vec(
                        p.a.alg.multiply(SparseVec::unit(i), p.a.antipode.apply(x)),
                        SparseVec::unit(j), nb));
                    if (lhs2 != rhs2) ok2 = false;
                }
        }
        SourceTargetData stb2 = source_target(p.b);
        for (const auto& y : stb2.source_basis) {
            for (int i = 0; i < na && (ok3 || ok4); ++i)
                for (int j = 0; j < nb; ++j) {
                    SparseVec ay = act.a_back_b.apply(tensor_vec(SparseVec::unit(i), y, nb));
                    SparseVec lhs3 = dbl.proj.apply(tensor_vec(ay, SparseVec::unit(j), nb));
                    SparseVec rhs3 = dbl.proj.apply(tensor_vec(
                        SparseVec::unit(i), p.b.alg.multiply(y, SparseVec::unit(j)), nb));
                    if (lhs3 != rhs3) ok3 = false;
                    SparseVec ya = act.b_on_a.apply(tensor_vec(y, SparseVec::unit(i), na));
                    SparseVec lhs4 = dbl.proj.apply(tensor_vec(ya, SparseVec::unit(j), nb));
                    SparseVec rhs4 = dbl.proj.apply(tensor_vec(
                        SparseVec::unit(i),
                        p.b.alg.multiply(p.b.antipode.apply(y), SparseVec::unit(j)), nb));
                    if (lhs4 != rhs4) ok4 = false;
                }
        }
        rep.record("slide.target-forward", "target elements slide from the action to the first leg",
                   ok1, [] { return std::string("mismatch"); });
        rep.record("slide.target-backward", "target back-actions slide through the antipode", ok2,
                   [] { return std::string("mismatch"); });
        rep.record("slide.source-backward", "source back-actions slide to the second leg", ok3,
                   [] { return std::string("mismatch"); });
        rep.record("slide.source-forward", "source actions slide through the antipode", ok4,
                   [] { return std::string("mismatch"); });
    }

    // the four product-slide families at tensor level
    {
        SourceTargetData sta = source_target(p.a);
        SourceTargetData stb2 = source_target(p.b);
        PairActions act = actions(p);
        auto mul2 = [&](const SparseVec& x, const SparseVec& y) {
            return mul_ab_impl(p, dbl.twist, x, y);
        };
        bool fam1 = true, fam2 = true, fam3 = true, fam4 = true;
        for (int bp = 0; bp < nb; ++bp) {
            SparseVec y = stb2.eps_s.col(bp); // eps_s(b')
            if (y.empty()) continue;
            for (int x = 0; x < nn && (fam1 || fam3); ++x)
                for (int ap = 0; ap < na; ++ap)
                    for (int bpp = 0; bpp < nb; ++bpp) {
                        SparseVec ex = SparseVec::unit(x);
                        SparseVec lhs1 = tensor_vec(
                            act.a_back_b.apply(tensor_vec(SparseVec::unit(ap), y, nb)),
                            SparseVec::unit(bpp), nb);
                        SparseVec rhs1 = tensor_vec(
                            SparseVec::unit(ap),
                            p.b.alg.multiply(y, SparseVec::unit(bpp)), nb);
                        if (fam1 && (mul2(ex, lhs1) != mul2(ex, rhs1) ||
                                     mul2(lhs1, ex) != mul2(rhs1, ex)))
                            fam1 = false;
                        SparseVec lhs3 = tensor_vec(
                            act.b_on_a.apply(tensor_vec(y, SparseVec::unit(ap), na)),
                            SparseVec::unit(bpp), nb);
                        SparseVec rhs3 = tensor_vec(
                            SparseVec::unit(ap),
                            p.b.alg.multiply(p.b.antipode.apply(y),
                                             SparseVec::unit(bpp)), nb);
                        if (fam3 && (mul2(ex, lhs3) != mul2(ex, rhs3) ||
                                     mul2(lhs3, ex) != mul2(rhs3, ex)))
                            fam3 = false;
                    }
        }
        for (int apx = 0; apx < na; ++apx) {
            SparseVec xel = sta.eps_t_prime.col(apx); // eps'_t(a')
            if (xel.empty()) continue;
            for (int x = 0; x < nn && (fam2 || fam4); ++x)
                for (int ai = 0; ai < na; ++ai)
                    for (int bj = 0; bj < nb; ++bj) {
                        SparseVec ex = SparseVec::unit(x);
                        SparseVec lhs2 = tensor_vec(
                            SparseVec::unit(ai),
                            act.a_on_b.apply(tensor_vec(xel, SparseVec::unit(bj), nb)), nb);
                        SparseVec rhs2 = tensor_vec(
                            p.a.alg.multiply(SparseVec::unit(ai), xel), SparseVec::unit(bj), nb);
                        if (fam2 && (mul2(lhs2, ex) != mul2(rhs2, ex) ||
                                     mul2(ex, lhs2) != mul2(ex, rhs2)))
                            fam2 = false;
                        SparseVec xt = sta.eps_t.col(apx);
                        SparseVec lhs4 = tensor_vec(
                            SparseVec::unit(ai),
                            act.b_back_a.apply(tensor_vec(SparseVec::unit(bj), xt, na)), nb);
                        SparseVec rhs4 = tensor_vec(
                            p.a.alg.multiply(SparseVec::unit(ai), xt), SparseVec::unit(bj), nb);
                        if (fam4 && (mul2(lhs4, ex) != mul2(rhs4, ex) ||
                                     mul2(ex, lhs4) != mul2(ex, rhs4)))
                            fam4 = false;
                    }
        }
        rep.record("families.source-back", "back-action by source elements slides into the product",
                   fam1, [] { return std::string("mismatch"); });
        rep.record("families.target-action", "action by primed target elements slides into the product",
                   fam2, [] { return std::string("mismatch"); });
        rep.record("families.source-action", "action by source elements slides through the antipode",
                   fam3, [] { return std::string("mismatch"); });
        rep.record("families.target-back", "back-action by target elements slides into the product",
                   fam4, [] { return std::string("mismatch"); });
    }

    // twist slide laws
    {
        bool ok1 = true, ok2 = true;
        for (int b1 = 0; b1 < nb && ok1; ++b1)
            for (int b2 = 0; b2 < nb && ok1; ++b2)
                for (int ai = 0; ai < na; ++ai) {
                    // T(b b' (x) a) = T(b (x) a^i)(1 (x) b'^i) with T(b' (x) a) = a^i (x) b'^i
                    SparseVec lhs = dbl.twist.apply(
                        tensor_vec(p.b.alg.product(b1, b2), SparseVec::unit(ai), na));
                    SparseVec rhs;
                    const SparseVec& t2 = dbl.twist.col(tensor_index(b2, ai, na));
                    for (const auto& [uv, c] : t2.entries()) {
                        SparseVec partial = dbl.twist.col(tensor_index(b1, uv / nb, na));
                        for (const auto& [xy, cc] : partial.entries()) {
                            const SparseVec& bb = p.b.alg.product(xy % nb, uv % nb);
                            for (const auto& [k, c3] : bb.entries())
                                rhs.add(tensor_index(xy / nb, k, nb), c * cc * c3);
                        }
                    }
                    if (lhs != rhs) { ok1 = false; break; }
                }
        // T(b (x) a a') = (a^i (x) 1) T(b^i (x) a') with T(b (x) a) = a^i (x) b^i
        for (int b1 = 0; b1 < nb && ok2; ++b1)
            for (int a1 = 0; a1 < na && ok2; ++a1)
                for (int a2 = 0; a2 < na; ++a2) {
                    SparseVec lhs = dbl.twist.apply(
                        tensor_vec(SparseVec::unit(b1), p.a.alg.product(a1, a2), na));
                    SparseVec rhs;
                    const SparseVec& t1 = dbl.twist.col(tensor_index(b1, a1, na));
                    for (const auto& [uv, c] : t1.entries()) {
                        SparseVec partial = dbl.twist.col(tensor_index(uv % nb, a2, na));
                        for (const auto& [xy, cc] : partial.entries()) {
                            const SparseVec& aa = p.a.alg.product(uv / nb, xy / nb);
                            for (const auto& [k, c3] : aa.entries())
                                rhs.add(tensor_index(k, xy % nb, nb), c * cc * c3);
                        }
                    }
                    if (lhs != rhs) ok2 = false;
                }
        rep.record("twist.slide-b", "twist absorbs products on its first leg", ok1,
                   [] { return std::string("mismatch"); });
        rep.record("twist.slide-a", "twist absorbs products on its second leg", ok2,
                   [] { return std::string("mismatch"); });
    }

    // unit behavior of the twist on the carrier
    {
        bool ok = true;
        for (int j = 0; j < nb && ok; ++j) {
            SparseVec lhs = dbl.proj.apply(
                dbl.twist.apply(tensor_vec(SparseVec::unit(j), *p.a.alg.unit(), na)));
            if (lhs != dbl.f2.col(j)) ok = false;
        }
        for (int i = 0; i < na && ok; ++i) {
            SparseVec arg = flip_map(na, nb).apply(tensor_vec(SparseVec::unit(i), *p.b.alg.unit(), nb));
            SparseVec lhs = dbl.proj.apply(dbl.twist.apply(arg));
            if (lhs != dbl.f1.col(i)) ok = false;
        }
        rep.record("twist.units", "twist fixes the embedded copies of the units", ok,
                   [] { return std::string("mismatch"); });
    }

    // bijectivity of the twist between the two carrier realizations; in
    // the degenerate case the twist vanishes on flipped representatives of
    // half the carrier, so the statement only makes sense when the range
    // itself is non-degenerate
    if (dbl.annihilator_dim == 0) {
        LinearMap flip_ab = flip_map(na, nb);
        LinearMap t_on_carrier(nd, nd);
        for (int m = 0; m < nd; ++m) {
            SparseVec img = dbl.twist.apply(flip_ab.apply(dbl.incl.col(m)));
            t_on_carrier.col(m) = dbl.proj.apply(img);
        }
        rep.record("twist.bijective", "twist restricts to a bijection between the two carriers",
                   inverse(t_on_carrier).has_value(),
                   [] { return std::string("restricted twist is singular"); });
    } else {
        rep.skip("twist.bijective", "twist restricts to a bijection between the two carriers");
    }

    // star laws
    if (dbl.d.alg.star()) {
        const StarMap& sd = *dbl.d.alg.star();
        bool ok = true;
        for (int i = 0; i < na && ok; ++i) {
            SparseVec lhs = dbl.f1.apply(p.a.alg.star()->apply(SparseVec::unit(i)));
            SparseVec rhs = sd.apply(dbl.f1.col(i));
            if (lhs != rhs) ok = false;
        }
        rep.record("star.f1", "first embedding preserves the involution", ok,
                   [] { return std::string("mismatch"); });
        ok = true;
        for (int j = 0; j < nb && ok; ++j) {
            SparseVec lhs = dbl.f2.apply(p.b.alg.star()->apply(SparseVec::unit(j)));
            SparseVec rhs = sd.apply(dbl.f2.col(j));
            if (lhs != rhs) ok = false;
        }
        rep.record("star.f2", "second embedding preserves the involution", ok,
                   [] { return std::string("mismatch"); });
    }

    // factorization: products f1(A) f2(B) span the carrier
    {
        Echelon span(nd);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                span.insert(dbl.d.alg.multiply(dbl.f1.col(i), dbl.f2.col(j)));
        rep.record("carrier.factorization", "embedded products span the double",
                   span.rank() == nd, [&] { return "span rank " + std::to_string(span.rank()); });
    }

    rep.sort();
    return dbl;
}

Report verify_double_structure(const DoubleAlgebra& dbl) {
    Report rep;
    rep.subject = "double-structure";
    const WmhaPairing& p = dbl.pairing;
    const int na = p.a.dim();
    const int nb = p.b.dim();
    const int nd = dbl.dim();

    // Sweedler form versus the multiplier route through the twist pair
    {
        LinearMap flip_ab = flip_map(na, nb);
        LinearMap flip_ba = flip_map(nb, na);
        bool ok = true;
        // delta_D T = (T (x) T)(flip (x) flip) delta_D flip at representative level
        LinearMap lhs(nd * nd, nb * na), rhs(nd * nd, nb * na);
        for (int col = 0; col < nb * na; ++col) {
            SparseVec timg = dbl.twist.col(col);
            SparseVec l;
            for (const auto& [ij, c] : timg.entries())
                l.axpy(c, dbl.d.delta.apply(dbl.proj.apply(SparseVec::unit(ij))));
            lhs.col(col) = std::move(l);

            SparseVec arg = flip_ba.col(col); // in A (x) B
            // Sweedler legs of the double coproduct at representative level,
            // each leg flipped to B (x) A and sent through the twist
            SparseVec r;
            int i = arg.leading_index() / nb, j = arg.leading_index() % nb;
            for (const auto& [uv, ca] : p.a.delta.col(i).entries())
                for (const auto& [pq, cb] : p.b.delta.col(j).entries()) {
                    SparseVec leg1 = dbl.proj.apply(dbl.twist.apply(flip_ab.apply(
                        tensor_vec(SparseVec::unit(uv / na), SparseVec::unit(pq % nb), nb))));
                    SparseVec leg2 = dbl.proj.apply(dbl.twist.apply(flip_ab.apply(
                        tensor_vec(SparseVec::unit(uv % na), SparseVec::unit(pq / nb), nb))));
                    r.axpy(ca * cb, tensor_vec(leg1, leg2, nd));
                }
            rhs.col(col) = std::move(r);
        }
        ok = lhs == rhs;
        rep.record("delta.twist-exchange", "double coproduct exchanges with the twist", ok,
                   [] { return std::string("matrix mismatch"); });
    }

    // alternate antipode route
    {
        auto sb_inv = inverse(p.b.antipode);
        LinearMap s_pair = p.a.antipode.kronecker(*sb_inv);
        LinearMap alt = dbl.proj * s_pair * flip_map(nb, na) * dbl.twist_inv * dbl.incl;
        rep.record("antipode.alternate", "antipode agrees with its inverse-twist form",
                   alt == dbl.d.antipode, [] { return std::string("matrix mismatch"); });
    }
    {
        auto sb_inv = inverse(p.b.antipode);
        LinearMap sa2 = p.a.antipode * p.a.antipode;
        LinearMap sb2 = (*sb_inv) * (*sb_inv);
        LinearMap expected = dbl.proj * sa2.kronecker(sb2) * dbl.incl;
        rep.record("antipode.square", "antipode squared splits into the leg antipodes",
                   dbl.d.antipode * dbl.d.antipode == expected,
                   [] { return std::string("matrix mismatch"); });
    }

    // counit factorization through the primed source map
    {
        SourceTargetData stb = source_target(p.b);
        bool ok = true;
        for (int m = 0; m < nd && ok; ++m) {
            Scalar expect = Scalar::zero();
            SparseVec lift = dbl.incl.col(m);
            for (const auto& [ij, c] : lift.entries())
                expect += c * p.pair(SparseVec::unit(ij / nb), stb.eps_s_prime.col(ij % nb));
            if (dbl.d.counit.get(m) != expect) ok = false;
        }
        rep.record("counit.form", "counit is the pairing against the primed source map", ok,
                   [] { return std::string("mismatch"); });
    }

    // coproduct through the leg-wise multiplier route
    {
        LinearMap tt = dbl.twist.kronecker(dbl.twist);
        LinearMap tinv2 = dbl.twist_inv.kronecker(dbl.twist_inv);
        // legs (A B A B) -> (B A B A) components for the 1-3 left action
        bool ok = true;
        const int nn = na * nb;
        for (int m = 0; m < nd && ok; ++m) {
            SparseVec lift = dbl.incl.col(m);
            // F'(delta_A(a) (x) delta_Bcop(b)) applied to 1 (x) 1 in D (x) D:
            // at representative level the argument is 1_A (x) 1_B twice.
            SparseVec one2 = tensor_vec(tensor_vec(*p.a.alg.unit(), *p.b.alg.unit(), nb),
                                        tensor_vec(*p.a.alg.unit(), *p.b.alg.unit(), nb), nn);
            SparseVec flipped = tinv2.apply(one2); // (B A) (x) (B A)
            SparseVec acted;
            for (const auto& [ij, c] : lift.entries()) {
                int ia = ij / nb, jb = ij % nb;
                // (Y_l)_13 with Y = delta_Bcop(b): left-multiply the B legs
                SparseVec stage1;
                for (const auto& [pq, cb] : p.b.delta.col(jb).entries()) {
                    int bp = pq / nb, bq = pq % nb; // cop order: (b_(2), b_(1))
                    for (const auto& [z, cz] : flipped.entries()) {
                        int leg1 = z / (na * nb * na);
                        int rest = z % (na * nb * na);
                        int leg2 = rest / (nb * na);
                        int rest2 = rest % (nb * na);
                        int leg3 = rest2 / na;
                        int leg4 = rest2 % na;
                        const SparseVec& m1 = p.b.alg.product(bq, leg1);
                        if (m1.empty()) continue;
                        const SparseVec& m3 = p.b.alg.product(bp, leg3);
                        if (m3.empty()) continue;
                        for (const auto& [w1, d1] : m1.entries())
                            for (const auto& [w3, d3] : m3.entries())
                                stage1.add(((w1 * na + leg2) * nb + w3) * na + leg4,
                                           cb * cz * d1 * d3);
                    }
                }
                SparseVec stage2 = tt.apply(stage1); // back to (A B)(A B)
                // (X_l)_13 with X = delta_A(a): left-multiply the A legs
                for (const auto& [uv, caa] : p.a.delta.col(ia).entries()) {
                    int au = uv / na, av = uv % na;
                    for (const auto& [z, cz] : stage2.entries()) {
                        int leg1 = z / (nb * na * nb);
                        int rest = z % (nb * na * nb);
                        int leg2 = rest / (na * nb);
                        int rest2 = rest % (na * nb);
                        int leg3 = rest2 / nb;
                        int leg4 = rest2 % nb;
                        const SparseVec& m1 = p.a.alg.product(au, leg1);
                        if (m1.empty()) continue;
                        const SparseVec& m3 = p.a.alg.product(av, leg3);
                        if (m3.empty()) continue;
                        for (const auto& [w1, d1] : m1.entries())
                            for (const auto& [w3, d3] : m3.entries())
                                acted.add(((w1 * nb + leg2) * na + w3) * nb + leg4,
                                          c * caa * cz * d1 * d3);
                    }
                }
            }
            // project both legs
            SparseVec got;
            for (const auto& [z, cz] : acted.entries()) {
                int first = z / nn, second = z % nn;
                got.axpy(cz, tensor_vec(dbl.proj.apply(SparseVec::unit(first)),
                                        dbl.proj.apply(SparseVec::unit(second)), nd));
            }
            if (got != dbl.d.delta.col(m)) ok = false;
        }
        rep.record("delta.multiplier-route", "coproduct agrees with its twist-conjugated definition",
                   ok, [] { return std::string("mismatch"); });
    }

    rep.sort();
    return rep;
}

Report double_integrals(const DoubleAlgebra& dbl, const IntegralSpace& ia, const IntegralSpace& ib,
                        IntegralSpace* out) {
    Report rep;
    rep.subject = "double-integrals";
    const WmhaPairing& p = dbl.pairing;
    const int na = p.a.dim();
    const int nb = p.b.dim();
    const int nd = dbl.dim();

    if (ia.right.empty() || ib.left.empty()) {
        rep.fail("integral.inputs", "both factors carry integrals", "missing integrals upstream");
        return rep;
    }

    SourceTargetData std_ = source_target(dbl.d);
    Echelon dsrc(nd);
    dsrc.insert_all(std_.source_basis);
    Echelon dtgt(nd);
    dtgt.insert_all(std_.target_basis);

    // psi_A (x) phi_B is a right integral on D
    {
        bool ok = true;
        for (const auto& psi : ia.right)
            for (const auto& phi : ib.left) {
                SparseVec psiphi; // functional on D
                for (int m = 0; m < nd; ++m) {
                    Scalar val = Scalar::zero();
                    for (const auto& [ij, c] : dbl.incl.col(m).entries())
                        val += c * psi.get(ij / nb) * phi.get(ij % nb);
                    psiphi.set(m, val);
                }
                for (int m = 0; m < nd && ok; ++m) {
                    SparseVec img;
                    for (const auto& [uv, c] : dbl.d.delta.col(m).entries()) {
                        Scalar w = psiphi.get(uv / nd);
                        if (!w.is_zero()) img.add(uv % nd, c * w);
                    }
                    if (!dsrc.contains(img)) ok = false;
                }
                if (!ok) break;
            }
        rep.record("integral.right", "product of a right and a left integral is a right integral",
                   ok, [] { return std::string("membership fails"); });
    }
    // phi_A (x) psi_B is a left integral on D
    {
        bool ok = true;
        for (const auto& phi : ia.left)
            for (const auto& psi : ib.right) {
                SparseVec f;
                for (int m = 0; m < nd; ++m) {
                    Scalar val = Scalar::zero();
                    for (const auto& [ij, c] : dbl.incl.col(m).entries())
                        val += c * phi.get(ij / nb) * psi.get(ij % nb);
                    f.set(m, val);
                }
                for (int m = 0; m < nd && ok; ++m) {
                    SparseVec img;
                    for (const auto& [uv, c] : dbl.d.delta.col(m).entries()) {
                        Scalar w = f.get(uv % nd);
                        if (!w.is_zero()) img.add(uv / nd, c * w);
                    }
                    if (!dtgt.contains(img)) ok = false;
                }
                if (!ok) break;
            }
        rep.record("integral.left", "product of a left and a right integral is a left integral",
                   ok, [] { return std::string("membership fails"); });
    }

    // target-map factorization on the double; the source-side analogue only
    // factorizes when the twisted product on the range is already
    // non-degenerate, so it is scoped to that case
    {
        SourceTargetData sta = source_target(p.a);
        SourceTargetData stb = source_target(p.b);
        bool okt = true, oks = true;
        for (int m = 0; m < nd; ++m) {
            SparseVec expect_t, expect_s;
            for (const auto& [ij, c] : dbl.incl.col(m).entries()) {
                int i = ij / nb, j = ij % nb;
                expect_t.axpy(c, dbl.proj.apply(tensor_vec(sta.eps_t.col(i),
                                                           stb.eps_s_prime.col(j), nb)));
                expect_s.axpy(c, dbl.proj.apply(tensor_vec(sta.eps_s.col(i),
                                                           stb.eps_t_prime.col(j), nb)));
            }
            if (std_.eps_t.col(m) != expect_t) okt = false;
            if (std_.eps_s.col(m) != expect_s) oks = false;
        }
        rep.record("integral.target-factorizes", "double target map splits into leg maps", okt,
                   [] { return std::string("mismatch"); });
        if (dbl.annihilator_dim == 0)
            rep.record("integral.source-factorizes", "double source map splits into leg maps", oks,
                       [] { return std::string("mismatch"); });
        else
            rep.skip("integral.source-factorizes", "double source map splits into leg maps");
    }

    IntegralSpace space = integrals(dbl.d);
    rep.record("integral.faithful", "double carries a faithful set of integrals", space.faithful,
               [] { return std::string("faithfulness rank check fails"); });
    // membership of the assembled functionals in the solved space
    {
        Echelon left_space(nd), right_space(nd);
        left_space.insert_all(space.left);
        right_space.insert_all(space.right);
        bool ok = true;
        for (const auto& psi : ia.right)
            for (const auto& phi : ib.left) {
                SparseVec f;
                for (int m = 0; m < nd; ++m) {
                    Scalar val = Scalar::zero();
                    for (const auto& [ij, c] : dbl.incl.col(m).entries())
                        val += c * psi.get(ij / nb) * phi.get(ij % nb);
                    f.set(m, val);
                }
                if (!right_space.contains(f)) ok = false;
            }
        rep.record("integral.solver-agrees", "assembled integrals lie in the solved integral space",
                   ok, [] { return std::string("assembled functional outside solved space"); });
    }
    if (out) *out = std::move(space);
    rep.sort();
    return rep;
}

Report smash_comparison(const DoubleAlgebra& dbl) {
    Report rep;
    rep.subject = "smash-comparison";
    const WmhaPairing& p = dbl.pairing;
    const int na = p.a.dim();
    const int nb = p.b.dim();
    PairActions act = actions(p);

    bool ok = true;
    std::string wit;
    for (int xi = 0; xi < na && ok; ++xi)
        for (int aj = 0; aj < nb && ok; ++aj)
            for (int yk = 0; yk < na && ok; ++yk)
                for (int bl = 0; bl < nb && ok; ++bl) {
                    // (x (x) a) ._0 (y (x) b) = (x (x)_D y_(1) |> a)(y_(2) (x)_D b)
                    SparseVec lhs;
                    for (const auto& [uv, c] : p.a.delta.col(yk).entries()) {
                        SparseVec inner = act.a_on_b.apply(
                            tensor_vec(SparseVec::unit(uv / na), SparseVec::unit(aj), nb));
                        SparseVec d1 = dbl.proj.apply(tensor_vec(SparseVec::unit(xi), inner, nb));
                        SparseVec d2 = dbl.proj.apply(
                            tensor_vec(SparseVec::unit(uv % na), SparseVec::unit(bl), nb));
                        lhs.axpy(c, dbl.d.alg.multiply(d1, d2));
                    }
                    // smash: x (a_(1) |> y) (x)_D a_(2) b
                    SparseVec rhs;
                    for (const auto& [pq, c] : p.b.delta.col(aj).entries()) {
                        SparseVec acted = act.b_on_a.apply(
                            tensor_vec(SparseVec::unit(pq / nb), SparseVec::unit(yk), na));
                        SparseVec first = p.a.alg.multiply(SparseVec::unit(xi), acted);
                        SparseVec second = p.b.alg.multiply(SparseVec::unit(pq % nb),
                                                            SparseVec::unit(bl));
                        rhs.axpy(c, dbl.proj.apply(tensor_vec(first, second, nb)));
                    }
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + p.a.alg.label(xi) + ", " + p.b.alg.label(aj) + "; " +
                              p.a.alg.label(yk) + ", " + p.b.alg.label(bl) + ")";
                    }
                }
    rep.record("smash.tensor-equality", "untwisted double product equals the smash product", ok,
               [&] { return wit; });
    rep.sort();
    return rep;
}

} // namespace qgd
