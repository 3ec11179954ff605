#include "qgd/yd.hpp"

#include <algorithm>
#include <sstream>

namespace qgd {

Report yd_check(const WeakHopf& w, const YdModule& v) {
    Report rep;
    rep.subject = "yetter-drinfeld";
    const int n = w.dim();
    const int m = v.dim;
    if (m == 0) {
        rep.pass("yd.vacuous", "zero-dimensional module satisfies everything");
        return rep;
    }
    auto act = [&](const SparseVec& a, const SparseVec& x) {
        return v.action.apply(tensor_vec(a, x, m));
    };

    {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                for (int r = 0; r < m && ok; ++r)
                    if (act(w.alg.product(i, j), SparseVec::unit(r)) !=
                        act(SparseVec::unit(i), act(SparseVec::unit(j), SparseVec::unit(r))))
                        ok = false;
        rep.record("yd.action", "action respects the product", ok,
                   [] { return std::string("mismatch"); });
        Echelon span(m);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < m; ++r) span.insert(act(SparseVec::unit(i), SparseVec::unit(r)));
        rep.record("yd.unital", "module is unital", span.rank() == m,
                   [&] { return "span rank " + std::to_string(span.rank()); });
    }
    {
        bool ok = true;
        for (int r = 0; r < m && ok; ++r) {
            // (delta (x) id) coaction = (id (x) coaction) coaction
            SparseVec lhs, rhs;
            for (const auto& [av, c] : v.coaction.col(r).entries()) {
                int a = av / m, vv = av % m;
                for (const auto& [uv, cc] : w.delta.col(a).entries())
                    lhs.add(uv * m + vv, c * cc);
                for (const auto& [bw, cc] : v.coaction.col(vv).entries())
                    rhs.add((a * n + bw / m) * m + bw % m, c * cc);
            }
            if (lhs != rhs) ok = false;
        }
        rep.record("yd.coassociative", "coaction is coassociative", ok,
                   [] { return std::string("mismatch"); });
        // left fullness: value legs span V
        Echelon span(m);
        for (int r = 0; r < m; ++r) {
            std::map<int, SparseVec> slices;
            for (const auto& [av, c] : v.coaction.col(r).entries())
                slices[av / m].add(av % m, c);
            for (auto& [k, s] : slices) span.insert(s);
        }
        rep.record("yd.full", "coaction is left full", span.rank() == m,
                   [&] { return "span rank " + std::to_string(span.rank()); });
    }
    {
        // compatibility: (a_(1) |> v)_(-1) a_(2) a' (x) (a_(1) |> v)_(0)
        //              = a_(1) v_(-1) a' (x) a_(2) |> v_(0)
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            for (int ip = 0; ip < n && ok; ++ip)
                for (int r = 0; r < m && ok; ++r) {
                    SparseVec lhs, rhs;
                    for (const auto& [uv, c] : w.delta.col(i).entries()) {
                        int a1 = uv / n, a2 = uv % n;
                        SparseVec acted = act(SparseVec::unit(a1), SparseVec::unit(r));
                        for (const auto& [rr, cr] : acted.entries())
                            for (const auto& [av, cc] : v.coaction.col(rr).entries()) {
                                SparseVec first = w.alg.multiply(
                                    w.alg.multiply(SparseVec::unit(av / m), SparseVec::unit(a2)),
                                    SparseVec::unit(ip));
                                for (const auto& [k, ck] : first.entries())
                                    lhs.add(k * m + av % m, c * cr * cc * ck);
                            }
                        for (const auto& [av, cc] : v.coaction.col(r).entries()) {
                            SparseVec first = w.alg.multiply(
                                w.alg.multiply(SparseVec::unit(a1), SparseVec::unit(av / m)),
                                SparseVec::unit(ip));
                            SparseVec second = act(SparseVec::unit(a2), SparseVec::unit(av % m));
                            for (const auto& [k, ck] : first.entries())
                                for (const auto& [s, cs] : second.entries())
                                    rhs.add(k * m + s, c * cc * ck * cs);
                        }
                    }
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + w.alg.label(i) + ", " + w.alg.label(ip) + ", v" +
                              std::to_string(r) + ")";
                    }
                }
        rep.record("yd.compatibility", "action and coaction satisfy the exchange condition", ok,
                   [&] { return wit; });
    }
    {
        // projection condition: E_1 v_(-1) (x) E_2 |> v_(0) = coaction(v)
        bool ok = true;
        for (int r = 0; r < m && ok; ++r) {
            SparseVec lhs;
            for (const auto& [uv, c] : w.E.entries())
                for (const auto& [av, cc] : v.coaction.col(r).entries()) {
                    SparseVec first = w.alg.product(uv / n, av / m);
                    if (first.empty()) continue;
                    SparseVec second = act(SparseVec::unit(uv % n), SparseVec::unit(av % m));
                    for (const auto& [k, ck] : first.entries())
                        for (const auto& [s, cs] : second.entries())
                            lhs.add(k * m + s, c * cc * ck * cs);
                }
            if (lhs != v.coaction.col(r)) ok = false;
        }
        rep.record("yd.projection", "idempotent projection fixes the coaction", ok,
                   [] { return std::string("mismatch"); });
    }
    {
        // corepresentation and its generalized inverse
        LinearMap rho(n * m, n * m), rho_prime(n * m, n * m);
        for (int a = 0; a < n; ++a)
            for (int r = 0; r < m; ++r) {
                SparseVec col, colp;
                for (const auto& [bv, c] : v.coaction.col(r).entries()) {
                    SparseVec left = w.alg.product(a, bv / m);
                    for (const auto& [k, ck] : left.entries())
                        col.add(k * m + bv % m, c * ck);
                    SparseVec leftp = w.alg.multiply(SparseVec::unit(a),
                                                     w.antipode.col(bv / m));
                    for (const auto& [k, ck] : leftp.entries())
                        colp.add(k * m + bv % m, c * ck);
                }
                rho.col(a * m + r) = std::move(col);
                rho_prime.col(a * m + r) = std::move(colp);
            }
        auto g = generalized_inverse_check(rho, rho_prime);
        rep.record("yd.corep-geninv", "corepresentation has its antipode-twisted generalized inverse",
                   g.ok(), [] { return std::string("generalized inverse law fails"); });
    }
    rep.sort();
    return rep;
}

namespace {

// Gaussian-integer divisor candidates of a Q(i) polynomial's root set.
// Returns the exact roots in Q(i) of p (a dense coefficient vector, low
// degree first), assuming they exist among ratio candidates; exhaustive for
// the norms that occur at desk scale.
std::vector<Scalar> rational_roots(std::vector<Scalar> p) {
    // strip trailing zeros and factor out x^k
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    std::vector<Scalar> roots;
    if (p.empty()) return roots;
    size_t low = 0;
    while (low < p.size() && p[low].is_zero()) ++low;
    if (low > 0) roots.push_back(Scalar::zero());
    if (low >= p.size() - 1) return roots;

    auto eval = [&](const Scalar& x) {
        Scalar acc = Scalar::zero();
        for (size_t k = p.size(); k-- > low;) acc = acc * x + p[k];
        return acc;
    };
    // clear denominators to Gaussian integers
    mpz_class den(1);
    for (size_t k = low; k < p.size(); ++k) {
        den = den * p[k].re().get_den() / gcd(den, p[k].re().get_den());
        den = den * p[k].im().get_den() / gcd(den, p[k].im().get_den());
    }
    auto norm_of = [&](const Scalar& c) {
        mpq_class r = c.re() * den, i = c.im() * den;
        return mpz_class(r.get_num() * r.get_num() + i.get_num() * i.get_num());
    };
    mpz_class n0 = norm_of(p[low]);
    mpz_class nd = norm_of(p.back());
    if (n0 == 0 || nd == 0) return roots; // cannot happen after stripping
    // candidate roots alpha/beta with N(alpha) | N(p0), N(beta) | N(pd)
    auto divisors_in_norm = [](const mpz_class& n) {
        std::vector<std::pair<long, long>> out;
        // enumerate gaussian integers with norm dividing n (norm <= n)
        long bound = 1;
        while (static_cast<mpz_class>(bound) * bound < n) ++bound;
        for (long x = -bound; x <= bound; ++x)
            for (long y = -bound; y <= bound; ++y) {
                if (x == 0 && y == 0) continue;
                mpz_class nn = mpz_class(x) * x + mpz_class(y) * y;
                if (nn <= n && n % nn == 0) out.push_back({x, y});
            }
        return out;
    };
    // guard against pathological blowup; desk-scale norms are tiny
    if (n0 > 100000 || nd > 100000) return roots;
    auto nums = divisors_in_norm(n0);
    auto dens = divisors_in_norm(nd);
    std::vector<Scalar> found;
    for (auto [ax, ay] : nums)
        for (auto [bx, by] : dens) {
            Scalar alpha{mpq_class(ax), mpq_class(ay)};
            Scalar beta{mpq_class(bx), mpq_class(by)};
            Scalar cand = alpha / beta;
            if (eval(cand).is_zero()) {
                bool seen = false;
                for (const auto& r : found)
                    if (r == cand) seen = true;
                if (!seen) found.push_back(cand);
            }
        }
    for (auto& r : found) roots.push_back(r);
    return roots;
}

// minimal polynomial of a linear operator restricted to a subspace: the
// first linear dependency among its stacked powers on a spanning set
std::vector<Scalar> min_poly_on(const LinearMap& op, const std::vector<SparseVec>& space) {
    const int d = static_cast<int>(space.size());
    if (d == 0) return {};
    const int ambient = op.rows();
    auto stack = [&](const std::vector<SparseVec>& vecs) {
        SparseVec s;
        for (int i = 0; i < d; ++i)
            for (const auto& [k, c] : vecs[i].entries()) s.add(i * ambient + k, c);
        return s;
    };
    Echelon plain(ambient * d);
    std::vector<std::vector<SparseVec>> powers;
    powers.push_back(space);
    for (int deg = 0;; ++deg) {
        if (!plain.insert(stack(powers[deg]))) {
            LinearMap sys(ambient * d, deg + 1);
            for (int k = 0; k <= deg; ++k) sys.col(k) = stack(powers[k]);
            auto ker = kernel_basis(sys);
            std::vector<Scalar> poly(deg + 1, Scalar::zero());
            for (const auto& [k, c] : ker.front().entries()) poly[k] = c;
            return poly;
        }
        std::vector<SparseVec> next(d);
        for (int i = 0; i < d; ++i) next[i] = op.apply(powers[deg][i]);
        powers.push_back(std::move(next));
    }
}

} // namespace

std::vector<SparseVec> one_dim_reps(const FiniteAlgebra& a) {
    const int n = a.dim();
    std::vector<SparseVec> result;
    if (!a.unit()) return result;

    // Characters are recovered as common eigenvectors of the left regular
    // representation; this finds all of them whenever every one-dimensional
    // quotient also embeds as a submodule, which holds for the
    // integral-carrying algebras enumerated here.
    // splitting: subspaces on which every left multiplication is scalar
    struct Block {
        std::vector<SparseVec> space;
        SparseVec values; // chi(a_i) for processed generators
        int next_gen;
    };
    std::vector<Block> work{{std::vector<SparseVec>{}, SparseVec(), 0}};
    {
        // start from the whole space
        std::vector<SparseVec> all;
        for (int i = 0; i < n; ++i) all.push_back(SparseVec::unit(i));
        work.front().space = std::move(all);
    }
    std::vector<Block> done;
    while (!work.empty()) {
        Block blk = std::move(work.back());
        work.pop_back();
        if (blk.next_gen == n) {
            done.push_back(std::move(blk));
            continue;
        }
        int g = blk.next_gen;
        LinearMap lg = a.left_mult(SparseVec::unit(g));
        auto poly = min_poly_on(lg, blk.space);
        std::vector<Scalar> roots = rational_roots(poly);
        Echelon span(n);
        span.insert_all(blk.space);
        for (const auto& lam : roots) {
            // eigenspace inside the block: x in span with (lg - lam) x in 0
            // solve in block coordinates
            const int d = static_cast<int>(blk.space.size());
            LinearMap sys(n, d);
            for (int i = 0; i < d; ++i)
                sys.col(i) = lg.apply(blk.space[i]) - blk.space[i].scaled(lam);
            auto ker = kernel_basis(sys);
            if (ker.empty()) continue;
            Block sub;
            for (const auto& coeffs : ker) {
                SparseVec vec;
                for (const auto& [i, c] : coeffs.entries()) vec.axpy(c, blk.space[i]);
                sub.space.push_back(std::move(vec));
            }
            sub.values = blk.values;
            sub.values.set(g, lam);
            sub.next_gen = g + 1;
            work.push_back(std::move(sub));
        }
    }
    // deduplicate value vectors and keep genuine characters
    for (const auto& blk : done) {
        const SparseVec& chi = blk.values;
        // verify multiplicativity and unitality
        bool ok = true;
        auto chi_of = [&](const SparseVec& x) {
            Scalar out = Scalar::zero();
            for (const auto& [i, c] : x.entries()) out += c * chi.get(i);
            return out;
        };
        if (chi_of(*a.unit()) != Scalar::one()) ok = false;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (chi_of(a.product(i, j)) != chi.get(i) * chi.get(j)) ok = false;
        if (!ok) continue;
        bool seen = false;
        for (const auto& prev : result)
            if (prev == chi) seen = true;
        if (!seen) result.push_back(chi);
    }
    return result;
}

std::vector<SparseVec> grouplikes(const WeakHopf& w) {
    // nonzero g with delta(g) = g (x) g correspond to characters of the dual
    // algebra (the convolution algebra on functionals)
    const int n = w.dim();
    FiniteAlgebra conv(std::vector<std::string>(n, "f"));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec prod;
            for (int k = 0; k < n; ++k) {
                Scalar c = w.delta.col(k).get(tensor_index(i, j, n));
                if (!c.is_zero()) prod.add(k, c);
            }
            if (!prod.empty()) conv.set_product(i, j, std::move(prod));
        }
    conv.set_unit(w.counit);
    std::vector<SparseVec> out;
    for (const auto& chi : one_dim_reps(conv)) out.push_back(chi);
    return out;
}

std::vector<OneDimYd> enumerate_one_dim_yd(const WeakHopf& w) {
    std::vector<OneDimYd> out;
    const int n = w.dim();
    auto characters = one_dim_reps(w.alg);
    auto groups = grouplikes(w);
    for (const auto& alpha : characters)
        for (const auto& g : groups) {
            YdModule v;
            v.dim = 1;
            v.action = LinearMap(1, n);
            for (int i = 0; i < n; ++i) v.action.set(0, i, alpha.get(i));
            v.coaction = LinearMap(n, 1);
            for (const auto& [i, c] : g.entries()) v.coaction.set(i, 0, c);
            Report check = yd_check(w, v);
            if (check.ok()) out.push_back({alpha, g});
        }
    return out;
}

LinearMap yd_to_double_module(const DoubleAlgebra& dbl, const YdModule& v, Report* out) {
    Report rep;
    rep.subject = "yd-to-double";
    const WmhaPairing& p = dbl.pairing; // <dual, algebra>
    const int nb = p.b.dim();
    const int nd = dbl.dim();
    const int m = v.dim;

    // (omega (x)_D a) |> x = omega((a |> x)_(-1)) (a |> x)_(0)
    LinearMap action(m, nd * m);
    for (int d = 0; d < nd; ++d) {
        SparseVec lift = dbl.incl.col(d);
        for (int r = 0; r < m; ++r) {
            SparseVec img;
            for (const auto& [ij, c] : lift.entries()) {
                int omega = ij / nb, a = ij % nb;
                SparseVec acted = v.action.apply(tensor_vec(SparseVec::unit(a), SparseVec::unit(r), m));
                for (const auto& [rr, cr] : acted.entries())
                    for (const auto& [bw, cc] : v.coaction.col(rr).entries()) {
                        Scalar val = p.form.get(omega, bw / m); // omega on the (-1) leg
                        if (!val.is_zero()) img.add(bw % m, c * cr * cc * val);
                    }
            }
            action.col(d * m + r) = std::move(img);
        }
    }

    {
        bool ok = true;
        std::string wit;
        for (int d1 = 0; d1 < nd && ok; ++d1)
            for (int d2 = 0; d2 < nd && ok; ++d2)
                for (int r = 0; r < m && ok; ++r) {
                    SparseVec lhs = action.apply(
                        tensor_vec(dbl.d.alg.product(d1, d2), SparseVec::unit(r), m));
                    SparseVec inner = action.apply(
                        tensor_vec(SparseVec::unit(d2), SparseVec::unit(r), m));
                    SparseVec rhs = action.apply(tensor_vec(SparseVec::unit(d1), inner, m));
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + dbl.d.alg.label(d1) + ", " + dbl.d.alg.label(d2) + ")";
                    }
                }
        rep.record("yd2d.module", "induced action is a module over the double", ok,
                   [&] { return wit; });
        Echelon span(m);
        for (int d = 0; d < nd; ++d)
            for (int r = 0; r < m; ++r)
                span.insert(action.col(d * m + r));
        rep.record("yd2d.unital", "induced module is unital", span.rank() == m,
                   [&] { return "span rank " + std::to_string(span.rank()); });
    }
    rep.sort();
    if (out) *out = std::move(rep);
    return action;
}

} // namespace qgd
