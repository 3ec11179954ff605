#include "qgd/algebra.hpp"

#include <sstream>

namespace qgd {

SparseVec FiniteAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, ci] : x.entries())
        for (const auto& [j, cj] : y.entries()) {
            auto it = structure_.find({i, j});
            if (it != structure_.end()) out.axpy(ci * cj, it->second);
        }
    return out;
}

LinearMap FiniteAlgebra::left_mult(const SparseVec& a) const {
    return LinearMap::from_function(dim(), dim(), [&](int j) {
        return multiply(a, SparseVec::unit(j));
    });
}

LinearMap FiniteAlgebra::right_mult(const SparseVec& a) const {
    return LinearMap::from_function(dim(), dim(), [&](int j) {
        return multiply(SparseVec::unit(j), a);
    });
}

std::optional<SparseVec> FiniteAlgebra::solve_unit() const {
    // u with u a_j = a_j and a_j u = a_j for every basis a_j
    const int n = dim();
    LinearMap sys(2 * n * n, n);
    for (int u = 0; u < n; ++u) { // unknown coordinate
        SparseVec col;
        for (int j = 0; j < n; ++j) {
            const SparseVec& p = product(u, j);
            for (const auto& [k, c] : p.entries()) col.add(j * n + k, c);
            const SparseVec& q = product(j, u);
            for (const auto& [k, c] : q.entries()) col.add(n * n + j * n + k, c);
        }
        sys.col(u) = std::move(col);
    }
    SparseVec rhs;
    for (int j = 0; j < n; ++j) {
        rhs.add(j * n + j, Scalar::one());
        rhs.add(n * n + j * n + j, Scalar::one());
    }
    return solve(sys, rhs);
}

FiniteAlgebra tensor(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    std::vector<std::string> basis;
    basis.reserve(static_cast<size_t>(a.dim()) * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) basis.push_back(a.label(i) + "(x)" + b.label(j));
    FiniteAlgebra t(std::move(basis));
    for (const auto& [ij, va] : a.structure())
        for (const auto& [kl, vb] : b.structure())
            t.set_product(tensor_index(ij.first, kl.first, b.dim()),
                          tensor_index(ij.second, kl.second, b.dim()),
                          tensor_vec(va, vb, b.dim()));
    if (a.unit() && b.unit()) t.set_unit(tensor_vec(*a.unit(), *b.unit(), b.dim()));
    if (a.star() && b.star()) t.set_star({a.star()->mat.kronecker(b.star()->mat)});
    return t;
}

SparseVec tensor_multiply(const FiniteAlgebra& a, const FiniteAlgebra& b,
                          const SparseVec& x, const SparseVec& y) {
    // product in A (x) B computed legwise, without materializing the tensor algebra
    SparseVec out;
    const int m = b.dim();
    for (const auto& [i, ci] : x.entries())
        for (const auto& [j, cj] : y.entries()) {
            int ia = i / m, ib = i % m;
            int ja = j / m, jb = j % m;
            const SparseVec& pa = a.product(ia, ja);
            if (pa.empty()) continue;
            const SparseVec& pb = b.product(ib, jb);
            if (pb.empty()) continue;
            out.axpy(ci * cj, tensor_vec(pa, pb, m));
        }
    return out;
}

SparseVec tensor_pow_multiply(const FiniteAlgebra& a, int legs, const SparseVec& x,
                              const SparseVec& y) {
    const int n = a.dim();
    SparseVec out;
    std::vector<int> xi(legs), yi(legs);
    for (const auto& [i, ci] : x.entries())
        for (const auto& [j, cj] : y.entries()) {
            int iv = i, jv = j;
            for (int l = legs - 1; l >= 0; --l) {
                xi[l] = iv % n; iv /= n;
                yi[l] = jv % n; jv /= n;
            }
            SparseVec acc;
            acc.add(0, ci * cj);
            bool dead = false;
            for (int l = 0; l < legs && !dead; ++l) {
                const SparseVec& p = a.product(xi[l], yi[l]);
                if (p.empty()) { dead = true; break; }
                SparseVec next;
                for (const auto& [base, c] : acc.entries())
                    for (const auto& [k, ck] : p.entries()) next.add(base * n + k, c * ck);
                acc = std::move(next);
            }
            if (!dead) out += acc;
        }
    return out;
}

Multiplier embed_as_multiplier(const FiniteAlgebra& a, const SparseVec& x) {
    return {a.left_mult(x), a.right_mult(x)};
}

bool multiplier_laws_hold(const FiniteAlgebra& alg, const Multiplier& m) {
    const int n = alg.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseVec ei = SparseVec::unit(i), ej = SparseVec::unit(j);
            SparseVec ab = alg.product(i, j);
            if (m.left.apply(ab) != alg.multiply(m.left.apply(ei), ej)) return false;
            if (m.right.apply(ab) != alg.multiply(ei, m.right.apply(ej))) return false;
            if (alg.multiply(m.right.apply(ei), ej) != alg.multiply(ei, m.left.apply(ej))) return false;
        }
    return true;
}

Report verify_algebra(const FiniteAlgebra& a) {
    Report rep;
    rep.subject = "algebra";
    const int n = a.dim();

    // associativity on all basis triples
    {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                for (int k = 0; k < n && ok; ++k) {
                    SparseVec lhs = a.multiply(a.product(i, j), SparseVec::unit(k));
                    SparseVec rhs = a.multiply(SparseVec::unit(i), a.product(j, k));
                    if (lhs != rhs) {
                        ok = false;
                        wit = "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
                    }
                }
        rep.record("alg.assoc", "product is associative", ok, [&] { return wit; });
    }

    // non-degeneracy of the product as a bilinear form
    {
        LinearMap rows(n * n, n), cols(n * n, n);
        for (int i = 0; i < n; ++i) {
            SparseVec rv, cv;
            for (int j = 0; j < n; ++j) {
                const SparseVec& p = a.product(i, j);
                for (const auto& [k, c] : p.entries()) rv.add(j * n + k, c);
                const SparseVec& q = a.product(j, i);
                for (const auto& [k, c] : q.entries()) cv.add(j * n + k, c);
            }
            rows.col(i) = std::move(rv);
            cols.col(i) = std::move(cv);
        }
        bool left_ok = kernel_basis(rows).empty();
        bool right_ok = kernel_basis(cols).empty();
        rep.record("alg.nondegenerate", "product is non-degenerate as a bilinear form",
                   left_ok && right_ok, [&] {
                       return std::string(left_ok ? "right" : "left") + " kernel is nonzero";
                   });
    }

    // idempotency: span of all products is the whole space
    {
        Echelon e(n);
        for (const auto& [ij, v] : a.structure()) e.insert(v);
        rep.record("alg.idempotent", "algebra squared spans the algebra", e.rank() == n,
                   [&] { return "span of products has dimension " + std::to_string(e.rank()); });
    }

    if (a.unit()) {
        bool ok = true;
        std::string wit;
        for (int j = 0; j < n && ok; ++j) {
            SparseVec ej = SparseVec::unit(j);
            if (a.multiply(*a.unit(), ej) != ej || a.multiply(ej, *a.unit()) != ej) {
                ok = false;
                wit = a.label(j);
            }
        }
        rep.record("alg.unit", "declared unit is a two-sided unit", ok, [&] { return wit; });
    }

    if (a.star()) {
        const StarMap& s = *a.star();
        bool inv = true, anti = true;
        std::string wit;
        for (int i = 0; i < n && inv; ++i) {
            SparseVec ei = SparseVec::unit(i);
            if (s.apply(s.apply(ei)) != ei) { inv = false; wit = a.label(i); }
        }
        rep.record("alg.star.involutive", "star is an involution", inv, [&] { return wit; });
        for (int i = 0; i < n && anti; ++i)
            for (int j = 0; j < n && anti; ++j) {
                SparseVec lhs = s.apply(a.product(i, j));
                SparseVec rhs = a.multiply(s.apply(SparseVec::unit(j)), s.apply(SparseVec::unit(i)));
                if (lhs != rhs) {
                    anti = false;
                    wit = "(" + a.label(i) + ", " + a.label(j) + ")";
                }
            }
        rep.record("alg.star.antimult", "star reverses products", anti, [&] { return wit; });
    }

    return rep;
}

Report multiplier_algebra_iso_check(const FiniteAlgebra& a) {
    Report rep;
    rep.subject = "multiplier-algebra";
    const int n = a.dim();
    if (!a.unit()) {
        rep.fail("mult.unital-input", "multiplier collapse requires a unital algebra",
                 "algebra has no unit");
        return rep;
    }

    // Solve for all pairs (L, R) of n x n matrices subject to the three
    // multiplier laws; the solution space must be exactly the embedded copy.
    const int unknowns = 2 * n * n; // L entries then R entries, column-major
    auto l_at = [&](int r, int c) { return c * n + r; };
    auto r_at = [&](int r, int c) { return n * n + c * n + r; };

    std::vector<SparseVec> constraints;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const SparseVec& pij = a.product(i, j);
            for (int out = 0; out < n; ++out) {
                // L(a_i a_j)[out] = (L(a_i) a_j)[out]
                SparseVec c1;
                for (const auto& [k, ck] : pij.entries()) c1.add(l_at(out, k), ck);
                for (int k = 0; k < n; ++k) {
                    Scalar coeff = a.product(k, j).get(out);
                    if (!coeff.is_zero()) c1.add(l_at(k, i), -coeff);
                }
                if (!c1.empty()) constraints.push_back(std::move(c1));
                // R(a_i a_j)[out] = (a_i R(a_j))[out]
                SparseVec c2;
                for (const auto& [k, ck] : pij.entries()) c2.add(r_at(out, k), ck);
                for (int k = 0; k < n; ++k) {
                    Scalar coeff = a.product(i, k).get(out);
                    if (!coeff.is_zero()) c2.add(r_at(k, j), -coeff);
                }
                if (!c2.empty()) constraints.push_back(std::move(c2));
                // (R(a_i) a_j)[out] = (a_i L(a_j))[out]
                SparseVec c3;
                for (int k = 0; k < n; ++k) {
                    Scalar coeff = a.product(k, j).get(out);
                    if (!coeff.is_zero()) c3.add(r_at(k, i), coeff);
                    Scalar coeff2 = a.product(i, k).get(out);
                    if (!coeff2.is_zero()) c3.add(l_at(k, j), -coeff2);
                }
                if (!c3.empty()) constraints.push_back(std::move(c3));
            }
        }
    std::vector<SparseVec> solutions = solve_homogeneous(constraints, unknowns);

    std::vector<SparseVec> embedded;
    for (int i = 0; i < n; ++i) {
        Multiplier m = embed_as_multiplier(a, SparseVec::unit(i));
        SparseVec flat;
        for (int c = 0; c < n; ++c) {
            for (const auto& [r, v] : m.left.col(c).entries()) flat.add(l_at(r, c), v);
            for (const auto& [r, v] : m.right.col(c).entries()) flat.add(r_at(r, c), v);
        }
        embedded.push_back(std::move(flat));
    }

    Echelon emb(unknowns);
    emb.insert_all(embedded);
    rep.record("mult.embedding-injective", "embedding of the algebra into its multipliers is injective",
               emb.rank() == n, [&] { return "embedded rank " + std::to_string(emb.rank()); });
    rep.record("mult.collapse", "every multiplier of a unital algebra is inner",
               subspace_equal(solutions, embedded, unknowns), [&] {
                   return "multiplier space dim " + std::to_string(solutions.size()) +
                          ", algebra dim " + std::to_string(n);
               });
    return rep;
}

} // namespace qgd
