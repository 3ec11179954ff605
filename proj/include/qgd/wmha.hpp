#pragma once

#include "qgd/algebra.hpp"
#include "qgd/groupoid.hpp"
#include "qgd/report.hpp"

namespace qgd {

// Weak multiplier Hopf structure carried by a finite-dimensional algebra.
// At finite dimension the coproduct lands in A (x) A and every multiplier
// statement becomes an element statement, so all maps are plain matrices.
struct WeakHopf {
    FiniteAlgebra alg;
    LinearMap delta;    // A -> A (x) A
    SparseVec counit;   // functional on A
    LinearMap antipode; // bijective
    SparseVec E;        // canonical idempotent, element of A (x) A

    int dim() const { return alg.dim(); }

    SparseVec delta_of(const SparseVec& x) const { return delta.apply(x); }
    SparseVec delta2_of(const SparseVec& x) const; // (delta (x) id) delta
    SparseVec mult2(const SparseVec& x, const SparseVec& y) const {
        return tensor_multiply(alg, alg, x, y);
    }
    Scalar eps(const SparseVec& x) const;
    SparseVec s_of(const SparseVec& x) const { return antipode.apply(x); }
};

struct CanonicalMaps {
    LinearMap t1, t2, t3, t4, p1, p2; // all on A (x) A
};

struct SourceTargetData {
    LinearMap eps_s, eps_t;
    LinearMap eps_s_prime;
    LinearMap eps_t_prime;     // reading S^{-1}(a_(2)) a_(1)
    LinearMap eps_t_prime_alt; // reading S^{-1}(a_(1)) a_(2)
    int resolved_t_prime;      // 0 = primary reading, 1 = alternate, -1 = neither
    std::vector<SparseVec> source_basis; // A_s
    std::vector<SparseVec> target_basis; // A_t
};

struct IntegralSpace {
    std::vector<SparseVec> left;  // functionals
    std::vector<SparseVec> right;
    bool faithful = false;
};

WeakHopf function_algebra(const FiniteGroupoid& g);
WeakHopf groupoid_algebra(const FiniteGroupoid& g);

CanonicalMaps canonical_maps(const WeakHopf& w);
SourceTargetData source_target(const WeakHopf& w);

// Opposite-coproduct companion of a regular structure (antipode inverts).
WeakHopf cop_structure(const WeakHopf& w);

// The full structural certification: algebra laws, coproduct laws, counit,
// canonical idempotent conditions, kernel descriptions, antipode identities,
// source/target lemmas, star compatibility when present.  Ternary scans
// exceeding the tuple budget are sampled pseudorandomly from the seed and
// the report is marked accordingly.
Report verify_wmha(const WeakHopf& w, bool include_cop = true, std::uint64_t seed = 0);

// action: A (x) M -> M.
Report module_algebra_check(const WeakHopf& w, const FiniteAlgebra& m, const LinearMap& action);

IntegralSpace integrals(const WeakHopf& w);

// Dual structure on the full linear dual (finite case); requires a faithful
// set of integrals and throws std::domain_error otherwise.
WeakHopf dual(const WeakHopf& w);

} // namespace qgd
