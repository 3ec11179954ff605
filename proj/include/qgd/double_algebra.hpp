#pragma once

#include "qgd/pairing.hpp"

namespace qgd {

// Drinfeld double of a verified pairing.  The twisted product lives on the
// range of R inside A (x) B; the double itself is realized on the
// non-degenerate part of that range (they coincide whenever the twisted
// product on the range is non-degenerate, e.g. for groups).  `proj` and
// `incl` translate between A (x) B and carrier coordinates, and every
// structure map is the tensor-level formula conjugated through them.
struct DoubleAlgebra {
    WmhaPairing pairing;
    RMaps rmaps;
    LinearMap twist;     // T : B (x) A -> A (x) B
    LinearMap twist_inv; // generalized inverse, A (x) B -> B (x) A

    std::vector<SparseVec> range_r; // echelon basis of Range(R)
    int annihilator_dim = 0;        // dimension cut away by the quotient

    LinearMap proj; // A (x) B -> D coordinates
    LinearMap incl; // D coordinates -> A (x) B representatives

    WeakHopf d;     // the assembled structure on the carrier
    LinearMap f1;   // A -> D
    LinearMap f2;   // B -> D

    Report build_report;

    int dim() const { return d.dim(); }
    SparseVec project(const SparseVec& ab) const { return proj.apply(ab); }
    SparseVec lift(const SparseVec& x) const { return incl.apply(x); }
    SparseVec mul_ab(const SparseVec& x, const SparseVec& y) const; // twisted product in A (x) B
};

// The twist T = R o R^{op,cop,'} o flip and its generalized inverse.
std::pair<LinearMap, LinearMap> twist_maps(const WmhaPairing& p);

// Builds the double and certifies the construction-level identities
// (range/carrier geometry, product slides, twist laws, star laws).
// Throws std::domain_error if the twisted product fails to close on the
// range of R.
DoubleAlgebra build_double(const WmhaPairing& p);

// Structure-level re-checks that are not part of the generic weak-Hopf
// suite: the coproduct routes, antipode forms, counit factorization.
Report verify_double_structure(const DoubleAlgebra& dbl);

// Right/left integrals on D assembled from integrals on A and B, certified
// by the membership test, plus the target-map factorization.
Report double_integrals(const DoubleAlgebra& dbl, const IntegralSpace& ia, const IntegralSpace& ib,
                        IntegralSpace* out = nullptr);

// Compares the untwisted double product with the smash product, both routed
// through the carrier projection.  Requires a dual pairing <A^, A>.
Report smash_comparison(const DoubleAlgebra& dbl);

} // namespace qgd
