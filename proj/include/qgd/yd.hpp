#pragma once

#include "qgd/double_algebra.hpp"

namespace qgd {

// Left-left Yetter-Drinfeld module data over a weak Hopf structure.
struct YdModule {
    int dim = 0;
    LinearMap action;   // A (x) V -> V
    LinearMap coaction; // V -> A (x) V
};

Report yd_check(const WeakHopf& w, const YdModule& v);

// All algebra maps onto the scalars (one-dimensional representations),
// found exactly through the commutator quotient and eigenvalue splitting.
std::vector<SparseVec> one_dim_reps(const FiniteAlgebra& a);

// Grouplike elements: nonzero g with delta(g) = g (x) g.
std::vector<SparseVec> grouplikes(const WeakHopf& w);

// One-dimensional Yetter-Drinfeld structures (character, grouplike) that
// satisfy the compatibility and projection conditions.
struct OneDimYd {
    SparseVec character; // functional on the algebra
    SparseVec grouplike; // element of the algebra
};
std::vector<OneDimYd> enumerate_one_dim_yd(const WeakHopf& w);

// The induced action of the double (built on the flipped evaluation pairing
// <dual, algebra>) on a Yetter-Drinfeld module; checked to be a unital
// module over the double product.
LinearMap yd_to_double_module(const DoubleAlgebra& dbl, const YdModule& v, Report* rep = nullptr);

} // namespace qgd
