#pragma once

#include "qgd/double_algebra.hpp"

namespace qgd {

// Quasitriangular structure on a host: an idempotent-inverse element R with
// its companion Rbar, both living in host (x) host at finite dimension.
struct QtStructure {
    const WeakHopf* host = nullptr;
    SparseVec r;
    SparseVec rbar;
};

struct DrinfeldElement {
    SparseVec u;
    SparseVec u_inv;
    SparseVec v;
    SparseVec v_inv;
    SparseVec h; // u v^{-1}
};

Report verify_qt(const QtStructure& q);

// u = S(R_2) R_1 with inverse w = S^{-1}(Rbar_2) Rbar_1; certifies the
// squared-antipode conjugation laws.  Throws if u w != 1.
DrinfeldElement drinfeld_element(const QtStructure& q, Report* rep = nullptr);

Report factorisable_check(const QtStructure& q);

// Canonical element of a pairing (the inverse transpose of the form),
// embedded into the double, with its companion (S (x) id)(R).
QtStructure canonical_element(const DoubleAlgebra& dbl, SparseVec* r_ab = nullptr,
                              Report* rep = nullptr);

// Canonical element for the evaluation pairing <dual, algebra>, built from a
// left and a right integral; returns the element of dual (x) algebra.
SparseVec canonical_from_integrals(const WeakHopf& w, Report* rep = nullptr);

struct CointegralData {
    std::vector<SparseVec> space;            // left cointegrals
    std::optional<SparseVec> normalized;     // t with phi(t) = 1
    std::optional<SparseVec> canonical;      // element of dual (x) algebra
};
CointegralData cointegrals(const WeakHopf& w, Report* rep = nullptr);

} // namespace qgd
