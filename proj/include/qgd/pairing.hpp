#pragma once

#include "qgd/wmha.hpp"

namespace qgd {

// Non-degenerate bilinear pairing between two regular structures; the form
// is stored as the matrix form[i][j] = <a_i, b_j>.
struct WmhaPairing {
    WeakHopf a;
    WeakHopf b;
    LinearMap form; // rows indexed by basis of a, cols by basis of b

    Scalar pair(const SparseVec& x, const SparseVec& y) const;
    // legwise pairing of A (x) A against B (x) B
    Scalar pair2(const SparseVec& x2, const SparseVec& y2) const;
};

struct PairActions {
    LinearMap a_on_b;  // A (x) B -> B,  a |> b
    LinearMap b_back_a; // B (x) A -> B, b <| a
    LinearMap b_on_a;  // B (x) A -> A,  b |> a
    LinearMap a_back_b; // A (x) B -> A, a <| b
};

struct RMaps {
    LinearMap r, r_prime;           // on A (x) B
    LinearMap r_tilde, r_tilde_prime; // on B (x) A
    LinearMap r_opcop, r_opcop_prime; // on A (x) B
};

WmhaPairing canonical_pairing(const FiniteGroupoid& g);
WmhaPairing dual_pairing(const WeakHopf& w);            // <A, dual(A)> by evaluation
WmhaPairing flip_pairing(const WmhaPairing& p);         // <B, A> with the transposed form

PairActions actions(const WmhaPairing& p);
RMaps r_maps(const WmhaPairing& p);

LinearMap map_R(const WmhaPairing& p);
LinearMap map_R_prime(const WmhaPairing& p);

// <a, m> for a multiplier m of B, via a unital decomposition of a; the value
// is cross-checked against a second independent decomposition.
Scalar extend_to_multiplier(const WmhaPairing& p, const Multiplier& m, const SparseVec& a);

// Multiplier of B representing a functional on A, when the representability
// conditions hold (always, at finite dimension; they are still evaluated).
std::optional<SparseVec> functional_to_multiplier(const WmhaPairing& p, const SparseVec& omega);

Report verify_pairing(const WmhaPairing& p);

} // namespace qgd
