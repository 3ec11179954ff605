#pragma once

#include "qgd/report.hpp"
#include "qgd/sparse.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgd {

// Conjugate-linear involution: star(x) = mat * conj(x).
struct StarMap {
    LinearMap mat;
    SparseVec apply(const SparseVec& x) const { return mat.apply(x.conjugated()); }
};

// Finite-dimensional structure-constant algebra over Q(i).  Products of
// basis elements are stored sparsely; absent pairs multiply to zero.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(std::vector<std::string> basis) : basis_(std::move(basis)) {}

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::string>& basis() const { return basis_; }
    const std::string& label(int i) const { return basis_[i]; }

    void set_product(int i, int j, SparseVec v) {
        if (v.empty()) structure_.erase({i, j});
        else structure_[{i, j}] = std::move(v);
    }
    const SparseVec& product(int i, int j) const {
        static const SparseVec kZero;
        auto it = structure_.find({i, j});
        return it == structure_.end() ? kZero : it->second;
    }
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

    void set_unit(SparseVec u) { unit_ = std::move(u); }
    const std::optional<SparseVec>& unit() const { return unit_; }
    void set_star(StarMap s) { star_ = std::move(s); }
    const std::optional<StarMap>& star() const { return star_; }
    SparseVec star_apply(const SparseVec& x) const { return star_->apply(x); }

    LinearMap left_mult(const SparseVec& a) const;  // x -> a x
    LinearMap right_mult(const SparseVec& a) const; // x -> x a

    // Finds the two-sided unit if one exists.
    std::optional<SparseVec> solve_unit() const;

    const std::map<std::pair<int, int>, SparseVec>& structure() const { return structure_; }

private:
    std::vector<std::string> basis_;
    std::map<std::pair<int, int>, SparseVec> structure_;
    std::optional<SparseVec> unit_;
    std::optional<StarMap> star_;
};

// Element together with its parent algebra, for ergonomic arithmetic.
struct AlgElement {
    const FiniteAlgebra* parent = nullptr;
    SparseVec coeffs;

    AlgElement operator*(const AlgElement& o) const {
        return {parent, parent->multiply(coeffs, o.coeffs)};
    }
    AlgElement operator+(const AlgElement& o) const { return {parent, coeffs + o.coeffs}; }
    AlgElement operator-(const AlgElement& o) const { return {parent, coeffs - o.coeffs}; }
};

// Multiplier of a non-degenerate algebra: a pair of maps with
// rho_l(ab) = rho_l(a)b, rho_r(ab) = a rho_r(b), rho_r(a)b = a rho_l(b).
struct Multiplier {
    LinearMap left;
    LinearMap right;
};

FiniteAlgebra tensor(const FiniteAlgebra& a, const FiniteAlgebra& b);
SparseVec tensor_multiply(const FiniteAlgebra& a, const FiniteAlgebra& b,
                          const SparseVec& x, const SparseVec& y);

// Legwise product in the `legs`-fold tensor power of a single algebra.
SparseVec tensor_pow_multiply(const FiniteAlgebra& a, int legs, const SparseVec& x,
                              const SparseVec& y);

Multiplier embed_as_multiplier(const FiniteAlgebra& a, const SparseVec& x);
bool multiplier_laws_hold(const FiniteAlgebra& a, const Multiplier& m);

Report verify_algebra(const FiniteAlgebra& a);
Report multiplier_algebra_iso_check(const FiniteAlgebra& a);

} // namespace qgd
