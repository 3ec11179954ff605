#pragma once

#include "qgd/scalar.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgd {

// Sparse coefficient vector over Q(i); only nonzero entries are stored.
class SparseVec {
public:
    SparseVec() = default;

    static SparseVec unit(int index) {
        SparseVec v;
        v.m_[index] = Scalar::one();
        return v;
    }

    bool empty() const { return m_.empty(); }
    size_t nnz() const { return m_.size(); }

    Scalar get(int i) const {
        auto it = m_.find(i);
        return it == m_.end() ? Scalar::zero() : it->second;
    }
    void set(int i, const Scalar& c) {
        if (c.is_zero()) m_.erase(i);
        else m_[i] = c;
    }
    void add(int i, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = m_.find(i);
        if (it == m_.end()) { m_[i] = c; return; }
        it->second += c;
        if (it->second.is_zero()) m_.erase(it);
    }

    SparseVec& operator+=(const SparseVec& o) {
        for (const auto& [i, c] : o.m_) add(i, c);
        return *this;
    }
    SparseVec& operator-=(const SparseVec& o) {
        for (const auto& [i, c] : o.m_) add(i, -c);
        return *this;
    }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }

    SparseVec scaled(const Scalar& c) const {
        SparseVec out;
        if (c.is_zero()) return out;
        for (const auto& [i, v] : m_) out.m_[i] = v * c;
        return out;
    }
    void axpy(const Scalar& c, const SparseVec& x) {
        if (c.is_zero()) return;
        for (const auto& [i, v] : x.m_) add(i, c * v);
    }

    SparseVec conjugated() const {
        SparseVec out;
        for (const auto& [i, v] : m_) out.m_[i] = v.conj();
        return out;
    }

    // Lowest-index nonzero entry; -1 on the zero vector.
    int leading_index() const { return m_.empty() ? -1 : m_.begin()->first; }

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.m_ == b.m_; }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

    const std::map<int, Scalar>& entries() const { return m_; }

    std::string str() const;

private:
    std::map<int, Scalar> m_;
};

// Tensor-leg index helpers: A (dim n) x B (dim m) is indexed i*m + j.
inline int tensor_index(int i, int j, int dim_second) { return i * dim_second + j; }

SparseVec tensor_vec(const SparseVec& a, const SparseVec& b, int dim_second);

// Linear map stored column-wise: col(j) is the image of the j-th basis vector.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    static LinearMap identity(int n);
    static LinearMap from_function(int rows, int cols, const std::function<SparseVec(int)>& image);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SparseVec& col(int j) const { return col_[j]; }
    SparseVec& col(int j) { return col_[j]; }
    void set(int i, int j, const Scalar& c) { col_[j].set(i, c); }
    Scalar get(int i, int j) const { return col_[j].get(i); }

    SparseVec apply(const SparseVec& x) const;
    LinearMap compose(const LinearMap& inner) const; // this ∘ inner
    LinearMap operator*(const LinearMap& o) const { return compose(o); }

    LinearMap operator+(const LinearMap& o) const;
    LinearMap operator-(const LinearMap& o) const;
    LinearMap scaled(const Scalar& c) const;
    LinearMap transpose() const;

    // Kronecker product acting on stacked tensor indices.
    LinearMap kronecker(const LinearMap& o) const;

    bool is_zero() const;
    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
    }
    friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseVec> col_;
};

// Reduced echelon span with deterministic pivoting: pivots are chosen at the
// lowest free coordinate index, scanning input vectors in order.  Reduction
// is stable, so equal spans produce byte-identical bases.
class Echelon {
public:
    explicit Echelon(int ambient_dim) : dim_(ambient_dim) {}

    // Returns true if v enlarged the span.
    bool insert(const SparseVec& v);
    void insert_all(const std::vector<SparseVec>& vs) {
        for (const auto& v : vs) insert(v);
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    int ambient_dim() const { return dim_; }
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    // Residue of v after elimination against the current basis.
    SparseVec reduce(const SparseVec& v) const;

    // Coefficients of v in terms of the stored basis, if v lies in the span.
    std::optional<SparseVec> coordinates(const SparseVec& v) const;

    const std::vector<SparseVec>& basis() const { return rows_; }

private:
    int dim_;
    std::vector<SparseVec> rows_;       // reduced, pivot entries scaled to 1
    std::map<int, int> pivot_of_index_; // coordinate index -> row position
};

std::vector<SparseVec> range_basis(const LinearMap& m);
std::vector<SparseVec> kernel_basis(const LinearMap& m);
bool subspace_equal(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int ambient_dim);

// Solves M x = b; returns a particular solution or nullopt.
std::optional<SparseVec> solve(const LinearMap& m, const SparseVec& b);

// Solution space of the homogeneous system rows(M) x = 0 given as a list of
// constraint functionals (each a SparseVec of length `unknowns`).
std::vector<SparseVec> solve_homogeneous(const std::vector<SparseVec>& constraints, int unknowns);

// Exact {1,2}-inverse test: T P T = T and P T P = P.
struct GenInverseResult {
    bool first;  // T P T == T
    bool second; // P T P == P
    bool ok() const { return first && second; }
};
GenInverseResult generalized_inverse_check(const LinearMap& t, const LinearMap& p);

// Exact inverse of a square map, if it exists.
std::optional<LinearMap> inverse(const LinearMap& m);

// Flip A (x) B -> B (x) A on tensor indices, dims (n, m).
LinearMap flip_map(int n, int m);

} // namespace qgd
