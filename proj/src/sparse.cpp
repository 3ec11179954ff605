#include "qgd/sparse.hpp"

#include <sstream>

namespace qgd {

std::string SparseVec::str() const {
    if (m_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : m_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")e" << i;
        first = false;
    }
    return os.str();
}

SparseVec tensor_vec(const SparseVec& a, const SparseVec& b, int dim_second) {
    SparseVec out;
    for (const auto& [i, ci] : a.entries())
        for (const auto& [j, cj] : b.entries())
            out.add(tensor_index(i, j, dim_second), ci * cj);
    return out;
}

LinearMap LinearMap::identity(int n) {
    LinearMap m(n, n);
    for (int j = 0; j < n; ++j) m.col_[j] = SparseVec::unit(j);
    return m;
}

LinearMap LinearMap::from_function(int rows, int cols, const std::function<SparseVec(int)>& image) {
    LinearMap m(rows, cols);
    for (int j = 0; j < cols; ++j) m.col_[j] = image(j);
    return m;
}

SparseVec LinearMap::apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [j, c] : x.entries()) out.axpy(c, col_[j]);
    return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    LinearMap out(rows_, inner.cols_);
    for (int j = 0; j < inner.cols_; ++j) out.col_[j] = apply(inner.col_[j]);
    return out;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
    LinearMap out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.col_[j] = col_[j] + o.col_[j];
    return out;
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
    LinearMap out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.col_[j] = col_[j] - o.col_[j];
    return out;
}

LinearMap LinearMap::scaled(const Scalar& c) const {
    LinearMap out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.col_[j] = col_[j].scaled(c);
    return out;
}

LinearMap LinearMap::transpose() const {
    LinearMap out(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, c] : col_[j].entries()) out.col_[i].set(j, c);
    return out;
}

LinearMap LinearMap::kronecker(const LinearMap& o) const {
    LinearMap out(rows_ * o.rows_, cols_ * o.cols_);
    for (int j1 = 0; j1 < cols_; ++j1)
        for (int j2 = 0; j2 < o.cols_; ++j2)
            out.col_[tensor_index(j1, j2, o.cols_)] = tensor_vec(col_[j1], o.col_[j2], o.rows_);
    return out;
}

bool LinearMap::is_zero() const {
    for (const auto& c : col_)
        if (!c.empty()) return false;
    return true;
}

bool Echelon::insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    int piv = r.leading_index();
    r = r.scaled(r.get(piv).inv());
    // back-substitute into existing rows
    for (auto& row : rows_) {
        Scalar c = row.get(piv);
        if (!c.is_zero()) row.axpy(-c, r);
    }
    pivot_of_index_[piv] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

// Rows are kept mutually reduced (a pivot coordinate appears in exactly one
// row), so eliminating each pivot coordinate once is a complete reduction.
SparseVec Echelon::reduce(const SparseVec& v) const {
    SparseVec r = v;
    for (const auto& [idx, rowpos] : pivot_of_index_) {
        Scalar c = r.get(idx);
        if (!c.is_zero()) r.axpy(-c, rows_[rowpos]);
    }
    return r;
}

std::optional<SparseVec> Echelon::coordinates(const SparseVec& v) const {
    SparseVec r = v;
    SparseVec coeffs;
    for (const auto& [idx, rowpos] : pivot_of_index_) {
        Scalar c = r.get(idx);
        if (c.is_zero()) continue;
        r.axpy(-c, rows_[rowpos]);
        coeffs.add(rowpos, c);
    }
    if (!r.empty()) return std::nullopt;
    return coeffs;
}

std::vector<SparseVec> range_basis(const LinearMap& m) {
    Echelon e(m.rows());
    for (int j = 0; j < m.cols(); ++j) e.insert(m.col(j));
    return e.basis();
}

std::vector<SparseVec> kernel_basis(const LinearMap& m) {
    // Row-reduce the transpose view: constraints are the rows of m.
    std::vector<SparseVec> constraints;
    LinearMap t = m.transpose();
    constraints.reserve(t.cols());
    for (int j = 0; j < t.cols(); ++j) constraints.push_back(t.col(j));
    return solve_homogeneous(constraints, m.cols());
}

std::vector<SparseVec> solve_homogeneous(const std::vector<SparseVec>& constraints, int unknowns) {
    Echelon e(unknowns);
    e.insert_all(constraints);
    // free coordinates = non-pivot indices
    std::map<int, int> pivots; // index -> row
    for (const auto& row : e.basis()) pivots[row.leading_index()] = 1;
    std::vector<SparseVec> out;
    for (int j = 0; j < unknowns; ++j) {
        if (pivots.count(j)) continue;
        SparseVec sol = SparseVec::unit(j);
        for (const auto& row : e.basis()) {
            Scalar c = row.get(j);
            if (!c.is_zero()) sol.set(row.leading_index(), -c);
        }
        out.push_back(std::move(sol));
    }
    return out;
}

bool subspace_equal(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int ambient_dim) {
    Echelon eu(ambient_dim), ev(ambient_dim);
    eu.insert_all(u);
    ev.insert_all(v);
    if (eu.rank() != ev.rank()) return false;
    for (const auto& x : v)
        if (!eu.contains(x)) return false;
    for (const auto& x : u)
        if (!ev.contains(x)) return false;
    return true;
}

std::optional<SparseVec> solve(const LinearMap& m, const SparseVec& b) {
    // Eliminate on [column | tag] pairs; tag coordinates sit above the
    // column coordinates, so pivots of nonzero columns stay in column space
    // and every echelon row records the combination that produced it.
    Echelon e(m.rows() + m.cols());
    for (int j = 0; j < m.cols(); ++j) {
        SparseVec aug = m.col(j);
        aug += SparseVec::unit(m.rows() + j);
        e.insert(aug);
    }
    SparseVec r = b;
    SparseVec coeffs;
    for (const auto& row : e.basis()) {
        int lead = row.leading_index();
        if (lead >= m.rows()) continue;
        Scalar c = r.get(lead);
        if (c.is_zero()) continue;
        for (const auto& [i, rc] : row.entries()) {
            if (i < m.rows()) r.add(i, -c * rc);
            else coeffs.add(i - m.rows(), c * rc);
        }
    }
    if (!r.empty()) return std::nullopt;
    return coeffs;
}

GenInverseResult generalized_inverse_check(const LinearMap& t, const LinearMap& p) {
    GenInverseResult res{false, false};
    res.first = (t * p * t == t);
    res.second = (p * t * p == p);
    return res;
}

std::optional<LinearMap> inverse(const LinearMap& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const int n = m.rows();
    Echelon e(2 * n);
    for (int j = 0; j < n; ++j) {
        SparseVec aug = m.col(j);
        aug += SparseVec::unit(n + j);
        e.insert(aug);
    }
    LinearMap inv(n, n);
    for (int i = 0; i < n; ++i) {
        SparseVec r = SparseVec::unit(i);
        SparseVec coeffs;
        for (const auto& row : e.basis()) {
            int lead = row.leading_index();
            if (lead >= n) continue;
            Scalar c = r.get(lead);
            if (c.is_zero()) continue;
            for (const auto& [k, rc] : row.entries()) {
                if (k < n) r.add(k, -c * rc);
                else coeffs.add(k - n, c * rc);
            }
        }
        if (!r.empty()) return std::nullopt;
        inv.col(i) = std::move(coeffs);
    }
    return inv;
}

LinearMap flip_map(int n, int m) {
    LinearMap f(n * m, n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            f.col(tensor_index(i, j, m)) = SparseVec::unit(tensor_index(j, i, n));
    return f;
}

} // namespace qgd
