#include "qgd/groupoid.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgd {

int FiniteGroupoid::arrow_index(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int FiniteGroupoid::identity_arrow(const std::string& unit) const {
    auto it = identity_of_unit_.find(unit);
    return it == identity_of_unit_.end() ? -1 : it->second;
}

std::optional<int> FiniteGroupoid::compose(int p, int q) const {
    auto it = compose_.find({p, q});
    if (it == compose_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FiniteGroupoid::conjugate(int p, int r) const {
    auto first = compose(inverse(p), r);
    if (!first) return std::nullopt;
    return compose(*first, p);
}

long FiniteGroupoid::composable_pair_count() const {
    long n = 0;
    for (size_t p = 0; p < arrows_.size(); ++p)
        for (size_t q = 0; q < arrows_.size(); ++q)
            if (composable(static_cast<int>(p), static_cast<int>(q))) ++n;
    return n;
}

void FiniteGroupoid::reindex() {
    index_.clear();
    identity_of_unit_.clear();
    for (size_t i = 0; i < arrows_.size(); ++i) index_[arrows_[i].id] = static_cast<int>(i);
    // An identity arrow at u is a loop e with e = compose(e, e) acting
    // neutrally; record the arrow named by a unit via the compose table.
    for (const auto& u : units_) {
        for (size_t i = 0; i < arrows_.size(); ++i) {
            const Arrow& a = arrows_[i];
            if (a.src != u || a.tgt != u) continue;
            bool neutral = true;
            for (size_t p = 0; p < arrows_.size(); ++p) {
                if (arrows_[p].src == u) {
                    auto c = compose(static_cast<int>(p), static_cast<int>(i));
                    if (!c || *c != static_cast<int>(p)) { neutral = false; break; }
                }
                if (arrows_[p].tgt == u) {
                    auto c = compose(static_cast<int>(i), static_cast<int>(p));
                    if (!c || *c != static_cast<int>(p)) { neutral = false; break; }
                }
            }
            if (neutral) { identity_of_unit_[u] = static_cast<int>(i); break; }
        }
    }
}

std::vector<GroupoidLawFailure> FiniteGroupoid::validate() const {
    std::vector<GroupoidLawFailure> fails;
    const int n = arrow_count();
    auto id_of = [&](int i) { return arrows_[i].id; };

    // domain of compose matches src/tgt
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            bool defined = compose_.count({p, q}) > 0;
            if (defined != composable(p, q)) {
                fails.push_back({"compose-domain",
                                 "pair (" + id_of(p) + ", " + id_of(q) + ")"});
            } else if (defined) {
                int r = compose_.at({p, q});
                if (arrows_[r].src != arrows_[q].src || arrows_[r].tgt != arrows_[p].tgt)
                    fails.push_back({"compose-endpoints",
                                     "pair (" + id_of(p) + ", " + id_of(q) + ")"});
            }
        }

    // associativity wherever both sides are defined
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!composable(p, q)) continue;
            auto pq = compose(p, q);
            if (!pq) continue;
            for (int r = 0; r < n; ++r) {
                if (!composable(q, r)) continue;
                auto qr = compose(q, r);
                auto lhs = qr ? compose(p, *qr) : std::nullopt;
                auto rhs = compose(*pq, r);
                if (lhs != rhs)
                    fails.push_back({"associativity",
                                     "triple (" + id_of(p) + ", " + id_of(q) + ", " + id_of(r) + ")"});
            }
        }

    // every unit carries an identity arrow
    for (const auto& u : units_)
        if (identity_arrow(u) < 0)
            fails.push_back({"unit-identity", "unit " + u});

    // unit laws
    for (int p = 0; p < n; ++p) {
        int it = identity_arrow(arrows_[p].tgt);
        int is = identity_arrow(arrows_[p].src);
        if (it >= 0) {
            auto c = compose(it, p);
            if (!c || *c != p) fails.push_back({"left-unit", "arrow " + id_of(p)});
        }
        if (is >= 0) {
            auto c = compose(p, is);
            if (!c || *c != p) fails.push_back({"right-unit", "arrow " + id_of(p)});
        }
    }

    // inverses
    for (int p = 0; p < n; ++p) {
        int pi = inverse_[p];
        if (pi < 0 || pi >= n) {
            fails.push_back({"inverse-total", "arrow " + id_of(p)});
            continue;
        }
        if (arrows_[pi].src != arrows_[p].tgt || arrows_[pi].tgt != arrows_[p].src) {
            fails.push_back({"inverse-endpoints", "arrow " + id_of(p)});
            continue;
        }
        auto right = compose(p, pi);
        auto left = compose(pi, p);
        int idt = identity_arrow(arrows_[p].tgt);
        int ids = identity_arrow(arrows_[p].src);
        if (!right || *right != idt)
            fails.push_back({"inverse-right", "arrow " + id_of(p)});
        if (!left || *left != ids)
            fails.push_back({"inverse-left", "arrow " + id_of(p)});
    }

    return fails;
}

FiniteGroupoid FiniteGroupoid::from_tables(std::vector<std::string> units, std::vector<Arrow> arrows,
                                           std::map<std::pair<int, int>, int> compose,
                                           std::vector<int> inverse) {
    FiniteGroupoid g;
    g.units_ = std::move(units);
    g.arrows_ = std::move(arrows);
    g.compose_ = std::move(compose);
    g.inverse_ = std::move(inverse);
    g.reindex();
    return g;
}

FiniteGroupoid FiniteGroupoid::trivial() { return cyclic(1); }

FiniteGroupoid FiniteGroupoid::from_group(const std::vector<std::vector<int>>& table,
                                          const std::vector<std::string>& names) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
    }
    // locate a two-sided identity
    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table[cand][x] == x && table[x][cand] == x;
        if (ok) { e = cand; break; }
    }
    if (e < 0) throw std::invalid_argument("table has no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument("table is not associative");
    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table[a][b] == e && table[b][a] == e) { inv[a] = b; break; }
        if (inv[a] < 0) throw std::invalid_argument("table element has no inverse");
    }

    std::vector<std::string> ids(n);
    for (int a = 0; a < n; ++a)
        ids[a] = a < static_cast<int>(names.size()) ? names[a] : "g" + std::to_string(a);

    std::vector<Arrow> arrows;
    const std::string u = "u";
    for (int a = 0; a < n; ++a) arrows.push_back({ids[a], u, u});
    std::map<std::pair<int, int>, int> comp;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) comp[{a, b}] = table[a][b];
    return from_tables({u}, std::move(arrows), std::move(comp), std::move(inv));
}

FiniteGroupoid FiniteGroupoid::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) names.push_back(a == 0 ? "e" : "c" + std::to_string(a));
    return from_group(table, names);
}

FiniteGroupoid FiniteGroupoid::symmetric3() {
    // permutations of {0,1,2} in a fixed listing
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> base{0, 1, 2};
    std::sort(base.begin(), base.end());
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    auto compose_perm = [](const std::array<int, 3>& f, const std::array<int, 3>& g) {
        std::array<int, 3> h{};
        for (int i = 0; i < 3; ++i) h[i] = f[g[i]];
        return h;
    };
    auto find = [&](const std::array<int, 3>& p) {
        for (size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        return -1;
    };
    const int n = static_cast<int>(perms.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = find(compose_perm(perms[a], perms[b]));
    std::vector<std::string> names;
    for (const auto& p : perms) {
        std::string s = "p";
        for (int v : p) s += std::to_string(v);
        names.push_back(s);
    }
    return from_group(table, names);
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(int n) {
    if (n < 1) throw std::invalid_argument("pair groupoid needs n >= 1");
    std::vector<std::string> units;
    for (int i = 1; i <= n; ++i) units.push_back("u" + std::to_string(i));
    std::vector<Arrow> arrows;
    auto name = [](int i, int j) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    // arrow (i,j): tgt = u_i, src = u_j
    std::vector<std::vector<int>> idx(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            idx[i][j] = static_cast<int>(arrows.size());
            arrows.push_back({name(i, j), "u" + std::to_string(j), "u" + std::to_string(i)});
        }
    std::map<std::pair<int, int>, int> comp;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) comp[{idx[i][j], idx[j][k]}] = idx[i][k];
    std::vector<int> inv(arrows.size());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) inv[idx[i][j]] = idx[j][i];
    return from_tables(std::move(units), std::move(arrows), std::move(comp), std::move(inv));
}

FiniteGroupoid FiniteGroupoid::disjoint_union(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                                              const std::string& tag1, const std::string& tag2) {
    std::vector<std::string> units;
    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, int> comp;
    std::vector<int> inv;
    auto tag_str = [](const std::string& t, const std::string& s) { return t + ":" + s; };
    for (const auto& u : g1.units_) units.push_back(tag_str(tag1, u));
    for (const auto& u : g2.units_) units.push_back(tag_str(tag2, u));
    for (const auto& a : g1.arrows_)
        arrows.push_back({tag_str(tag1, a.id), tag_str(tag1, a.src), tag_str(tag1, a.tgt)});
    const int off = g1.arrow_count();
    for (const auto& a : g2.arrows_)
        arrows.push_back({tag_str(tag2, a.id), tag_str(tag2, a.src), tag_str(tag2, a.tgt)});
    for (const auto& [pq, r] : g1.compose_) comp[pq] = r;
    for (const auto& [pq, r] : g2.compose_) comp[{pq.first + off, pq.second + off}] = r + off;
    for (int p = 0; p < g1.arrow_count(); ++p) inv.push_back(g1.inverse_[p]);
    for (int p = 0; p < g2.arrow_count(); ++p) inv.push_back(g2.inverse_[p] + off);
    return from_tables(std::move(units), std::move(arrows), std::move(comp), std::move(inv));
}

FiniteGroupoid FiniteGroupoid::product(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
    std::vector<std::string> units;
    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, int> comp;
    std::vector<int> inv;
    auto pair_str = [](const std::string& a, const std::string& b) { return "(" + a + "|" + b + ")"; };
    for (const auto& u : g1.units_)
        for (const auto& v : g2.units_) units.push_back(pair_str(u, v));
    const int n2 = g2.arrow_count();
    for (const auto& a : g1.arrows_)
        for (const auto& b : g2.arrows_)
            arrows.push_back({pair_str(a.id, b.id), pair_str(a.src, b.src), pair_str(a.tgt, b.tgt)});
    auto at = [&](int i, int j) { return i * n2 + j; };
    for (const auto& [pq1, r1] : g1.compose_)
        for (const auto& [pq2, r2] : g2.compose_)
            comp[{at(pq1.first, pq2.first), at(pq1.second, pq2.second)}] = at(r1, r2);
    for (int p = 0; p < g1.arrow_count(); ++p)
        for (int q = 0; q < n2; ++q) inv.push_back(at(g1.inverse_[p], g2.inverse_[q]));
    return from_tables(std::move(units), std::move(arrows), std::move(comp), std::move(inv));
}

} // namespace qgd
