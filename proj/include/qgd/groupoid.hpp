#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgd {

struct GroupoidLawFailure {
    std::string law;
    std::string witness;
};

// Finite groupoid with explicit composition and inversion tables.
// Convention: compose(p, q) means "p after q" and is defined exactly when
// src(p) == tgt(q).  Arrow and unit ids are opaque strings.
class FiniteGroupoid {
public:
    struct Arrow {
        std::string id;
        std::string src;
        std::string tgt;
    };

    FiniteGroupoid() = default;

    const std::vector<std::string>& units() const { return units_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    int arrow_index(const std::string& id) const;
    const Arrow& arrow(int i) const { return arrows_[i]; }
    int identity_arrow(const std::string& unit) const; // index of id_unit

    bool composable(int p, int q) const { return arrows_[p].src == arrows_[q].tgt; }
    std::optional<int> compose(int p, int q) const;
    int inverse(int p) const { return inverse_[p]; }

    // compose(compose(inverse(p), r), p) when defined.
    std::optional<int> conjugate(int p, int r) const;

    std::vector<GroupoidLawFailure> validate() const;
    long composable_pair_count() const;

    // Constructors.  from_group rejects tables that are not groups.
    static FiniteGroupoid trivial();
    static FiniteGroupoid from_group(const std::vector<std::vector<int>>& table,
                                     const std::vector<std::string>& names = {});
    static FiniteGroupoid cyclic(int n);
    static FiniteGroupoid symmetric3();
    static FiniteGroupoid pair_groupoid(int n);
    static FiniteGroupoid disjoint_union(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                                         const std::string& tag1 = "L", const std::string& tag2 = "R");
    static FiniteGroupoid product(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

    // Raw construction from explicit tables; callers should validate().
    static FiniteGroupoid from_tables(std::vector<std::string> units, std::vector<Arrow> arrows,
                                      std::map<std::pair<int, int>, int> compose,
                                      std::vector<int> inverse);

private:
    std::vector<std::string> units_;
    std::vector<Arrow> arrows_;
    std::map<std::pair<int, int>, int> compose_;
    std::vector<int> inverse_;
    std::map<std::string, int> index_;
    std::map<std::string, int> identity_of_unit_;

    void reindex();
};

} // namespace qgd
