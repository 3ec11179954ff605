#include "qgd/io.hpp"

#include "qgd/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgd::io {

namespace {

json rat_to_json(const mpq_class& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

mpq_class rat_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
        mpq_class q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    if (!j.is_array() || j.size() != 2) throw std::runtime_error("bad rational");
    auto part = [](const json& v) {
        if (v.is_string()) return mpz_class(v.get<std::string>());
        return mpz_class(v.get<long>());
    };
    mpz_class den = part(j[1]);
    if (den == 0) throw std::runtime_error("zero denominator");
    mpq_class q(part(j[0]), den);
    q.canonicalize();
    return q;
}

} // namespace

json scalar_to_json(const Scalar& s) {
    return json{{"re", rat_to_json(s.re())}, {"im", rat_to_json(s.im())}};
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) {
        auto parsed = Scalar::parse(j.get<std::string>());
        if (!parsed) throw std::runtime_error("bad scalar string: " + j.get<std::string>());
        return *parsed;
    }
    mpq_class re = j.contains("re") ? rat_from_json(j["re"]) : mpq_class(0);
    mpq_class im = j.contains("im") ? rat_from_json(j["im"]) : mpq_class(0);
    return Scalar(re, im);
}

json sparse_to_json(const SparseVec& v) {
    json out = json::object();
    for (const auto& [i, c] : v.entries()) out[std::to_string(i)] = scalar_to_json(c);
    return out;
}

SparseVec sparse_from_json(const json& j) {
    SparseVec v;
    for (auto it = j.begin(); it != j.end(); ++it)
        v.set(std::stoi(it.key()), scalar_from_json(it.value()));
    return v;
}

json map_to_json(const LinearMap& m) {
    json cols = json::array();
    for (int j = 0; j < m.cols(); ++j)
        if (!m.col(j).empty()) cols.push_back(json::array({j, sparse_to_json(m.col(j))}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"columns", cols}};
}

LinearMap map_from_json(const json& j) {
    LinearMap m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& col : j.at("columns")) m.col(col[0].get<int>()) = sparse_from_json(col[1]);
    return m;
}

FiniteGroupoid groupoid_from_json(const json& j) {
    if (j.contains("type")) {
        std::string type = j.at("type").get<std::string>();
        if (type == "cyclic") return FiniteGroupoid::cyclic(j.at("n").get<int>());
        if (type == "trivial") return FiniteGroupoid::trivial();
        if (type == "s3") return FiniteGroupoid::symmetric3();
        if (type == "pair") return FiniteGroupoid::pair_groupoid(j.at("points").get<int>());
        if (type == "group") {
            std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
            std::vector<std::string> names;
            if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
            return FiniteGroupoid::from_group(table, names);
        }
        if (type == "disjoint_union") {
            const auto& parts = j.at("parts");
            if (parts.empty()) throw std::runtime_error("empty disjoint union");
            FiniteGroupoid g = groupoid_from_json(parts[0]);
            for (size_t i = 1; i < parts.size(); ++i)
                g = FiniteGroupoid::disjoint_union(g, groupoid_from_json(parts[i]),
                                                   "p" + std::to_string(i - 1),
                                                   "p" + std::to_string(i));
            return g;
        }
        if (type == "product") {
            const auto& factors = j.at("factors");
            if (factors.empty()) throw std::runtime_error("empty product");
            FiniteGroupoid g = groupoid_from_json(factors[0]);
            for (size_t i = 1; i < factors.size(); ++i)
                g = FiniteGroupoid::product(g, groupoid_from_json(factors[i]));
            return g;
        }
        throw std::runtime_error("unknown groupoid constructor: " + type);
    }
    // explicit tables
    std::vector<std::string> units = j.at("units").get<std::vector<std::string>>();
    std::vector<FiniteGroupoid::Arrow> arrows;
    std::map<std::string, int> index;
    for (const auto& a : j.at("arrows")) {
        FiniteGroupoid::Arrow arrow{a.at("id").get<std::string>(), a.at("src").get<std::string>(),
                                    a.at("tgt").get<std::string>()};
        index[arrow.id] = static_cast<int>(arrows.size());
        arrows.push_back(std::move(arrow));
    }
    auto lookup = [&](const json& v) {
        auto it = index.find(v.get<std::string>());
        if (it == index.end()) throw std::runtime_error("unknown arrow id " + v.get<std::string>());
        return it->second;
    };
    std::map<std::pair<int, int>, int> compose;
    for (const auto& row : j.at("compose"))
        compose[{lookup(row[0]), lookup(row[1])}] = lookup(row[2]);
    std::vector<int> inverse(arrows.size(), -1);
    for (const auto& row : j.at("inverse")) inverse[lookup(row[0])] = lookup(row[1]);
    return FiniteGroupoid::from_tables(std::move(units), std::move(arrows), std::move(compose),
                                       std::move(inverse));
}

json algebra_to_json(const FiniteAlgebra& a) {
    json out;
    out["basis"] = a.basis();
    json st = json::array();
    for (const auto& [ij, v] : a.structure())
        st.push_back(json::array({ij.first, ij.second, sparse_to_json(v)}));
    out["structure"] = st;
    if (a.unit()) out["unit"] = sparse_to_json(*a.unit());
    if (a.star()) out["star"] = map_to_json(a.star()->mat);
    return out;
}

FiniteAlgebra algebra_from_json(const json& j) {
    FiniteAlgebra a(j.at("basis").get<std::vector<std::string>>());
    for (const auto& row : j.at("structure"))
        a.set_product(row[0].get<int>(), row[1].get<int>(), sparse_from_json(row[2]));
    if (j.contains("unit")) a.set_unit(sparse_from_json(j["unit"]));
    if (j.contains("star")) a.set_star({map_from_json(j["star"])});
    return a;
}

json weakhopf_to_json(const WeakHopf& w) {
    json out;
    out["kind"] = "weak_hopf";
    out["algebra"] = algebra_to_json(w.alg);
    out["delta"] = map_to_json(w.delta);
    out["counit"] = sparse_to_json(w.counit);
    out["antipode"] = map_to_json(w.antipode);
    out["E"] = sparse_to_json(w.E);
    return out;
}

WeakHopf weakhopf_from_json(const json& j) {
    WeakHopf w;
    w.alg = algebra_from_json(j.at("algebra"));
    w.delta = map_from_json(j.at("delta"));
    w.counit = sparse_from_json(j.at("counit"));
    w.antipode = map_from_json(j.at("antipode"));
    w.E = sparse_from_json(j.at("E"));
    return w;
}

json pairing_to_json(const WmhaPairing& p) {
    json out;
    out["kind"] = "pairing";
    out["a"] = weakhopf_to_json(p.a);
    out["b"] = weakhopf_to_json(p.b);
    out["form"] = map_to_json(p.form);
    return out;
}

namespace {

json resolve_ref(const json& j, const std::string& base_dir) {
    if (j.is_string()) {
        std::string path = j.get<std::string>();
        if (!base_dir.empty() && path.front() != '/') path = base_dir + "/" + path;
        return load_file(path);
    }
    return j;
}

} // namespace

WmhaPairing pairing_from_json(const json& j, const std::string& base_dir) {
    WmhaPairing p;
    p.a = weakhopf_from_json(resolve_ref(j.at("a"), base_dir));
    p.b = weakhopf_from_json(resolve_ref(j.at("b"), base_dir));
    p.form = map_from_json(j.at("form"));
    return p;
}

json double_to_json(const DoubleAlgebra& d) {
    json out;
    out["kind"] = "double_dump";
    out["pairing"] = pairing_to_json(d.pairing);
    json carrier = json::array();
    for (int m = 0; m < d.dim(); ++m) carrier.push_back(sparse_to_json(d.incl.col(m)));
    out["carrier"] = carrier;
    out["proj"] = map_to_json(d.proj);
    out["double"] = weakhopf_to_json(d.d);
    out["f1"] = map_to_json(d.f1);
    out["f2"] = map_to_json(d.f2);
    out["annihilator_dim"] = d.annihilator_dim;
    return out;
}

DoubleAlgebra double_from_json(const json& j, const std::string& base_dir) {
    DoubleAlgebra d;
    d.pairing = pairing_from_json(resolve_ref(j.at("pairing"), base_dir), base_dir);
    d.rmaps = r_maps(d.pairing);
    const int na = d.pairing.a.dim();
    const int nb = d.pairing.b.dim();
    d.twist = d.rmaps.r * d.rmaps.r_opcop_prime * flip_map(nb, na);
    d.twist_inv = flip_map(na, nb) * d.rmaps.r_opcop * d.rmaps.r_prime;
    d.range_r = range_basis(d.rmaps.r);
    d.proj = map_from_json(j.at("proj"));
    d.d = weakhopf_from_json(j.at("double"));
    const auto& carrier = j.at("carrier");
    d.incl = LinearMap(na * nb, static_cast<int>(carrier.size()));
    for (size_t m = 0; m < carrier.size(); ++m)
        d.incl.col(static_cast<int>(m)) = sparse_from_json(carrier[m]);
    d.f1 = map_from_json(j.at("f1"));
    d.f2 = map_from_json(j.at("f2"));
    d.annihilator_dim = j.value("annihilator_dim", 0);
    return d;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("parse error in " + path + ": " + e.what());
    }
    return j;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

} // namespace qgd::io
