// Command-line verifier for groupoid-built weak Hopf structures, pairings,
// Drinfeld doubles and their quasitriangular structure.

#include "qgd/io.hpp"
#include "qgd/qt.hpp"
#include "qgd/yd.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "CLI11.hpp"

using namespace qgd;

namespace {

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    int threads = 1;
};

int finish(const Report& rep, const Options& opt) {
    if (opt.json) std::cout << rep.to_json() << "\n";
    else std::cout << rep.to_text();
    if (rep.ok()) return 0;
    const Check* f = rep.first_failure();
    if (f && !opt.json) std::cout << "first failing law: " << f->anchor << "\n";
    return 1;
}

std::string dir_of(const std::string& path) {
    auto parent = std::filesystem::path(path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

void attach_digest(Report& rep, const std::string& path) {
    try {
        rep.digests.push_back({std::filesystem::path(path).filename().string(),
                               io::file_digest(path)});
    } catch (...) {
        // inputs passed inline have no file digest
    }
}

Report merge_parallel(std::vector<std::pair<std::string, std::function<Report()>>> tasks,
                      const Options& opt) {
    Report total;
    if (opt.threads > 1) {
        std::vector<std::future<Report>> futures;
        for (auto& [name, fn] : tasks)
            futures.push_back(std::async(std::launch::async, fn));
        for (size_t i = 0; i < tasks.size(); ++i)
            total.absorb(futures[i].get(), tasks[i].first);
    } else {
        for (auto& [name, fn] : tasks) total.absorb(fn(), name);
    }
    total.sort();
    return total;
}

int run_groupoid_validate(const std::string& path, const Options& opt) {
    io::json j = io::load_file(path);
    FiniteGroupoid g = io::groupoid_from_json(j);
    Report rep;
    rep.subject = "groupoid";
    rep.seed = opt.seed;
    attach_digest(rep, path);
    auto failures = g.validate();
    if (failures.empty()) {
        rep.pass("groupoid.laws", "all composition, unit and inverse laws hold");
    } else {
        for (size_t i = 0; i < failures.size(); ++i)
            rep.fail("groupoid." + failures[i].law + "." + std::to_string(i),
                     "groupoid law: " + failures[i].law, failures[i].witness);
    }
    rep.pass("groupoid.summary",
             std::to_string(g.units().size()) + " units, " + std::to_string(g.arrow_count()) +
                 " arrows, " + std::to_string(g.composable_pair_count()) + " composable pairs");
    return finish(rep, opt);
}

int run_wha(const std::string& path, const std::string& side, bool verify,
            const std::string& out_path, const Options& opt) {
    io::json j = io::load_file(path);
    WeakHopf w;
    if (j.contains("kind") && j["kind"] == "weak_hopf") {
        w = io::weakhopf_from_json(j);
    } else {
        FiniteGroupoid g = io::groupoid_from_json(j);
        auto failures = g.validate();
        if (!failures.empty()) throw std::runtime_error("input groupoid violates " + failures[0].law);
        w = (side == "group") ? groupoid_algebra(g) : function_algebra(g);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << io::weakhopf_to_json(w).dump(1) << "\n";
    }
    Report rep;
    rep.subject = "weak-hopf";
    rep.seed = opt.seed;
    attach_digest(rep, path);
    if (verify) {
        Report vr = verify_wmha(w, true, opt.seed);
        rep.absorb(vr, "wmha");
        rep.sort();
    } else {
        rep.pass("wha.built", "structure assembled; run with --verify for the full suite");
    }
    return finish(rep, opt);
}

WmhaPairing pairing_from_input(const io::json& j, const std::string& base_dir) {
    if (j.contains("kind") && j["kind"] == "pairing") return io::pairing_from_json(j, base_dir);
    FiniteGroupoid g = io::groupoid_from_json(j);
    auto failures = g.validate();
    if (!failures.empty()) throw std::runtime_error("input groupoid violates " + failures[0].law);
    return canonical_pairing(g);
}

int run_pairing(const std::string& path, bool verify, const std::string& out_path,
                const Options& opt) {
    io::json j = io::load_file(path);
    WmhaPairing p = pairing_from_input(j, dir_of(path));
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << io::pairing_to_json(p).dump(1) << "\n";
    }
    Report rep;
    rep.seed = opt.seed;
    attach_digest(rep, path);
    if (verify) {
        auto tasks = std::vector<std::pair<std::string, std::function<Report()>>>{
            {"a", [&] { return verify_wmha(p.a, true, opt.seed); }},
            {"b", [&] { return verify_wmha(p.b, true, opt.seed); }},
            {"pairing", [&] { return verify_pairing(p); }},
        };
        rep = merge_parallel(std::move(tasks), opt);
        rep.seed = opt.seed;
        attach_digest(rep, path);
    } else {
        rep.pass("pairing.built", "pairing assembled; run with --verify for the full suite");
    }
    return finish(rep, opt);
}

int run_double(const std::string& path, bool verify, bool with_qt, bool with_integrals,
               const std::string& out_path, const Options& opt) {
    io::json j = io::load_file(path);
    DoubleAlgebra dbl;
    WmhaPairing p;
    if (j.contains("kind") && j["kind"] == "double_dump") {
        dbl = io::double_from_json(j, dir_of(path));
        p = dbl.pairing;
    } else {
        p = pairing_from_input(j, dir_of(path));
        dbl = build_double(p);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << io::double_to_json(dbl).dump(1) << "\n";
    }

    Report rep;
    rep.subject = "double";
    rep.seed = opt.seed;
    attach_digest(rep, path);
    rep.pass("double.dimensions",
             "dim A = " + std::to_string(p.a.dim()) + ", dim B = " + std::to_string(p.b.dim()) +
                 ", dim Range(R) = " + std::to_string(dbl.range_r.size()) +
                 ", dim D = " + std::to_string(dbl.dim()) +
                 ", E_D support = " + std::to_string(dbl.d.E.nnz()));
    rep.absorb(dbl.build_report, "build");

    if (verify) {
        auto tasks = std::vector<std::pair<std::string, std::function<Report()>>>{
            {"pairing", [&] { return verify_pairing(p); }},
            {"wmha", [&] { return verify_wmha(dbl.d, true, opt.seed); }},
            {"structure", [&] { return verify_double_structure(dbl); }},
        };
        Report verified = merge_parallel(std::move(tasks), opt);
        rep.absorb(verified, "verify");
    }
    if (with_integrals) {
        IntegralSpace ia = integrals(p.a);
        IntegralSpace ib = integrals(p.b);
        rep.absorb(double_integrals(dbl, ia, ib), "integrals");
    }
    if (with_qt) {
        Report canon;
        QtStructure qt = canonical_element(dbl, nullptr, &canon);
        rep.absorb(canon, "qt.canonical");
        rep.absorb(verify_qt(qt), "qt.verify");
        Report drep;
        DrinfeldElement del = drinfeld_element(qt, &drep);
        rep.absorb(drep, "qt.drinfeld");
        std::ostringstream os;
        os << "u = ";
        bool first = true;
        for (const auto& [i, c] : del.u.entries()) {
            if (!first) os << " + ";
            os << "(" << c.str() << ")" << dbl.d.alg.label(i);
            first = false;
        }
        rep.pass("qt.element", os.str());
    }
    rep.sort();
    return finish(rep, opt);
}

int run_yd(const std::string& path, int dim, const Options& opt) {
    io::json j = io::load_file(path);
    FiniteGroupoid g = io::groupoid_from_json(j);
    auto failures = g.validate();
    if (!failures.empty()) throw std::runtime_error("input groupoid violates " + failures[0].law);

    Report rep;
    rep.subject = "yetter-drinfeld";
    rep.seed = opt.seed;
    attach_digest(rep, path);
    if (dim > 1) throw std::runtime_error("only dimensions 0 and 1 are enumerable exactly");
    if (dim == 0) {
        rep.pass("yd.dim0", "zero-dimensional enumeration is vacuous");
        return finish(rep, opt);
    }

    WeakHopf w = groupoid_algebra(g);
    IntegralSpace ints = integrals(w);
    if (!ints.faithful) throw std::runtime_error("dual pairing needs faithful integrals");
    WmhaPairing dp = flip_pairing(dual_pairing(w)); // <dual, algebra>
    DoubleAlgebra dbl = build_double(dp);

    auto yd_list = enumerate_one_dim_yd(w);
    auto chars = one_dim_reps(dbl.d.alg);
    rep.pass("yd.count", std::to_string(yd_list.size()) + " one-dimensional compatible structures");
    rep.pass("yd.double-count",
             std::to_string(chars.size()) + " one-dimensional modules over the double");

    // induced actions must biject onto the double characters
    std::vector<SparseVec> induced;
    bool all_modules = true;
    for (const auto& od : yd_list) {
        YdModule v;
        v.dim = 1;
        v.action = LinearMap(1, w.dim());
        for (int i = 0; i < w.dim(); ++i) v.action.set(0, i, od.character.get(i));
        v.coaction = LinearMap(w.dim(), 1);
        for (const auto& [i, c] : od.grouplike.entries()) v.coaction.set(i, 0, c);
        Report sub;
        LinearMap act = yd_to_double_module(dbl, v, &sub);
        if (!sub.ok()) all_modules = false;
        SparseVec chi;
        for (int d = 0; d < dbl.dim(); ++d) chi.set(d, act.get(0, d * 1));
        induced.push_back(chi);
    }
    rep.record("yd.induced-modules", "every compatible structure induces a module over the double",
               all_modules, [] { return std::string("an induced action fails associativity"); });
    bool bijective = induced.size() == chars.size();
    for (const auto& chi : induced) {
        bool found = false;
        for (const auto& c : chars)
            if (c == chi) found = true;
        if (!found) bijective = false;
    }
    for (size_t i = 0; i < induced.size() && bijective; ++i)
        for (size_t k = i + 1; k < induced.size(); ++k)
            if (induced[i] == induced[k]) bijective = false;
    rep.record("yd.bijection", "induced modules biject onto the double's one-dimensional modules",
               bijective, [] { return std::string("counts or images mismatch"); });

    rep.absorb(smash_comparison(dbl), "smash");
    rep.sort();
    return finish(rep, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for groupoid weak Hopf structures and their Drinfeld doubles"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json, "emit machine-readable reports");
    app.add_option("--seed", opt.seed, "seed for sampled scans (recorded in reports)");
    app.add_option("--threads", opt.threads, "parallel check execution")->check(CLI::Range(1, 64));

    std::string path, side = "function", out_path;
    bool verify = false, with_qt = false, with_integrals = false;
    int yd_dim = 1;

    auto* groupoid = app.add_subcommand("groupoid", "groupoid table operations");
    groupoid->fallthrough();
    auto* validate = groupoid->add_subcommand("validate", "check all groupoid laws");
    validate->fallthrough();
    validate->add_option("file", path)->required();

    auto* wha = app.add_subcommand("wha", "build or re-verify a weak Hopf structure");
    wha->fallthrough();
    wha->add_option("file", path)->required();
    wha->add_option("--side", side)->check(CLI::IsMember({"function", "group"}));
    wha->add_flag("--verify", verify);
    wha->add_option("--out", out_path);

    auto* pairing = app.add_subcommand("pairing", "build or verify a pairing");
    pairing->fallthrough();
    pairing->add_option("file", path)->required();
    pairing->add_flag("--verify", verify);
    pairing->add_option("--out", out_path);

    auto* dbl = app.add_subcommand("double", "build and certify the Drinfeld double");
    dbl->fallthrough();
    dbl->add_option("file", path)->required();
    dbl->add_flag("--verify", verify);
    dbl->add_flag("--qt", with_qt);
    dbl->add_flag("--integrals", with_integrals);
    dbl->add_option("--out", out_path);

    auto* yd = app.add_subcommand("yd", "enumerate Yetter-Drinfeld structures");
    yd->fallthrough();
    yd->add_option("file", path)->required();
    yd->add_option("--dim", yd_dim);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_groupoid_validate(path, opt);
        if (wha->parsed()) return run_wha(path, side, verify, out_path, opt);
        if (pairing->parsed()) return run_pairing(path, verify, out_path, opt);
        if (dbl->parsed()) return run_double(path, verify, with_qt, with_integrals, out_path, opt);
        if (yd->parsed()) return run_yd(path, yd_dim, opt);
    } catch (const std::runtime_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
