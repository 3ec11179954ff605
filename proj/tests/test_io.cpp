#include "doctest.h"

#include "qgd/io.hpp"
#include "qgd/qt.hpp"

using namespace qgd;

TEST_CASE("scalar and sparse json round trips") {
    Scalar z(mpq_class(-3, 7), mpq_class(5, 2));
    CHECK(io::scalar_from_json(io::scalar_to_json(z)) == z);
    SparseVec v;
    v.set(3, z);
    v.set(11, Scalar(2));
    CHECK(io::sparse_from_json(io::sparse_to_json(v)) == v);
    LinearMap m(4, 5);
    m.set(2, 3, z);
    m.set(0, 0, Scalar(1, 9));
    CHECK(io::map_from_json(io::map_to_json(m)) == m);
}

TEST_CASE("groupoid constructors from json") {
    auto j = io::json::parse(R"({"type":"pair","points":3})");
    CHECK(io::groupoid_from_json(j).arrow_count() == 9);
    auto j2 = io::json::parse(R"({"type":"disjoint_union","parts":[{"type":"cyclic","n":2},{"type":"trivial"}]})");
    auto g2 = io::groupoid_from_json(j2);
    CHECK(g2.arrow_count() == 3);
    CHECK(g2.validate().empty());
    auto j3 = io::json::parse(
        R"({"units":["u"],"arrows":[{"id":"e","src":"u","tgt":"u"}],
            "compose":[["e","e","e"]],"inverse":[["e","e"]]})");
    CHECK(io::groupoid_from_json(j3).validate().empty());
    CHECK_THROWS(io::groupoid_from_json(io::json::parse(R"({"type":"nope"})")));
}

TEST_CASE("weak hopf dumps round trip and re-verify identically") {
    auto g = FiniteGroupoid::pair_groupoid(2);
    WeakHopf w = function_algebra(g);
    WeakHopf back = io::weakhopf_from_json(io::weakhopf_to_json(w));
    CHECK(back.delta == w.delta);
    CHECK(back.counit == w.counit);
    CHECK(back.antipode == w.antipode);
    CHECK(back.E == w.E);
    CHECK(back.alg.structure() == w.alg.structure());
    REQUIRE(back.alg.star().has_value());

    Report r1 = verify_wmha(w);
    Report r2 = verify_wmha(back);
    CHECK(r1.to_json() == r2.to_json());
    CHECK(r2.ok());
}

TEST_CASE("pairing and double dumps reload") {
    auto g = FiniteGroupoid::cyclic(2);
    WmhaPairing p = canonical_pairing(g);
    WmhaPairing back = io::pairing_from_json(io::pairing_to_json(p), ".");
    CHECK(back.form == p.form);
    CHECK(verify_pairing(back).ok());

    DoubleAlgebra dbl = build_double(p);
    DoubleAlgebra dback = io::double_from_json(io::double_to_json(dbl), ".");
    CHECK(dback.dim() == dbl.dim());
    CHECK(dback.d.delta == dbl.d.delta);
    CHECK(dback.d.antipode == dbl.d.antipode);
    CHECK(dback.d.E == dbl.d.E);
    CHECK(dback.proj == dbl.proj);
    CHECK(verify_wmha(dback.d).ok());
    // corrupt the dump: the re-verification must fail
    io::json bad = io::double_to_json(dbl);
    bad["double"]["antipode"]["columns"][0][1] = io::sparse_to_json(SparseVec::unit(1));
    DoubleAlgebra corrupted = io::double_from_json(bad, ".");
    CHECK_FALSE(verify_wmha(corrupted.d).ok());
}

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
