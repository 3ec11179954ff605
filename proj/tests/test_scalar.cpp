#include "doctest.h"

#include "qgd/scalar.hpp"

#include <random>

using namespace qgd;

TEST_CASE("field arithmetic is exact") {
    Scalar one_plus_i(mpq_class(1), mpq_class(1));
    Scalar one_minus_i(mpq_class(1), mpq_class(-1));
    CHECK(one_plus_i * one_minus_i == Scalar(2));

    CHECK(Scalar(2).inv() == Scalar(1, 2));
    CHECK(Scalar(1, 3) + Scalar(1, 6) == Scalar(1, 2));
    CHECK_THROWS_AS(Scalar::zero().inv(), std::domain_error);
}

TEST_CASE("conjugation") {
    Scalar z(mpq_class(1), mpq_class(1));
    CHECK(z.conj() == Scalar(mpq_class(1), mpq_class(-1)));
    CHECK(Scalar(3).conj() == Scalar(3));
    Scalar w(mpq_class(2), mpq_class(-5));
    CHECK(w.conj().conj() == w);
}

TEST_CASE("random field identities") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    auto draw = [&] {
        return Scalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    };
    for (int it = 0; it < 200; ++it) {
        Scalar z = draw(), w = draw();
        CHECK(z * w == w * z);
        CHECK((z * w).conj() == z.conj() * w.conj());
        CHECK((z + w).conj() == z.conj() + w.conj());
        if (!w.is_zero()) CHECK((z * w) / w == z);
    }
}

TEST_CASE("textual round trip") {
    auto parse = [](const std::string& s) {
        auto p = Scalar::parse(s);
        REQUIRE(p.has_value());
        return *p;
    };
    CHECK(parse("1/2+3/4*i") == Scalar(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(parse("-i") == Scalar(mpq_class(0), mpq_class(-1)));
    CHECK(parse("0") == Scalar::zero());
    CHECK(parse("7") == Scalar(7));
    CHECK_FALSE(Scalar::parse("1/0").has_value());
    CHECK_FALSE(Scalar::parse("banana").has_value());

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int it = 0; it < 100; ++it) {
        Scalar z(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
        CHECK(parse(z.str()) == z);
    }
}
