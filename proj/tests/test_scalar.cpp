#include <catch2/catch_amalgamated.hpp>

#include "pvirh/random.hpp"
#include "pvirh/scalar.hpp"

using namespace pvirh;

TEST_CASE("gaussian rational field axioms on random samples") {
    SampleRng rng(20240101);
    for (int n = 0; n < 200; ++n) {
        auto a = rng.scalar<GaussianRational>(true);
        auto b = rng.scalar<GaussianRational>(true);
        auto c = rng.scalar<GaussianRational>(true);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("division by exact zero raises PoleError") {
    GaussianRational one{Rational(1)};
    CHECK_THROWS_AS(one / GaussianRational{}, PoleError);
}

TEST_CASE("rational_from_double is exact for dyadics") {
    CHECK(rational_from_double(0.5) == Rational(1) / 2);
    CHECK(rational_from_double(-3.25) == Rational(-13) / 4);
    CHECK(rational_from_double(0.0) == Rational(0));
    // generic doubles round-trip exactly through the rational
    SampleRng rng(7);
    for (int n = 0; n < 100; ++n) {
        double x = rng.uniform_real(-10.0, 10.0);
        CHECK(rational_from_double(x).convert_to<double>() == x);
    }
}

TEST_CASE("exact scalar string round trip") {
    SampleRng rng(42);
    for (int n = 0; n < 200; ++n) {
        auto a = rng.scalar<GaussianRational>(n % 2 == 0);
        CHECK(parse_scalar<GaussianRational>(to_string(a)) == a);
    }
    CHECK(parse_scalar<GaussianRational>("1/2") == GaussianRational{Rational(1) / 2});
    CHECK(parse_scalar<GaussianRational>("-3/4+2/5*i") ==
          GaussianRational{Rational(-3) / 4, Rational(2) / 5});
    CHECK(parse_scalar<GaussianRational>("i") == GaussianRational{Rational(0), Rational(1)});
    CHECK(parse_scalar<GaussianRational>("-i") == GaussianRational{Rational(0), Rational(-1)});
}

TEST_CASE("approx scalar string round trip") {
    SampleRng rng(43);
    for (int n = 0; n < 200; ++n) {
        Complex z{rng.uniform_real(-5, 5), n % 3 == 0 ? 0.0 : rng.uniform_real(-5, 5)};
        CHECK(parse_scalar<Complex>(to_string(z)) == z);
    }
    CHECK(parse_scalar<Complex>("1.5-2e-3*i") == Complex{1.5, -2e-3});
}

TEST_CASE("backends reject each other's grammar") {
    CHECK_THROWS_AS(parse_scalar<GaussianRational>("0.5"), Error);
    CHECK_THROWS_AS(parse_scalar<GaussianRational>("1e-3"), Error);
    CHECK_THROWS_AS(parse_scalar<Complex>("1/2"), Error);
    CHECK_THROWS_AS(parse_scalar<Complex>("1/2+1/3*i"), Error);
    // integers are neutral: valid in both
    CHECK(parse_scalar<GaussianRational>("7") == GaussianRational{Rational(7)});
    CHECK(parse_scalar<Complex>("7") == Complex{7.0, 0.0});
}

TEST_CASE("seeded sampling is reproducible") {
    SampleRng a(99), b(99);
    for (int n = 0; n < 50; ++n) CHECK(a.rational() == b.rational());
}
