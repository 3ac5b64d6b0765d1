#include "doctest.h"

#include "bolhalf/errors.hpp"
#include "bolhalf/series_io.hpp"
#include "test_support.hpp"

using namespace bolhalf;
using namespace testsupport;

TEST_CASE("exact round trip is bit exact")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        i64 M = 1 + static_cast<i64>(rng() % 8);
        i64 v = static_cast<i64>(rng() % 11) - 5;
        auto f = random_laurent(rng, v, v + 30, false, 1000);
        std::vector<QExact> c(f.coeffs());
        for (auto& x : c)
            if (rng() % 3 == 0) x.im = Rational(static_cast<i64>(rng() % 2001) - 1000, 1 + static_cast<i64>(rng() % 999));
        ExactSeries g(M, v, (trial % 5 == 0) ? kInfPrec : v + 30, std::move(c));
        auto back = std::get<ExactSeries>(series_from_string(series_to_string(g)));
        CHECK(exact_equal(back, g));
    }
    auto z = std::get<ExactSeries>(series_from_string(series_to_string(ExactSeries::zero(3, 7))));
    CHECK(z.is_zero());
    CHECK(z.prec() == 7);
    CHECK(z.denom() == 3);
}

TEST_CASE("format layout")
{
    ExactSeries f(2, -1, 4, {QExact(Rational(1, 2)), QExact(0), QExact(Rational(-3))});
    std::string s = series_to_string(f);
    CHECK(s.rfind("2 -1 2 2 1 exact", 0) == 0);
    CHECK(s.find("-1 2 1 2 0 1") != std::string::npos);
    CHECK(s.find("1 2 -3 1 0 1") != std::string::npos);
    CHECK(s.find("0 1 0 1") == std::string::npos); // zero coefficient omitted
    auto inf = series_to_string(ExactSeries::constant(QExact(1)));
    CHECK(inf.find("inf 1") != std::string::npos);
}

TEST_CASE("floating round trip")
{
    ScopedPrecision sp(160);
    std::mt19937_64 rng(8);
    auto e = random_laurent(rng, -2, 20);
    FloatSeries f = to_float(e);
    auto back = std::get<FloatSeries>(series_from_string(series_to_string(f)));
    CHECK(back.start() == f.start());
    CHECK(back.prec() == f.prec());
    CHECK(max_abs_difference(back, f) < Real("1e-45"));
}

TEST_CASE("malformed input is rejected")
{
    for (const char* bad : {"", "0 0 1 5 1 exact\n", "1 0 1 5 1 weird\n", "1 0 1 5 1 exact\n7 1 1 1 0 1\n",
                            "2 0 1 5 1 exact\n1 3 1 1 0 1\n", "1 0 1 5 1 exact\n1 1 1\n", "1 0 1 5 0 exact\n"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(series_from_string(bad), InvalidArgument);
    }
}
