#include "doctest.h"

#include "bolhalf/errors.hpp"
#include "bolhalf/inverse_laplace.hpp"
#include "bolhalf/quadrature.hpp"
#include "bolhalf/testfn.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

using namespace bolhalf;

namespace {
using dfn = std::function<double(double)>;
}

TEST_CASE("Gauss-Kronrod")
{
    CHECK(integrate_gk(dfn([](double x) { return x * x; }), 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate_gk(dfn([](double x) { return std::sin(x); }), 0, M_PI).value == doctest::Approx(2.0).epsilon(1e-13));
    auto c = integrate_gk_complex([](double x) { return std::exp(std::complex<double>(0, x)); }, 0, M_PI / 2);
    CHECK(std::abs(c.value - std::complex<double>(1, 1)) < 1e-13);
    auto p = integrate_gk_pieces([](double x) { return std::complex<double>(x < 1 ? 1.0 : 2.0); }, {0, 1, 3});
    CHECK(std::abs(p.value - 5.0) < 1e-13);
    CHECK_THROWS_AS(integrate_gk(dfn([](double x) { return 1 / std::sqrt(x); }), 0, 1, 1e-14, 2), NumericalFailure);
}

TEST_CASE("composite Gauss-Legendre")
{
    auto tab = gauss_legendre_composite({0, 0.5, 2}, 3);
    CHECK(tab.t.size() == 2 * 3 * 20);
    double s = 0, s30 = 0;
    for (std::size_t i = 0; i < tab.t.size(); ++i) {
        s += tab.w[i];
        s30 += tab.w[i] * std::pow(tab.t[i], 30);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s30 == doctest::Approx(std::pow(2.0, 31) / 31).epsilon(1e-12));
}

TEST_CASE("tanh-sinh at working precision")
{
    ScopedPrecision sp(256);
    auto r = tanh_sinh([](const Real& x) { return Complex(mp::sqrt(x)); }, Real(0), Real(1), Real("1e-70"));
    CHECK(abs(r.value - Complex(Real(2) / 3)) < Real("1e-70"));
    auto lg = tanh_sinh([](const Real& x) { return Complex(mp::log(x)); }, Real(0), Real(1), Real("1e-60"));
    CHECK(abs(lg.value + Complex(Real(1))) < Real("1e-60"));

    // Boost's double-precision rule as an independent oracle
    boost::math::quadrature::tanh_sinh<double> ts;
    double oracle = ts.integrate([](double x) { return std::exp(-x * x) * std::cos(3 * x); }, 0.5, 2.0);
    auto g = tanh_sinh([](const Real& x) { return Complex(mp::exp(-x * x) * mp::cos(3 * x)); }, Real("0.5"), Real(2),
                       Real("1e-40"));
    CHECK(g.value.re.convert_to<double>() == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(g.nodes > 0);

    auto lvl = tanh_sinh_level(Real(0), Real(1), 0);
    for (const auto& n : lvl) {
        CHECK(n.t > 0);
        CHECK(n.t < 1);
    }
}

TEST_CASE("test functions")
{
    auto b = TestFunction::bump(Rational(1), Rational(2));
    CHECK(b(1.0) == 0.0);
    CHECK(b(2.5) == 0.0);
    CHECK(b(1.5) > 0);
    CHECK(b.smoothness() > 10);
    {
        ScopedPrecision sp(128);
        CHECK(b(Real("1.3")).convert_to<double>() == doctest::Approx(b(1.3)).epsilon(1e-14));
    }
    for (int m = 1; m <= 4; ++m) {
        double t = 1.37, h = 1e-4;
        double fd = (b.derivative(m - 1, t + h) - b.derivative(m - 1, t - h)) / (2 * h);
        CHECK(b.derivative(m, t) == doctest::Approx(fd).epsilon(1e-6));
    }

    auto ind = TestFunction::parse("indicator:1/2,3");
    CHECK(ind.smoothness() == -1);
    CHECK(ind(1.0) == 1.0);
    CHECK(ind(0.4) == 0.0);
    CHECK(ind.derivatives_available() == 0);

    auto pb = TestFunction::parse("poly-bump:1,2,3");
    CHECK(pb.smoothness() == 2);
    CHECK(pb(1.5) > 0);
    CHECK_THROWS_AS(TestFunction::parse("wobble:1,2"), InvalidArgument);
    CHECK_THROWS_AS(TestFunction::parse("bump:2,1"), InvalidArgument);

    // (phi|_k W_M)(t) = (M t)^{-k} phi(1/(M t)); applying it twice gives M^{-k} phi
    auto f = b.fricke(Rational(3, 2), 4);
    CHECK(f.a() == Rational(1, 8));
    CHECK(f.b() == Rational(1, 4));
    auto ff = f.fricke(Rational(3, 2), 4);
    for (double t : {1.1, 1.5, 1.9})
        CHECK(ff(t) == doctest::Approx(std::pow(4.0, -1.5) * b(t)).epsilon(1e-12));

    auto s = b.shifted(Rational(1, 2));
    CHECK(s(2.0) == doctest::Approx(b(1.5)).epsilon(1e-15));

    auto d = b.scaled_derivative(2, Rational(3), -1);
    CHECK(d(1.4) == doctest::Approx(3 / M_PI * b.derivative(2, 1.4)).epsilon(1e-13));
}

TEST_CASE("Talbot inversion")
{
    ScopedPrecision sp(128);
    auto F = [](const Complex& s) { return Complex(Real(1)) / (s + Complex(Real(1))); };
    auto r = talbot_invert(F, Real(2), 32);
    CHECK(abs(r.value - mp::exp(Real(-2))) < Real("1e-15"));
    CHECK(r.bits > 128);

    // the image of an indicator grows in the left half-plane; Talbot must refuse it
    auto G = [](const Complex& s) {
        return (exp(-s) - exp(-(s * Complex(Real(2))))) / s;
    };
    CHECK_THROWS_AS(talbot_invert(G, Real("1.5"), 32), NumericalFailure);
}

TEST_CASE("Bromwich inversion round trip")
{
    auto b = TestFunction::bump(Rational(1), Rational(2));
    LaplaceTable L(b);
    std::function<cd(cd)> G = [&L](cd s) { return L(s); };
    BromwichInverter inv(G, BromwichOptions{3.0});
    double peak = b(1.5);
    for (double t : {0.5, 1.1, 1.3, 1.5, 1.77, 1.95, 2.5})
        CHECK(std::abs(inv(t) - b(t)) < 1e-8 * peak);
    CHECK(inv.terms() > 10);

    // exact image check of the table on an indicator
    auto ind = TestFunction::indicator(Rational(1), Rational(2));
    LaplaceTable Li(ind);
    for (cd s : {cd(0.3, 0), cd(1, 5), cd(2, -40)}) {
        cd exact = (std::exp(-s) - std::exp(-2.0 * s)) / s;
        CHECK(std::abs(Li(s) - exact) < 1e-12);
    }
}
