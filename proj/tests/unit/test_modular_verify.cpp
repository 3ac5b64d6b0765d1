#include "doctest.h"

#include "bolhalf/errors.hpp"
#include "bolhalf/modular_verify.hpp"
#include "bolhalf/thetas.hpp"

#include <random>

using namespace bolhalf;

namespace {
Complex cz(double re, double im) { return Complex(Real(re), Real(im)); }

AnySeries theta(ThetaKind k, const char* spec, i64 P)
{
    return AnySeries(theta_series<QExact>(k, make_character(spec), 1, P).series);
}
} // namespace

TEST_CASE("group elements and sampling")
{
    auto gs = sample_gamma0(4, 2, 20, 7);
    REQUIRE(gs.size() == 20);
    CHECK(gs[0] == GroupElement{1, 0, 4, 1});
    for (auto& g : gs) {
        CHECK(g.det() == 1);
        CHECK(g.in_gamma0(4));
        CHECK(g.c > 0);
        CHECK(g.c <= 8);
    }
    CHECK(sample_gamma0(4, 2, 20, 7) == gs);
    CHECK(sample_gamma0(4, 2, 20, 8) != gs);
    auto zs = sample_points(gs, 7);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        Complex czd = Complex(Real(gs[i].c)) * zs[i] + Complex(Real(gs[i].d));
        double m = abs(czd).convert_to<double>();
        CHECK(m >= 0.79);
        CHECK(m <= 1.31);
    }
    GroupElement x{2, 1, 1, 1}, y{1, 3, 0, 1};
    CHECK((x * y) == GroupElement{2, 7, 1, 4});
    ScopedPrecision sp(128);
    Complex z = cz(0.2, 0.9);
    CHECK(abs((x * y).act(z) - x.act(y.act(z))) < Real("1e-35"));
}

TEST_CASE("slash basics")
{
    ScopedPrecision sp(128);
    auto d = AnySeries(delta_cusp(60));
    auto f = evaluator_of(d);
    Complex z = cz(0.13, 0.7);
    auto id = slash_value(f, GroupElement{}, HalfWeight{24}, z);
    CHECK(abs(id.value - f(z).value) < Real("1e-30"));
    auto tr = slash_value(f, GroupElement{1, 1, 0, 1}, HalfWeight{24}, z);
    CHECK(abs(tr.value - f(z).value) < Real("1e-30"));
    CHECK_THROWS_AS(slash_factor(GroupElement{1, 1, 1, 1}, HalfWeight{2}, z), InvalidArgument);
    CHECK_THROWS_AS(slash_factor(GroupElement{1, 0, 2, 1}, HalfWeight{1}, z), InvalidArgument);
    // eps_d^{2k} (c/d) for d = 3 mod 4, k = 1/2: i * (c/d)
    GroupElement g{3, 2, 4, 3};
    REQUIRE(g.det() == 1);
    Complex j = slash_factor(g, HalfWeight{1}, z);
    Complex expect = Complex(Real(0), Real(kronecker(4, 3))) * pow_rational(Complex(Real(4)) * z + Complex(Real(3)), Rational(-1, 2));
    CHECK(abs(j - expect) < Real("1e-35"));
}

TEST_CASE("cocycle consistency, integral weight")
{
    ScopedPrecision sp(128);
    auto d = AnySeries(delta_cusp(120));
    auto f = evaluator_of(d);
    GroupElement g1{1, 0, 1, 1}, g2{2, -1, 1, 0}, g3{1, 1, -1, 0};
    for (auto [a, b] : {std::pair{g1, g2}, std::pair{g2, g1}, std::pair{g1, g3}}) {
        Complex z = cz(0.05, 1.1);
        auto lhs = slash_value(f, a * b, HalfWeight{24}, z);
        PointFunction fa = [&](const Complex& w) { return slash_value(f, a, HalfWeight{24}, w); };
        auto rhs = slash_value(fa, b, HalfWeight{24}, z);
        Real scale = abs(lhs.value) + Real("1e-300");
        CHECK(abs(lhs.value - rhs.value) / scale < Real("1e-9"));
    }
}

TEST_CASE("theta automorphy")
{
    ScopedPrecision sp(128);
    auto gs = sample_gamma0(4, 2, 20, 11);
    auto zs = sample_points(gs, 11);
    auto t0 = theta_series<QExact>(ThetaKind::theta0, make_character("triv:1"), 1, 400);
    auto rep = automorphy_residual(AnySeries(t0.series), t0.meta, gs, zs);
    CHECK(rep.admissible == 20);
    CHECK(rep.max_residual < 1e-10);

    Complex z = cz(0.1, 1.0);
    auto one = slash_value(AnySeries(t0.series), GroupElement{1, 0, 4, 1}, t0.meta, z);
    CHECK(abs(one.value - qs_eval(t0.series, z).value) < Real("1e-10"));

    // the same theta against the wrong weight fails
    FormMeta wrong = t0.meta;
    wrong.weight = HalfWeight{5};
    auto bad = automorphy_residual(AnySeries(t0.series), wrong, gs, zs);
    CHECK(bad.max_residual > 1e-3);

    // a cocycle check for half-integral weight with every factor in Gamma0(4)
    GroupElement g1{1, 0, 4, 1}, g2{1, 1, 0, 1}, g3 = g1 * g2 * g1;
    auto f = evaluator_of(AnySeries(t0.series));
    std::vector<GroupElement> cyc{g1 * g2, g3};
    auto ws = sample_points(cyc, 3);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        const auto& g = cyc[i];
        const Complex& w = ws[i];
        auto lhs = slash_value(f, g, HalfWeight{1}, w);
        CHECK(abs(lhs.value - f(w).value) < Real("1e-10"));
    }

    auto gs64 = sample_gamma0(64, 2, 20, 5);
    auto zs64 = sample_points(gs64, 5);
    auto t1 = theta_series<QExact>(ThetaKind::theta1, make_character("kron:-4"), 1, 3000);
    auto rep1 = automorphy_residual(AnySeries(t1.series), t1.meta, gs64, zs64);
    CHECK(rep1.admissible == 20);
    CHECK(rep1.max_residual < 1e-10);

    // too-short truncation is caught by the tail model
    auto short1 = theta_series<QExact>(ThetaKind::theta1, make_character("kron:-4"), 1, 60);
    CHECK_THROWS_AS(automorphy_residual(AnySeries(short1.series), short1.meta, gs64, zs64), NumericalFailure);
    CHECK_THROWS_AS(automorphy_residual(AnySeries(t1.series), t1.meta, gs, zs), InvalidArgument);
}

TEST_CASE("Fricke slash")
{
    ScopedPrecision sp(128);
    auto t0 = theta_series<QExact>(ThetaKind::theta0, make_character("triv:1"), 1, 400).series;
    auto f = evaluator_of(AnySeries(t0));
    Complex ref = expi(-pi_real() / 4);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
        Complex z = cz(-0.5 + static_cast<double>(rng() % 1000) / 1000.0, 0.3 + static_cast<double>(rng() % 1000) / 1000.0);
        auto w = fricke_slash_value(f, 4, HalfWeight{1}, z);
        Complex ratio = w.value / f(z).value;
        CHECK(abs(ratio - ref) < Real("1e-10"));
    }
    // fixed point z = i/sqrt(M): both evaluation points coincide
    Complex fp(Real(0), 1 / mp::sqrt(Real(4)));
    auto w = fricke_slash_value(f, 4, HalfWeight{1}, fp);
    CHECK(abs(w.value - f(fp).value * pow_rational(Complex(Real(0), Real(1)), Rational(-1, 2))) < Real("1e-30"));
    // double application against direct evaluation
    PointFunction fw = [&](const Complex& z) { return fricke_slash_value(f, 4, HalfWeight{1}, z); };
    Complex z = cz(0.1, 0.6);
    auto twice = fricke_slash_value(fw, 4, HalfWeight{1}, z);
    Complex m = Complex(mp::sqrt(Real(4))) * z;
    Complex m2 = Complex(mp::sqrt(Real(4))) * (-(Complex(Real(1)) / (Complex(Real(4)) * z)));
    Complex direct = f(z).value * pow_rational(m, Rational(-1, 2)) * pow_rational(m2, Rational(-1, 2));
    CHECK(abs(twice.value - direct) < Real("1e-25"));

    // (chi_8, chi_-8) at N = 256
    for (auto kind : {ThetaKind::theta0, ThetaKind::theta1}) {
        const char* spec = kind == ThetaKind::theta0 ? "kron:8" : "kron:-8";
        auto th = theta_series<QExact>(kind, make_character(spec), 1, 2500);
        auto ev = evaluator_of(AnySeries(th.series));
        Complex c = fricke_theta_constants(make_character(spec), kind);
        for (int i = 0; i < 10; ++i) {
            Complex z2 = cz(-0.05 + 0.01 * i, (0.04 + 0.002 * i));
            auto lhs = fricke_slash_value(ev, 256, th.meta.weight, z2);
            Complex rhs = c * ev(z2).value;
            CHECK(Real(abs(lhs.value - rhs) / abs(rhs)) < Real("1e-8"));
        }
    }
}
