#include "doctest.h"

#include "bolhalf/errors.hpp"
#include "bolhalf/lseries.hpp"
#include "bolhalf/thetas.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

using namespace bolhalf;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// sum_n c_n tau_{conj chi}(n) (L phi)(2 pi n / D) term by term with the double-precision transform
cd direct_lseries(const ExactSeries& f, const DirichletCharacter& chi, const TestFunction& phi, i64 n_max)
{
    const i64 D = chi.modulus();
    cd s = 0;
    for (i64 n = std::max<i64>(f.start(), 0); n < std::min(n_max, f.prec()); ++n) {
        QExact c = f.at(n);
        if (is_zero(c)) continue;
        cd cc(c.re.convert_to<double>(), c.im.convert_to<double>());
        s += cc * to_cd(gauss_sum(chi.conj(), n)) * laplace(phi, cd(2 * M_PI * n / D, 0));
    }
    return s;
}

// J_nu(z) = sum_m (-1)^m (z/2)^{2m+nu} / (m! Gamma(m+nu+1)) for half-integer nu
Real ascending_bessel(const Rational& nu, const Real& z)
{
    // Gamma(nu + 1) from Gamma(1/2) by the recurrence
    Real g = mp::sqrt(pi_real());
    Rational x(1, 2);
    Rational target = nu + 1;
    while (x < target) {
        g *= to_real(x);
        x += 1;
    }
    while (x > target) {
        x -= 1;
        g /= to_real(x);
    }
    Real half = z / 2, h2 = half * half;
    Real term = mp::pow(half, to_real(nu)) / g, sum = term;
    Real nur = to_real(nu);
    for (int m = 1; m < 400; ++m) {
        term *= -h2 / (Real(m) * (Real(m) + nur));
        sum += term;
        if (abs(term) < abs(sum) * mp::pow(Real(2), -static_cast<int>(working_bits()) - 8)) break;
    }
    return sum;
}

} // namespace

TEST_CASE("Laplace transforms")
{
    auto ind = TestFunction::indicator(Rational(1), Rational(3));
    for (cd s : {cd(0.7, 0), cd(2, 3), cd(0.1, -20)}) {
        cd exact = (std::exp(-s) - std::exp(-3.0 * s)) / s;
        CHECK(std::abs(laplace(ind, s) - exact) < 1e-12 * std::abs(exact));
    }
    auto b = TestFunction::bump(Rational(1), Rational(2));
    {
        ScopedPrecision sp(160);
        for (cd s : {cd(1.5, 0), cd(3, 7)}) {
            Complex m = laplace_mp(b, Complex(s), 1e-40);
            CHECK(rel(to_cd(m), laplace(b, s)) < 1e-12);
        }
    }
    cd s(2, 5);
    CHECK(std::abs(laplace(b, std::conj(s)) - std::conj(laplace(b, s))) < 1e-14);
    auto sh = b.shifted(Rational(1, 3));
    CHECK(rel(laplace(sh, s), std::exp(-s / 3.0) * laplace(b, s)) < 1e-12);
}

TEST_CASE("L-series values against direct sums")
{
    ScopedPrecision sp(160);
    auto b = TestFunction::bump(Rational(1), Rational(2));

    // a single term: L = (L phi)(2 pi n)
    ExactSeries one(1, 2, kInfPrec, {QExact(1)});
    auto v1 = lseries_value(AnySeries(one), DirichletCharacter(), b);
    CHECK(rel(to_cd(v1.value), laplace(b, cd(4 * M_PI, 0))) < 1e-12);
    CHECK(v1.tail_bound == 0.0);

    auto th = theta_series<QExact>(ThetaKind::theta0, DirichletCharacter(), 1, 200).series;
    auto lv = lseries_value(AnySeries(th), DirichletCharacter(), b);
    CHECK(rel(to_cd(lv.value), direct_lseries(th, DirichletCharacter(), b, 200)) < 1e-12);
    CHECK(lv.tail_bound < 1e-12);
    CHECK(lv.rel_error() < 1e-10);

    auto chi = make_character("kron:5");
    auto lt = lseries_value(AnySeries(th), chi, b);
    CHECK(rel(to_cd(lt.value), direct_lseries(th, chi, b, 200)) < 1e-11);

    // too few coefficients for a test function reaching t = 0.01
    auto nearzero = TestFunction::bump(Rational(1, 100), Rational(1, 50));
    CHECK_THROWS_AS(lseries_value(AnySeries(th), DirichletCharacter(), nearzero), NumericalFailure);
    auto lat2 = ExactSeries(2, 0, 10, {QExact(1)});
    CHECK_THROWS_AS(lseries_value(AnySeries(lat2), DirichletCharacter(), b), InvalidArgument);
}

TEST_CASE("functional equation for Delta")
{
    ScopedPrecision sp(192);
    auto d = delta_cusp(80);
    FormMeta meta{HalfWeight{24}, 1, DirichletCharacter(), 0};
    auto b = TestFunction::bump(Rational(1), Rational(2));
    for (const char* spec : {"triv:1", "kron:-3", "kron:5"}) {
        auto chi = make_character(spec);
        auto r = fe_residual(AnySeries(d), AnySeries(d), meta, chi, b);
        CHECK(r.residual < 1e-10);
        CHECK(r.error_estimate < 1e-8);
    }
    // a wrong weight breaks it
    FormMeta wrong{HalfWeight{20}, 1, DirichletCharacter(), 0};
    auto r = fe_residual(AnySeries(d), AnySeries(d), wrong, DirichletCharacter(), b);
    CHECK(r.residual > 1e-3);
    CHECK_THROWS_AS(fe_residual(AnySeries(d), AnySeries(d), FormMeta{HalfWeight{24}, 3, DirichletCharacter(), 0},
                                make_character("kron:-3"), b),
                    InvalidArgument);
}

TEST_CASE("fe constants")
{
    FormMeta m{HalfWeight{24}, 1, DirichletCharacter(), 0};
    CHECK(abs(fe_constant(m, DirichletCharacter()) - Complex(Real(1))) < Real("1e-30"));
    FormMeta h{HalfWeight{1}, 4, DirichletCharacter(), 0};
    CHECK(fe_rhs_character(h, make_character("kron:-3")).modulus() == 3);
}

TEST_CASE("alpha_D: derivative form matches the multiplier")
{
    auto b = TestFunction::bump(Rational(1), Rational(2));
    HFunction one = HFunction::parse("one", Rational(3));
    for (i64 D : {1, 3}) {
        auto lap = alpha_apply(b, D, Rational(3), one, AlphaMode::laplace_domain);
        auto tim = alpha_apply(b, D, Rational(3), one, AlphaMode::time_domain);
        CHECK(tim.method == "derivative");
        REQUIRE(tim.as_test_function.has_value());
        for (cd p : {cd(0.5, 0), cd(2, 3), cd(1, -9)})
            CHECK(rel(laplace(*tim.as_test_function, p), lap.laplace(p)) < 1e-10);
    }
    auto z = alpha_apply(b, 1, Rational(3), HFunction::parse("zero", Rational(3)), AlphaMode::time_domain);
    CHECK(z.time(1.5) == 0.0);
    CHECK_THROWS_AS(HFunction::parse("nope", Rational(3)), InvalidArgument);
    CHECK_THROWS_AS(alpha_apply(TestFunction::indicator(Rational(1), Rational(2)), 1, Rational(3), one,
                                AlphaMode::time_domain, AlphaMethod::derivative),
                    InvalidArgument);
}

TEST_CASE("alpha_D: half-integral order, Abel against Bromwich")
{
    auto b = TestFunction::bump(Rational(1), Rational(2));
    Rational k(5, 2);
    HFunction one = HFunction::parse("one", k);
    auto abel = alpha_apply(b, 1, k, one, AlphaMode::time_domain, AlphaMethod::abel);
    auto brom = alpha_apply(b, 1, k, one, AlphaMode::time_domain, AlphaMethod::bromwich, 6.0);
    CHECK(abel.time(0.9) == 0.0);
    double scale = 0;
    for (double t = 1.05; t < 2; t += 0.1) scale = std::max(scale, std::abs(abel.time(t)));
    for (double t : {1.2, 1.5, 1.8, 2.3, 3.0, 3.9, 4.1, 5.5})
        CHECK(std::abs(abel.time(t) - brom.time(t)) < 1e-6 * scale);
    // continuity where the far-field formula takes over
    CHECK(std::abs(abel.time(4.0 - 1e-9) - abel.time(4.0 + 1e-9)) < 1e-8 * scale);
}

TEST_CASE("b_factor")
{
    SCParams p;
    p.k = HalfWeight{6};
    CHECK(std::abs(b_factor(p) - cd(1)) < 1e-15);
    p.k = HalfWeight{4};
    CHECK(std::abs(b_factor(p) - cd(-1)) < 1e-15);
    p.k = HalfWeight{5};
    p.N = p.Np = 4;
    CHECK(std::abs(b_factor(p) - cd(0.125)) < 1e-15);
    p.Np = 8;
    p.D = 3;
    CHECK(std::isfinite(std::abs(b_factor(p))));
    p.Np = 6;
    CHECK_THROWS_AS(b_factor(p), InvalidArgument);
    p.Np = 3;
    CHECK_THROWS_AS(b_factor(p), InvalidArgument);
}

TEST_CASE("SC integral analogue with h = 1")
{
    auto b = TestFunction::bump(Rational(1), Rational(2));
    std::vector<double> ps;
    for (int i = 1; i <= 10; ++i) ps.push_back(0.5 * i);
    for (int k2 : {4, 6}) {
        for (i64 D : {1, 3}) {
            SCParams prm;
            prm.k = HalfWeight{k2};
            prm.N = prm.Np = 2;
            prm.D = D;
            prm.h = HFunction::parse("one", prm.k.value());
            auto rep = sc_residual(prm, b, ps);
            CHECK(rep.alpha_method == "bromwich");
            CHECK(rep.max_residual < 1e-4);
            auto exact = sc_residual(prm, b, ps, AlphaMethod::derivative);
            CHECK(exact.max_residual < 1e-9);
        }
    }
    // a wrong constant is detected
    SCParams bad;
    bad.k = HalfWeight{6};
    bad.lambda = 2.0;
    bad.h = HFunction::parse("one", Rational(3));
    CHECK(sc_residual(bad, b, ps, AlphaMethod::derivative).max_residual > 0.1);
}

TEST_CASE("Bessel functions of half-integer order")
{
    ScopedPrecision sp(256);
    for (int n = 0; n <= 5; ++n) {
        for (int sign : {1, -1}) {
            Rational nu = sign > 0 ? Rational(2 * n + 1, 2) : Rational(-(2 * n + 1), 2);
            for (const char* zs : {"0.05", "0.7", "3.25", "11", "19.5"}) {
                Real z(zs);
                Real a = bessel_half_mp(n, sign, z), o = ascending_bessel(nu, z);
                CHECK(abs(a - o) <= Real("1e-60") * Real(std::max(abs(o), Real(1))));
                double bd = boost::math::cyl_bessel_j(nu.convert_to<double>(), z.convert_to<double>());
                CHECK(bessel_half(n, sign, z.convert_to<double>()) == doctest::Approx(bd).epsilon(1e-12).scale(1));
            }
        }
    }
    CHECK_THROWS_AS(bessel_half(-1, 1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(bessel_half(1, 1, 0.0), InvalidArgument);
}
