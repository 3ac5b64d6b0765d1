#include "doctest.h"

#include "bolhalf/bol_ops.hpp"
#include "bolhalf/errors.hpp"
#include "test_support.hpp"

using namespace bolhalf;
using namespace testsupport;

namespace {
QExact q(i64 a, i64 b = 1) { return QExact(make_rational(a, b)); }

ThetaContext ctx_of(const char* p0, const char* p1) { return ThetaContext::make(make_character(p0), make_character(p1)); }
} // namespace

TEST_CASE("classical_bol")
{
    ExactSeries f(1, -1, kInfPrec, {q(1), q(5), q(1)});
    auto g = classical_bol(f, HalfWeight{6});
    CHECK(g.at(-1) == q(1));
    CHECK(g.at(0) == q(0));
    CHECK(g.at(1) == q(1));
    CHECK(exact_equal(classical_bol(f, HalfWeight{2}), f));
    CHECK_THROWS_AS(classical_bol(f, HalfWeight{3}), InvalidArgument);
    std::mt19937_64 rng(1);
    auto a = random_laurent(rng, -2, 20), b = random_laurent(rng, -1, 20);
    auto lin = classical_bol(a + scale(b, q(3)), HalfWeight{8});
    auto sep = classical_bol(a, HalfWeight{8}) + scale(classical_bol(b, HalfWeight{8}), q(3));
    CHECK(agree(lin, sep));
    // direct summation oracle: coefficient n times n^3
    auto d = classical_bol(a, HalfWeight{8});
    for (i64 n = -2; n < 20; ++n) CHECK(d.at(n) == a.at(n) * q(n * n * n));
}

TEST_CASE("delta_a(theta0) = theta1")
{
    for (auto [p0, p1] : {std::pair{"triv:1", "kron:-4"}, std::pair{"kron:5", "kron:-3"}, std::pair{"kron:8", "kron:-8"}}) {
        auto ctx = ctx_of(p0, p1);
        auto th0 = theta_series<QExact>(ThetaKind::theta0, ctx.psi0, 1, 130).series;
        auto th1 = theta_series<QExact>(ThetaKind::theta1, ctx.psi1, 1, 130).series;
        for (int a = -2; a <= 3; ++a) {
            auto r = delta_a(th0, HalfWeight{3}, Rational(a), ctx, Rational(100));
            CHECK(r.series.precision() == 100);
            Rational upto(100);
            CHECK(agree(r.series, th1, &upto));
            CHECK(r.meta.level == ctx.level);
            CHECK(r.meta.weight.doubled == 3);
        }
    }
}

TEST_CASE("delta_a properties")
{
    auto ctx = ctx_of("kron:5", "kron:-3");
    std::mt19937_64 rng(17);
    auto f = random_laurent(rng, -2, 40), g = random_laurent(rng, -1, 40);
    auto lhs = delta_a(f + scale(g, q(-2, 3)), HalfWeight{5}, Rational(1), ctx, Rational(30)).series;
    auto rhs = delta_a(f, HalfWeight{5}, Rational(1), ctx, Rational(30)).series +
               scale(delta_a(g, HalfWeight{5}, Rational(1), ctx, Rational(30)).series, q(-2, 3));
    CHECK(agree(lhs, rhs));
    // grouping the Leibniz-type products differently gives the same series
    auto th0 = theta_series<QExact>(ThetaKind::theta0, ctx.psi0, 1, 60).series;
    auto th1 = theta_series<QExact>(ThetaKind::theta1, ctx.psi1, 1, 60).series;
    auto A1 = qs_pow(th0, Rational(-2)) * (th1 * f);
    auto A2 = (qs_pow(th0, Rational(-2)) * th1) * f;
    auto alt = qs_pow(th0, Rational(1)) * (qs_bol(A1, 1));
    auto alt2 = (qs_bol(A2, 1) * th0);
    CHECK(agree(alt, alt2));
    auto direct = delta_a(f, HalfWeight{5}, Rational(1), ctx, Rational(30)).series;
    Rational upto(25);
    CHECK(agree(direct, alt, &upto));
    // starvation is reported
    CHECK_THROWS_AS(delta_a(ExactSeries::zero(1, 0), HalfWeight{5}, Rational(3), ctx, Rational(30)), NumericalFailure);
    CHECK_THROWS_AS(delta_a(f, HalfWeight{4}, Rational(0), ctx, Rational(30)), InvalidArgument);
}

TEST_CASE("delta0_closed_form agrees with delta_a at a = 0")
{
    std::mt19937_64 rng(99);
    for (auto [p0, p1] : {std::pair{"kron:5", "kron:-4"}, std::pair{"kron:8", "kron:-3"}}) {
        auto ctx = ctx_of(p0, p1);
        for (int k2 : {5, 7, 9}) {
            i64 n0 = static_cast<i64>(rng() % 6);
            auto f = random_laurent(rng, -n0, 40);
            auto cf = delta0_closed_form(f, HalfWeight{k2}, ctx);
            auto da = delta_a(f, HalfWeight{k2}, Rational(0), ctx, Rational(40)).series;
            CHECK(agree(cf, da));
            CHECK(cf.prec() >= 30);
            // top term: coefficient of q^n contains c_n (n+1)^{k-3/2}; check n = -n0
            int e = (k2 - 3) / 2;
            CHECK(cf.at(-n0) == f.at(-n0) * q(static_cast<i64>(std::pow(1 - n0, e))));
        }
    }
    auto ctx = ctx_of("kron:5", "kron:-4");
    CHECK(delta0_closed_form(ExactSeries::zero(1, 10), HalfWeight{5}, ctx).is_zero());
    CHECK_THROWS_AS(delta0_closed_form(ExactSeries::zero(1, 10), HalfWeight{5}, ctx_of("triv:1", "kron:-4")), InvalidArgument);
    // theta1/theta0^2 has a_{-1} = 1
    auto a = theta_quotient<QExact>(ctx_of("triv:1", "kron:-4"), 10);
    CHECK(a.valuation() == 1); // theta0(triv) = 1/2 + ...
    CHECK(a.at(1) == q(4));
    auto a5 = theta_quotient<QExact>(ctx, 10);
    CHECK(a5.valuation() == -1);
    CHECK(a5.at(-1) == q(1));
}

TEST_CASE("theta_map_half on the Serre-Stark basis of M_{1/2}(100, chi_5)")
{
    auto psi0 = make_character("kron:5");
    auto basis = enumerate_serre_stark(5, psi0);
    REQUIRE(basis.size() == 2);
    auto psi1 = twist_by_minus_one(psi0);
    auto th1 = theta_series<QExact>(ThetaKind::theta1, psi1, 1, 150).series;
    for (auto& [psi, t] : basis) {
        auto b = theta_series<QExact>(ThetaKind::serre_stark, psi, t, 150);
        FormMeta m = b.meta;
        m.level = 100;
        auto img = theta_map_half(b.series, m);
        CHECK(img.meta.level == 1600);
        CHECK(img.meta.weight.doubled == 3);
        if (t == 5) {
            CHECK(img.series.is_zero());
        } else {
            CHECK(agree(img.series, th1));
        }
    }
    CHECK(theta_map_half(ExactSeries::zero(1, 10), FormMeta{HalfWeight{1}, 4, DirichletCharacter(), 0}).series.is_zero());
    CHECK_THROWS_AS(theta_map_half(ExactSeries(1, -1, 5, {q(1)}), FormMeta{HalfWeight{1}, 4, DirichletCharacter(), 0}), InvalidArgument);
}

TEST_CASE("rankin_cohen")
{
    std::mt19937_64 rng(4);
    auto f = random_laurent(rng, 1, 25), g = random_laurent(rng, -1, 25), h = random_laurent(rng, 0, 25);
    auto r0 = rankin_cohen(f, g, 0, HalfWeight{3}, HalfWeight{-2});
    CHECK(r0.two_pi_i_power == 0);
    CHECK(exact_equal(r0.series, f * g));
    auto r1 = rankin_cohen(f, g, 1, HalfWeight{3}, HalfWeight{-2});
    CHECK(r1.two_pi_i_power == 1);
    auto expect = scale(f * qs_bol(g, 1), q(-3, 2)) + scale(qs_bol(f, 1) * g, q(-1));
    CHECK(agree(r1.series, expect));
    auto bl = rankin_cohen(f + h, g, 2, HalfWeight{5}, HalfWeight{7}).series;
    auto br = rankin_cohen(f, g, 2, HalfWeight{5}, HalfWeight{7}).series + rankin_cohen(h, g, 2, HalfWeight{5}, HalfWeight{7}).series;
    CHECK(agree(bl, br));
    CHECK(pochhammer_ratio(Rational(-1), 0, 2) == Rational(0)); // (-1)(0)
    CHECK(pochhammer_ratio(Rational(3, 2), 1, 3) == Rational(5, 2) * Rational(7, 2));
}

TEST_CASE("selberg_lift of Delta")
{
    auto d = delta_cusp(40);
    auto [F, S] = selberg_lift(d, 12);
    CHECK(F.meta.weight.doubled == 25);
    CHECK(F.meta.level == 4);
    CHECK(S.meta.weight.doubled == 48);
    CHECK(S.meta.level == 2);
    CHECK(S.series.valuation() == 2);
    CHECK(S.series.at(2) == q(1));
    auto d2 = qs_rescale(d, 2);
    CHECK(agree(S.series, d * d - scale(d2 * d2, q(2048))));
    CHECK(F.series.at(4) == q(1, 2));
    CHECK_THROWS_AS(selberg_lift(d, 11), InvalidArgument);
}
