#include "bolhalf/bol_ops.hpp"
#include "bolhalf/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bolhalf {

template <class C>
Series<C> classical_bol(const Series<C>& f, HalfWeight k)
{
    if (!k.is_integral() || k.doubled < 2) throw InvalidArgument("classical Bol operator needs an integral weight k >= 1");
    return qs_bol(f, k.doubled / 2 - 1);
}

namespace {

const Rational kBig = Rational(Integer(1) << 40);

i64 ceil_to_i64(const Rational& q)
{
    Integer n = mp::numerator(q), d = mp::denominator(q);
    Integer fl = n / d;
    if (fl * d != n && n > 0) fl += 1;
    return to_i64(fl);
}

template <class C>
Series<C> theta_of(const ThetaContext& ctx, ThetaKind kind, i64 P)
{
    return theta_series<C>(kind, kind == ThetaKind::theta1 ? ctx.psi1 : ctx.psi0, 1, P).series;
}

i64 theta0_valuation(const ThetaContext& ctx)
{
    return is_zero(ctx.psi0.theta_value(0)) ? 1 : 0;
}

} // namespace

template <class C>
TypedSeries<C> delta_a(const Series<C>& f, HalfWeight k, const Rational& a, const ThetaContext& ctx,
                       const Rational& target_prec, const DirichletCharacter* f_char)
{
    if (!k.is_half_integral() || k.doubled < 3) throw InvalidArgument("delta_a needs k - 3/2 a nonnegative integer");
    if (!ctx.is_real()) throw InvalidArgument("delta_a character bookkeeping needs real psi0, psi1");
    int e = (k.doubled - 3) / 2;
    Rational e0a = 1 - 3 * a, e1a = a, e0b = 3 * a - 2, e1b = 1 - a;
    Rational v0(theta0_valuation(ctx)), v1(1);
    Rational vf = f.is_zero() ? (f.is_exact() ? Rational(0) : f.precision()) : f.valuation();
    Rational Pf = f.is_exact() ? kBig : f.precision();

    auto plan = [&](const Rational& Pt, const Rational& Pff) {
        Shadow T0{v0, Pt}, T1{v1, Pt}, F{vf, Pff};
        Shadow A = shadow_mul(shadow_mul(shadow_pow(T0, e0a), shadow_pow(T1, e1a)), F);
        Shadow X = shadow_mul(shadow_pow(T0, e0b), shadow_pow(T1, e1b));
        return shadow_mul(X, A);
    };
    Rational alpha = plan(Rational(0), kBig).P;
    Shadow full = plan(kBig, Pf);
    Rational out_prec = std::min(target_prec, full.P);
    if (out_prec <= full.v)
        throw NumericalFailure("delta_a: precision starvation (input precision " + f.precision_string() +
                               " yields no output terms below " + to_string(target_prec) + ")");
    i64 Ptheta = std::max<i64>(1, ceil_to_i64(target_prec - alpha) + 1);

    Series<C> th0 = theta_of<C>(ctx, ThetaKind::theta0, Ptheta);
    Series<C> th1 = theta_of<C>(ctx, ThetaKind::theta1, Ptheta);
    Series<C> A = qs_pow(th0, e0a) * qs_pow(th1, e1a) * f;
    Series<C> DA = qs_bol(A, e);
    Series<C> X = qs_pow(th0, e0b) * qs_pow(th1, e1b);
    Series<C> R = X * DA;
    R = R.with_prec(ceil_to_i64(out_prec * R.denom()));

    TypedSeries<C> out;
    out.series = R;
    out.meta.weight = k;
    out.meta.level = ctx.level;
    DirichletCharacter fc = f_char ? *f_char : DirichletCharacter();
    out.meta.character = char_product(char_product(twist_by_minus_one(fc), ctx.psi1), ctx.psi0.conj());
    out.meta.pole_order = pole_order_of(R);
    return out;
}

template <class C>
Series<C> theta_quotient(const ThetaContext& ctx, i64 P)
{
    i64 Pt = P + 3;
    Series<C> th0 = theta_of<C>(ctx, ThetaKind::theta0, Pt);
    Series<C> th1 = theta_of<C>(ctx, ThetaKind::theta1, Pt);
    return (th1 * qs_pow(th0, Rational(-2))).with_prec(P);
}

namespace {

bool all_integral(const std::vector<QExact>& v)
{
    for (const auto& c : v)
        if (c.im != 0 || mp::denominator(c.re) != 1) return false;
    return true;
}

} // namespace

template <class C>
Series<C> delta0_closed_form(const Series<C>& f0, HalfWeight k, const ThetaContext& ctx)
{
    if (!k.is_half_integral() || k.doubled < 3) throw InvalidArgument("delta0_closed_form needs k - 3/2 a nonnegative integer");
    if (ctx.psi0.is_trivial()) throw InvalidArgument("delta0_closed_form needs a nontrivial psi0");
    if (!ctx.is_real()) throw InvalidArgument("delta0_closed_form needs real psi0, psi1");
    if (f0.is_exact()) throw InvalidArgument("delta0_closed_form needs a finite input precision");
    Series<C> f = f0.coarsened();
    if (f.denom() != 1) throw InvalidArgument("delta0_closed_form needs integer exponents");
    int e = (k.doubled - 3) / 2;
    i64 P = f.prec();
    if (f.is_zero()) return Series<C>::zero(1, P);
    i64 lo = f.start();
    // a_j for j < P - lo + 1 covers every index n - l - m with n < P, l >= lo, m >= 1
    Series<C> a = theta_quotient<C>(ctx, P - lo + 1);
    auto a_at = [&](i64 j) -> const C* {
        if (j < a.start() || j >= a.stop()) return nullptr;
        return &a.coeffs()[static_cast<std::size_t>(j - a.start())];
    };
    std::vector<C> out(static_cast<std::size_t>(P - lo), C(0));
    std::vector<int> psi0_sqrt; // psi0(j) for j^2 <= P - lo + 1
    for (i64 j = 0; j * j <= P - lo + 1; ++j) psi0_sqrt.push_back(ctx.psi0.real_value(j));

    bool fast = false;
    std::vector<Integer> aint;
    if constexpr (std::is_same_v<C, QExact>) {
        fast = all_integral(a.coeffs());
        if (fast)
            for (const auto& c : a.coeffs()) aint.push_back(mp::numerator(c.re));
    }
    std::vector<Integer> pw(static_cast<std::size_t>(P - lo + 2));
    for (i64 x = lo; x < P + 1; ++x) pw[static_cast<std::size_t>(x - lo)] = e == 0 ? Integer(1) : mp::pow(Integer(x), static_cast<unsigned>(e));
    auto pw_at = [&](i64 x) -> const Integer& { return pw[static_cast<std::size_t>(x - lo)]; };

    Integer B;
    for (i64 n = lo; n < P; ++n) {
        C acc(0);
        for (i64 l = lo; l <= n; ++l) {
            const C& cl = f.coeffs()[static_cast<std::size_t>(l - lo)];
            if (l >= f.stop() || is_zero(cl)) continue;
            if (fast) {
                mpz_set_ui(B.backend().data(), 0);
                for (i64 j = 1; j * j <= n + 1 - l; ++j) {
                    int s = psi0_sqrt[static_cast<std::size_t>(j)];
                    i64 m = j * j, idx = n - l - m;
                    if (s == 0 || idx < a.start() || idx >= a.stop()) continue;
                    const Integer& aj = aint[static_cast<std::size_t>(idx - a.start())];
                    Integer t = pw_at(l + m) * aj;
                    if (s > 0)
                        mpz_add(B.backend().data(), B.backend().data(), t.backend().data());
                    else
                        mpz_sub(B.backend().data(), B.backend().data(), t.backend().data());
                }
                if (mpz_sgn(B.backend().data()) != 0) acc += cl * C(Rational(B));
            } else {
                C inner(0);
                for (i64 j = 1; j * j <= n + 1 - l; ++j) {
                    int s = psi0_sqrt[static_cast<std::size_t>(j)];
                    i64 m = j * j;
                    const C* aj = a_at(n - l - m);
                    if (s == 0 || !aj) continue;
                    inner += coeff_from_rational<C>(Rational(pw_at(l + m) * s)) * *aj;
                }
                acc += cl * inner;
            }
        }
        out[static_cast<std::size_t>(n - lo)] = std::move(acc);
    }
    return Series<C>(1, lo, P, std::move(out));
}

template <class C>
TypedSeries<C> theta_map_half(const Series<C>& f0, const FormMeta& meta)
{
    if (meta.weight.doubled != 1) throw InvalidArgument("theta_map_half needs weight 1/2 input");
    Series<C> f = f0.coarsened();
    if (!f.is_zero() && (f.denom() != 1 || f.start() < 0))
        throw InvalidArgument("theta_map_half needs integer exponents >= 0 (holomorphic input)");
    const DirichletCharacter m4 = chi_minus4();
    auto w = [&](const Rational& n) -> C {
        if (!is_integer(n)) return C(0);
        i64 v = to_i64(mp::numerator(n));
        if (v <= 0 || !is_square(v)) return C(0); // l(0) = 0
        i64 m = isqrt(v);
        return coeff_from_rational<C>(Rational(m4.real_value(m) * m));
    };
    TypedSeries<C> out;
    out.series = coeff_map<C>(f, w);
    out.meta.weight = HalfWeight{3};
    out.meta.level = 16 * meta.level;
    out.meta.character = meta.character;
    out.meta.pole_order = 0;
    return out;
}

Rational pochhammer_ratio(const Rational& x, int j, int n)
{
    if (j > n) throw InvalidArgument("pochhammer_ratio needs j <= n");
    Rational r(1);
    for (int i = j; i < n; ++i) r *= x + i;
    return r;
}

template <class C>
TaggedSeries<C> rankin_cohen(const Series<C>& f, const Series<C>& g, int n, HalfWeight k, HalfWeight l)
{
    if (n < 0) throw InvalidArgument("Rankin-Cohen order must be nonnegative");
    Rational kk = k.value(), ll = l.value();
    TaggedSeries<C> out;
    out.two_pi_i_power = n;
    bool have = false;
    Integer binom(1);
    for (int j = 0; j <= n; ++j) {
        if (j > 0) binom = binom * (n - j + 1) / j;
        Rational c = Rational(binom) * pochhammer_ratio(kk, j, n) * pochhammer_ratio(ll, n - j, n);
        if ((n - j) % 2) c = -c;
        if (c == 0) continue;
        Series<C> term = scale(qs_bol(f, j) * qs_bol(g, n - j), coeff_from_rational<C>(c));
        out.series = have ? out.series + term : term;
        have = true;
    }
    if (!have) {
        Series<C> fg = f * g;
        out.series = Series<C>::zero(fg.denom(), fg.prec());
    }
    return out;
}

template <class C>
std::pair<TypedSeries<C>, TypedSeries<C>> selberg_lift(const Series<C>& f, int k)
{
    if (k <= 0 || k % 2) throw InvalidArgument("Selberg lift needs a positive even weight k");
    if (f.is_exact()) throw InvalidArgument("Selberg lift needs a finite input precision");
    Series<C> f4 = qs_rescale(f, 4);
    i64 Pt = ceil_to_i64(f4.precision()) + 1;
    Series<C> th0 = theta_series<C>(ThetaKind::theta0, DirichletCharacter(), 1, Pt).series;
    TypedSeries<C> F;
    F.series = f4 * th0;
    F.meta.weight = HalfWeight{2 * k + 1};
    F.meta.level = 4;
    F.meta.character = DirichletCharacter();
    F.meta.pole_order = pole_order_of(F.series);
    Series<C> f2 = qs_rescale(f, 2);
    TypedSeries<C> S;
    C two_pow = coeff_from_rational<C>(Rational(mp::pow(Integer(2), static_cast<unsigned>(k - 1))));
    S.series = f * f - scale(f2 * f2, two_pow);
    S.meta.weight = HalfWeight{4 * k};
    S.meta.level = 2;
    S.meta.character = DirichletCharacter();
    S.meta.pole_order = pole_order_of(S.series);
    return {F, S};
}

#define BOLHALF_INSTANTIATE_OPS(C)                                                                                  \
    template Series<C> classical_bol(const Series<C>&, HalfWeight);                                               \
    template TypedSeries<C> delta_a(const Series<C>&, HalfWeight, const Rational&, const ThetaContext&,            \
                                    const Rational&, const DirichletCharacter*);                                   \
    template Series<C> delta0_closed_form(const Series<C>&, HalfWeight, const ThetaContext&);                     \
    template Series<C> theta_quotient(const ThetaContext&, i64);                                                   \
    template TypedSeries<C> theta_map_half(const Series<C>&, const FormMeta&);                                    \
    template TaggedSeries<C> rankin_cohen(const Series<C>&, const Series<C>&, int, HalfWeight, HalfWeight);       \
    template std::pair<TypedSeries<C>, TypedSeries<C>> selberg_lift(const Series<C>&, int);

BOLHALF_INSTANTIATE_OPS(QExact)
BOLHALF_INSTANTIATE_OPS(Complex)

} // namespace bolhalf
