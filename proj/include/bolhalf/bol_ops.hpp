#pragma once

#include "bolhalf/form_meta.hpp"
#include "bolhalf/thetas.hpp"

#include <utility>

namespace bolhalf {

// D^{k-1} on expansions: coefficient at exponent n times n^{k-1}; k >= 1 integral.
template <class C>
Series<C> classical_bol(const Series<C>& f, HalfWeight k);

// delta_a^{k-1}(f) = theta0^{3a-2} theta1^{1-a} D^{k-3/2}(theta0^{1-3a} theta1^a f).
// `target_prec` is the requested absolute precision (exponent); the result carries
// min(target, what f's precision supports). `f_char` is the character of f (trivial if null).
template <class C>
TypedSeries<C> delta_a(const Series<C>& f, HalfWeight k, const Rational& a, const ThetaContext& ctx,
                       const Rational& target_prec, const DirichletCharacter* f_char = nullptr);

// Fourier expansion of delta_0^{k-1}(f) as the explicit triple sum with a_n from theta1/theta0^2.
template <class C>
Series<C> delta0_closed_form(const Series<C>& f, HalfWeight k, const ThetaContext& ctx);

// a_n of theta1/theta0^2 (valuation -1) to absolute precision P.
template <class C>
Series<C> theta_quotient(const ThetaContext& ctx, i64 P);

// (delta^{1/2} f)(z) = sum a(n) l(n) n^{1/2} q^n, l(n) = (-1/sqrt n) on squares.
template <class C>
TypedSeries<C> theta_map_half(const Series<C>& f, const FormMeta& meta);

// A series with a symbolic (2 pi i)^power factor attached.
template <class C>
struct TaggedSeries {
    Series<C> series;
    int two_pi_i_power = 0;
};

template <class C>
TaggedSeries<C> rankin_cohen(const Series<C>& f, const Series<C>& g, int n, HalfWeight k, HalfWeight l);

// Gamma(x+n)/Gamma(x+j) = (x+j)(x+j+1)...(x+n-1) for j <= n.
Rational pochhammer_ratio(const Rational& x, int j, int n);

template <class C>
std::pair<TypedSeries<C>, TypedSeries<C>> selberg_lift(const Series<C>& f, int k);

} // namespace bolhalf
