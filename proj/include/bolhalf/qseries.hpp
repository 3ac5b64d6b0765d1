#pragma once

#include "bolhalf/characters.hpp"
#include "bolhalf/numeric.hpp"

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace bolhalf {

// Exponent indices are integers in units of 1/M. kInfPrec marks an exact
// (finite) expansion; arithmetic with it saturates.
inline constexpr i64 kInfPrec = std::numeric_limits<i64>::max() / 4;

i64 prec_add(i64 a, i64 b);
i64 prec_mul(i64 a, i64 m); // m > 0

// Largest lattice denominator produced by refinement (qs_pow with rational r).
i64 max_lattice_denominator();
void set_max_lattice_denominator(i64 m);

template <class C>
C coeff_from_rational(const Rational& q);

// Truncated Laurent/Puiseux series sum_{i} c_i q^{i/M}, known modulo q^{prec/M}.
template <class C>
class Series {
public:
    using coeff_type = C;

    Series() = default; // exact zero
    Series(i64 M, i64 start, i64 prec, std::vector<C> coeffs);

    static Series zero(i64 M = 1, i64 prec = kInfPrec);
    static Series constant(const C& c, i64 prec = kInfPrec);
    static Series monomial(const C& c, i64 M, i64 index, i64 prec = kInfPrec);

    i64 denom() const { return M_; }
    i64 start() const { return start_; }    // index of coeffs()[0]; equals prec for zero series
    i64 stop() const { return start_ + static_cast<i64>(c_.size()); }
    i64 prec() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return prec_ >= kInfPrec; }
    const std::vector<C>& coeffs() const { return c_; }

    Rational valuation() const;  // start/M; for the zero series the precision (throws if exact zero)
    Rational precision() const;  // prec/M; throws when infinite
    std::string precision_string() const;

    C at(i64 index) const;                 // throws when index >= prec
    C coefficient(const Rational& e) const; // exponent e, throws outside the lattice or beyond precision

    Series refined(i64 M2) const;        // M2 multiple of M
    Series coarsened() const;            // smallest lattice that represents this series exactly
    Series with_prec(i64 prec_index) const; // lower the precision (never raises it)

private:
    i64 M_ = 1;
    i64 start_ = kInfPrec;
    i64 prec_ = kInfPrec;
    std::vector<C> c_;

    void normalize();
};

using ExactSeries = Series<QExact>;
using FloatSeries = Series<Complex>;

// ---- arithmetic ---------------------------------------------------------------
template <class C> Series<C> operator+(const Series<C>& f, const Series<C>& g);
template <class C> Series<C> operator-(const Series<C>& f, const Series<C>& g);
template <class C> Series<C> operator-(const Series<C>& f);
template <class C> Series<C> operator*(const Series<C>& f, const Series<C>& g);
template <class C> Series<C> scale(const Series<C>& f, const C& s);
template <class C> Series<C> qs_invert(const Series<C>& f);
template <class C> Series<C> qs_pow(const Series<C>& f, const Rational& r);
template <class C> Series<C> qs_bol(const Series<C>& f, int m);
template <class C> Series<C> qs_rescale(const Series<C>& f, i64 m);
template <class C> Series<C> coeff_map(const Series<C>& f, const std::function<C(const Rational&)>& w);
template <class C> Series<C> shift(const Series<C>& f, const Rational& e); // multiply by q^e

// Lattice-aligned coefficient comparison below min(precisions) (and below `upto` when given).
template <class C> bool agree(const Series<C>& f, const Series<C>& g, const Rational* upto = nullptr);

FloatSeries to_float(const ExactSeries& f);
FloatSeries to_float(const FloatSeries& f);
Real max_abs_difference(const FloatSeries& f, const FloatSeries& g);

// prod_{n>=1} (1 - q^n)^r to precision P (exact integers), and Delta = q prod (1-q^n)^24.
ExactSeries eta_product_power(i64 r, i64 P);
ExactSeries delta_cusp(i64 P);

// Precision bookkeeping without coefficients: (valuation index, prec index) on a lattice M.
struct Shadow {
    Rational v;
    Rational P; // may be huge to stand in for infinity
};
Shadow shadow_mul(const Shadow& a, const Shadow& b);
Shadow shadow_pow(const Shadow& a, const Rational& r);

// ---- numerical evaluation ----------------------------------------------------------

struct GrowthModel {
    // log|c_n| <= logA + C sqrt(n) + B n for n beyond the stored range (heuristic fit).
    double logA = -std::numeric_limits<double>::infinity();
    double C = 0.0;
    double B = 0.0;
    int points = 0;
    std::string method;
};

GrowthModel fit_growth(const std::vector<double>& exponents, const std::vector<double>& log_abs);
// log of sum_{j>=0} exp(logA + C sqrt(n_j) + (B - lambda) n_j + log_extra(n_j)), n_j = n0 + j*step.
// Returns +inf when the sum diverges.
double log_tail_sum(const GrowthModel& g, double n0, double step, double lambda);

struct EvalResult {
    Complex value;
    Real tail_bound;
};

class SeriesEvaluator {
public:
    explicit SeriesEvaluator(const ExactSeries& f);
    explicit SeriesEvaluator(const FloatSeries& f);

    EvalResult operator()(const Complex& z) const;
    const GrowthModel& growth() const { return growth_; }
    const FloatSeries& series() const { return f_; }

private:
    FloatSeries f_;
    GrowthModel growth_;
    void fit();
};

template <class C>
EvalResult qs_eval(const Series<C>& f, const Complex& z)
{
    return SeriesEvaluator(f)(z);
}

// Runtime-typed series for IO and the CLI.
using AnySeries = std::variant<ExactSeries, FloatSeries>;

} // namespace bolhalf
