#include "bolhalf/qseries.hpp"
#include "bolhalf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace bolhalf {

namespace {
i64 g_max_lattice = 24;
}

i64 max_lattice_denominator() { return g_max_lattice; }
void set_max_lattice_denominator(i64 m)
{
    if (m < 1) throw InvalidArgument("maximum lattice denominator must be positive");
    g_max_lattice = m;
}

i64 prec_add(i64 a, i64 b)
{
    if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
    return a + b;
}

i64 prec_mul(i64 a, i64 m)
{
    if (a >= kInfPrec) return kInfPrec;
    return a * m;
}

template <>
QExact coeff_from_rational<QExact>(const Rational& q)
{
    return QExact(q);
}
template <>
Complex coeff_from_rational<Complex>(const Rational& q)
{
    return Complex(to_real(q));
}

// ---- Series basics -------------------------------------------------------------

template <class C>
Series<C>::Series(i64 M, i64 start, i64 prec, std::vector<C> coeffs)
    : M_(M), start_(start), prec_(prec), c_(std::move(coeffs))
{
    if (M < 1) throw InvalidArgument("lattice denominator must be positive");
    normalize();
}

template <class C>
void Series<C>::normalize()
{
    if (prec_ < kInfPrec) {
        if (prec_ <= start_) {
            c_.clear();
        } else if (static_cast<i64>(c_.size()) > prec_ - start_) {
            c_.resize(static_cast<std::size_t>(prec_ - start_));
        }
    }
    std::size_t lead = 0;
    while (lead < c_.size() && bolhalf::is_zero(c_[lead])) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        start_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        start_ += static_cast<i64>(lead);
    }
    while (!c_.empty() && bolhalf::is_zero(c_.back())) c_.pop_back();
}

template <class C>
Series<C> Series<C>::zero(i64 M, i64 prec)
{
    return Series(M, prec, prec, {});
}

template <class C>
Series<C> Series<C>::constant(const C& c, i64 prec)
{
    return Series(1, 0, prec, {c});
}

template <class C>
Series<C> Series<C>::monomial(const C& c, i64 M, i64 index, i64 prec)
{
    return Series(M, index, prec, {c});
}

template <class C>
Rational Series<C>::valuation() const
{
    if (start_ >= kInfPrec) throw InvalidArgument("valuation of the exact zero series is infinite");
    return Rational(Integer(start_), Integer(M_));
}

template <class C>
Rational Series<C>::precision() const
{
    if (prec_ >= kInfPrec) throw InvalidArgument("series is exact (infinite precision)");
    return Rational(Integer(prec_), Integer(M_));
}

template <class C>
std::string Series<C>::precision_string() const
{
    if (prec_ >= kInfPrec) return "inf";
    return to_string(precision());
}

template <class C>
C Series<C>::at(i64 index) const
{
    if (index >= prec_) throw InvalidArgument("coefficient requested beyond the series precision");
    if (index < start_ || index >= stop()) return C(0);
    return c_[static_cast<std::size_t>(index - start_)];
}

template <class C>
C Series<C>::coefficient(const Rational& e) const
{
    Rational idx = e * M_;
    if (!is_integer(idx)) {
        if (prec_ < kInfPrec && e >= precision()) throw InvalidArgument("coefficient requested beyond the series precision");
        return C(0);
    }
    return at(to_i64(mp::numerator(idx)));
}

template <class C>
Series<C> Series<C>::refined(i64 M2) const
{
    if (M2 % M_ != 0) throw InvalidArgument("refined lattice must be a multiple of the current one");
    if (M2 == M_) return *this;
    i64 r = M2 / M_;
    std::vector<C> out;
    if (!c_.empty()) {
        out.assign((c_.size() - 1) * static_cast<std::size_t>(r) + 1, C(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i * static_cast<std::size_t>(r)] = c_[i];
    }
    i64 st = start_ >= kInfPrec ? kInfPrec : start_ * r;
    return Series(M2, st, prec_mul(prec_, r), std::move(out));
}

template <class C>
Series<C> Series<C>::coarsened() const
{
    i64 g = M_;
    if (prec_ < kInfPrec) g = std::gcd(g, prec_);
    for (std::size_t i = 0; i < c_.size() && g > 1; ++i)
        if (!bolhalf::is_zero(c_[i])) g = std::gcd(g, start_ + static_cast<i64>(i));
    if (g <= 1) return *this;
    std::vector<C> out;
    for (std::size_t i = 0; i < c_.size(); i += static_cast<std::size_t>(g)) out.push_back(c_[i]);
    i64 st = start_ >= kInfPrec ? kInfPrec : start_ / g;
    return Series(M_ / g, st, prec_ >= kInfPrec ? kInfPrec : prec_ / g, std::move(out));
}

template <class C>
Series<C> Series<C>::with_prec(i64 p) const
{
    return Series(M_, start_ >= kInfPrec ? std::min(p, prec_) : start_, std::min(p, prec_), c_);
}

// ---- convolution kernels ------------------------------------------------------------

namespace {

struct IntVec {
    std::vector<Integer> re, im;
    Integer den{1};
    bool has_im = false;
};

IntVec integerize(const std::vector<QExact>& a, bool& ok)
{
    IntVec v;
    std::size_t orig_bits = 0;
    for (const auto& c : a) {
        if (c.im != 0) v.has_im = true;
        mpz_lcm(v.den.backend().data(), v.den.backend().data(), mpq_denref(c.re.backend().data()));
        mpz_lcm(v.den.backend().data(), v.den.backend().data(), mpq_denref(c.im.backend().data()));
        orig_bits += mpz_sizeinbase(mpq_numref(c.re.backend().data()), 2) + mpz_sizeinbase(mpq_denref(c.re.backend().data()), 2);
    }
    std::size_t den_bits = mpz_sizeinbase(v.den.backend().data(), 2);
    ok = den_bits * a.size() <= 4 * orig_bits + 64 * a.size();
    if (!ok) return v;
    v.re.resize(a.size());
    if (v.has_im) v.im.resize(a.size());
    Integer t;
    for (std::size_t j = 0; j < a.size(); ++j) {
        auto scale = [&](const Rational& q, Integer& out) {
            if (q == 0) return;
            mpz_divexact(t.backend().data(), v.den.backend().data(), mpq_denref(q.backend().data()));
            mpz_mul(out.backend().data(), t.backend().data(), mpq_numref(q.backend().data()));
        };
        scale(a[j].re, v.re[j]);
        if (v.has_im) scale(a[j].im, v.im[j]);
    }
    return v;
}

std::vector<std::size_t> nonzero_positions(const std::vector<Integer>& a)
{
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (mpz_sgn(a[i].backend().data()) != 0) nz.push_back(i);
    return nz;
}

void conv_int(const std::vector<Integer>& a, const std::vector<Integer>& b, std::vector<Integer>& out, bool subtract)
{
    auto na = nonzero_positions(a), nb = nonzero_positions(b);
    std::size_t n_out = out.size();
    for (std::size_t j : na) {
        if (j >= n_out) break;
        const mpz_t& aj = a[j].backend().data();
        for (std::size_t i : nb) {
            std::size_t k = i + j;
            if (k >= n_out) break;
            if (subtract)
                mpz_submul(out[k].backend().data(), aj, b[i].backend().data());
            else
                mpz_addmul(out[k].backend().data(), aj, b[i].backend().data());
        }
    }
}

std::vector<QExact> conv_trunc(const std::vector<QExact>& a, const std::vector<QExact>& b, std::size_t n_out)
{
    n_out = std::min(n_out, a.empty() || b.empty() ? 0 : a.size() + b.size() - 1);
    std::vector<QExact> out(n_out);
    if (n_out == 0) return out;
    bool oka = false, okb = false;
    IntVec A = integerize(a, oka);
    IntVec B = oka ? integerize(b, okb) : IntVec{};
    if (oka && okb) {
        Integer den = A.den * B.den;
        std::vector<Integer> re(n_out);
        conv_int(A.re, B.re, re, false);
        if (A.has_im && B.has_im) conv_int(A.im, B.im, re, true);
        std::vector<Integer> im;
        if (A.has_im || B.has_im) {
            im.resize(n_out);
            if (B.has_im) conv_int(A.re, B.im, im, false);
            if (A.has_im) conv_int(A.im, B.re, im, false);
        }
        for (std::size_t k = 0; k < n_out; ++k) {
            if (mpz_sgn(re[k].backend().data()) != 0) out[k].re = Rational(re[k], den);
            if (!im.empty() && mpz_sgn(im[k].backend().data()) != 0) out[k].im = Rational(im[k], den);
        }
        return out;
    }
    std::vector<std::size_t> nza, nzb;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i])) nza.push_back(i);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!is_zero(b[i])) nzb.push_back(i);
    for (std::size_t j : nza) {
        if (j >= n_out) break;
        for (std::size_t i : nzb) {
            if (i + j >= n_out) break;
            out[i + j] += a[j] * b[i];
        }
    }
    return out;
}

std::vector<Complex> conv_trunc(const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t n_out)
{
    n_out = std::min(n_out, a.empty() || b.empty() ? 0 : a.size() + b.size() - 1);
    std::vector<Complex> out(n_out);
    if (n_out == 0) return out;
    std::vector<std::size_t> nza, nzb;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i])) nza.push_back(i);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!is_zero(b[i])) nzb.push_back(i);
    Real t;
    for (std::size_t j : nza) {
        if (j >= n_out) break;
        const Complex& x = a[j];
        bool xr = x.im == 0;
        for (std::size_t i : nzb) {
            std::size_t k = i + j;
            if (k >= n_out) break;
            const Complex& y = b[i];
            Complex& o = out[k];
            mpfr_fma(o.re.backend().data(), x.re.backend().data(), y.re.backend().data(), o.re.backend().data(), MPFR_RNDN);
            if (!xr) {
                mpfr_mul(t.backend().data(), x.im.backend().data(), y.im.backend().data(), MPFR_RNDN);
                mpfr_sub(o.re.backend().data(), o.re.backend().data(), t.backend().data(), MPFR_RNDN);
                mpfr_fma(o.im.backend().data(), x.im.backend().data(), y.re.backend().data(), o.im.backend().data(), MPFR_RNDN);
            }
            mpfr_fma(o.im.backend().data(), x.re.backend().data(), y.im.backend().data(), o.im.backend().data(), MPFR_RNDN);
        }
    }
    return out;
}

template <class C>
std::vector<C> inverse_trunc(const std::vector<C>& u, std::size_t n)
{
    std::vector<C> g{C(1) / u[0]};
    std::size_t m = 1;
    while (m < n) {
        std::size_t m2 = std::min(2 * m, n);
        std::vector<C> head(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(std::min(m2, u.size())));
        std::vector<C> e = conv_trunc(head, g, m2);
        e.resize(m2, C(0));
        e[0] -= C(1);
        std::vector<C> corr = conv_trunc(g, e, m2);
        g.resize(m2, C(0));
        for (std::size_t i = 0; i < corr.size(); ++i) g[i] -= corr[i];
        m = m2;
    }
    g.resize(n, C(0));
    return g;
}

// E = U^r for a unit series U (U_0 = 1): n E_n = sum_{k=1}^n ((r+1)k - n) U_k E_{n-k}.
std::vector<QExact> miller_power(const std::vector<QExact>& u, const Rational& r, std::size_t n)
{
    std::vector<QExact> e(n);
    if (n == 0) return e;
    e[0] = QExact(1);
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k < u.size(); ++k)
        if (!is_zero(u[k])) nz.push_back(k);
    Rational rp1 = r + 1;
    for (std::size_t m = 1; m < n; ++m) {
        QExact acc;
        for (std::size_t k : nz) {
            if (k > m) break;
            if (is_zero(e[m - k])) continue;
            Rational f = rp1 * static_cast<long>(k) - static_cast<long>(m);
            if (f == 0) continue;
            acc += QExact(f) * u[k] * e[m - k];
        }
        acc /= QExact(Rational(static_cast<long>(m)));
        e[m] = std::move(acc);
    }
    return e;
}

std::vector<Complex> miller_power(const std::vector<Complex>& u, const Rational& r, std::size_t n)
{
    std::vector<Complex> e(n);
    if (n == 0) return e;
    e[0] = Complex(1);
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k < u.size(); ++k)
        if (!is_zero(u[k])) nz.push_back(k);
    Real rp1 = to_real(r) + 1;
    for (std::size_t m = 1; m < n; ++m) {
        Complex acc;
        for (std::size_t k : nz) {
            if (k > m) break;
            Real f = rp1 * static_cast<long>(k) - static_cast<long>(m);
            acc += (u[k] * e[m - k]) * f;
        }
        e[m] = acc / Real(static_cast<long>(m));
    }
    return e;
}

std::optional<Integer> exact_root(const Integer& x, unsigned long t)
{
    Integer r;
    if (mpz_root(r.backend().data(), x.backend().data(), t) == 0) return std::nullopt;
    return r;
}

QExact leading_power(const QExact& c, const Rational& r)
{
    if (is_integer(r)) {
        long n = to_i64(mp::numerator(r));
        QExact base = n < 0 ? QExact(1) / c : c, out(1);
        unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
        while (e) {
            if (e & 1) out *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return out;
    }
    long s = to_i64(mp::numerator(r));
    unsigned long t = static_cast<unsigned long>(to_i64(mp::denominator(r)));
    if (c.im == 0) {
        bool neg = c.re < 0;
        if (!neg || t == 2) {
            Rational a = neg ? Rational(-c.re) : c.re;
            auto p = exact_root(mp::numerator(a), t);
            auto q = exact_root(mp::denominator(a), t);
            if (p && q) {
                QExact root(Rational(*p, *q));
                if (neg) root = QExact(Rational(0), root.re); // principal root of a negative number, t = 2
                return leading_power(root, Rational(s));
            }
        }
    }
    throw InvalidArgument("exact fractional power needs a rational root of the leading coefficient " + to_string(c) +
                          "; use floating mode");
}

Complex leading_power(const Complex& c, const Rational& r) { return pow_rational(c, r); }

template <class C>
Series<C> align(const Series<C>& f, i64 M)
{
    return f.denom() == M ? f : f.refined(M);
}

} // namespace

// ---- arithmetic ----------------------------------------------------------------------

template <class C>
Series<C> operator+(const Series<C>& f0, const Series<C>& g0)
{
    i64 M = std::lcm(f0.denom(), g0.denom());
    Series<C> f = align(f0, M), g = align(g0, M);
    i64 P = std::min(f.prec(), g.prec());
    if (f.is_zero()) return g.with_prec(P);
    if (g.is_zero()) return f.with_prec(P);
    i64 lo = std::min(f.start(), g.start());
    i64 hi = std::min(std::max(f.stop(), g.stop()), P);
    if (hi <= lo) return Series<C>::zero(M, P);
    std::vector<C> out(static_cast<std::size_t>(hi - lo), C(0));
    for (i64 i = f.start(); i < std::min(f.stop(), hi); ++i) out[static_cast<std::size_t>(i - lo)] += f.coeffs()[static_cast<std::size_t>(i - f.start())];
    for (i64 i = g.start(); i < std::min(g.stop(), hi); ++i) out[static_cast<std::size_t>(i - lo)] += g.coeffs()[static_cast<std::size_t>(i - g.start())];
    return Series<C>(M, lo, P, std::move(out));
}

template <class C>
Series<C> operator-(const Series<C>& f)
{
    std::vector<C> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(-c);
    return Series<C>(f.denom(), f.start(), f.prec(), std::move(out));
}

template <class C>
Series<C> operator-(const Series<C>& f, const Series<C>& g)
{
    return f + (-g);
}

template <class C>
Series<C> operator*(const Series<C>& f0, const Series<C>& g0)
{
    i64 M = std::lcm(f0.denom(), g0.denom());
    Series<C> f = align(f0, M), g = align(g0, M);
    i64 P = std::min(prec_add(f.prec(), g.start()), prec_add(g.prec(), f.start()));
    if (f.is_zero() || g.is_zero()) return Series<C>::zero(M, P);
    i64 st = f.start() + g.start();
    std::size_t n_out = f.coeffs().size() + g.coeffs().size() - 1;
    if (P < kInfPrec) n_out = static_cast<std::size_t>(std::max<i64>(0, std::min<i64>(static_cast<i64>(n_out), P - st)));
    return Series<C>(M, st, P, conv_trunc(f.coeffs(), g.coeffs(), n_out));
}

template <class C>
Series<C> scale(const Series<C>& f, const C& s)
{
    std::vector<C> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(c * s);
    return Series<C>(f.denom(), f.start(), f.prec(), std::move(out));
}

template <class C>
Series<C> qs_invert(const Series<C>& f)
{
    if (f.is_zero()) throw InvalidArgument("cannot invert a series that is zero to its precision");
    i64 v = f.start();
    if (f.is_exact()) {
        if (f.coeffs().size() == 1) return Series<C>(f.denom(), -v, kInfPrec, {C(1) / f.coeffs()[0]});
        throw InvalidArgument("inverse of an exact polynomial needs a finite precision");
    }
    i64 n = f.prec() - v;
    return Series<C>(f.denom(), -v, f.prec() - 2 * v, inverse_trunc(f.coeffs(), static_cast<std::size_t>(n)));
}

template <class C>
Series<C> qs_pow(const Series<C>& f, const Rational& r)
{
    if (f.is_zero()) throw InvalidArgument("power of a series that is zero to its precision");
    if (r == 0) return Series<C>::constant(C(1));
    if (is_integer(r)) {
        long n = to_i64(mp::numerator(r));
        Series<C> base = n < 0 ? qs_invert(f) : f;
        unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
        Series<C> out;
        bool have = false;
        while (e) {
            if (e & 1) {
                out = have ? out * base : base;
                have = true;
            }
            e >>= 1;
            if (e) base = base * base;
        }
        return out;
    }
    // f = c q^v U with U_0 = 1
    const C& c = f.coeffs()[0];
    C cr = leading_power(c, r);
    if (f.is_exact() && f.coeffs().size() > 1)
        throw InvalidArgument("fractional power of an exact polynomial needs a finite precision");
    std::size_t rel = f.is_exact() ? 1 : static_cast<std::size_t>(f.prec() - f.start());
    std::vector<C> u;
    u.reserve(std::min(rel, f.coeffs().size()));
    C cinv = C(1) / c;
    for (std::size_t i = 0; i < std::min(rel, f.coeffs().size()); ++i) u.push_back(f.coeffs()[i] * cinv);
    std::vector<C> e = miller_power(u, r, rel);
    for (auto& x : e) x *= cr;
    Rational newv = r * f.valuation();
    i64 M2 = std::lcm(f.denom(), to_i64(mp::denominator(newv)));
    if (M2 > max_lattice_denominator())
        throw InvalidArgument("lattice denominator " + std::to_string(M2) + " exceeds the configured maximum " +
                              std::to_string(max_lattice_denominator()));
    Series<C> unit(f.denom(), 0, f.is_exact() ? kInfPrec : static_cast<i64>(rel), std::move(e));
    unit = align(unit, M2);
    i64 st = to_i64(mp::numerator(newv * M2));
    return Series<C>(M2, st, prec_add(unit.prec(), st), unit.coeffs());
}

template <class C>
Series<C> qs_bol(const Series<C>& f, int m)
{
    if (m < 0) throw InvalidArgument("Bol exponent must be nonnegative");
    if (m == 0) return f;
    std::vector<C> out = f.coeffs();
    Integer Mm = mp::pow(Integer(f.denom()), static_cast<unsigned>(m));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (is_zero(out[i])) continue;
        i64 idx = f.start() + static_cast<i64>(i);
        Rational w(mp::pow(Integer(idx), static_cast<unsigned>(m)), Mm);
        out[i] *= coeff_from_rational<C>(w);
    }
    return Series<C>(f.denom(), f.start(), f.prec(), std::move(out));
}

template <class C>
Series<C> qs_rescale(const Series<C>& f, i64 m)
{
    if (m < 1) throw InvalidArgument("rescale factor must be positive");
    if (m == 1 || f.is_zero()) return Series<C>(f.denom(), f.is_zero() ? prec_mul(f.prec(), m) : f.start(), prec_mul(f.prec(), m), f.coeffs());
    std::vector<C> out((f.coeffs().size() - 1) * static_cast<std::size_t>(m) + 1, C(0));
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) out[i * static_cast<std::size_t>(m)] = f.coeffs()[i];
    return Series<C>(f.denom(), f.start() * m, prec_mul(f.prec(), m), std::move(out));
}

template <class C>
Series<C> coeff_map(const Series<C>& f, const std::function<C(const Rational&)>& w)
{
    std::vector<C> out = f.coeffs();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (is_zero(out[i])) continue;
        out[i] *= w(Rational(Integer(f.start() + static_cast<i64>(i)), Integer(f.denom())));
    }
    return Series<C>(f.denom(), f.start(), f.prec(), std::move(out));
}

template <class C>
Series<C> shift(const Series<C>& f, const Rational& e)
{
    i64 M2 = std::lcm(f.denom(), to_i64(mp::denominator(e)));
    Series<C> g = align(f, M2);
    i64 d = to_i64(mp::numerator(e * M2));
    if (g.is_zero()) return Series<C>::zero(M2, prec_add(g.prec(), d));
    return Series<C>(M2, g.start() + d, prec_add(g.prec(), d), g.coeffs());
}

template <class C>
bool agree(const Series<C>& f0, const Series<C>& g0, const Rational* upto)
{
    i64 M = std::lcm(f0.denom(), g0.denom());
    Series<C> f = align(f0, M), g = align(g0, M);
    i64 bound = std::min(f.prec(), g.prec());
    if (upto) {
        Rational u = *upto * M;
        Integer b = mp::numerator(u) / mp::denominator(u);
        if (mp::numerator(u) > 0 && !is_integer(u)) b += 1; // ceil for positive
        bound = std::min(bound, to_i64(b));
    }
    i64 lo = std::min(f.is_zero() ? kInfPrec : f.start(), g.is_zero() ? kInfPrec : g.start());
    i64 hi = std::min(bound, std::max(f.stop(), g.stop()));
    for (i64 i = lo; i < hi; ++i) {
        C a = i < f.start() || i >= f.stop() ? C(0) : f.coeffs()[static_cast<std::size_t>(i - f.start())];
        C b = i < g.start() || i >= g.stop() ? C(0) : g.coeffs()[static_cast<std::size_t>(i - g.start())];
        if constexpr (std::is_same_v<C, QExact>) {
            if (a != b) return false;
        } else {
            if (!is_zero(a - b)) return false;
        }
    }
    return true;
}

FloatSeries to_float(const ExactSeries& f)
{
    std::vector<Complex> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) out.push_back(to_complex(c));
    return FloatSeries(f.denom(), f.start(), f.prec(), std::move(out));
}

FloatSeries to_float(const FloatSeries& f) { return f; }

Real max_abs_difference(const FloatSeries& f0, const FloatSeries& g0)
{
    i64 M = std::lcm(f0.denom(), g0.denom());
    FloatSeries f = align(f0, M), g = align(g0, M);
    i64 bound = std::min(f.prec(), g.prec());
    i64 lo = std::min(f.is_zero() ? kInfPrec : f.start(), g.is_zero() ? kInfPrec : g.start());
    i64 hi = std::min(bound, std::max(f.stop(), g.stop()));
    Real worst = 0;
    for (i64 i = lo; i < hi; ++i) {
        Real d = abs(f.at(i) - g.at(i));
        if (d > worst) worst = d;
    }
    return worst;
}

ExactSeries eta_product_power(i64 r, i64 P)
{
    if (P < 1) throw InvalidArgument("eta_product_power needs P >= 1");
    std::size_t n = static_cast<std::size_t>(P);
    std::vector<unsigned long> sigma(n, 0);
    for (std::size_t d = 1; d < n; ++d)
        for (std::size_t m = d; m < n; m += d) sigma[m] += d;
    std::vector<Integer> e(n);
    e[0] = 1;
    Integer acc;
    for (std::size_t m = 1; m < n; ++m) {
        mpz_set_ui(acc.backend().data(), 0);
        for (std::size_t k = 1; k <= m; ++k) {
            if (mpz_sgn(e[m - k].backend().data()) == 0) continue;
            mpz_addmul_ui(acc.backend().data(), e[m - k].backend().data(), sigma[k]);
        }
        mpz_mul_si(acc.backend().data(), acc.backend().data(), -static_cast<long>(r));
        mpz_divexact_ui(e[m].backend().data(), acc.backend().data(), static_cast<unsigned long>(m));
    }
    std::vector<QExact> c;
    c.reserve(n);
    for (auto& x : e) c.emplace_back(Rational(x));
    return ExactSeries(1, 0, P, std::move(c));
}

ExactSeries delta_cusp(i64 P)
{
    if (P < 2) throw InvalidArgument("delta_cusp needs P >= 2");
    return shift(eta_product_power(24, P - 1), Rational(1));
}

Shadow shadow_mul(const Shadow& a, const Shadow& b)
{
    return {a.v + b.v, std::min(a.P + b.v, b.P + a.v)};
}

Shadow shadow_pow(const Shadow& a, const Rational& r)
{
    if (r == 0) return {Rational(0), Rational(Integer(1) << 62)}; // exact constant 1
    if (r < 0 && is_integer(r)) {
        // invert then power
        Shadow inv{-a.v, a.P - 2 * a.v};
        return shadow_pow(inv, -r);
    }
    return {r * a.v, a.P + (r - 1) * a.v};
}

// ---- growth model and evaluation -------------------------------------------------------

GrowthModel fit_growth(const std::vector<double>& n_all, const std::vector<double>& y_all)
{
    GrowthModel g;
    if (n_all.empty()) {
        g.method = "no nonzero coefficients";
        return g;
    }
    double nmax = *std::max_element(n_all.begin(), n_all.end());
    std::vector<double> n, y;
    for (std::size_t i = 0; i < n_all.size(); ++i)
        if (n_all[i] >= std::max(1.0, nmax / 2)) {
            n.push_back(n_all[i]);
            y.push_back(y_all[i]);
        }
    if (n.size() < 3) {
        n.clear();
        y.clear();
        for (std::size_t i = 0; i < n_all.size(); ++i)
            if (n_all[i] >= 0) {
                n.push_back(n_all[i]);
                y.push_back(y_all[i]);
            }
    }
    g.points = static_cast<int>(n.size());
    if (n.size() < 3) {
        g.logA = n.empty() ? *std::max_element(y_all.begin(), y_all.end()) : *std::max_element(y.begin(), y.end());
        g.method = "constant envelope (fewer than 3 usable coefficients)";
        return g;
    }
    auto solve = [&](int dim, double* coef) {
        double A[3][4] = {};
        for (std::size_t i = 0; i < n.size(); ++i) {
            double b[3] = {1.0, std::sqrt(n[i]), n[i]};
            for (int r = 0; r < dim; ++r) {
                for (int c = 0; c < dim; ++c) A[r][c] += b[r] * b[c];
                A[r][dim] += b[r] * y[i];
            }
        }
        for (int c = 0; c < dim; ++c) {
            int piv = c;
            for (int r = c + 1; r < dim; ++r)
                if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
            for (int k = 0; k <= dim; ++k) std::swap(A[c][k], A[piv][k]);
            if (std::fabs(A[c][c]) < 1e-300) return false;
            for (int r = 0; r < dim; ++r) {
                if (r == c) continue;
                double f = A[r][c] / A[c][c];
                for (int k = c; k <= dim; ++k) A[r][k] -= f * A[c][k];
            }
        }
        for (int c = 0; c < dim; ++c) coef[c] = A[c][dim] / A[c][c];
        return true;
    };
    double coef[3] = {0, 0, 0};
    bool ok = solve(3, coef) && coef[2] > 0;
    if (!ok) {
        coef[2] = 0;
        ok = solve(2, coef);
        if (!ok || coef[1] < 0) {
            coef[1] = 0;
            coef[0] = 0;
        }
    }
    g.logA = coef[0];
    g.C = coef[1];
    g.B = coef[2];
    double lift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n.size(); ++i)
        lift = std::max(lift, y[i] - (g.logA + g.C * std::sqrt(n[i]) + g.B * n[i]));
    g.logA += lift;
    g.method = "least squares of log|c_n| on (1, sqrt n, n) over the upper half of the stored exponents, "
               "intercept lifted to the upper envelope";
    return g;
}

double log_tail_sum(const GrowthModel& g, double n0, double step, double lambda)
{
    if (!std::isfinite(g.logA)) return g.logA; // -inf: nothing to bound, or +inf
    double slope = g.B - lambda;
    if (slope >= 0) return std::numeric_limits<double>::infinity();
    auto term = [&](double n) { return g.logA + g.C * std::sqrt(std::max(n, 0.0)) + slope * n; };
    double logsum = -std::numeric_limits<double>::infinity();
    auto lse = [](double a, double b) {
        if (a < b) std::swap(a, b);
        if (b == -std::numeric_limits<double>::infinity()) return a;
        return a + std::log1p(std::exp(b - a));
    };
    // sum terms until they decrease geometrically below 1e-30 of the running sum
    for (long j = 0; j < 50000000; ++j) {
        double n = n0 + static_cast<double>(j) * step;
        double t = term(n), tn = term(n + step);
        logsum = lse(logsum, t);
        double logratio = tn - t;
        bool decreasing = logratio < 0 && g.C / (2.0 * std::sqrt(std::max(n, 1e-300))) + slope < 0;
        if (decreasing && tn < logsum - 70.0) {
            // ratios decrease from here on, so the rest is bounded by a geometric series
            double rem = tn - std::log1p(-std::exp(logratio));
            return lse(logsum, rem);
        }
    }
    return std::numeric_limits<double>::infinity();
}

SeriesEvaluator::SeriesEvaluator(const ExactSeries& f) : f_(to_float(f)) { fit(); }
SeriesEvaluator::SeriesEvaluator(const FloatSeries& f) : f_(f) { fit(); }

void SeriesEvaluator::fit()
{
    std::vector<double> n, y;
    for (std::size_t i = 0; i < f_.coeffs().size(); ++i) {
        const Complex& c = f_.coeffs()[i];
        if (is_zero(c)) continue;
        Real a = abs(c);
        long ex = 0;
        double mant = mpfr_get_d_2exp(&ex, a.backend().data(), MPFR_RNDN);
        n.push_back(static_cast<double>(f_.start() + static_cast<i64>(i)) / static_cast<double>(f_.denom()));
        y.push_back(std::log(mant) + static_cast<double>(ex) * std::log(2.0));
    }
    growth_ = fit_growth(n, y);
}

EvalResult SeriesEvaluator::operator()(const Complex& z) const
{
    if (!(z.im > 0)) throw InvalidArgument("series evaluation needs Im z > 0");
    EvalResult r;
    r.tail_bound = 0;
    if (!f_.is_exact()) {
        double P = static_cast<double>(f_.prec()) / static_cast<double>(f_.denom());
        double lambda = 2.0 * M_PI * z.im.convert_to<double>();
        double lt = f_.is_zero() ? std::numeric_limits<double>::infinity()
                                 : log_tail_sum(growth_, P, 1.0 / static_cast<double>(f_.denom()), lambda);
        if (std::isinf(lt) && lt > 0) {
            r.tail_bound = Real(std::numeric_limits<double>::infinity());
        } else if (std::isfinite(lt)) {
            r.tail_bound = mp::exp(Real(lt));
        }
    }
    if (f_.is_zero()) return r;
    Real twopi = 2 * pi_real();
    Real M(static_cast<long>(f_.denom()));
    // w = exp(2 pi i z / M)
    Complex w = exp(Complex(-twopi * z.im / M, twopi * z.re / M));
    Complex acc;
    const auto& c = f_.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= w;
        acc += c[i];
    }
    Real st(static_cast<long>(f_.start()));
    Complex lead = exp(Complex(-twopi * z.im * st / M, twopi * z.re * st / M));
    r.value = acc * lead;
    return r;
}

// ---- explicit instantiations --------------------------------------------------------

#define BOLHALF_INSTANTIATE(C)                                                               \
    template class Series<C>;                                                               \
    template Series<C> operator+(const Series<C>&, const Series<C>&);                        \
    template Series<C> operator-(const Series<C>&, const Series<C>&);                        \
    template Series<C> operator-(const Series<C>&);                                          \
    template Series<C> operator*(const Series<C>&, const Series<C>&);                        \
    template Series<C> scale(const Series<C>&, const C&);                                    \
    template Series<C> qs_invert(const Series<C>&);                                          \
    template Series<C> qs_pow(const Series<C>&, const Rational&);                            \
    template Series<C> qs_bol(const Series<C>&, int);                                        \
    template Series<C> qs_rescale(const Series<C>&, i64);                                    \
    template Series<C> coeff_map(const Series<C>&, const std::function<C(const Rational&)>&); \
    template Series<C> shift(const Series<C>&, const Rational&);                             \
    template bool agree(const Series<C>&, const Series<C>&, const Rational*);

BOLHALF_INSTANTIATE(QExact)
BOLHALF_INSTANTIATE(Complex)

} // namespace bolhalf
