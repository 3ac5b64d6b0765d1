#include "bolhalf/numeric.hpp"
#include "bolhalf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace bolhalf {

namespace {

unsigned digits10_for_bits(unsigned bits)
{
    // mpfr_float_backend takes decimal digits; it rounds up to bits internally.
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521));
}

unsigned g_bits = 128;

} // namespace

unsigned working_bits() { return g_bits; }

void set_working_bits(unsigned bits)
{
    if (bits < 32) throw InvalidArgument("working precision must be at least 32 bits");
    g_bits = bits;
    Real::default_precision(digits10_for_bits(bits));
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_(g_bits) { set_working_bits(bits); }
ScopedPrecision::~ScopedPrecision() { set_working_bits(saved_); }

namespace {
struct PrecisionInit {
    PrecisionInit() { set_working_bits(128); }
} precision_init;
} // namespace

Real pi_real()
{
    thread_local std::map<unsigned, Real> cache;
    auto it = cache.find(g_bits);
    if (it != cache.end()) return it->second;
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    cache.emplace(g_bits, p);
    return p;
}

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Integer& n)
{
    Real r;
    mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
    return r;
}

Real epsilon_real()
{
    Real e(1);
    mpfr_mul_2si(e.backend().data(), e.backend().data(), 1 - static_cast<long>(g_bits), MPFR_RNDN);
    return e;
}

// ---- Complex ---------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}
Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}
Complex& Complex::operator*=(const Complex& o)
{
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}
Complex& Complex::operator/=(const Complex& o)
{
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}
Complex& Complex::operator*=(const Real& s)
{
    re *= s;
    im *= s;
    return *this;
}
Complex& Complex::operator/=(const Real& s)
{
    re /= s;
    im /= s;
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(Complex a, const Real& s) { return a *= s; }
Complex operator*(const Real& s, Complex a) { return a *= s; }
Complex operator/(Complex a, const Real& s) { return a /= s; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return mp::hypot(z.re, z.im); }

Real arg(const Complex& z)
{
    if (z.im == 0) {
        if (z.re < 0) return pi_real();
        return Real(0);
    }
    return mp::atan2(z.im, z.re);
}

Complex expi(const Real& theta) { return Complex(mp::cos(theta), mp::sin(theta)); }

Complex exp(const Complex& z)
{
    Real m = mp::exp(z.re);
    return Complex(m * mp::cos(z.im), m * mp::sin(z.im));
}

Complex log(const Complex& z)
{
    if (is_zero(z)) throw InvalidArgument("log of zero");
    return Complex(mp::log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z)
{
    if (is_zero(z)) return Complex();
    Real r = abs(z);
    Real a = mp::sqrt((r + z.re) / 2);
    Real b = mp::sqrt((r - z.re) / 2);
    if (z.im < 0) b = -b;
    return Complex(a, b);
}

Complex pow(const Complex& z, const Real& e)
{
    if (is_zero(z)) {
        if (e > 0) return Complex();
        if (e == 0) return Complex(1);
        throw InvalidArgument("negative power of zero");
    }
    return exp(log(z) * e);
}

Complex pow(const Complex& z, const Complex& e)
{
    if (is_zero(z)) {
        if (e.re > 0) return Complex();
        throw InvalidArgument("power of zero with non-positive exponent");
    }
    return exp(log(z) * e);
}

Complex pow_rational(const Complex& z, const Rational& e)
{
    if (is_integer(e)) {
        Integer n = mp::numerator(e);
        bool neg = n < 0;
        if (neg) n = -n;
        Complex result(1), base = z;
        while (n > 0) {
            if (mp::bit_test(n, 0)) result *= base;
            n >>= 1;
            if (n > 0) base *= base;
        }
        if (neg) return Complex(1) / result;
        return result;
    }
    return pow(z, to_real(e));
}

Complex root_of_unity(i64 num, i64 den)
{
    num = mod_floor(num, den);
    if (num == 0) return Complex(1);
    if (4 * num == den) return Complex(Real(0), Real(1));
    if (2 * num == den) return Complex(-1);
    if (4 * num == 3 * den) return Complex(Real(0), Real(-1));
    Real theta = 2 * pi_real() * Real(num) / Real(den);
    return expi(theta);
}

Complex i_pow(const Rational& e)
{
    // i^e = exp(i pi e / 2); exact for e in Z.
    if (is_integer(e)) {
        i64 n = mod_floor(to_i64(mp::numerator(e)), 4);
        return root_of_unity(n, 4);
    }
    return expi(pi_real() * to_real(e) / 2);
}

bool is_zero(const Complex& z) { return z.re == 0 && z.im == 0; }

std::complex<double> to_cd(const Complex& z)
{
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

std::string to_string(const Real& x, int digits)
{
    if (digits <= 0) digits = static_cast<int>(working_bits() * 0.30103) + 2;
    return x.str(digits, std::ios_base::scientific);
}

// ---- integer helpers ---------------------------------------------------------

i64 mod_floor(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 powmod(i64 base, i64 e, i64 m)
{
    if (m == 1) return 0;
    __int128 result = 1, b = mod_floor(base, m);
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<i64>(result);
}

std::vector<std::pair<i64, int>> factorize(i64 n)
{
    if (n < 1) throw InvalidArgument("factorize: n must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n)
{
    std::vector<i64> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n)
{
    i64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

bool is_squarefree(i64 n)
{
    if (n == 0) return false;
    for (auto [p, e] : factorize(n < 0 ? -n : n))
        if (e > 1) return false;
    return true;
}

i64 isqrt(i64 n)
{
    if (n < 0) throw InvalidArgument("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n)
{
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

i64 lcm64(i64 a, i64 b) { return std::lcm(a, b); }

Rational make_rational(i64 num, i64 den)
{
    if (den == 0) throw InvalidArgument("zero denominator");
    return Rational(Integer(num), Integer(den));
}

Rational parse_rational(const std::string& s)
{
    auto fail = [&] { return InvalidArgument("malformed rational '" + s + "'"); };
    if (s.empty()) throw fail();
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
            if (q == 0) throw fail();
            return Rational(p, q);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
            bool neg = !whole.empty() && whole[0] == '-';
            if (whole.empty() || whole == "-" || whole == "+") whole += "0";
            Integer w(whole), f(frac.empty() ? std::string("0") : frac);
            Integer scale = mp::pow(Integer(10), static_cast<unsigned>(frac.size()));
            Rational r(w);
            Rational fr(f, scale);
            return neg ? r - fr : r + fr;
        }
        return Rational(Integer(s));
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw fail();
    }
}

std::string to_string(const Rational& q)
{
    if (mp::denominator(q) == 1) return mp::numerator(q).str();
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

i64 to_i64(const Integer& n)
{
    if (!mpz_fits_slong_p(n.backend().data())) throw InvalidArgument("integer out of 64-bit range");
    return mpz_get_si(n.backend().data());
}

std::string format_sci(double x, int digits)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", digits, x);
    return buf;
}

} // namespace bolhalf
