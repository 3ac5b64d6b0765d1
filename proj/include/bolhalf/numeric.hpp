#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bolhalf {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

using i64 = std::int64_t;
using u64 = std::uint64_t;

// ---- working precision -------------------------------------------------

unsigned working_bits();
void set_working_bits(unsigned bits);

class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned bits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

Real pi_real();
Real to_real(const Rational& q);
Real to_real(const Integer& n);
Real epsilon_real(); // 2^(1-bits)

// ---- complex over Real ---------------------------------------------------

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}            // NOLINT
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}                          // NOLINT
    Complex(double r) : re(r), im(0) {}                       // NOLINT
    explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& s);
    Complex& operator/=(const Real& s);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator*(const Real& s, Complex a);
Complex operator/(Complex a, const Real& s);
Complex operator-(const Complex& a);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z); // |z|^2
Real arg(const Complex& z);  // in (-pi, pi]
Complex exp(const Complex& z);
Complex log(const Complex& z); // principal branch
Complex sqrt(const Complex& z); // principal branch
Complex pow(const Complex& z, const Real& e);
Complex pow(const Complex& z, const Complex& e);
Complex pow_rational(const Complex& z, const Rational& e);
Complex expi(const Real& theta); // e^{i theta}
Complex root_of_unity(i64 num, i64 den); // e^{2 pi i num/den}
Complex i_pow(const Rational& e);      // i^e = e^{i pi e / 2}
bool is_zero(const Complex& z);
std::complex<double> to_cd(const Complex& z);
std::string to_string(const Real& x, int digits = 0);
std::string format_sci(double x, int digits = 3); // "1.234e-05"

// ---- small integer arithmetic -----------------------------------------

i64 mod_floor(i64 a, i64 m);
i64 powmod(i64 base, i64 e, i64 m);
std::vector<std::pair<i64, int>> factorize(i64 n); // n >= 1
std::vector<i64> divisors(i64 n);                   // sorted
i64 euler_phi(i64 n);
bool is_squarefree(i64 n);
i64 isqrt(i64 n);
bool is_square(i64 n);
i64 lcm64(i64 a, i64 b);

Rational make_rational(i64 num, i64 den);
Rational parse_rational(const std::string& s); // "p", "p/q", "-p/q"
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
i64 to_i64(const Integer& n);

} // namespace bolhalf
