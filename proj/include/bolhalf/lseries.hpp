#pragma once

#include "bolhalf/characters.hpp"
#include "bolhalf/form_meta.hpp"
#include "bolhalf/inverse_laplace.hpp"
#include "bolhalf/modular_verify.hpp"
#include "bolhalf/testfn.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bolhalf {

// (L phi)(s) = int_0^inf e^{-st} phi(t) dt, adaptive Gauss-Kronrod over the pieces of phi.
cd laplace(const TestFunction& phi, cd s, double rtol = 1e-12);
// The same at the working precision (tanh-sinh per piece).
Complex laplace_mp(const TestFunction& phi, const Complex& s, double rtol = 1e-30);

// Twisted L-series value L_f(chi, phi) = sum_n c_n tau_{conj chi}(n) (L phi)(2 pi n / D), D = modulus of chi.
// Evaluated as int phi(t) f_chi(i t / D) dt with f_chi summed by Horner at every tanh-sinh node.
struct LValue {
    Complex value;
    double quad_error = 0;  // relative
    double tail_bound = 0;  // relative; 0 for series of infinite precision
    double rounding = 0;    // relative: 2^-bits times the sum of absolute terms
    double cancellation_digits = 0;
    i64 terms = 0;
    int nodes = 0;
    int bits = 0;
    GrowthModel growth;
    double rel_error() const { return quad_error + tail_bound + rounding; }
};
LValue lseries_value(const AnySeries& f, const DirichletCharacter& chi, const TestFunction& phi, double rtol = 1e-12);

// Functional equations of L-series of modular forms of weight k = meta.weight, level N = meta.level:
//   integral:      L_f(chi, phi) = i^k chi(-N) psi(D) N^{1-k/2} L_g(conj chi, phi|_{2-k} W_N)
//   half-integral: L_f(chi, phi) = i^k psi_D(-1)^{k-1/2} psi_D(N) chi(-N) psi(D) / (eps_D N^{k/2-1})
//                                  * L_g(conj chi psi_D, phi|_{2-k} W_N)
// with g = f|_k W_N.
Complex fe_constant(const FormMeta& meta, const DirichletCharacter& chi);
DirichletCharacter fe_rhs_character(const FormMeta& meta, const DirichletCharacter& chi);

struct FEReport {
    LValue lhs, rhs;
    Complex constant;
    Complex rhs_scaled; // constant * rhs.value
    double residual = 0;
    double error_estimate = 0; // propagated relative error of both sides
    std::string chi, chi_rhs, phi, phi_rhs;
};
FEReport fe_residual(const AnySeries& f, const AnySeries& g, const FormMeta& meta, const DirichletCharacter& chi,
                     const TestFunction& phi, double rtol = 1e-12);

// (f|_k W_N)(z) / h(z) over the points, with the spread max |ratio - mean| / |mean|.
struct FrickeFit {
    Complex constant;
    double spread = 0;
    std::vector<Complex> samples;
};
FrickeFit fit_fricke_constant(const PointFunction& f, const PointFunction& h, i64 N, HalfWeight k,
                              const std::vector<Complex>& zs);

// ---- alpha_D and the sufficient condition ---------------------------------------------------

// The interpolating map h, evaluated off the real axis where inverse transforms need it.
struct HFunction {
    std::string name;
    std::function<cd(cd)> fn;
    bool is_one = false;
    bool is_zero = false;
    // "one", "zero", "ell" ((x+1)^{k-3/2}/x^{k-1}), "shiftpow:c,e" (((x+c)/x)^e)
    static HFunction parse(const std::string& spec, const Rational& k);
};

// (D p/2 pi)^{k-1} h(D p/2 pi), principal branch
cd alpha_multiplier(i64 D, const Rational& k, const HFunction& h, cd p);

enum class AlphaMode { laplace_domain, time_domain };
enum class AlphaMethod { automatic, derivative, abel, bromwich };

struct AlphaResult {
    AlphaMode mode = AlphaMode::laplace_domain;
    std::string method; // "multiplier", "derivative", "abel", "bromwich", "zero"
    std::function<cd(cd)> laplace;            // (L alpha)(p), both modes
    std::function<double(double)> time;       // time-domain mode
    double support_lo = 0, support_hi = 0;    // time-domain support; support_hi may be +inf
    std::optional<TestFunction> as_test_function; // integer order with h = 1
    int bromwich_terms = 0;
    double bromwich_sigma = 0;
};
// t_max bounds the arguments at which a Bromwich-inverted time function will be evaluated.
AlphaResult alpha_apply(const TestFunction& phi, i64 D, const Rational& k, const HFunction& h, AlphaMode mode,
                        AlphaMethod method = AlphaMethod::automatic, double t_max = 0);

struct SCParams {
    HalfWeight k{6};
    i64 N = 1, Np = 1, D = 1;
    DirichletCharacter chi, psi, psi_prime;
    cd lambda = 1.0;
    HFunction h;
};

// b = lambda psi_D((-1)^{2k} N'/N) chi(N'/N) psi'(D)/psi(D) (N N')^{-k/2} N', for N | N' or N' | N;
// integral k uses (-1)^{k-1} b.
cd b_factor(const SCParams& prm);

struct SCSample {
    double p = 0;
    cd lhs, rhs;
    double residual = 0;
};
struct SCReport {
    cd b;
    std::vector<SCSample> samples;
    double max_residual = 0;
    std::string alpha_method;
    int bromwich_terms = 0;
    double bromwich_sigma = 0;
    double t_cap = 0;
    std::vector<std::string> notes;
};
// LHS(p) = b (Dp/2pi)^{k-1} h(Dp/2pi) L(phi|_{2-k} W_{N'})(p)
// RHS(p) = L((Nx)^{-k} alpha_D(phi)(1/(Nx)))(p)
SCReport sc_residual(const SCParams& prm, const TestFunction& phi, const std::vector<double>& p_samples,
                     AlphaMethod method = AlphaMethod::bromwich, double t_cap_factor = 20.0);

// ---- half-integer order Bessel functions ------------------------------------------------------

// J_{n+1/2} (sign = +1) or J_{-n-1/2} (sign = -1) from the closed forms in sin z, cos z and powers of 1/z.
Real bessel_half_mp(int n, int sign, const Real& z);
double bessel_half(int n, int sign, double z);

} // namespace bolhalf
