#include "bolhalf/lseries.hpp"

#include "bolhalf/errors.hpp"
#include "bolhalf/quadrature.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace bolhalf {

namespace {

std::vector<Real> breaks_real(const TestFunction& phi)
{
    std::vector<Real> out;
    for (const auto& r : phi.breakpoints()) out.push_back(to_real(r));
    return out;
}

double l1_norm(const TestFunction& phi)
{
    auto br = phi.breakpoints_d();
    double s = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
        s += integrate_gk(std::function<double(double)>([&](double t) { return std::abs(phi(t)); }), br[i], br[i + 1], 1e-8).value;
    return s;
}

// RAII array of MPFR numbers at the working precision
struct MpfrArray {
    std::vector<mpfr_t> v;
    explicit MpfrArray(std::size_t n, mpfr_prec_t prec) : v(n)
    {
        for (auto& x : v) mpfr_init2(x, prec);
    }
    ~MpfrArray()
    {
        for (auto& x : v) mpfr_clear(x);
    }
    MpfrArray(const MpfrArray&) = delete;
    MpfrArray& operator=(const MpfrArray&) = delete;
};

double log_abs(const Real& x)
{
    if (is_zero(x)) return -std::numeric_limits<double>::infinity();
    long ex = 0;
    double mant = mpfr_get_d_2exp(&ex, x.backend().data(), MPFR_RNDN);
    return std::log(std::abs(mant)) + static_cast<double>(ex) * std::log(2.0);
}

double log_add(double a, double b)
{
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

} // namespace

cd laplace(const TestFunction& phi, cd s, double rtol)
{
    auto f = [&](double t) { return std::exp(-s * t) * phi(t); };
    return integrate_gk_pieces(f, phi.breakpoints_d(), rtol).value;
}

Complex laplace_mp(const TestFunction& phi, const Complex& s, double rtol)
{
    auto br = breaks_real(phi);
    Complex total;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        if (!(br[i + 1] > br[i])) continue;
        auto r = tanh_sinh([&](const Real& t) { return exp(-(s * Complex(t))) * Complex(phi(t)); }, br[i], br[i + 1],
                           Real(rtol));
        total += r.value;
    }
    return total;
}

LValue lseries_value(const AnySeries& fin, const DirichletCharacter& chi, const TestFunction& phi, double rtol)
{
    FloatSeries f = std::visit([](const auto& s) { return to_float(s); }, fin);
    if (f.denom() != 1) throw InvalidArgument("L-series need integral exponents (lattice 1), got lattice " + std::to_string(f.denom()));
    const i64 D = chi.modulus();
    LValue out;
    out.bits = static_cast<int>(working_bits());

    std::vector<Complex> tau(static_cast<std::size_t>(D));
    DirichletCharacter cc = chi.conj();
    for (i64 r = 0; r < D; ++r) tau[static_cast<std::size_t>(r)] = gauss_sum(cc, r);

    const i64 v = f.start();
    const std::size_t n = f.coeffs().size();
    out.terms = static_cast<i64>(n);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(working_bits());
    MpfrArray cre(n, prec), cim(n, prec);
    std::vector<double> logabs(n);
    std::vector<double> gn, gy;
    for (std::size_t i = 0; i < n; ++i) {
        i64 e = v + static_cast<i64>(i);
        Complex c = f.coeffs()[i] * tau[static_cast<std::size_t>(mod_floor(e, D))];
        mpfr_set(cre.v[i], c.re.backend().data(), MPFR_RNDN);
        mpfr_set(cim.v[i], c.im.backend().data(), MPFR_RNDN);
        logabs[i] = log_abs(abs(c));
        if (e >= 1 && std::isfinite(logabs[i])) {
            gn.push_back(static_cast<double>(e));
            gy.push_back(logabs[i]);
        }
    }
    out.growth = fit_growth(gn, gy);

    const double a_d = phi.a().convert_to<double>(), b_d = phi.b().convert_to<double>();
    const double l1 = l1_norm(phi);
    const double twopi_over_D = 2.0 * M_PI / static_cast<double>(D);

    // sum of |terms| at the extreme ends of the support bounds the Horner magnitude
    double logB = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(logabs[i])) continue;
        double e = static_cast<double>(v + static_cast<i64>(i));
        double t = e >= 0 ? a_d : b_d;
        logB = log_add(logB, logabs[i] - twopi_over_D * e * t);
    }

    // tanh-sinh over each piece; the integrand is phi(t) f_chi(i t / D)
    Real twopiD = 2 * pi_real() / Real(D);
    mpfr_t x, sr, si, tmp;
    mpfr_inits2(prec, x, sr, si, tmp, static_cast<mpfr_ptr>(nullptr));
    auto integrand = [&](const Real& t) -> Complex {
        Real ph = phi(t);
        if (is_zero(ph)) return Complex();
        Real xr = mp::exp(-twopiD * t);
        mpfr_set(x, xr.backend().data(), MPFR_RNDN);
        mpfr_set_zero(sr, 1);
        mpfr_set_zero(si, 1);
        for (std::size_t i = n; i-- > 0;) {
            mpfr_fma(sr, sr, x, cre.v[i], MPFR_RNDN);
            mpfr_fma(si, si, x, cim.v[i], MPFR_RNDN);
        }
        Real lead = mp::exp(-twopiD * t * Real(v)) * ph;
        Real re, im;
        mpfr_mul(re.backend().data(), sr, lead.backend().data(), MPFR_RNDN);
        mpfr_mul(im.backend().data(), si, lead.backend().data(), MPFR_RNDN);
        return Complex(re, im);
    };

    auto br = breaks_real(phi);
    Complex total;
    Real qerr = 0;
    try {
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            if (!(br[i + 1] > br[i])) continue;
            auto r = tanh_sinh(integrand, br[i], br[i + 1], Real(rtol) / 4);
            total += r.value;
            qerr += r.error;
            out.nodes += r.nodes;
        }
    } catch (...) {
        mpfr_clears(x, sr, si, tmp, static_cast<mpfr_ptr>(nullptr));
        throw;
    }
    mpfr_clears(x, sr, si, tmp, static_cast<mpfr_ptr>(nullptr));
    out.value = total;

    double logv = log_abs(abs(total));
    double log_scale = logB + std::log(std::max(l1, 1e-300));
    out.cancellation_digits = (log_scale - logv) / std::log(10.0);
    out.quad_error = std::exp(log_abs(qerr) - logv);
    out.rounding = std::exp(log_scale - logv - static_cast<double>(out.bits) * std::log(2.0) +
                            std::log(static_cast<double>(std::max<i64>(n, 1))));

    if (!f.is_exact()) {
        double P = static_cast<double>(f.prec());
        double lt = log_tail_sum(out.growth, P, 1.0, twopi_over_D * a_d);
        out.tail_bound = std::exp(lt + std::log(std::max(l1, 1e-300)) - logv);
        if (!(out.tail_bound <= rtol)) {
            std::string need = "unknown";
            for (double Pn = P * 2; Pn < 1e9; Pn *= 1.5) {
                double ln = log_tail_sum(out.growth, Pn, 1.0, twopi_over_D * a_d);
                if (std::isfinite(ln) && ln + std::log(std::max(l1, 1e-300)) - logv < std::log(rtol)) {
                    need = std::to_string(static_cast<i64>(Pn));
                    break;
                }
            }
            throw NumericalFailure("L-series convergence certificate failed for " + phi.str() + ": relative tail bound " +
                                   format_sci(out.tail_bound) + " exceeds " + format_sci(rtol) +
                                   " with coefficients known below q^" + std::to_string(f.prec()) +
                                   "; required n_max about " + need);
        }
    }
    return out;
}

Complex fe_constant(const FormMeta& meta, const DirichletCharacter& chi)
{
    const HalfWeight k = meta.weight;
    const i64 N = meta.level, D = chi.modulus();
    Complex c = i_pow(Rational(k.doubled, 2)) * chi.value(-N) * meta.character.value(D);
    Real npow = mp::pow(Real(N), to_real(1 - k.value() / 2));
    c = c * Complex(npow);
    if (k.is_half_integral()) {
        int m1 = kronecker(-1, D);
        i64 e = to_i64(mp::numerator(k.value() - Rational(1, 2)));
        int sgn = (m1 < 0 && (e % 2 != 0)) ? -1 : 1;
        Complex eps = mod_floor(D, 4) == 1 ? Complex(Real(1)) : Complex(Real(0), Real(1));
        c = c * Complex(Real(sgn * kronecker(N, D))) / eps;
    }
    return c;
}

DirichletCharacter fe_rhs_character(const FormMeta& meta, const DirichletCharacter& chi)
{
    if (meta.weight.is_integral()) return chi.conj();
    return char_product(chi.conj(), psi_D(chi.modulus()));
}

FEReport fe_residual(const AnySeries& f, const AnySeries& g, const FormMeta& meta, const DirichletCharacter& chi,
                     const TestFunction& phi, double rtol)
{
    meta.validate();
    const i64 N = meta.level, D = chi.modulus();
    if (std::gcd(N, D) != 1) throw InvalidArgument("functional equation needs gcd(D, N) = 1");
    FEReport rep;
    TestFunction phi2 = phi.fricke(2 - meta.weight.value(), N);
    DirichletCharacter chi2 = fe_rhs_character(meta, chi);
    rep.lhs = lseries_value(f, chi, phi, rtol);
    rep.rhs = lseries_value(g, chi2, phi2, rtol);
    rep.constant = fe_constant(meta, chi);
    rep.rhs_scaled = rep.constant * rep.rhs.value;
    Real den = std::max(abs(rep.lhs.value), abs(rep.rhs_scaled));
    rep.residual = is_zero(den) ? 0.0 : Real(abs(rep.lhs.value - rep.rhs_scaled) / den).convert_to<double>();
    rep.error_estimate = rep.lhs.rel_error() + rep.rhs.rel_error();
    rep.chi = chi.label();
    rep.chi_rhs = chi2.label();
    rep.phi = phi.str();
    rep.phi_rhs = phi2.str();
    return rep;
}

FrickeFit fit_fricke_constant(const PointFunction& f, const PointFunction& h, i64 N, HalfWeight k,
                              const std::vector<Complex>& zs)
{
    if (zs.empty()) throw InvalidArgument("fit_fricke_constant needs sample points");
    FrickeFit fit;
    Complex sum;
    for (const auto& z : zs) {
        Complex r = fricke_slash_value(f, N, k, z).value / h(z).value;
        fit.samples.push_back(r);
        sum += r;
    }
    fit.constant = sum / Complex(Real(static_cast<long>(zs.size())));
    Real m = abs(fit.constant);
    for (const auto& r : fit.samples) fit.spread = std::max(fit.spread, Real(abs(r - fit.constant) / m).convert_to<double>());
    return fit;
}

// ---- alpha_D ----------------------------------------------------------------------------------

HFunction HFunction::parse(const std::string& spec, const Rational& k)
{
    HFunction h;
    h.name = spec;
    if (spec == "one") {
        h.fn = [](cd) { return cd(1.0); };
        h.is_one = true;
        return h;
    }
    if (spec == "zero") {
        h.fn = [](cd) { return cd(0.0); };
        h.is_zero = true;
        return h;
    }
    if (spec == "ell") {
        double e1 = (k - Rational(3, 2)).convert_to<double>(), e2 = (k - 1).convert_to<double>();
        h.fn = [e1, e2](cd x) { return std::pow(x + 1.0, e1) / std::pow(x, e2); };
        return h;
    }
    if (spec.rfind("shiftpow:", 0) == 0) {
        std::string rest = spec.substr(9);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw InvalidArgument("shiftpow needs c,e");
        double c = parse_rational(rest.substr(0, comma)).convert_to<double>();
        double e = parse_rational(rest.substr(comma + 1)).convert_to<double>();
        h.fn = [c, e](cd x) { return std::pow((x + c) / x, e); };
        return h;
    }
    throw InvalidArgument("unknown h spec '" + spec + "' (use one | zero | ell | shiftpow:c,e)");
}

cd alpha_multiplier(i64 D, const Rational& k, const HFunction& h, cd p)
{
    if (h.is_zero) return 0.0;
    cd x = static_cast<double>(D) * p / (2.0 * M_PI);
    Rational e = k - 1;
    cd pw;
    if (is_integer(e)) {
        i64 m = to_i64(mp::numerator(e));
        pw = 1.0;
        cd base = m >= 0 ? x : 1.0 / x;
        for (i64 j = 0; j < std::abs(m); ++j) pw *= base;
    } else {
        pw = std::pow(x, e.convert_to<double>());
    }
    return h.is_one ? pw : pw * h.fn(x);
}

AlphaResult alpha_apply(const TestFunction& phi, i64 D, const Rational& k, const HFunction& h, AlphaMode mode,
                        AlphaMethod method, double t_max)
{
    if (D <= 0) throw InvalidArgument("alpha_D needs D >= 1");
    AlphaResult res;
    res.mode = mode;
    const double a = phi.a().convert_to<double>(), b = phi.b().convert_to<double>();
    auto hh = std::make_shared<HFunction>(h);
    res.laplace = [phi, D, k, hh](cd p) { return alpha_multiplier(D, k, *hh, p) * laplace(phi, p); };
    if (mode == AlphaMode::laplace_domain) {
        res.method = h.is_zero ? "zero" : "multiplier";
        return res;
    }
    res.support_lo = a;
    res.support_hi = b;
    if (h.is_zero) {
        res.method = "zero";
        res.time = [](double) { return 0.0; };
        return res;
    }
    const Rational mu = k - 1;
    const bool integral = is_integer(mu);
    if (method == AlphaMethod::automatic)
        method = h.is_one ? (integral ? AlphaMethod::derivative : AlphaMethod::abel) : AlphaMethod::bromwich;
    if ((method == AlphaMethod::derivative || method == AlphaMethod::abel) && !h.is_one)
        throw InvalidArgument("closed-form time-domain alpha_D needs h = 1; use the Bromwich method");
    if (method == AlphaMethod::derivative) {
        if (!integral || mu < 0) throw InvalidArgument("derivative method needs k - 1 a nonnegative integer");
        int m = static_cast<int>(to_i64(mp::numerator(mu)));
        if (phi.derivatives_available() < m)
            throw InvalidArgument("time-domain alpha_D needs " + std::to_string(m) + " derivatives of " + phi.str());
        Rational c = 1;
        for (int j = 0; j < m; ++j) c *= Rational(D, 2);
        TestFunction tf = phi.scaled_derivative(m, c, -m);
        res.as_test_function = tf;
        res.time = [tf](double t) { return tf(t); };
        res.method = "derivative";
        return res;
    }
    if (method == AlphaMethod::abel) {
        if (integral || mu < 0) throw InvalidArgument("Abel method needs k - 1 a positive half-integer");
        int m = static_cast<int>(to_i64(mp::numerator(mu - Rational(1, 2))));
        if (phi.derivatives_available() < m + 1)
            throw InvalidArgument("half-integer alpha_D needs " + std::to_string(m + 1) + " derivatives of " + phi.str());
        double mud = mu.convert_to<double>();
        double scale = std::pow(static_cast<double>(D) / (2.0 * M_PI), mud);
        double inv_gamma = 1.0 / std::tgamma(-mud);
        res.support_hi = std::numeric_limits<double>::infinity();
        res.time = [phi, a, b, m, mud, scale, inv_gamma](double t) {
            if (t <= a) return 0.0;
            if (t > 2 * b) {
                // outside the support the Riemann-Liouville derivative is a regular integral
                auto g = [&](double s) { return phi(s) * std::pow(t - s, -mud - 1.0); };
                return scale * inv_gamma * integrate_gk(std::function<double(double)>(g), a, b, 1e-12).value;
            }
            // D^mu phi(t) = Gamma(1/2)^{-1} int_a^t phi^{(m+1)}(s) (t-s)^{-1/2} ds with s = t - u^2
            double lo = t > b ? std::sqrt(t - b) : 0.0, hi = std::sqrt(t - a);
            auto g = [&](double u) { return phi.derivative(m + 1, t - u * u); };
            double v = integrate_gk(std::function<double(double)>(g), lo, hi, 1e-11).value;
            return scale * 2.0 / std::sqrt(M_PI) * v;
        };
        res.method = "abel";
        return res;
    }
    // Bromwich line inversion of the multiplier image
    if (!(t_max > 0)) t_max = integral ? b : 20.0 * b;
    // invert mult(p) p^{-j} L(phi^{(j)})(p) rather than mult(p) L(phi)(p): the quotient stays bounded, so the
    // quadrature floor of the table is not amplified at large |p|
    int j = 0;
    if (mu > 0) {
        Integer fl = mp::numerator(mu) / mp::denominator(mu);
        j = static_cast<int>(to_i64(fl)) + (is_integer(mu) ? 0 : 1);
    }
    j = std::min(j, phi.derivatives_available());
    auto table = std::make_shared<LaplaceTable>(j > 0 ? phi.scaled_derivative(j, Rational(1), 0) : phi, 4000.0);
    const double c = std::pow(static_cast<double>(D) / (2.0 * M_PI), j);
    LineFunction G = [table, D, k, hh, j, c](double sigma, double omega0, double domega, int count, cd* out) {
        table->line(sigma, omega0, domega, count, out);
        for (int i = 0; i < count; ++i)
            out[i] *= c * alpha_multiplier(D, k - j, *hh, cd(sigma, omega0 + i * domega));
    };
    BromwichOptions opt;
    opt.t_max = t_max;
    auto inv = std::make_shared<BromwichInverter>(G, opt);
    res.bromwich_terms = inv->terms();
    res.bromwich_sigma = inv->sigma();
    double hi = integral ? b : std::numeric_limits<double>::infinity();
    res.support_hi = hi;
    res.time = [inv, a, hi](double t) { return (t <= a || t > hi) ? 0.0 : (*inv)(t); };
    res.method = "bromwich";
    return res;
}

cd b_factor(const SCParams& prm)
{
    const i64 N = prm.N, Np = prm.Np, D = prm.D;
    if (N <= 0 || Np <= 0 || D <= 0) throw InvalidArgument("b_factor: N, N', D must be positive");
    if (std::gcd(D, N * Np) != 1) throw InvalidArgument("b_factor: D must be coprime to N N'");
    bool inverted;
    i64 r;
    if (Np % N == 0) {
        r = Np / N;
        inverted = false;
    } else if (N % Np == 0) {
        r = N / Np;
        inverted = true;
    } else {
        throw InvalidArgument("b_factor is only defined here for N | N' or N' | N");
    }
    int sgn = (prm.k.doubled % 2 == 0) ? 1 : -1; // (-1)^{2k}
    // psi_D and chi are unit valued on r, so evaluating at 1/r means conjugating
    int psi_d = kronecker(sgn, D) * kronecker(r, D);
    Complex chir = prm.chi.value(r);
    if (inverted) chir = conj(chir);
    Complex pd = prm.psi.value(D);
    if (is_zero(pd)) throw InvalidArgument("b_factor: psi(D) = 0");
    Complex ratio = prm.psi_prime.value(D) / pd;
    std::complex<double> val = prm.lambda * static_cast<double>(psi_d) * to_cd(chir) * to_cd(ratio) *
                               std::pow(static_cast<double>(N) * static_cast<double>(Np), -prm.k.doubled / 4.0) *
                               static_cast<double>(Np);
    if (prm.k.is_integral() && ((prm.k.doubled / 2 - 1) % 2 != 0)) val = -val;
    return val;
}

SCReport sc_residual(const SCParams& prm, const TestFunction& phi, const std::vector<double>& p_samples, AlphaMethod method,
                     double t_cap_factor)
{
    SCReport rep;
    rep.b = b_factor(prm);
    const Rational k = prm.k.value();
    const bool integral = prm.k.is_integral();
    const double kd = k.convert_to<double>();
    const double a = phi.a().convert_to<double>(), b = phi.b().convert_to<double>();
    const double Nd = static_cast<double>(prm.N);
    rep.t_cap = integral ? b : t_cap_factor * b;

    AlphaResult alpha = alpha_apply(phi, prm.D, k, prm.h, AlphaMode::time_domain, method, rep.t_cap);
    rep.alpha_method = alpha.method;
    rep.bromwich_terms = alpha.bromwich_terms;
    rep.bromwich_sigma = alpha.bromwich_sigma;

    TestFunction phiL = phi.fricke(2 - k, prm.Np);
    auto inner = [&](double x) { return std::pow(Nd * x, -kd) * alpha.time(1.0 / (Nd * x)); };
    const double x_hi = 1.0 / (Nd * a);
    double x_lo = 0.0;
    std::vector<double> breaks;
    if (std::isfinite(alpha.support_hi)) {
        x_lo = 1.0 / (Nd * alpha.support_hi);
        breaks = {x_lo, x_hi};
    } else if (alpha.method == "bromwich") {
        x_lo = 1.0 / (Nd * rep.t_cap);
        breaks = {x_lo, 1.0 / (Nd * b), x_hi};
        rep.notes.push_back("alpha_D is known only for t <= " + std::to_string(rep.t_cap) +
                            "; the RHS integrand is extended as a constant on (0, " + std::to_string(x_lo) + ")");
    } else {
        breaks = {0.0, 1.0 / (Nd * 2 * b), 1.0 / (Nd * b), x_hi};
    }
    if (prm.h.is_zero) rep.notes.push_back("h = 0: both sides vanish identically");

    for (double p : p_samples)
        if (!(p > 0)) throw InvalidArgument("SC sample points must be positive");

    // alpha is sampled once on a composite Gauss-Legendre grid shared by every p; panels double until stable
    std::vector<cd> rhs(p_samples.size());
    if (!prm.h.is_zero) {
        const bool extend = alpha.method == "bromwich" && !std::isfinite(alpha.support_hi) && x_lo > 0;
        const double ext = extend ? inner(x_lo) : 0.0;
        std::vector<cd> prev;
        bool done = false;
        for (int panels = 2; panels <= 256 && !done; panels *= 2) {
            NodeTable g = gauss_legendre_composite(breaks, panels);
            std::vector<double> f(g.t.size());
            for (std::size_t i = 0; i < g.t.size(); ++i) f[i] = g.w[i] * inner(g.t[i]);
            std::vector<cd> cur(p_samples.size());
            double worst = 0;
            for (std::size_t s = 0; s < p_samples.size(); ++s) {
                const double p = p_samples[s];
                double v = 0, l1 = 0;
                for (std::size_t i = 0; i < g.t.size(); ++i) {
                    double e = std::exp(-p * g.t[i]) * f[i];
                    v += e;
                    l1 += std::abs(e);
                }
                if (extend) v += ext * (1.0 - std::exp(-p * x_lo)) / p;
                cur[s] = v;
                if (!prev.empty()) worst = std::max(worst, std::abs(cur[s] - prev[s]) / std::max(l1, 1e-300));
            }
            done = !prev.empty() && worst <= 1e-10;
            prev = std::move(cur);
        }
        if (!done) throw NumericalFailure("SC right-hand side did not converge on 256 panels per piece");
        rhs = prev;
    }

    for (std::size_t i = 0; i < p_samples.size(); ++i) {
        const double p = p_samples[i];
        SCSample s;
        s.p = p;
        s.lhs = rep.b * alpha_multiplier(prm.D, k, prm.h, cd(p)) * laplace(phiL, cd(p));
        s.rhs = rhs[i];
        double den = std::max(std::abs(s.lhs), std::abs(s.rhs));
        s.residual = den == 0.0 ? 0.0 : std::abs(s.lhs - s.rhs) / den;
        rep.max_residual = std::max(rep.max_residual, s.residual);
        rep.samples.push_back(s);
    }
    return rep;
}

} // namespace bolhalf
