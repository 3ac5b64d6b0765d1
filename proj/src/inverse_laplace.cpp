#include "bolhalf/inverse_laplace.hpp"

#include "bolhalf/errors.hpp"
#include "bolhalf/kernels.hpp"
#include "bolhalf/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bolhalf {

LaplaceTable::LaplaceTable(const TestFunction& phi, double omega_max)
{
    auto br = phi.breakpoints_d();
    double len = br.back() - br.front();
    int panels = static_cast<int>(std::ceil(omega_max * len / 8.0)) + 4;
    NodeTable tab = gauss_legendre_composite(br, panels);
    for (std::size_t j = 0; j < tab.t.size(); ++j) {
        double v = phi(tab.t[j]);
        if (v == 0.0) continue;
        t_.push_back(tab.t[j]);
        w_.push_back(tab.w[j] * v);
    }
}

cd LaplaceTable::operator()(cd s) const
{
    double re, im;
    kernels::expsum_complex(t_.data(), w_.data(), t_.size(), s.real(), s.imag(), &re, &im);
    return {re, im};
}

double LaplaceTable::operator()(double s) const { return kernels::expsum_real(t_.data(), w_.data(), t_.size(), s); }

void LaplaceTable::line(double sigma, double omega0, double domega, int count, cd* out) const
{
    const std::size_t n = t_.size();
    std::vector<double> zr(n), zi(n), rr(n), ri(n);
    for (std::size_t j = 0; j < n; ++j) {
        rr[j] = std::cos(domega * t_[j]);
        ri[j] = -std::sin(domega * t_[j]);
    }
    constexpr int kReseed = 64;
    for (int k = 0; k < count; ++k) {
        if (k % kReseed == 0) {
            double om = omega0 + k * domega;
            for (std::size_t j = 0; j < n; ++j) {
                double m = w_[j] * std::exp(-sigma * t_[j]);
                zr[j] = m * std::cos(om * t_[j]);
                zi[j] = -m * std::sin(om * t_[j]);
            }
        }
        double re, im;
        kernels::rotate_sum(zr.data(), zi.data(), rr.data(), ri.data(), n, &re, &im);
        out[k] = {re, im};
    }
}

namespace {
Real talbot_once(const std::function<Complex(const Complex&)>& F, const Real& t, int M)
{
    Real r = Real(2 * M) / (5 * t);
    Real pi = pi_real();
    Complex acc = F(Complex(r)) * Complex(mp::exp(r * t)) * Complex(Real(0.5));
    for (int k = 1; k < M; ++k) {
        Real th = pi * k / M;
        Real cot = mp::cos(th) / mp::sin(th);
        Complex S(r * th * cot, r * th);
        Real sig = th + (th * cot - 1) * cot;
        Complex term = exp(S * Complex(t)) * F(S) * Complex(Real(1), sig);
        acc.re += term.re;
    }
    return r / M * acc.re;
}
} // namespace

TalbotResult talbot_invert(const std::function<Complex(const Complex&)>& F, const Real& t, int M, double rtol)
{
    if (!(t > 0)) throw InvalidArgument("Talbot inversion needs t > 0");
    if (M < 4) throw InvalidArgument("Talbot node count must be at least 4");
    TalbotResult res;
    res.bits = std::max<int>(static_cast<int>(working_bits()), static_cast<int>(3.4 * 2 * M) + 32);
    ScopedPrecision sp(res.bits);
    Real tt = t;
    Real f1 = talbot_once(F, tt, M);
    Real f2 = talbot_once(F, tt, 2 * M);
    res.value = f2;
    res.change = abs(f2 - f1);
    res.nodes = 2 * M;
    Real scale = std::max(Real(abs(f2)), Real(1e-30));
    if (!(res.change <= Real(rtol) * scale))
        throw NumericalFailure("Talbot inversion did not converge at t=" + to_string(tt, 8) + ": nodes " +
                               std::to_string(M) + " -> " + std::to_string(2 * M) + " changed the value by " +
                               to_string(res.change, 4) + " (value " + to_string(f2, 6) + ", contour r=2M/(5t))");
    return res;
}

BromwichInverter::BromwichInverter(const std::function<cd(cd)>& G, const BromwichOptions& opt)
    : BromwichInverter(LineFunction([&G](double sigma, double omega0, double domega, int count, cd* out) {
                           for (int k = 0; k < count; ++k) out[k] = G(cd(sigma, omega0 + k * domega));
                       }),
                       opt)
{
}

BromwichInverter::BromwichInverter(const LineFunction& G, const BromwichOptions& opt)
{
    if (!(opt.t_max > 0)) throw InvalidArgument("Bromwich inversion needs t_max > 0");
    // valid for t < 2T; aliasing from a(t + 2T) is damped by e^{-2 sigma T}, and e^{sigma t_max} stays near alias_tol^{-1/4}
    T_ = 2.0 * opt.t_max;
    sigma_ = opt.sigma >= 0 ? opt.sigma : std::log(1.0 / opt.alias_tol) / (2.0 * T_);
    const double dw = M_PI / T_;
    constexpr int kBlock = 256;
    std::vector<cd> buf(kBlock);
    G(sigma_, 0.0, dw, 1, buf.data());
    g0_ = buf[0].real();
    double gmax = std::abs(g0_);
    int quiet = 0;
    for (int k0 = 1; k0 <= opt.max_terms; k0 += kBlock) {
        int cnt = std::min(kBlock, opt.max_terms - k0 + 1);
        G(sigma_, k0 * dw, dw, cnt, buf.data());
        for (int i = 0; i < cnt; ++i) {
            const cd g = buf[static_cast<std::size_t>(i)];
            double m = std::abs(g);
            gmax = std::max(gmax, m);
            omega_.push_back((k0 + i) * dw);
            a_.push_back(g.real());
            b_.push_back(-g.imag());
            quiet = (m <= opt.decay_tol * gmax) ? quiet + 1 : 0;
            if (quiet >= opt.quiet) return;
        }
    }
    throw NumericalFailure("Bromwich inversion: image did not decay below " + format_sci(opt.decay_tol) +
                           " of its maximum within " + std::to_string(opt.max_terms) + " terms");
}

double BromwichInverter::operator()(double t) const
{
    double s = kernels::trig_sum(omega_.data(), a_.data(), b_.data(), omega_.size(), t);
    return std::exp(sigma_ * t) / T_ * (0.5 * g0_ + s);
}

} // namespace bolhalf
