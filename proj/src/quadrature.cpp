#include "bolhalf/quadrature.hpp"

#include "bolhalf/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bolhalf {

namespace {

struct RawGK {
    double value = 0, error = 0, l1 = 0;
};

RawGK raw_gk(const std::function<double(double)>& f, double a, double b, double rtol, unsigned max_depth)
{
    // |K15 - G7| overstates the error of smooth integrands and deep bisection at the rounding floor only adds
    // noise to it, so raise the depth gradually and also accept two consecutive runs that agree
    RawGK best;
    best.error = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (unsigned depth = std::min(4u, max_depth);; depth = std::min(depth + 2, max_depth)) {
        RawGK r;
        r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, depth, rtol, &r.error, &r.l1);
        double change = std::abs(r.value - prev);
        if (change <= 0.01 * rtol * r.l1) r.error = std::min(r.error, change);
        prev = r.value;
        if (r.error < best.error) best = r;
        if (best.error <= rtol * best.l1 || depth == max_depth) break;
    }
    return best;
}

void check_gk(double error, double l1, double rtol)
{
    if (error > rtol * std::max(l1, 1e-300) && error > 1e-300)
        throw NumericalFailure("Gauss-Kronrod quadrature did not reach rtol " + format_sci(rtol) + " (error estimate " +
                               format_sci(error) + ", L1 norm " + format_sci(l1) + ")");
}

} // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, double rtol, unsigned max_depth)
{
    auto r = raw_gk(f, a, b, rtol, max_depth);
    check_gk(r.error, r.l1, rtol);
    return {r.value, r.error};
}

CQuadResult integrate_gk_complex(const std::function<std::complex<double>(double)>& f, double a, double b, double rtol,
                                 unsigned max_depth)
{
    auto re = raw_gk([&](double t) { return f(t).real(); }, a, b, rtol, max_depth);
    auto im = raw_gk([&](double t) { return f(t).imag(); }, a, b, rtol, max_depth);
    double err = std::hypot(re.error, im.error);
    check_gk(err, std::hypot(re.l1, im.l1), rtol);
    return {{re.value, im.value}, err};
}

CQuadResult integrate_gk_pieces(const std::function<std::complex<double>(double)>& f, const std::vector<double>& breaks,
                                double rtol)
{
    CQuadResult out;
    double l1 = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto re = raw_gk([&](double t) { return f(t).real(); }, breaks[i], breaks[i + 1], rtol, 24);
        auto im = raw_gk([&](double t) { return f(t).imag(); }, breaks[i], breaks[i + 1], rtol, 24);
        out.value += std::complex<double>(re.value, im.value);
        out.error += std::hypot(re.error, im.error);
        l1 += std::hypot(re.l1, im.l1);
    }
    check_gk(out.error, l1, rtol);
    return out;
}

NodeTable gauss_legendre_composite(const std::vector<double>& breaks, int panels)
{
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa(); // nonnegative half of a symmetric rule
    const auto& w = G::weights();
    NodeTable tab;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = breaks[i], hi = breaks[i + 1];
        if (!(hi > lo)) continue;
        double step = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            double c = lo + (p + 0.5) * step, h = 0.5 * step;
            for (std::size_t j = 0; j < x.size(); ++j) {
                tab.t.push_back(c + h * x[j]);
                tab.w.push_back(h * w[j]);
                if (x[j] != 0.0) {
                    tab.t.push_back(c - h * x[j]);
                    tab.w.push_back(h * w[j]);
                }
            }
        }
    }
    return tab;
}

std::vector<TSNode> tanh_sinh_level(const Real& a, const Real& b, int level)
{
    std::vector<TSNode> out;
    Real h = mp::ldexp(Real(1), -level);
    Real half_len = (b - a) / 2;
    Real halfpi = pi_real() / 2;
    Real tiny = mp::ldexp(Real(1), -static_cast<int>(working_bits()) - 16);
    int step = level == 0 ? 1 : 2;
    int k0 = level == 0 ? 0 : 1;
    for (int k = k0;; k += step) {
        Real s = h * k;
        Real u = halfpi * mp::sinh(s);
        Real cu = mp::cosh(u);
        // distance to the nearer endpoint in units of half_len: 1 - tanh(u) = e^{-u}/cosh(u)
        Real gap = mp::exp(-u) / cu;
        Real w = h * halfpi * mp::cosh(s) / (cu * cu) * half_len;
        if (w < tiny * half_len || gap < tiny) break;
        out.push_back({b - half_len * gap, w});
        if (k != 0) out.push_back({a + half_len * gap, w});
    }
    return out;
}

MpQuadResult tanh_sinh(const std::function<Complex(const Real&)>& f, const Real& a, const Real& b, const Real& rtol,
                       int max_level)
{
    MpQuadResult r;
    Complex sum; // sum of w f over all nodes so far, h folded into w per level
    Real abs_sum = 0;
    Complex prev;
    Real floor_tol = mp::ldexp(Real(1), -static_cast<int>(working_bits()) + 8);
    for (int level = 0; level <= max_level; ++level) {
        // halving h: previous nodes keep their sum, scaled by 1/2
        if (level > 0) {
            sum = sum * Complex(Real(0.5));
            abs_sum /= 2;
        }
        for (const auto& nd : tanh_sinh_level(a, b, level)) {
            Complex v = f(nd.t) * Complex(nd.w);
            sum += v;
            abs_sum += abs(v);
            ++r.nodes;
        }
        if (level >= 3) {
            Real err = abs(sum - prev);
            if (err <= std::max(Real(rtol * abs(sum)), Real(floor_tol * abs_sum))) {
                r.value = sum;
                r.error = err;
                r.abs_scale = abs_sum;
                r.level = level;
                return r;
            }
        }
        prev = sum;
    }
    throw NumericalFailure("tanh-sinh quadrature did not converge by level " + std::to_string(max_level) +
                           " (last change " + to_string(abs(sum - prev), 6) + ")");
}

} // namespace bolhalf
