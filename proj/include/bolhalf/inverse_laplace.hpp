#pragma once

#include "bolhalf/numeric.hpp"
#include "bolhalf/testfn.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace bolhalf {

using cd = std::complex<double>;

// Laplace transform of a test function through a fixed composite Gauss-Legendre table,
// resolving |Im s| up to omega_max; evaluated with the SIMD exponential-sum kernels.
class LaplaceTable {
public:
    explicit LaplaceTable(const TestFunction& phi, double omega_max = 2000.0);
    cd operator()(cd s) const;
    double operator()(double s) const;
    // out[k] = (L phi)(sigma + i (omega0 + k domega)), k < count; a rotation recurrence re-seeded every 64 steps
    void line(double sigma, double omega0, double domega, int count, cd* out) const;
    std::size_t nodes() const { return t_.size(); }

private:
    std::vector<double> t_, w_;
};

// Fixed Talbot contour (Abate-Valko) at raised working precision, node-doubling check M vs 2M.
struct TalbotResult {
    Real value;
    Real change; // |f_M - f_2M|
    int nodes = 0;
    int bits = 0;
};
TalbotResult talbot_invert(const std::function<Complex(const Complex&)>& F, const Real& t, int M = 64,
                           double rtol = 1e-10);

// Damped Fourier-series (Bromwich line) inversion of a real-valued original:
//   a(t) = e^{sigma t}/T [ Re G(sigma)/2 + sum_k Re(G(sigma + i k pi/T) e^{i k pi t/T}) ],  0 < t < 2T.
// sigma is chosen so that the aliasing factor e^{-2 sigma T} is below alias_tol unless given.
struct BromwichOptions {
    double t_max = 4.0;         // largest t requested
    double alias_tol = 1e-12;   // ignored when sigma >= 0 is given
    double sigma = -1.0;
    double decay_tol = 1e-14;   // stop once |G| stays below decay_tol * max|G| for `quiet` terms
    int quiet = 64;
    int max_terms = 1 << 17;
};

// Values of an image on sigma + i (omega0 + k domega), k < count.
using LineFunction = std::function<void(double sigma, double omega0, double domega, int count, cd* out)>;

class BromwichInverter {
public:
    BromwichInverter(const std::function<cd(cd)>& G, const BromwichOptions& opt = {});
    BromwichInverter(const LineFunction& G, const BromwichOptions& opt = {});
    double operator()(double t) const;
    double sigma() const { return sigma_; }
    double period_half() const { return T_; }
    int terms() const { return static_cast<int>(omega_.size()); }
    double omega_max() const { return omega_.empty() ? 0.0 : omega_.back(); }

private:
    double sigma_, T_, g0_;
    std::vector<double> omega_, a_, b_;
};

} // namespace bolhalf
