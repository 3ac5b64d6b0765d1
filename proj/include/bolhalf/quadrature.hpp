#pragma once

#include "bolhalf/numeric.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace bolhalf {

struct QuadResult {
    double value = 0;
    double error = 0;
};
struct CQuadResult {
    std::complex<double> value;
    double error = 0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]; throws NumericalFailure if rtol is not reached.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, double rtol = 1e-12,
                        unsigned max_depth = 24);
CQuadResult integrate_gk_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                 double rtol = 1e-12, unsigned max_depth = 24);
// Sum over the pieces between consecutive breakpoints.
CQuadResult integrate_gk_pieces(const std::function<std::complex<double>(double)>& f, const std::vector<double>& breaks,
                                double rtol = 1e-12);

// Composite 20-point Gauss-Legendre nodes: each piece [breaks[i], breaks[i+1]] split into `panels` panels.
struct NodeTable {
    std::vector<double> t, w;
};
NodeTable gauss_legendre_composite(const std::vector<double>& breaks, int panels);

// Double-exponential (tanh-sinh) rule at the working precision.
struct TSNode {
    Real t;
    Real w; // includes the step h and the (b - a)/2 Jacobian
};
// Nodes added at refinement level `level` (level 0: all k h with h = 1; level l > 0: odd k with h = 2^-l).
std::vector<TSNode> tanh_sinh_level(const Real& a, const Real& b, int level);

struct MpQuadResult {
    Complex value;
    Real error;     // |I_l - I_{l-1}| at the accepted level
    Real abs_scale; // sum of |w f|
    int level = 0;
    int nodes = 0;
};
// Level doubling until |I_l - I_{l-1}| <= max(rtol |I_l|, 2^{-bits+8} abs_scale).
MpQuadResult tanh_sinh(const std::function<Complex(const Real&)>& f, const Real& a, const Real& b, const Real& rtol,
                       int max_level = 12);

} // namespace bolhalf
