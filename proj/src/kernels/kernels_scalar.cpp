#include "bolhalf/kernels.hpp"

#include <cmath>

namespace bolhalf::kernels {

namespace {
double expsum_real_scalar(const double* t, const double* w, std::size_t n, double s)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += w[j] * std::exp(-s * t[j]);
    return acc;
}

void expsum_complex_scalar(const double* t, const double* w, std::size_t n, double sr, double si, double* re, double* im)
{
    double ar = 0.0, ai = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double m = w[j] * std::exp(-sr * t[j]);
        double ph = si * t[j];
        ar += m * std::cos(ph);
        ai -= m * std::sin(ph);
    }
    *re = ar;
    *im = ai;
}

double trig_sum_scalar(const double* omega, const double* a, const double* b, std::size_t n, double x)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double ph = omega[k] * x;
        acc += a[k] * std::cos(ph) + b[k] * std::sin(ph);
    }
    return acc;
}
void rotate_sum_scalar(double* zr, double* zi, const double* rr, const double* ri, std::size_t n, double* re, double* im)
{
    double ar = 0.0, ai = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double x = zr[j], y = zi[j];
        ar += x;
        ai += y;
        zr[j] = x * rr[j] - y * ri[j];
        zi[j] = x * ri[j] + y * rr[j];
    }
    *re = ar;
    *im = ai;
}
} // namespace

const KernelTable& scalar_table()
{
    static const KernelTable t{Isa::scalar, expsum_real_scalar, expsum_complex_scalar, trig_sum_scalar,
                                 rotate_sum_scalar};
    return t;
}

} // namespace bolhalf::kernels
