#pragma once

#include <cstddef>

// Double-precision hot loops of the L-series laboratory.
namespace bolhalf::kernels {

enum class Isa { scalar, avx2 };

// sum_j w_j exp(-s t_j)
using ExpSumRealFn = double (*)(const double* t, const double* w, std::size_t n, double s);
// sum_j w_j exp(-(sr + i si) t_j), returned in (re, im)
using ExpSumComplexFn = void (*)(const double* t, const double* w, std::size_t n, double sr, double si, double* re,
                                 double* im);
// sum_k a_k cos(omega_k x) + b_k sin(omega_k x)
using TrigSumFn = double (*)(const double* omega, const double* a, const double* b, std::size_t n, double x);
// (re, im) = sum_j z_j, then z_j *= r_j in place (complex numbers as split real/imaginary arrays)
using RotateSumFn = void (*)(double* zr, double* zi, const double* rr, const double* ri, std::size_t n, double* re,
                             double* im);

struct KernelTable {
    Isa isa;
    ExpSumRealFn expsum_real;
    ExpSumComplexFn expsum_complex;
    TrigSumFn trig_sum;
    RotateSumFn rotate_sum;
};

const KernelTable& scalar_table();
// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA
const KernelTable* avx2_table();

// Selected once: AVX2 when available unless BOLHALF_SIMD=scalar.
const KernelTable& active();
void force(Isa isa); // throws InvalidArgument if unavailable
const char* isa_name(Isa isa);

inline double expsum_real(const double* t, const double* w, std::size_t n, double s)
{
    return active().expsum_real(t, w, n, s);
}
inline void expsum_complex(const double* t, const double* w, std::size_t n, double sr, double si, double* re, double* im)
{
    active().expsum_complex(t, w, n, sr, si, re, im);
}
inline double trig_sum(const double* omega, const double* a, const double* b, std::size_t n, double x)
{
    return active().trig_sum(omega, a, b, n, x);
}

inline void rotate_sum(double* zr, double* zi, const double* rr, const double* ri, std::size_t n, double* re, double* im)
{
    active().rotate_sum(zr, zi, rr, ri, n, re, im);
}

} // namespace bolhalf::kernels
