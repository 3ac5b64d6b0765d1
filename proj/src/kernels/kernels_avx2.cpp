#include "bolhalf/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace bolhalf::kernels {

namespace {

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// exp(x): x = k ln2 + r with a two-part ln2, Taylor polynomial of degree 13 on |r| <= ln2/2
inline __m256d exp4(__m256d x)
{
    const __m256d lo = _mm256_set1_pd(-745.0), hi = _mm256_set1_pd(709.0);
    __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);
    __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), r);
    static const double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                               1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
                               1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        0.5,
                               1.0,                1.0};
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));
    // 2^k in two halves so that k = -1074..-1023 (subnormal results) stays representable
    __m128i ki = _mm256_cvtpd_epi32(k);
    __m128i k1 = _mm_srai_epi32(ki, 1), k2 = _mm_sub_epi32(ki, k1);
    auto pow2 = [](__m128i e) {
        __m256i e64 = _mm256_cvtepi32_epi64(e);
        e64 = _mm256_add_epi64(e64, _mm256_set1_epi64x(1023));
        return _mm256_castsi256_pd(_mm256_slli_epi64(e64, 52));
    };
    __m256d res = _mm256_mul_pd(_mm256_mul_pd(p, pow2(k1)), pow2(k2));
    return _mm256_andnot_pd(under, res);
}

// sin and cos: x = k pi/2 + r (three-part pi/2), Taylor polynomials of degree 17 / 16 on |r| <= pi/4
inline void sincos4(__m256d x, __m256d* s, __m256d* c)
{
    __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.63661977236758134308)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.57079632679489655800e+00), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.12323399573676588613e-17), r);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(-2.02514267033813980e-33), r);
    __m256d r2 = _mm256_mul_pd(r, r);
    static const double sc[] = {1.0 / 355687428096000.0, -1.0 / 1307674368000.0, 1.0 / 6227020800.0, -1.0 / 39916800.0,
                                1.0 / 362880.0,          -1.0 / 5040.0,          1.0 / 120.0,        -1.0 / 6.0,
                                1.0};
    static const double cc[] = {1.0 / 20922789888000.0, -1.0 / 87178291200.0, 1.0 / 479001600.0, -1.0 / 3628800.0,
                                1.0 / 40320.0,          -1.0 / 720.0,         1.0 / 24.0,        -0.5,
                                1.0};
    __m256d ps = _mm256_set1_pd(sc[0]), pc = _mm256_set1_pd(cc[0]);
    for (int i = 1; i < 9; ++i) {
        ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(sc[i]));
        pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(cc[i]));
    }
    ps = _mm256_mul_pd(ps, r);
    // quadrant q = k mod 4: (sin, cos) = (s, c), (c, -s), (-s, -c), (-c, s)
    __m128i q = _mm_and_si128(_mm256_cvtpd_epi32(k), _mm_set1_epi32(3));
    __m256i q64 = _mm256_cvtepi32_epi64(q);
    __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(1)));
    __m256d sinv = _mm256_blendv_pd(ps, pc, swap);
    __m256d cosv = _mm256_blendv_pd(pc, ps, swap);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d sneg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, _mm256_set1_epi64x(2)), _mm256_set1_epi64x(2)));
    __m256i qp1 = _mm256_and_si256(_mm256_add_epi64(q64, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(2));
    __m256d cneg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(qp1, _mm256_set1_epi64x(2)));
    *s = _mm256_xor_pd(sinv, _mm256_and_pd(sneg, sign));
    *c = _mm256_xor_pd(cosv, _mm256_and_pd(cneg, sign));
}

double expsum_real_avx2(const double* t, const double* w, std::size_t n, double s)
{
    __m256d acc = _mm256_setzero_pd();
    __m256d ms = _mm256_set1_pd(-s);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d e = exp4(_mm256_mul_pd(ms, _mm256_loadu_pd(t + j)));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), e, acc);
    }
    double r = hsum(acc);
    for (; j < n; ++j) r += w[j] * std::exp(-s * t[j]);
    return r;
}

void expsum_complex_avx2(const double* t, const double* w, std::size_t n, double sr, double si, double* re, double* im)
{
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    __m256d msr = _mm256_set1_pd(-sr), vsi = _mm256_set1_pd(si);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d tj = _mm256_loadu_pd(t + j);
        __m256d m = _mm256_mul_pd(_mm256_loadu_pd(w + j), exp4(_mm256_mul_pd(msr, tj)));
        __m256d sv, cv;
        sincos4(_mm256_mul_pd(vsi, tj), &sv, &cv);
        ar = _mm256_fmadd_pd(m, cv, ar);
        ai = _mm256_fnmadd_pd(m, sv, ai);
    }
    double xr = hsum(ar), xi = hsum(ai);
    for (; j < n; ++j) {
        double m = w[j] * std::exp(-sr * t[j]);
        xr += m * std::cos(si * t[j]);
        xi -= m * std::sin(si * t[j]);
    }
    *re = xr;
    *im = xi;
}

double trig_sum_avx2(const double* omega, const double* a, const double* b, std::size_t n, double x)
{
    __m256d acc = _mm256_setzero_pd();
    __m256d vx = _mm256_set1_pd(x);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d sv, cv;
        sincos4(_mm256_mul_pd(_mm256_loadu_pd(omega + k), vx), &sv, &cv);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), cv, acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(b + k), sv, acc);
    }
    double r = hsum(acc);
    for (; k < n; ++k) r += a[k] * std::cos(omega[k] * x) + b[k] * std::sin(omega[k] * x);
    return r;
}
void rotate_sum_avx2(double* zr, double* zi, const double* rr, const double* ri, std::size_t n, double* re, double* im)
{
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_loadu_pd(zr + j), y = _mm256_loadu_pd(zi + j);
        __m256d cr = _mm256_loadu_pd(rr + j), ci = _mm256_loadu_pd(ri + j);
        ar = _mm256_add_pd(ar, x);
        ai = _mm256_add_pd(ai, y);
        _mm256_storeu_pd(zr + j, _mm256_fmsub_pd(x, cr, _mm256_mul_pd(y, ci)));
        _mm256_storeu_pd(zi + j, _mm256_fmadd_pd(x, ci, _mm256_mul_pd(y, cr)));
    }
    double xr = hsum(ar), xi = hsum(ai);
    for (; j < n; ++j) {
        double x = zr[j], y = zi[j];
        xr += x;
        xi += y;
        zr[j] = x * rr[j] - y * ri[j];
        zi[j] = x * ri[j] + y * rr[j];
    }
    *re = xr;
    *im = xi;
}
} // namespace

const KernelTable& avx2_kernels()
{
    static const KernelTable t{Isa::avx2, expsum_real_avx2, expsum_complex_avx2, trig_sum_avx2, rotate_sum_avx2};
    return t;
}

} // namespace bolhalf::kernels
