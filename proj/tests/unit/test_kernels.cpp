#include "doctest.h"

#include "bolhalf/kernels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

using namespace bolhalf::kernels;

namespace {
struct Data {
    std::vector<double> t, w;
};
Data random_nodes(std::mt19937_64& rng, std::size_t n, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi), v(-1.0, 1.0);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        d.t.push_back(u(rng));
        d.w.push_back(v(rng));
    }
    return d;
}
double abs_sum(const std::vector<double>& w, const std::vector<double>& t, double s)
{
    double a = 0;
    for (std::size_t i = 0; i < w.size(); ++i) a += std::abs(w[i]) * std::exp(-s * t[i]);
    return a;
}
} // namespace

TEST_CASE("scalar kernels against direct sums")
{
    const auto& k = scalar_table();
    std::vector<double> t{0.5, 1.0, 2.0}, w{1.0, -2.0, 0.25};
    double direct = std::exp(-1.5) - 2 * std::exp(-3.0) + 0.25 * std::exp(-6.0);
    CHECK(k.expsum_real(t.data(), w.data(), 3, 3.0) == doctest::Approx(direct).epsilon(1e-15));
    double re, im;
    k.expsum_complex(t.data(), w.data(), 3, 0.0, 0.0, &re, &im);
    CHECK(re == doctest::Approx(-0.75));
    CHECK(im == doctest::Approx(0.0));
}

TEST_CASE("AVX2 kernels match the scalar reference")
{
    const KernelTable* v = avx2_table();
    if (!v) {
        MESSAGE("AVX2 kernels unavailable; equivalence test skipped");
        return;
    }
    const auto& s = scalar_table();
    std::mt19937_64 rng(12);
    for (std::size_t n : {0, 1, 3, 4, 7, 64, 1001}) {
        auto d = random_nodes(rng, n, 0.01, 3.0);
        for (double sr : {0.0, 0.7, 25.0, 400.0, -3.0}) {
            double a = s.expsum_real(d.t.data(), d.w.data(), n, sr);
            double b = v->expsum_real(d.t.data(), d.w.data(), n, sr);
            CHECK(std::abs(a - b) <= 1e-14 * abs_sum(d.w, d.t, sr) + 1e-300);
            for (double si : {0.0, 1.0, 333.3, 4000.0}) {
                double r1, i1, r2, i2;
                s.expsum_complex(d.t.data(), d.w.data(), n, sr, si, &r1, &i1);
                v->expsum_complex(d.t.data(), d.w.data(), n, sr, si, &r2, &i2);
                double tol = 1e-13 * abs_sum(d.w, d.t, sr) * (1.0 + std::abs(si) * 3.0 * 1e-3) + 1e-300;
                CHECK(std::abs(r1 - r2) <= tol);
                CHECK(std::abs(i1 - i2) <= tol);
            }
        }
        std::vector<double> b(d.w.rbegin(), d.w.rend());
        for (double x : {0.0, 0.3, 1.7, 12.5}) {
            double a = s.trig_sum(d.t.data(), d.w.data(), b.data(), n, x * 100);
            double c = v->trig_sum(d.t.data(), d.w.data(), b.data(), n, x * 100);
            double mag = 0;
            for (std::size_t i = 0; i < n; ++i) mag += std::abs(d.w[i]) + std::abs(b[i]);
            CHECK(std::abs(a - c) <= 1e-13 * mag * (1.0 + x) + 1e-300);
        }
    }
    // extreme exponents: underflow to zero and subnormal range
    std::vector<double> t{1.0, 1.0, 1.0, 1.0}, w{1.0, 1.0, 1.0, 1.0};
    CHECK(v->expsum_real(t.data(), w.data(), 4, 800.0) == 0.0);
    double sub = v->expsum_real(t.data(), w.data(), 4, 740.0);
    CHECK(sub == doctest::Approx(4 * std::exp(-740.0)).epsilon(1e-6));
    double big = v->expsum_real(t.data(), w.data(), 4, -700.0);
    CHECK(big == doctest::Approx(4 * std::exp(700.0)).epsilon(1e-13));
}

TEST_CASE("dispatch")
{
    Isa before = active().isa;
    force(Isa::scalar);
    CHECK(active().isa == Isa::scalar);
    if (avx2_table()) {
        force(Isa::avx2);
        CHECK(active().isa == Isa::avx2);
    }
    force(before);
    CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
}

TEST_CASE("rotate_sum: scalar reference and AVX2 agree over repeated steps")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, 6.283185307179586);
    for (std::size_t n : {0, 1, 5, 8, 257}) {
        std::vector<double> zr(n), zi(n), rr(n), ri(n);
        for (std::size_t j = 0; j < n; ++j) {
            zr[j] = u(rng);
            zi[j] = u(rng);
            double th = ang(rng);
            rr[j] = std::cos(th);
            ri[j] = std::sin(th);
        }
        // direct: sum z_j e^{i th_j step}
        auto zr2 = zr, zi2 = zi;
        const auto& s = scalar_table();
        for (int step = 0; step < 16; ++step) {
            double dre = 0, dim = 0;
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> z = std::complex<double>(zr2[j], zi2[j]) *
                                         std::pow(std::complex<double>(rr[j], ri[j]), step);
                dre += z.real();
                dim += z.imag();
            }
            double re, im;
            s.rotate_sum(zr.data(), zi.data(), rr.data(), ri.data(), n, &re, &im);
            CHECK(std::abs(re - dre) <= 1e-13 * (n + 1));
            CHECK(std::abs(im - dim) <= 1e-13 * (n + 1));
        }
        const KernelTable* v = avx2_table();
        if (!v) continue;
        auto ar = zr2, ai = zi2, br = zr2, bi = zi2;
        for (int step = 0; step < 16; ++step) {
            double r1, i1, r2, i2;
            s.rotate_sum(ar.data(), ai.data(), rr.data(), ri.data(), n, &r1, &i1);
            v->rotate_sum(br.data(), bi.data(), rr.data(), ri.data(), n, &r2, &i2);
            CHECK(std::abs(r1 - r2) <= 1e-14 * (n + 1));
            CHECK(std::abs(i1 - i2) <= 1e-14 * (n + 1));
        }
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(ar[j] - br[j]) <= 1e-14);
    }
}
