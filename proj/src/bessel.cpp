#include "bolhalf/lseries.hpp"

#include "bolhalf/errors.hpp"

#include <cmath>

namespace bolhalf {

Real bessel_half_mp(int n, int sign, const Real& z)
{
    if (n < 0) throw InvalidArgument("bessel_half needs n >= 0");
    if (sign != 1 && sign != -1) throw InvalidArgument("bessel_half sign must be +1 or -1");
    if (!(z > 0)) throw InvalidArgument("bessel_half needs z > 0");
    // (-(1/z) d/dz)^n (f0) = A(w) sin z + B(w) cos z with w = 1/z;
    // one step: A -> w^3 A'(w) + w B, B -> -w A + w^3 B'(w)
    std::vector<Integer> A, B;
    if (sign > 0)
        A = {Integer(0), Integer(1)};
    else
        B = {Integer(0), Integer(1)};
    auto deriv_shift = [](const std::vector<Integer>& P) {
        std::vector<Integer> r(P.size() + 2, Integer(0)); // w^3 P'(w)
        for (std::size_t i = 1; i < P.size(); ++i) r[i + 2] += P[i] * static_cast<long>(i);
        return r;
    };
    for (int step = 0; step < n; ++step) {
        std::vector<Integer> nA = deriv_shift(A), nB = deriv_shift(B);
        nA.resize(std::max({nA.size(), B.size() + 1, A.size() + 1}), Integer(0));
        nB.resize(std::max({nB.size(), A.size() + 1, B.size() + 1}), Integer(0));
        for (std::size_t i = 0; i < B.size(); ++i) nA[i + 1] += B[i];
        for (std::size_t i = 0; i < A.size(); ++i) nB[i + 1] -= A[i];
        A = std::move(nA);
        B = std::move(nB);
    }
    double lz = std::log2(z.convert_to<double>());
    unsigned guard = 64 + static_cast<unsigned>(std::max(0.0, -lz) * 2 * (n + 1));
    Real out;
    {
        ScopedPrecision sp(working_bits() + guard);
        Real zz = z;
        Real w = 1 / zz;
        auto eval = [&](const std::vector<Integer>& P) {
            Real acc = 0;
            for (std::size_t i = P.size(); i-- > 0;) acc = acc * w + to_real(P[i]);
            return acc;
        };
        Real val = eval(A) * mp::sin(zz) + eval(B) * mp::cos(zz);
        Real pre = mp::sqrt(2 / pi_real()) * mp::pow(zz, Real(n) + Real(0.5));
        out = pre * val;
        if (sign < 0 && n % 2 == 1) out = -out;
    }
    return out;
}

double bessel_half(int n, int sign, double z)
{
    ScopedPrecision sp(std::max(working_bits(), 64u));
    return bessel_half_mp(n, sign, Real(z)).convert_to<double>();
}

} // namespace bolhalf
