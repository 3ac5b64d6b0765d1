#pragma once

#include "bolhalf/qseries.hpp"

#include <random>

namespace testsupport {

using namespace bolhalf;

inline Rational small_rational(std::mt19937_64& rng, int span = 9, int maxden = 4)
{
    i64 num = static_cast<i64>(rng() % (2 * span + 1)) - span;
    i64 den = 1 + static_cast<i64>(rng() % maxden);
    return make_rational(num, den);
}

// Random Laurent series sum_{n=v}^{P-1} c_n q^n with nonzero leading coefficient.
inline ExactSeries random_laurent(std::mt19937_64& rng, i64 v, i64 P, bool unit_lead = false, int maxden = 4)
{
    std::vector<QExact> c;
    for (i64 n = v; n < P; ++n) c.emplace_back(small_rational(rng, 9, maxden));
    if (unit_lead)
        c[0] = QExact(1);
    else if (is_zero(c[0]))
        c[0] = QExact(Rational(3, 2));
    return ExactSeries(1, v, P, std::move(c));
}

inline bool exact_equal(const ExactSeries& a, const ExactSeries& b)
{
    return a.denom() == b.denom() && a.start() == b.start() && a.prec() == b.prec() && a.coeffs() == b.coeffs();
}

} // namespace testsupport
