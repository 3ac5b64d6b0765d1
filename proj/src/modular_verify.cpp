#include "bolhalf/modular_verify.hpp"

#include "bolhalf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bolhalf {

Complex GroupElement::act(const Complex& z) const
{
    Complex num = Complex(Real(a)) * z + Complex(Real(b));
    Complex den = Complex(Real(c)) * z + Complex(Real(d));
    return num / den;
}

std::string GroupElement::str() const
{
    std::ostringstream os;
    os << "(" << a << " " << b << "; " << c << " " << d << ")";
    return os.str();
}

GroupElement operator*(const GroupElement& x, const GroupElement& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

PointFunction evaluator_of(const AnySeries& f)
{
    auto ev = std::visit([](const auto& s) { return std::make_shared<SeriesEvaluator>(s); }, f);
    return [ev](const Complex& z) { return (*ev)(z); };
}

Complex slash_factor(const GroupElement& g, HalfWeight k, const Complex& z)
{
    if (g.det() != 1) throw InvalidArgument("slash: matrix " + g.str() + " does not have determinant 1");
    Complex czd = Complex(Real(g.c)) * z + Complex(Real(g.d));
    Complex j = pow_rational(czd, -k.value());
    if (k.is_integral()) return j;
    if (g.c % 4 != 0) throw InvalidArgument("half-integral slash needs gamma in Gamma0(4), got " + g.str());
    int sym = kronecker(g.c, g.d);
    // eps_d = 1 or i for d = 1 or 3 mod 4, so eps_d^{2k} = i^{2k} or 1
    Complex eps = mod_floor(g.d, 4) == 1 ? Complex(Real(1)) : i_pow(Rational(k.doubled));
    return Complex(Real(sym)) * eps * j;
}

EvalResult slash_value(const PointFunction& f, const GroupElement& g, HalfWeight k, const Complex& z)
{
    if (!(z.im > 0)) throw InvalidArgument("slash: Im z must be positive");
    Complex gz = g.act(z);
    if (!(gz.im > 0)) throw InvalidArgument("slash: Im gz is not positive");
    EvalResult v = f(gz);
    Complex j = slash_factor(g, k, z);
    return {j * v.value, abs(j) * v.tail_bound};
}

EvalResult slash_value(const AnySeries& f, const GroupElement& g, const FormMeta& meta, const Complex& z)
{
    return slash_value(evaluator_of(f), g, meta.weight, z);
}

EvalResult fricke_slash_value(const PointFunction& f, i64 M, HalfWeight k, const Complex& z)
{
    if (M <= 0) throw InvalidArgument("Fricke level must be positive");
    if (!(z.im > 0)) throw InvalidArgument("Fricke slash: Im z must be positive");
    Complex w = -(Complex(Real(1)) / (Complex(Real(M)) * z));
    EvalResult v = f(w);
    Complex j = pow_rational(Complex(mp::sqrt(Real(M))) * z, -k.value());
    return {j * v.value, abs(j) * v.tail_bound};
}

EvalResult fricke_slash_value(const AnySeries& f, i64 M, HalfWeight k, const Complex& z)
{
    return fricke_slash_value(evaluator_of(f), M, k, z);
}

ResidualReport automorphy_residual(const PointFunction& f, const FormMeta& meta, const std::vector<GroupElement>& gammas,
                                   const std::vector<Complex>& zs, double tail_tol)
{
    meta.validate();
    if (gammas.size() != zs.size()) throw InvalidArgument("automorphy_residual: gammas and points differ in number");
    ResidualReport rep;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        const GroupElement& g = gammas[i];
        if (!g.in_gamma0(meta.level))
            throw InvalidArgument("automorphy_residual: " + g.str() + " is not in Gamma0(" + std::to_string(meta.level) + ")");
        PairRecord r;
        r.gamma = g;
        r.z = zs[i];
        EvalResult L = slash_value(f, g, meta.weight, zs[i]);
        EvalResult F = f(zs[i]);
        r.lhs = L.value;
        r.rhs = meta.character.value(g.d) * F.value;
        Real scale = std::max(abs(r.lhs), abs(r.rhs));
        if (is_zero(scale)) {
            r.admissible = false;
            r.note = "both sides vanish";
        } else {
            r.residual = Real(abs(r.lhs - r.rhs) / scale).convert_to<double>();
            Real tb = (L.tail_bound + F.tail_bound) / scale;
            r.tail_bound = tb.convert_to<double>();
            if (!(r.tail_bound <= tail_tol)) {
                r.admissible = false;
                r.note = "tail bound too large";
            }
        }
        if (r.admissible) {
            ++rep.admissible;
            rep.max_residual = std::max(rep.max_residual, r.residual);
        } else {
            ++rep.rejected;
        }
        rep.pairs.push_back(std::move(r));
    }
    if (rep.admissible == 0) throw NumericalFailure("automorphy_residual: no admissible (gamma, z) pairs");
    return rep;
}

ResidualReport automorphy_residual(const AnySeries& f, const FormMeta& meta, const std::vector<GroupElement>& gammas,
                                   const std::vector<Complex>& zs, double tail_tol)
{
    return automorphy_residual(evaluator_of(f), meta, gammas, zs, tail_tol);
}

namespace {
// uniform integer in [lo, hi] from raw 64-bit draws (rejection sampling, library independent)
i64 draw(std::mt19937_64& rng, i64 lo, i64 hi)
{
    u64 span = static_cast<u64>(hi - lo) + 1;
    u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % span;
    u64 x;
    do x = rng();
    while (x >= limit);
    return lo + static_cast<i64>(x % span);
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// a, b with ad - bc = 1 given gcd(c, d) = 1
std::pair<i64, i64> complete(i64 c, i64 d)
{
    // extended Euclid on (d, c): x d + y c = 1 -> a = x, b = -y
    i64 r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 qq = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - qq * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - qq * s1};
        std::tie(t0, t1) = std::pair{t1, t0 - qq * t1};
    }
    if (r0 < 0) {
        s0 = -s0;
        t0 = -t0;
    }
    return {s0, -t0};
}
} // namespace

std::vector<GroupElement> sample_gamma0(i64 N, i64 c_max, int count, u64 seed)
{
    if (N <= 0 || c_max <= 0 || count <= 0) throw InvalidArgument("sample_gamma0: N, c_max and count must be positive");
    std::vector<GroupElement> out;
    out.push_back({1, 0, N, 1});
    std::mt19937_64 rng(seed);
    while (static_cast<int>(out.size()) < count) {
        i64 c = N * draw(rng, 1, c_max);
        i64 d = draw(rng, -4 * c, 4 * c);
        if (d == 0 || std::gcd(c, d) != 1) continue;
        auto [a, b] = complete(c, d);
        // reduce a modulo c; (a, b) -> (a - t c, b - t d) keeps the determinant
        i64 t = a / c;
        a -= t * c;
        b -= t * d;
        GroupElement g{a, b, c, d};
        if (g.det() != 1) continue;
        out.push_back(g);
    }
    return out;
}

std::vector<Complex> sample_points(const std::vector<GroupElement>& gammas, u64 seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Complex> zs;
    for (const auto& g : gammas) {
        double u = -0.3 + 0.6 * draw_unit(rng);
        double v = 0.8 + 0.4 * draw_unit(rng);
        if (g.c == 0) {
            zs.emplace_back(Real(u), Real(v));
            continue;
        }
        double ac = static_cast<double>(std::abs(g.c));
        Real re = Real(-g.d) / Real(g.c) + Real(u) / Real(ac);
        zs.emplace_back(re, Real(v) / Real(ac));
    }
    return zs;
}

double min_imaginary_part(const std::vector<GroupElement>& gammas, const std::vector<Complex>& zs)
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gammas.size() && i < zs.size(); ++i) {
        m = std::min(m, zs[i].im.convert_to<double>());
        m = std::min(m, gammas[i].act(zs[i]).im.convert_to<double>());
    }
    return m;
}

} // namespace bolhalf
