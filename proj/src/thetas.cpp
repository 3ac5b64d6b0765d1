#include "bolhalf/thetas.hpp"
#include "bolhalf/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bolhalf {

// ---- HalfWeight / FormMeta --------------------------------------------------------

HalfWeight HalfWeight::from_rational(const Rational& k)
{
    Rational d = 2 * k;
    if (!is_integer(d)) throw InvalidArgument("weight " + to_string(k) + " is not in (1/2)Z");
    return HalfWeight{static_cast<int>(to_i64(mp::numerator(d)))};
}

HalfWeight HalfWeight::parse(const std::string& s) { return from_rational(parse_rational(s)); }

std::string HalfWeight::str() const { return to_string(value()); }

void FormMeta::validate() const
{
    if (level < 1) throw InvalidArgument("level must be positive");
    if (weight.is_half_integral() && level % 4 != 0) throw InvalidArgument("half-integral weight needs 4 | N");
    if (level % character.modulus() != 0) throw InvalidArgument("character modulus must divide the level");
}

FormMeta parse_meta(const std::string& s)
{
    // 2k,N,charspec,n0 ; charspec may itself contain commas (gen:...), so split from both ends
    auto first = s.find(',');
    auto second = first == std::string::npos ? first : s.find(',', first + 1);
    auto last = s.rfind(',');
    if (first == std::string::npos || second == std::string::npos || last <= second)
        throw InvalidArgument("meta must be '2k,N,charspec,n0', got '" + s + "'");
    FormMeta m;
    try {
        m.weight.doubled = std::stoi(s.substr(0, first));
        m.level = std::stoll(s.substr(first + 1, second - first - 1));
        m.pole_order = std::stoll(s.substr(last + 1));
    } catch (const std::exception&) {
        throw InvalidArgument("meta must be '2k,N,charspec,n0', got '" + s + "'");
    }
    m.character = make_character(s.substr(second + 1, last - second - 1));
    m.validate();
    return m;
}

std::string meta_to_string(const FormMeta& m)
{
    std::ostringstream os;
    os << m.weight.doubled << ',' << m.level << ',' << m.character.label() << ',' << m.pole_order;
    return os.str();
}

// ---- theta builders -------------------------------------------------------------

ThetaKind parse_theta_kind(const std::string& s)
{
    if (s == "theta0") return ThetaKind::theta0;
    if (s == "theta1") return ThetaKind::theta1;
    if (s == "st" || s == "serre_stark") return ThetaKind::serre_stark;
    throw InvalidArgument("unknown theta kind '" + s + "'");
}

ThetaContext ThetaContext::make(const DirichletCharacter& psi0, const DirichletCharacter& psi1)
{
    if (psi0.parity() != Parity::even) throw InvalidArgument("psi0 must be even");
    if (psi1.parity() != Parity::odd) throw InvalidArgument("psi1 must be odd");
    ThetaContext c;
    c.psi0 = theta0_character(psi0);
    c.psi1 = psi1;
    c.N0 = psi0.modulus();
    c.N1 = psi1.modulus();
    c.level = std::lcm(4 * c.N0 * c.N0, 4 * c.N1 * c.N1);
    return c;
}

DirichletCharacter theta0_character(const DirichletCharacter& psi)
{
    if (psi.zero_value_override() || !(psi.is_trivial() && psi.modulus() == 1)) return psi;
    return psi.with_zero_override(Rational(1, 2));
}

namespace {

template <class C>
C char_coeff(const DirichletCharacter& psi, i64 n, bool theta0_slot)
{
    if constexpr (std::is_same_v<C, QExact>) {
        return theta0_slot ? psi.theta_value_exact(n) : psi.value_exact(n);
    } else {
        return theta0_slot ? psi.theta_value(n) : psi.value(n);
    }
}

} // namespace

template <class C>
TypedSeries<C> theta_series(ThetaKind kind, const DirichletCharacter& psi_in, i64 t, i64 P)
{
    if (P < 1) throw InvalidArgument("theta precision must be positive");
    if (t < 1) throw InvalidArgument("theta t must be positive");
    if constexpr (std::is_same_v<C, QExact>) {
        if (!psi_in.is_gaussian()) throw InvalidArgument("character " + psi_in.label() + " needs floating mode");
    }
    TypedSeries<C> out;
    std::vector<C> c(static_cast<std::size_t>(P), C(0));
    if (kind == ThetaKind::theta1) {
        if (psi_in.parity() != Parity::odd) throw InvalidArgument("theta1 needs an odd character");
        for (i64 n = 1; n * n < P; ++n) {
            C v = char_coeff<C>(psi_in, n, false);
            c[static_cast<std::size_t>(n * n)] = v * coeff_from_rational<C>(Rational(n));
        }
        out.meta.weight = HalfWeight{3};
        out.meta.level = 4 * psi_in.modulus() * psi_in.modulus();
        out.meta.character = twist_by_minus_one(psi_in);
    } else {
        if (psi_in.parity() != Parity::even) throw InvalidArgument("theta0 / Serre-Stark series need an even character");
        DirichletCharacter psi = theta0_character(psi_in);
        i64 step = kind == ThetaKind::theta0 ? 1 : t;
        for (i64 n = 0; step * n * n < P; ++n) c[static_cast<std::size_t>(step * n * n)] = char_coeff<C>(psi, n, true);
        out.meta.weight = HalfWeight{1};
        if (kind == ThetaKind::theta0) {
            out.meta.level = 4 * psi.modulus() * psi.modulus();
            out.meta.character = psi;
        } else {
            DirichletCharacter ct = chi_t(t);
            out.meta.character = char_product(psi, ct);
            i64 r = psi.conductor();
            out.meta.level = std::lcm(4 * r * r * t, out.meta.character.modulus());
        }
    }
    out.series = Series<C>(1, 0, P, std::move(c));
    out.meta.pole_order = 0;
    return out;
}

template TypedSeries<QExact> theta_series<QExact>(ThetaKind, const DirichletCharacter&, i64, i64);
template TypedSeries<Complex> theta_series<Complex>(ThetaKind, const DirichletCharacter&, i64, i64);

std::vector<std::pair<DirichletCharacter, i64>> enumerate_serre_stark(i64 N0, const DirichletCharacter& psi0)
{
    if (psi0.parity() != Parity::even) throw InvalidArgument("enumerate_serre_stark needs an even character");
    if (N0 < 1) throw InvalidArgument("N0 must be positive");
    i64 N2 = N0 * N0;
    std::vector<std::pair<DirichletCharacter, i64>> out;
    for (i64 r : divisors(N0)) {
        std::vector<DirichletCharacter> cands;
        for (auto& c : all_characters(r))
            if (c.is_primitive() && c.parity() == Parity::even) cands.push_back(c);
        for (i64 t : divisors(N2 / (r * r))) {
            if (N2 % (r * r * t) != 0) continue;
            DirichletCharacter ct = chi_t(t);
            for (auto& psi : cands) {
                if (!psi0.equal_on_units_coprime_to(char_product(psi, ct), 4 * N2)) continue;
                DirichletCharacter named = psi;
                if (psi.is_real() && r > 1) {
                    // prefer the Kronecker label for real primitive characters
                    for (i64 d : {r, -r, 4 * r, -4 * r})
                        if (is_fundamental_discriminant(d) && std::abs(d) == r) {
                            auto k = kronecker_character(d);
                            if (k.same_values(psi)) named = k;
                        }
                }
                out.emplace_back(named, t);
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first.modulus() > b.first.modulus();
    });
    return out;
}

Complex fricke_theta_constants(const DirichletCharacter& psi, ThetaKind kind)
{
    if (!psi.is_real()) throw InvalidArgument("Fricke constants need a real character");
    if (!psi.is_primitive()) throw InvalidArgument("Fricke constants need a primitive character");
    if (kind == ThetaKind::serre_stark) throw InvalidArgument("Fricke constants are defined for theta0/theta1");
    i64 N = psi.modulus();
    // (i N)^{-1/2} with the principal branch: N^{-1/2} e^{-i pi/4}
    Complex c = expi(-pi_real() / 4) / mp::sqrt(Real(N));
    c *= gauss_sum(psi, 1);
    if (kind == ThetaKind::theta1) c = -c;
    return c;
}

} // namespace bolhalf
