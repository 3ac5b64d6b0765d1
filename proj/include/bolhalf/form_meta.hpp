#pragma once

#include "bolhalf/characters.hpp"
#include "bolhalf/qseries.hpp"

#include <string>

namespace bolhalf {

struct HalfWeight {
    int doubled = 0; // weight k = doubled / 2

    static HalfWeight from_rational(const Rational& k);
    static HalfWeight parse(const std::string& s); // "5/2", "3", "-23/2"
    bool is_integral() const { return doubled % 2 == 0; }
    bool is_half_integral() const { return doubled % 2 != 0; }
    Rational value() const { return Rational(doubled, 2); }
    std::string str() const;
    bool operator==(const HalfWeight&) const = default;
};

struct FormMeta {
    HalfWeight weight;
    i64 level = 1;
    DirichletCharacter character;
    i64 pole_order = 0;

    void validate() const; // 4 | N for half-integral weight; modulus(character) | N
};

template <class C>
struct TypedSeries {
    Series<C> series;
    FormMeta meta;
};

// Pole order n0 = max(0, -floor(valuation)).
template <class C>
i64 pole_order_of(const Series<C>& f)
{
    if (f.is_zero()) return 0;
    Rational v = f.valuation();
    if (v >= 0) return 0;
    Integer fl = mp::numerator(v) / mp::denominator(v);
    if (fl * mp::denominator(v) != mp::numerator(v)) fl -= 1;
    return to_i64(-fl);
}

// "2k,N,charspec,n0" as used by the CLI.
FormMeta parse_meta(const std::string& s);
std::string meta_to_string(const FormMeta& m);

} // namespace bolhalf
