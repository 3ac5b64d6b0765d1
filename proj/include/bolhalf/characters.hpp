#pragma once

#include "bolhalf/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bolhalf {

// Gaussian rational re + i*im; the exact coefficient type of the series engine.
struct QExact {
    Rational re;
    Rational im;

    QExact() = default;
    QExact(Rational r) : re(std::move(r)), im(0) {}                // NOLINT
    QExact(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    QExact(int r) : re(r), im(0) {}                                // NOLINT

    QExact& operator+=(const QExact& o);
    QExact& operator-=(const QExact& o);
    QExact& operator*=(const QExact& o);
    QExact& operator/=(const QExact& o);
    bool operator==(const QExact& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QExact& o) const { return !(*this == o); }
};

QExact operator+(QExact a, const QExact& b);
QExact operator-(QExact a, const QExact& b);
QExact operator*(QExact a, const QExact& b);
QExact operator/(QExact a, const QExact& b);
QExact operator-(const QExact& a);
QExact conj(const QExact& z);
bool is_zero(const QExact& z);
Complex to_complex(const QExact& z);
std::string to_string(const QExact& z);

enum class Parity { even, odd };

int kronecker(i64 a, i64 n);
Complex eps(i64 d);                  // 1 or i; d odd
int eps_exponent(i64 d);             // eps(d) = i^{eps_exponent(d)}

// A Dirichlet character stored as a full table of angles: chi(u) = exp(2 pi i angle(u)/order)
// for units u, 0 otherwise.
class DirichletCharacter {
public:
    DirichletCharacter(); // trivial mod 1

    // values[u] = numerator of angle over `order`, or -1 where chi(u) = 0.
    static DirichletCharacter from_table(i64 modulus, i64 order, std::vector<i64> angles, std::string label);
    static DirichletCharacter trivial(i64 modulus);

    i64 modulus() const { return modulus_; }
    i64 order() const { return order_; }
    Parity parity() const { return parity_; }
    i64 conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == modulus_; }
    bool is_real() const { return order_ <= 2; }
    bool is_trivial() const { return order_ == 1; }
    bool is_gaussian() const { return 4 % order_ == 0; } // values in {0, +-1, +-i}
    const std::string& label() const { return label_; }
    const std::optional<Rational>& zero_value_override() const { return zero_override_; }

    bool is_unit(i64 n) const { return angle_num(n) >= 0; }
    // Angle numerator over order(), or -1 when chi(n) = 0. Ignores the override slot.
    i64 angle_num(i64 n) const { return angles_[static_cast<std::size_t>(mod_floor(n, modulus_))]; }
    // Real characters: value in {-1, 0, 1}. Ignores the override slot.
    int real_value(i64 n) const;
    Complex value(i64 n) const;
    std::complex<double> value_d(i64 n) const;
    QExact value_exact(i64 n) const; // requires is_gaussian()
    // Value used by the theta0 builder: the override at n == 0 if present.
    QExact theta_value_exact(i64 n) const;
    Complex theta_value(i64 n) const;

    DirichletCharacter conj() const;
    DirichletCharacter with_zero_override(const Rational& v) const;
    DirichletCharacter lifted(i64 new_modulus) const; // same character, modulus multiple
    bool same_values(const DirichletCharacter& other) const; // equal tables mod lcm on all n
    bool equal_on_units_coprime_to(const DirichletCharacter& other, i64 m) const;

private:
    i64 modulus_ = 1;
    i64 order_ = 1;
    std::vector<i64> angles_{0};
    Parity parity_ = Parity::even;
    i64 conductor_ = 1;
    std::string label_ = "triv:1";
    std::optional<Rational> zero_override_;

    void finalize();
};

DirichletCharacter make_character(const std::string& spec);
DirichletCharacter kronecker_character(i64 disc);   // fundamental discriminant
DirichletCharacter psi_D(i64 D);                      // real character mod D (D odd) / 4D (D even)
DirichletCharacter chi_t(i64 t);
DirichletCharacter char_product(const DirichletCharacter& a, const DirichletCharacter& b);
DirichletCharacter twist_by_minus_one(const DirichletCharacter& chi);
DirichletCharacter chi_minus4();

bool is_fundamental_discriminant(i64 d);
i64 fundamental_discriminant_of(i64 t); // disc of Q(sqrt t), t not a square

// Generators of (Z/N)^* with their orders (CRT lifts of prime-power generators).
std::vector<std::pair<i64, i64>> unit_group_generators(i64 N);
i64 multiplicative_order(i64 g, i64 N);
std::vector<DirichletCharacter> all_characters(i64 N);

// tau_chi(n) = sum_{u mod D} chi(u) e^{2 pi i n u / D}; ignores the override slot.
Complex gauss_sum(const DirichletCharacter& chi, i64 n);

} // namespace bolhalf
