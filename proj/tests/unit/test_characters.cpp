#include "doctest.h"

#include "bolhalf/characters.hpp"
#include "bolhalf/errors.hpp"

#include <numeric>

using namespace bolhalf;

namespace {

bool is_prime(i64 p)
{
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Euler's criterion for an odd prime p.
int legendre_oracle(i64 a, i64 p)
{
    i64 r = powmod(mod_floor(a, p), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// Jacobi symbol from the factorization of n, each prime factor by Euler's criterion.
int jacobi_oracle(i64 a, i64 n)
{
    int s = 1;
    for (auto [p, e] : factorize(n))
        for (int i = 0; i < e; ++i) s *= legendre_oracle(a, p);
    return s;
}

} // namespace

TEST_CASE("kronecker examples")
{
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(2, 5) == -1);
    CHECK(kronecker(-1, 3) == -1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(3, -1) == 1);
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(2, 8) == 0);
    CHECK(kronecker(3, 2) == -1); // 3 = 3 mod 8
    CHECK(kronecker(7, 2) == 1);  // 7 = -1 mod 8
}

TEST_CASE("kronecker agrees with Euler's criterion on odd primes")
{
    for (i64 p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        for (i64 a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == legendre_oracle(a, p));
    }
}

TEST_CASE("quadratic reciprocity on odd coprime pairs up to 200")
{
    for (i64 m = 3; m <= 200; m += 2)
        for (i64 n = 3; n <= 200; n += 2) {
            if (std::gcd(m, n) != 1) continue;
            int lhs = kronecker(m, n) * kronecker(n, m);
            int rhs = (((m - 1) / 2) * ((n - 1) / 2)) % 2 ? -1 : 1;
            REQUIRE(lhs == rhs);
            REQUIRE(kronecker(m, n) == jacobi_oracle(m, n));
        }
}

TEST_CASE("eps and its square")
{
    CHECK(is_zero(eps(1) - Complex(1)));
    CHECK(is_zero(eps(3) - Complex(Real(0), Real(1))));
    CHECK(is_zero(eps(7) - Complex(Real(0), Real(1))));
    for (i64 d = -99; d <= 99; d += 2) {
        Complex e = eps(d);
        CHECK(is_zero(e * e - Complex(kronecker(-1, d))));
    }
    CHECK_THROWS_AS(eps(4), InvalidArgument);
}

TEST_CASE("make_character: Kronecker characters")
{
    auto c5 = make_character("kron:5");
    CHECK(c5.modulus() == 5);
    CHECK(c5.real_value(1) == 1);
    CHECK(c5.real_value(2) == -1);
    CHECK(c5.real_value(3) == -1);
    CHECK(c5.real_value(4) == 1);
    CHECK(c5.parity() == Parity::even);
    CHECK(c5.is_primitive());
    CHECK(c5.conductor() == 5);
    CHECK(c5.is_real());

    for (i64 d : {-3, -4, 5, -7, 8, -8, 12, 13, -15, 17, -20, 21, 24, -23, 28, 29, 33, -35, 37, 40, -40, 41, -43, 44, -47}) {
        auto c = kronecker_character(d);
        CHECK(c.is_primitive());
        CHECK(c.conductor() == std::abs(d));
        CHECK((c.parity() == Parity::even) == (d > 0));
    }
    CHECK_THROWS_AS(make_character("kron:9"), InvalidArgument);
    CHECK_THROWS_AS(make_character("kron:3"), InvalidArgument);
    CHECK_THROWS_AS(make_character("kron:0"), InvalidArgument);
}

TEST_CASE("make_character: chi_t, psi_D, trivial, override")
{
    auto c4 = make_character("chit:4");
    CHECK(c4.is_trivial());
    CHECK(c4.modulus() == 1);
    auto c5 = make_character("chit:5");
    CHECK(c5.same_values(make_character("kron:5")));
    auto c20 = make_character("chit:20"); // Q(sqrt 20) = Q(sqrt 5)
    CHECK(c20.same_values(make_character("kron:5")));
    auto c3 = make_character("chit:3");
    CHECK(c3.same_values(make_character("kron:12")));

    auto t1 = make_character("triv:1:half");
    REQUIRE(t1.zero_value_override().has_value());
    CHECK(t1.theta_value_exact(0) == QExact(Rational(1, 2)));
    CHECK(t1.value_exact(0) == QExact(1)); // override does not leak into the table
    CHECK(is_zero(gauss_sum(t1, 0) - Complex(1)));
    CHECK_THROWS_AS(make_character("kron:5").with_zero_override(Rational(1, 2)), InvalidArgument);

    auto p3 = make_character("psiD:3");
    CHECK(p3.modulus() == 3);
    CHECK(p3.real_value(1) == 1);
    CHECK(p3.real_value(2) == -1);
    auto p15 = make_character("psiD:15");
    for (i64 u = 0; u < 60; ++u) CHECK(p15.real_value(u) == (std::gcd(u, i64{15}) == 1 ? kronecker(u, 15) : 0));

    auto tr = make_character("triv:12");
    CHECK(tr.is_trivial());
    CHECK(tr.conductor() == 1);
    CHECK(!tr.is_primitive());
    CHECK(tr.real_value(5) == 1);
    CHECK(tr.real_value(6) == 0);

    CHECK_THROWS_AS(make_character("bogus:3"), InvalidArgument);
    CHECK_THROWS_AS(make_character("triv"), InvalidArgument);
    CHECK_THROWS_AS(make_character("triv:x"), InvalidArgument);
}

TEST_CASE("make_character: generator images")
{
    // mod 5, generator 2 of order 4; 2 -> i gives an odd quartic character
    auto q = make_character("gen:5:2=1");
    CHECK(q.order() == 4);
    CHECK(q.parity() == Parity::odd);
    CHECK(q.is_primitive());
    CHECK(q.value_exact(2) == QExact(Rational(0), Rational(1)));
    CHECK(q.value_exact(4) == QExact(-1));
    auto sq = make_character("gen:5:2=2");
    CHECK(sq.same_values(make_character("kron:5")));
    auto frac = make_character("gen:5:2=1/4");
    CHECK(frac.same_values(q));
    // order-7 character mod 29: 2 is a primitive root, 2 -> e(4/28)
    auto c7 = make_character("gen:29:2=4");
    CHECK(c7.order() == 7);
    CHECK(!c7.is_gaussian());
    CHECK_THROWS_AS(c7.value_exact(2), InvalidArgument);
    // mod 8: -1 and 5
    auto c8 = make_character("gen:8:7=1,5=1");
    CHECK(c8.same_values(make_character("kron:-8")));
    CHECK_THROWS_AS(make_character("gen:8:7=1"), InvalidArgument);   // does not generate
    CHECK_THROWS_AS(make_character("gen:5:4=1/4"), InvalidArgument); // 4 has order 2
    CHECK_THROWS_AS(make_character("gen:5:2=1,4=2"), InvalidArgument); // chi(4) must be chi(2)^2 = -1
    CHECK_THROWS_AS(make_character("gen:6:3=1"), InvalidArgument);   // not a unit
}

TEST_CASE("character invariants over all characters of small moduli")
{
    for (i64 N = 1; N <= 40; ++N) {
        auto chars = all_characters(N);
        CHECK(static_cast<i64>(chars.size()) == euler_phi(N));
        for (const auto& c : chars) {
            for (i64 u = 0; u < N; ++u) CHECK(c.is_unit(u) == (std::gcd(u, N) == 1));
            for (i64 u = 0; u < N; ++u)
                for (i64 v = 0; v < N; ++v) {
                    if (!c.is_unit(u) || !c.is_unit(v)) continue;
                    REQUIRE(c.angle_num(u * v) == mod_floor(c.angle_num(u) + c.angle_num(v), c.order()));
                }
            bool even = c.angle_num(N - 1) == 0;
            CHECK(even == (c.parity() == Parity::even));
            CHECK(N % c.conductor() == 0);
            CHECK(c.is_primitive() == (c.conductor() == N));
            // chi * conj(chi) is trivial on units
            auto p = char_product(c, c.conj());
            CHECK(p.is_trivial());
            CHECK(p.modulus() == N);
        }
    }
}

TEST_CASE("char_product and twist_by_minus_one")
{
    auto t = twist_by_minus_one(DirichletCharacter());
    CHECK(t.modulus() == 4);
    CHECK(t.real_value(1) == 1);
    CHECK(t.real_value(3) == -1);
    CHECK(t.real_value(2) == 0);
    auto c5 = make_character("kron:5");
    auto sq = char_product(c5, c5);
    CHECK(sq.is_trivial());
    CHECK(sq.modulus() == 5);
    auto m = char_product(make_character("kron:-3"), make_character("kron:5"));
    CHECK(m.modulus() == 15);
    CHECK(m.same_values(make_character("kron:-15")));
}

TEST_CASE("Gauss sums")
{
    ScopedPrecision sp(128);
    Complex t3 = gauss_sum(make_character("kron:-3"), 1);
    CHECK(abs(t3 - Complex(Real(0), mp::sqrt(Real(3)))) < Real("1e-35"));
    CHECK(abs(gauss_sum(make_character("kron:5"), 0)) < Real("1e-35"));
    CHECK(is_zero(gauss_sum(DirichletCharacter(), 1) - Complex(1)));
    CHECK(abs(gauss_sum(make_character("kron:8"), 1) - Complex(mp::sqrt(Real(8)))) < Real("1e-35"));
    CHECK(abs(gauss_sum(make_character("kron:-8"), 1) - Complex(Real(0), mp::sqrt(Real(8)))) < Real("1e-35"));

    for (i64 D = 1; D <= 50; ++D) {
        for (const auto& c : all_characters(D)) {
            if (!c.is_primitive()) continue;
            Complex tau = gauss_sum(c, 1);
            CHECK(abs(norm(tau) - Real(D)) < Real("1e-20"));
            for (i64 n = -3; n <= 2 * D; ++n) {
                if (std::gcd(n, D) != 1) continue;
                Complex lhs = gauss_sum(c, n);
                Complex rhs = c.conj().value(n) * tau;
                REQUIRE(abs(lhs - rhs) < Real("1e-20"));
            }
        }
    }
}

TEST_CASE("unit group generators")
{
    for (i64 N : {1, 2, 4, 8, 16, 9, 25, 12, 60, 100, 1024, 7 * 49}) {
        auto gens = unit_group_generators(N);
        i64 prod = 1;
        for (auto [g, o] : gens) {
            CHECK(multiplicative_order(g, N) == o);
            prod *= o;
        }
        CHECK(prod == euler_phi(N));
    }
}
