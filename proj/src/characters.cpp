#include "bolhalf/characters.hpp"
#include "bolhalf/errors.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace bolhalf {

// ---- QExact -----------------------------------------------------------------

QExact& QExact::operator+=(const QExact& o)
{
    re += o.re;
    if (o.im != 0) im += o.im;
    return *this;
}
QExact& QExact::operator-=(const QExact& o)
{
    re -= o.re;
    if (o.im != 0) im -= o.im;
    return *this;
}
QExact& QExact::operator*=(const QExact& o)
{
    if (im == 0 && o.im == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}
QExact& QExact::operator/=(const QExact& o)
{
    if (is_zero(o)) throw InvalidArgument("division by zero");
    if (o.im == 0) {
        re /= o.re;
        if (im != 0) im /= o.re;
        return *this;
    }
    Rational d = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}
QExact operator+(QExact a, const QExact& b) { return a += b; }
QExact operator-(QExact a, const QExact& b) { return a -= b; }
QExact operator*(QExact a, const QExact& b) { return a *= b; }
QExact operator/(QExact a, const QExact& b) { return a /= b; }
QExact operator-(const QExact& a) { return QExact(-a.re, -a.im); }
QExact conj(const QExact& z) { return QExact(z.re, -z.im); }
bool is_zero(const QExact& z) { return z.re == 0 && z.im == 0; }
Complex to_complex(const QExact& z) { return Complex(to_real(z.re), to_real(z.im)); }
std::string to_string(const QExact& z)
{
    if (z.im == 0) return to_string(z.re);
    return "(" + to_string(z.re) + (z.im < 0 ? " - " : " + ") + to_string(z.im < 0 ? Rational(-z.im) : z.im) + "i)";
}

// ---- Kronecker symbol, eps ----------------------------------------------------

namespace {

int jacobi(i64 a, i64 n) // n odd positive
{
    a = mod_floor(a, n);
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

int kronecker(i64 a, i64 n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -1;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0) return 0;
        i64 r = mod_floor(a, 8);
        if ((v & 1) && (r == 3 || r == 5)) sign = -sign;
    }
    if (n == 1) return sign;
    return sign * jacobi(a, n);
}

int eps_exponent(i64 d)
{
    if ((d & 1) == 0) throw InvalidArgument("eps(d) requires odd d");
    return mod_floor(d, 4) == 1 ? 0 : 1;
}

Complex eps(i64 d) { return eps_exponent(d) == 0 ? Complex(1) : Complex(Real(0), Real(1)); }

// ---- DirichletCharacter ---------------------------------------------------------

DirichletCharacter::DirichletCharacter() = default;

DirichletCharacter DirichletCharacter::from_table(i64 modulus, i64 order, std::vector<i64> angles, std::string label)
{
    if (modulus < 1) throw InvalidArgument("character modulus must be positive");
    if (order < 1) throw InvalidArgument("character order must be positive");
    if (static_cast<i64>(angles.size()) != modulus) throw InvalidArgument("character table has wrong length");
    for (i64 u = 0; u < modulus; ++u) {
        bool unit = std::gcd(u, modulus) == 1;
        i64& a = angles[static_cast<std::size_t>(u)];
        if (unit != (a >= 0)) throw InvalidArgument("character table must vanish exactly off the unit group");
        if (a >= 0) a = mod_floor(a, order);
    }
    DirichletCharacter c;
    c.modulus_ = modulus;
    c.order_ = order;
    c.angles_ = std::move(angles);
    c.label_ = std::move(label);
    c.finalize();
    return c;
}

DirichletCharacter DirichletCharacter::trivial(i64 modulus)
{
    std::vector<i64> t(static_cast<std::size_t>(modulus));
    for (i64 u = 0; u < modulus; ++u) t[static_cast<std::size_t>(u)] = std::gcd(u, modulus) == 1 ? 0 : -1;
    return from_table(modulus, 1, std::move(t), "triv:" + std::to_string(modulus));
}

void DirichletCharacter::finalize()
{
    i64 g = order_;
    for (i64 a : angles_)
        if (a > 0) g = std::gcd(g, a);
    if (g > 1) {
        order_ /= g;
        for (i64& a : angles_)
            if (a > 0) a /= g;
    }
    i64 am1 = angle_num(-1);
    if (am1 == 0)
        parity_ = Parity::even;
    else if (2 * am1 == order_)
        parity_ = Parity::odd;
    else
        throw InvalidArgument("character table is not multiplicative (chi(-1) not +-1)");
    conductor_ = modulus_;
    for (i64 d : divisors(modulus_)) {
        bool ok = true;
        for (i64 u = 1 % d; u < modulus_ && ok; u += d) {
            i64 a = angles_[static_cast<std::size_t>(u)];
            if (a > 0) ok = false;
        }
        if (d == modulus_ || ok) {
            conductor_ = d;
            break;
        }
    }
}

int DirichletCharacter::real_value(i64 n) const
{
    if (!is_real()) throw InvalidArgument("real_value on a non-real character " + label_);
    i64 a = angle_num(n);
    if (a < 0) return 0;
    return a == 0 ? 1 : -1;
}

Complex DirichletCharacter::value(i64 n) const
{
    i64 a = angle_num(n);
    if (a < 0) return Complex();
    return root_of_unity(a, order_);
}

std::complex<double> DirichletCharacter::value_d(i64 n) const
{
    i64 a = angle_num(n);
    if (a < 0) return {0.0, 0.0};
    if (a == 0) return {1.0, 0.0};
    if (2 * a == order_) return {-1.0, 0.0};
    if (4 * a == order_) return {0.0, 1.0};
    if (4 * a == 3 * order_) return {0.0, -1.0};
    double th = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(order_);
    return {std::cos(th), std::sin(th)};
}

QExact DirichletCharacter::value_exact(i64 n) const
{
    if (!is_gaussian()) throw InvalidArgument("character " + label_ + " has values outside {0, +-1, +-i}; use floating mode");
    i64 a = angle_num(n);
    if (a < 0) return QExact(0);
    i64 q = a * (4 / order_);
    switch (q) {
    case 0: return QExact(1);
    case 1: return QExact(Rational(0), Rational(1));
    case 2: return QExact(-1);
    default: return QExact(Rational(0), Rational(-1));
    }
}

QExact DirichletCharacter::theta_value_exact(i64 n) const
{
    if (n == 0 && zero_override_) return QExact(*zero_override_);
    return value_exact(n);
}

Complex DirichletCharacter::theta_value(i64 n) const
{
    if (n == 0 && zero_override_) return Complex(to_real(*zero_override_));
    return value(n);
}

DirichletCharacter DirichletCharacter::conj() const
{
    DirichletCharacter c = *this;
    for (i64& a : c.angles_)
        if (a > 0) a = order_ - a;
    c.label_ = "conj(" + label_ + ")";
    c.zero_override_.reset();
    return c;
}

DirichletCharacter DirichletCharacter::with_zero_override(const Rational& v) const
{
    if (!is_trivial()) throw InvalidArgument("the n=0 override applies only to trivial characters");
    DirichletCharacter c = *this;
    c.zero_override_ = v;
    return c;
}

DirichletCharacter DirichletCharacter::lifted(i64 new_modulus) const
{
    if (new_modulus % modulus_ != 0) throw InvalidArgument("lift modulus must be a multiple of the modulus");
    std::vector<i64> t(static_cast<std::size_t>(new_modulus));
    for (i64 u = 0; u < new_modulus; ++u)
        t[static_cast<std::size_t>(u)] = std::gcd(u, new_modulus) == 1 ? angle_num(u) : -1;
    DirichletCharacter c = from_table(new_modulus, order_, std::move(t), label_);
    return c;
}

bool DirichletCharacter::same_values(const DirichletCharacter& other) const
{
    i64 L = std::lcm(modulus_, other.modulus_);
    i64 ord = std::lcm(order_, other.order_);
    for (i64 u = 0; u < L; ++u) {
        i64 a = angle_num(u), b = other.angle_num(u);
        if ((a < 0) != (b < 0)) return false;
        if (a >= 0 && a * (ord / order_) != b * (ord / other.order_)) return false;
    }
    return true;
}

bool DirichletCharacter::equal_on_units_coprime_to(const DirichletCharacter& other, i64 m) const
{
    i64 L = std::lcm(std::lcm(modulus_, other.modulus_), m);
    i64 ord = std::lcm(order_, other.order_);
    for (i64 u = 1; u < L; ++u) {
        if (std::gcd(u, L) != 1) continue;
        i64 a = angle_num(u), b = other.angle_num(u);
        if ((a < 0) != (b < 0)) return false;
        if (a >= 0 && a * (ord / order_) != b * (ord / other.order_)) return false;
    }
    return true;
}

// ---- constructions ------------------------------------------------------------

bool is_fundamental_discriminant(i64 d)
{
    if (d == 1) return true;
    if (d == 0) return false;
    i64 r = mod_floor(d, 4);
    if (r == 1) return is_squarefree(d);
    if (r == 0) {
        i64 m = d / 4;
        i64 mr = mod_floor(m, 4);
        return (mr == 2 || mr == 3) && is_squarefree(m);
    }
    return false;
}

i64 fundamental_discriminant_of(i64 t)
{
    if (t <= 0) throw InvalidArgument("chi_t requires t >= 1");
    i64 core = 1;
    for (auto [p, e] : factorize(t))
        if (e & 1) core *= p;
    return mod_floor(core, 4) == 1 ? core : 4 * core;
}

DirichletCharacter kronecker_character(i64 disc)
{
    if (!is_fundamental_discriminant(disc))
        throw InvalidArgument("kron:" + std::to_string(disc) + " is not a fundamental discriminant");
    i64 m = disc < 0 ? -disc : disc;
    std::vector<i64> t(static_cast<std::size_t>(m));
    for (i64 u = 0; u < m; ++u) {
        int k = kronecker(disc, u);
        t[static_cast<std::size_t>(u)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
    }
    return DirichletCharacter::from_table(m, 2, std::move(t), "kron:" + std::to_string(disc));
}

DirichletCharacter psi_D(i64 D)
{
    if (D < 1) throw InvalidArgument("psiD requires D >= 1");
    i64 m = (D % 2 == 1) ? D : 4 * D;
    std::vector<i64> t(static_cast<std::size_t>(m));
    for (i64 u = 0; u < m; ++u) {
        int k = std::gcd(u, m) == 1 ? kronecker(u, D) : 0;
        t[static_cast<std::size_t>(u)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
    }
    return DirichletCharacter::from_table(m, 2, std::move(t), "psiD:" + std::to_string(D));
}

DirichletCharacter chi_t(i64 t)
{
    if (t < 1) throw InvalidArgument("chit requires t >= 1");
    if (is_square(t)) {
        DirichletCharacter c = DirichletCharacter::trivial(1);
        return c;
    }
    return kronecker_character(fundamental_discriminant_of(t));
}

DirichletCharacter chi_minus4() { return kronecker_character(-4); }

DirichletCharacter char_product(const DirichletCharacter& a, const DirichletCharacter& b)
{
    i64 L = std::lcm(a.modulus(), b.modulus());
    i64 ord = std::lcm(a.order(), b.order());
    std::vector<i64> t(static_cast<std::size_t>(L));
    for (i64 u = 0; u < L; ++u) {
        i64 x = a.angle_num(u), y = b.angle_num(u);
        t[static_cast<std::size_t>(u)] = (x < 0 || y < 0) ? -1 : x * (ord / a.order()) + y * (ord / b.order());
    }
    return DirichletCharacter::from_table(L, ord, std::move(t), a.label() + "*" + b.label());
}

DirichletCharacter twist_by_minus_one(const DirichletCharacter& chi) { return char_product(chi, chi_minus4()); }

// ---- unit group ------------------------------------------------------------------

namespace {

i64 inverse_mod(i64 a, i64 m)
{
    i64 g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
    while (a1 != 0) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw InvalidArgument("no modular inverse");
    return mod_floor(x, m);
}

i64 crt_lift(i64 g, i64 pe, i64 N)
{
    i64 m2 = N / pe;
    if (m2 == 1) return mod_floor(g, N);
    __int128 x = static_cast<__int128>(mod_floor(g, pe)) * m2 % N * inverse_mod(m2, pe) % N;
    x += static_cast<__int128>(pe) * inverse_mod(pe, m2) % N;
    return static_cast<i64>(x % N);
}

} // namespace

i64 multiplicative_order(i64 g, i64 N)
{
    if (std::gcd(g, N) != 1) throw InvalidArgument("order of a non-unit");
    if (N == 1) return 1;
    i64 phi = euler_phi(N), ord = phi;
    for (auto [p, e] : factorize(phi)) {
        for (int k = 0; k < e; ++k) {
            if (powmod(g, ord / p, N) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

std::vector<std::pair<i64, i64>> unit_group_generators(i64 N)
{
    std::vector<std::pair<i64, i64>> gens;
    for (auto [p, e] : factorize(N)) {
        i64 pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        if (p == 2) {
            if (e >= 2) gens.emplace_back(crt_lift(pe - 1, pe, N), 2);
            if (e >= 3) gens.emplace_back(crt_lift(5, pe, N), pe / 4);
            continue;
        }
        i64 g = 2;
        while (multiplicative_order(g, p) != p - 1) ++g;
        if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
        gens.emplace_back(crt_lift(g, pe, N), pe / p * (p - 1));
    }
    return gens;
}

std::vector<DirichletCharacter> all_characters(i64 N)
{
    auto gens = unit_group_generators(N);
    i64 L = 1;
    for (auto& g : gens) L = std::lcm(L, g.second);
    // enumerate group elements as generator-power tuples once
    std::vector<std::pair<i64, std::vector<i64>>> elems{{1 % N, std::vector<i64>(gens.size(), 0)}};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<std::pair<i64, std::vector<i64>>> next;
        for (auto& [x, ks] : elems) {
            i64 y = x;
            for (i64 k = 0; k < gens[i].second; ++k) {
                auto kk = ks;
                kk[i] = k;
                next.emplace_back(y, kk);
                y = static_cast<i64>(static_cast<__int128>(y) * gens[i].first % N);
            }
        }
        elems.swap(next);
    }
    std::vector<DirichletCharacter> out;
    std::vector<i64> exps(gens.size(), 0);
    while (true) {
        std::vector<i64> t(static_cast<std::size_t>(N), -1);
        for (auto& [x, ks] : elems) {
            i64 a = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) a += ks[i] * exps[i] * (L / gens[i].second);
            t[static_cast<std::size_t>(x)] = mod_floor(a, L);
        }
        std::ostringstream lab;
        lab << "gen:" << N << ":";
        for (std::size_t i = 0; i < gens.size(); ++i) lab << (i ? "," : "") << gens[i].first << "=" << exps[i];
        out.push_back(DirichletCharacter::from_table(N, L, std::move(t), gens.empty() ? "triv:" + std::to_string(N) : lab.str()));
        std::size_t i = 0;
        while (i < gens.size()) {
            if (++exps[i] < gens[i].second) break;
            exps[i] = 0;
            ++i;
        }
        if (i == gens.size()) break;
    }
    return out;
}

// ---- spec parsing --------------------------------------------------------------

namespace {

i64 parse_i64(const std::string& s, const std::string& spec)
{
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw InvalidArgument("");
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("malformed character spec '" + spec + "'");
    }
}

DirichletCharacter from_generator_images(i64 N, const std::string& body, const std::string& spec)
{
    if (N < 1) throw InvalidArgument("gen: modulus must be positive");
    // each image as a fraction of a full turn
    std::vector<std::pair<i64, Rational>> imgs;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidArgument("malformed generator image '" + item + "' in '" + spec + "'");
        i64 g = mod_floor(parse_i64(item.substr(0, eq), spec), N);
        if (std::gcd(g, N) != 1) throw InvalidArgument("generator " + std::to_string(g) + " is not a unit mod " + std::to_string(N));
        std::string e = item.substr(eq + 1);
        Rational turn;
        if (e.find('/') != std::string::npos) {
            turn = parse_rational(e);
        } else {
            turn = Rational(Integer(parse_i64(e, spec)), Integer(multiplicative_order(g, N)));
        }
        imgs.emplace_back(g, turn);
    }
    i64 L = 1;
    for (auto& [g, t] : imgs) {
        // chi(g)^{ord g} must be 1
        Rational chk = t * multiplicative_order(g, N);
        if (!is_integer(chk)) throw InvalidArgument("generator image inconsistent with the order of " + std::to_string(g) + " in '" + spec + "'");
        L = std::lcm(L, to_i64(mp::denominator(t)));
    }
    std::vector<i64> t(static_cast<std::size_t>(N), -1);
    std::deque<i64> queue;
    t[static_cast<std::size_t>(1 % N)] = 0;
    queue.push_back(1 % N);
    std::size_t seen = 1;
    while (!queue.empty()) {
        i64 x = queue.front();
        queue.pop_front();
        for (auto& [g, turn] : imgs) {
            i64 y = static_cast<i64>(static_cast<__int128>(x) * g % N);
            i64 a = mod_floor(t[static_cast<std::size_t>(x)] + to_i64(mp::numerator(turn)) * (L / to_i64(mp::denominator(turn))), L);
            i64& ty = t[static_cast<std::size_t>(y)];
            if (ty < 0) {
                ty = a;
                ++seen;
                queue.push_back(y);
            } else if (ty != a) {
                throw InvalidArgument("generator images in '" + spec + "' do not define a character");
            }
        }
    }
    if (static_cast<i64>(seen) != euler_phi(N))
        throw InvalidArgument("generators in '" + spec + "' do not generate (Z/" + std::to_string(N) + ")^*");
    return DirichletCharacter::from_table(N, L, std::move(t), spec);
}

} // namespace

DirichletCharacter make_character(const std::string& spec)
{
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidArgument("malformed character spec '" + spec + "'");
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "triv") {
        auto c2 = rest.find(':');
        std::string n = rest.substr(0, c2);
        i64 N = parse_i64(n, spec);
        if (N < 1) throw InvalidArgument("triv: modulus must be positive");
        DirichletCharacter c = DirichletCharacter::trivial(N);
        if (c2 != std::string::npos) {
            if (rest.substr(c2 + 1) != "half") throw InvalidArgument("malformed character spec '" + spec + "'");
            c = c.with_zero_override(Rational(1, 2));
        }
        return c;
    }
    if (kind == "kron") return kronecker_character(parse_i64(rest, spec));
    if (kind == "psiD") return psi_D(parse_i64(rest, spec));
    if (kind == "chit") return chi_t(parse_i64(rest, spec));
    if (kind == "gen") {
        auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw InvalidArgument("malformed character spec '" + spec + "'");
        i64 N = parse_i64(rest.substr(0, c2), spec);
        std::string body = rest.substr(c2 + 1);
        if (body.empty()) {
            if (euler_phi(N) != 1) throw InvalidArgument("gen: empty generator list for a nontrivial unit group");
            return DirichletCharacter::trivial(N);
        }
        return from_generator_images(N, body, spec);
    }
    throw InvalidArgument("unknown character kind '" + kind + "' in '" + spec + "'");
}

// ---- Gauss sums -----------------------------------------------------------------

Complex gauss_sum(const DirichletCharacter& chi, i64 n)
{
    i64 D = chi.modulus(), ord = chi.order();
    i64 den = D * ord;
    Complex s;
    for (i64 u = 0; u < D; ++u) {
        i64 a = chi.angle_num(u);
        if (a < 0) continue;
        i64 num = static_cast<i64>((static_cast<__int128>(a) * D + static_cast<__int128>(mod_floor(n, D)) * u % D * ord) % den);
        s += root_of_unity(num, den);
    }
    return s;
}

} // namespace bolhalf
