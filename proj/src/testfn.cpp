#include "bolhalf/testfn.hpp"

#include "bolhalf/errors.hpp"

#include <cmath>

namespace bolhalf {

namespace detail {

struct FnNode {
    Rational a, b;
    int smooth = 0;
    virtual ~FnNode() = default;
    virtual double eval(double t) const = 0;
    virtual Real eval(const Real& t) const = 0;
    virtual int max_derivative() const { return 0; }
    virtual double deriv(int m, double t) const
    {
        if (m == 0) return eval(t);
        throw InvalidArgument("derivative not available for " + str());
    }
    virtual Real deriv(int m, const Real& t) const
    {
        if (m == 0) return eval(t);
        throw InvalidArgument("derivative not available for " + str());
    }
    virtual std::vector<Rational> breaks() const { return {a, b}; }
    virtual std::string str() const = 0;
};

} // namespace detail

namespace {

using detail::FnNode;

// polynomial in y = t - center with exact coefficients
struct Poly {
    std::vector<Rational> c;

    Poly derivative() const
    {
        Poly d;
        for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rational(static_cast<long>(i)));
        return d;
    }
    friend Poly operator*(const Poly& x, const Poly& y)
    {
        Poly r;
        if (x.c.empty() || y.c.empty()) return r;
        r.c.assign(x.c.size() + y.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < x.c.size(); ++i)
            for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
        return r;
    }
    friend Poly operator+(const Poly& x, const Poly& y)
    {
        Poly r;
        r.c.assign(std::max(x.c.size(), y.c.size()), Rational(0));
        for (std::size_t i = 0; i < x.c.size(); ++i) r.c[i] += x.c[i];
        for (std::size_t i = 0; i < y.c.size(); ++i) r.c[i] += y.c[i];
        return r;
    }
    Poly scaled(const Rational& s) const
    {
        Poly r = *this;
        for (auto& v : r.c) v *= s;
        return r;
    }
    std::vector<double> as_double() const
    {
        std::vector<double> d;
        for (const auto& v : c) d.push_back(v.convert_to<double>());
        return d;
    }
};

double horner(const std::vector<double>& c, double y)
{
    double acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * y + c[i];
    return acc;
}
Real horner(const std::vector<Rational>& c, const Real& y)
{
    Real acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * y + to_real(c[i]);
    return acc;
}

std::string interval(const Rational& a, const Rational& b) { return to_string(a) + "," + to_string(b); }

struct BumpNode final : FnNode {
    Rational center, half2; // Q = half2 - y^2
    std::vector<Poly> R;    // phi^{(m)} = R_m(y) / Q^{2m} * phi
    std::vector<std::vector<double>> Rd;
    double cd, ad, bd;

    BumpNode(const Rational& lo, const Rational& hi)
    {
        a = lo;
        b = hi;
        smooth = std::numeric_limits<int>::max();
        center = (a + b) / 2;
        Rational h = (b - a) / 2;
        half2 = h * h;
        Poly Q{{half2, Rational(0), Rational(-1)}};
        Poly dQ{{Rational(0), Rational(-2)}};
        Poly Q2 = Q * Q, QdQ = Q * dQ;
        R.push_back(Poly{{Rational(1)}});
        for (int m = 0; m < kMaxBumpDerivative; ++m) {
            const Poly& Rm = R.back();
            R.push_back(Rm.derivative() * Q2 + (Rm * QdQ).scaled(Rational(-2 * m)) + Rm * dQ);
        }
        for (const auto& p : R) Rd.push_back(p.as_double());
        cd = center.convert_to<double>();
        ad = a.convert_to<double>();
        bd = b.convert_to<double>();
    }
    double eval(double t) const override { return deriv(0, t); }
    Real eval(const Real& t) const override { return deriv(0, t); }
    int max_derivative() const override { return kMaxBumpDerivative; }
    double deriv(int m, double t) const override
    {
        if (m < 0 || m > kMaxBumpDerivative) throw InvalidArgument("bump derivative order out of range");
        double y = t - cd;
        double Q = (t - ad) * (bd - t); // = h^2 - y^2 without cancellation at the ends
        if (!(Q > 0)) return 0.0;
        double base = std::exp(-1.0 / Q);
        if (base == 0.0) return 0.0;
        return horner(Rd[m], y) * base / std::pow(Q, 2 * m);
    }
    Real deriv(int m, const Real& t) const override
    {
        if (m < 0 || m > kMaxBumpDerivative) throw InvalidArgument("bump derivative order out of range");
        Real y = t - to_real(center);
        Real Q = (t - to_real(a)) * (to_real(b) - t);
        if (!(Q > 0)) return Real(0);
        Real base = mp::exp(-1 / Q);
        if (m == 0) return base;
        return horner(R[m].c, y) * base / mp::pow(Q, 2 * m);
    }
    std::string str() const override { return "bump:" + interval(a, b); }
};

struct IndicatorNode final : FnNode {
    IndicatorNode(const Rational& lo, const Rational& hi)
    {
        a = lo;
        b = hi;
        smooth = -1;
    }
    double eval(double t) const override { return (t >= a.convert_to<double>() && t <= b.convert_to<double>()) ? 1.0 : 0.0; }
    Real eval(const Real& t) const override { return (t >= to_real(a) && t <= to_real(b)) ? Real(1) : Real(0); }
    std::string str() const override { return "indicator:" + interval(a, b); }
};

struct PolyBumpNode final : FnNode {
    int m;
    Rational center;
    std::vector<Poly> D; // derivatives of (h^2 - y^2)^m
    std::vector<std::vector<double>> Dd;
    double cd, ad, bd;

    PolyBumpNode(const Rational& lo, const Rational& hi, int mm) : m(mm)
    {
        a = lo;
        b = hi;
        smooth = m - 1;
        center = (a + b) / 2;
        Rational h = (b - a) / 2;
        Poly Q{{h * h, Rational(0), Rational(-1)}};
        Poly P{{Rational(1)}};
        for (int i = 0; i < m; ++i) P = P * Q;
        D.push_back(P);
        for (int i = 0; i < 2 * m; ++i) D.push_back(D.back().derivative());
        for (const auto& p : D) Dd.push_back(p.as_double());
        cd = center.convert_to<double>();
        ad = a.convert_to<double>();
        bd = b.convert_to<double>();
    }
    double eval(double t) const override { return deriv(0, t); }
    Real eval(const Real& t) const override { return deriv(0, t); }
    int max_derivative() const override { return m - 1; }
    double deriv(int k, double t) const override
    {
        if (k < 0 || k > m - 1) throw InvalidArgument("poly-bump derivative order beyond its smoothness");
        if (t < ad || t > bd) return 0.0;
        return horner(Dd[k], t - cd);
    }
    Real deriv(int k, const Real& t) const override
    {
        if (k < 0 || k > m - 1) throw InvalidArgument("poly-bump derivative order beyond its smoothness");
        if (t < to_real(a) || t > to_real(b)) return Real(0);
        return horner(D[k].c, t - to_real(center));
    }
    std::string str() const override { return "poly-bump:" + interval(a, b) + "," + std::to_string(m); }
};

struct FrickeNode final : FnNode {
    std::shared_ptr<const FnNode> base;
    Rational k;
    i64 M;
    double kd, Md;

    FrickeNode(std::shared_ptr<const FnNode> bs, const Rational& kk, i64 MM) : base(std::move(bs)), k(kk), M(MM)
    {
        a = 1 / (Rational(M) * base->b);
        b = 1 / (Rational(M) * base->a);
        smooth = base->smooth;
        kd = k.convert_to<double>();
        Md = static_cast<double>(M);
    }
    double eval(double x) const override
    {
        if (!(x > 0)) return 0.0;
        double y = Md * x;
        return base->eval(1.0 / y) * std::pow(y, -kd);
    }
    Real eval(const Real& x) const override
    {
        if (!(x > 0)) return Real(0);
        Real y = Real(M) * x;
        return base->eval(Real(1) / y) * mp::pow(y, -to_real(k));
    }
    std::vector<Rational> breaks() const override
    {
        std::vector<Rational> out;
        auto bb = base->breaks();
        for (auto it = bb.rbegin(); it != bb.rend(); ++it) out.push_back(1 / (Rational(M) * *it));
        return out;
    }
    std::string str() const override { return "fricke(" + base->str() + ";k=" + to_string(k) + ",M=" + std::to_string(M) + ")"; }
};

struct ShiftNode final : FnNode {
    std::shared_ptr<const FnNode> base;
    Rational c;
    double cd;

    ShiftNode(std::shared_ptr<const FnNode> bs, const Rational& cc) : base(std::move(bs)), c(cc)
    {
        a = base->a + c;
        b = base->b + c;
        smooth = base->smooth;
        cd = c.convert_to<double>();
    }
    double eval(double t) const override { return base->eval(t - cd); }
    Real eval(const Real& t) const override { return base->eval(t - to_real(c)); }
    int max_derivative() const override { return base->max_derivative(); }
    double deriv(int m, double t) const override { return base->deriv(m, t - cd); }
    Real deriv(int m, const Real& t) const override { return base->deriv(m, t - to_real(c)); }
    std::vector<Rational> breaks() const override
    {
        auto bb = base->breaks();
        for (auto& x : bb) x += c;
        return bb;
    }
    std::string str() const override { return "shift(" + base->str() + ";c=" + to_string(c) + ")"; }
};

struct DerivNode final : FnNode {
    std::shared_ptr<const FnNode> base;
    int m;
    Rational c;
    int e;
    double scale_d;

    DerivNode(std::shared_ptr<const FnNode> bs, int mm, const Rational& cc, int ee) : base(std::move(bs)), m(mm), c(cc), e(ee)
    {
        a = base->a;
        b = base->b;
        smooth = base->smooth == std::numeric_limits<int>::max() ? base->smooth : base->smooth - m;
        scale_d = c.convert_to<double>() * std::pow(M_PI, e);
    }
    Real scale() const { return to_real(c) * mp::pow(pi_real(), e); }
    double eval(double t) const override { return scale_d * base->deriv(m, t); }
    Real eval(const Real& t) const override { return scale() * base->deriv(m, t); }
    int max_derivative() const override { return base->max_derivative() - m; }
    double deriv(int j, double t) const override { return scale_d * base->deriv(m + j, t); }
    Real deriv(int j, const Real& t) const override { return scale() * base->deriv(m + j, t); }
    std::vector<Rational> breaks() const override { return base->breaks(); }
    std::string str() const override
    {
        return "deriv(" + base->str() + ";m=" + std::to_string(m) + ",scale=" + to_string(c) + "*pi^" + std::to_string(e) + ")";
    }
};

void check_support(const Rational& a, const Rational& b)
{
    if (!(a > 0) || !(b > a)) throw InvalidArgument("test function support must satisfy 0 < a < b");
}

} // namespace

TestFunction TestFunction::bump(const Rational& a, const Rational& b)
{
    check_support(a, b);
    return TestFunction(std::make_shared<BumpNode>(a, b));
}

TestFunction TestFunction::indicator(const Rational& a, const Rational& b)
{
    check_support(a, b);
    return TestFunction(std::make_shared<IndicatorNode>(a, b));
}

TestFunction TestFunction::poly_bump(const Rational& a, const Rational& b, int m)
{
    check_support(a, b);
    if (m < 1) throw InvalidArgument("poly-bump exponent must be at least 1");
    return TestFunction(std::make_shared<PolyBumpNode>(a, b, m));
}

TestFunction TestFunction::parse(const std::string& spec)
{
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidArgument("test function spec '" + spec + "' lacks ':'");
    std::string kind = spec.substr(0, colon);
    std::vector<std::string> parts;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (true) {
        auto c = rest.find(',', pos);
        parts.push_back(rest.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    if (kind == "bump" && parts.size() == 2) return bump(parse_rational(parts[0]), parse_rational(parts[1]));
    if (kind == "indicator" && parts.size() == 2) return indicator(parse_rational(parts[0]), parse_rational(parts[1]));
    if (kind == "poly-bump" && parts.size() == 3) {
        Rational m = parse_rational(parts[2]);
        if (!is_integer(m)) throw InvalidArgument("poly-bump exponent must be an integer");
        return poly_bump(parse_rational(parts[0]), parse_rational(parts[1]), static_cast<int>(to_i64(mp::numerator(m))));
    }
    throw InvalidArgument("unknown test function spec '" + spec + "' (use bump:a,b | indicator:a,b | poly-bump:a,b,m)");
}

TestFunction TestFunction::fricke(const Rational& k, i64 M) const
{
    if (M <= 0) throw InvalidArgument("Fricke level must be positive");
    return TestFunction(std::make_shared<FrickeNode>(node_, k, M));
}

TestFunction TestFunction::shifted(const Rational& c) const
{
    check_support(node_->a + c, node_->b + c);
    return TestFunction(std::make_shared<ShiftNode>(node_, c));
}

TestFunction TestFunction::scaled_derivative(int m, const Rational& c, int pi_power) const
{
    if (m < 0 || m > node_->max_derivative())
        throw InvalidArgument("derivative of order " + std::to_string(m) + " not available for " + str());
    return TestFunction(std::make_shared<DerivNode>(node_, m, c, pi_power));
}

double TestFunction::operator()(double t) const { return node_->eval(t); }
Real TestFunction::operator()(const Real& t) const { return node_->eval(t); }
double TestFunction::derivative(int m, double t) const { return m == 0 ? node_->eval(t) : node_->deriv(m, t); }
Real TestFunction::derivative(int m, const Real& t) const { return m == 0 ? node_->eval(t) : node_->deriv(m, t); }
int TestFunction::derivatives_available() const { return node_->max_derivative(); }
const Rational& TestFunction::a() const { return node_->a; }
const Rational& TestFunction::b() const { return node_->b; }
std::vector<Rational> TestFunction::breakpoints() const { return node_->breaks(); }
std::vector<double> TestFunction::breakpoints_d() const
{
    std::vector<double> out;
    for (const auto& r : node_->breaks()) out.push_back(r.convert_to<double>());
    return out;
}
int TestFunction::smoothness() const { return node_->smooth; }
std::string TestFunction::str() const { return node_->str(); }

} // namespace bolhalf
