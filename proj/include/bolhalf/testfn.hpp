#pragma once

#include "bolhalf/numeric.hpp"

#include <memory>
#include <string>
#include <vector>

namespace bolhalf {

namespace detail {
struct FnNode;
}

// Real-valued, piecewise smooth function supported on [a, b] with 0 < a < b < infinity.
class TestFunction {
public:
    // exp(-1/((t - a)(b - t))) on (a, b); exact derivatives of every order up to kMaxBumpDerivative
    static TestFunction bump(const Rational& a, const Rational& b);
    static TestFunction indicator(const Rational& a, const Rational& b);
    // ((t - a)(b - t))^m on [a, b], m >= 1 (C^{m-1})
    static TestFunction poly_bump(const Rational& a, const Rational& b, int m);
    // "bump:a,b", "indicator:a,b", "poly-bump:a,b,m"
    static TestFunction parse(const std::string& spec);

    // (phi|_k W_M)(x) = phi(1/(Mx)) (Mx)^{-k}
    TestFunction fricke(const Rational& k, i64 M) const;
    // phi(x - c)
    TestFunction shifted(const Rational& c) const;
    // c pi^e phi^{(m)}; needs derivatives_available() >= m
    TestFunction scaled_derivative(int m, const Rational& c, int pi_power) const;

    double operator()(double t) const;
    Real operator()(const Real& t) const;
    // order-m derivative; throws InvalidArgument when unavailable
    double derivative(int m, double t) const;
    Real derivative(int m, const Real& t) const;
    int derivatives_available() const;

    const Rational& a() const;
    const Rational& b() const;
    // support endpoints plus interior points where smoothness drops
    std::vector<Rational> breakpoints() const;
    std::vector<double> breakpoints_d() const;
    int smoothness() const; // -1: discontinuous
    std::string str() const;

private:
    explicit TestFunction(std::shared_ptr<const detail::FnNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::FnNode> node_;
};

inline constexpr int kMaxBumpDerivative = 12;

} // namespace bolhalf
