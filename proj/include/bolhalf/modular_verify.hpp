#pragma once

#include "bolhalf/form_meta.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bolhalf {

struct GroupElement {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    bool in_gamma0(i64 N) const { return det() == 1 && c % N == 0; }
    Complex act(const Complex& z) const; // (az + b)/(cz + d)
    std::string str() const;
    bool operator==(const GroupElement&) const = default;
};
GroupElement operator*(const GroupElement& x, const GroupElement& y);

// A q-expansion (or anything else) evaluated at a point, with a bound on the neglected tail.
using PointFunction = std::function<EvalResult(const Complex&)>;
PointFunction evaluator_of(const AnySeries& f);

// Multiplier j such that (f|_k g)(z) = j * f(gz):
//   integral k:      (cz+d)^{-k}
//   half-integral k: (c/d) eps_d^{2k} (cz+d)^{-k}, g in Gamma0(4)
Complex slash_factor(const GroupElement& g, HalfWeight k, const Complex& z);

EvalResult slash_value(const PointFunction& f, const GroupElement& g, HalfWeight k, const Complex& z);
EvalResult slash_value(const AnySeries& f, const GroupElement& g, const FormMeta& meta, const Complex& z);

// (f|_k W_M)(z) = f(-1/(Mz)) (sqrt(M) z)^{-k}
EvalResult fricke_slash_value(const PointFunction& f, i64 M, HalfWeight k, const Complex& z);
EvalResult fricke_slash_value(const AnySeries& f, i64 M, HalfWeight k, const Complex& z);

struct PairRecord {
    GroupElement gamma;
    Complex z;
    Complex lhs; // (f|g)(z)
    Complex rhs; // psi(d) f(z)
    double residual = 0;   // |lhs - rhs| / max(|lhs|, |rhs|)
    double tail_bound = 0; // relative, both evaluation points
    bool admissible = true;
    std::string note;
};

struct ResidualReport {
    double max_residual = 0;
    int admissible = 0;
    int rejected = 0;
    std::vector<PairRecord> pairs;
};

// Rejects pairs whose relative tail bound exceeds tail_tol.
// Throws NumericalFailure when nothing is admissible.
ResidualReport automorphy_residual(const PointFunction& f, const FormMeta& meta, const std::vector<GroupElement>& gammas,
                                   const std::vector<Complex>& zs, double tail_tol = 1e-12);
ResidualReport automorphy_residual(const AnySeries& f, const FormMeta& meta, const std::vector<GroupElement>& gammas,
                                   const std::vector<Complex>& zs, double tail_tol = 1e-12);

std::vector<GroupElement> sample_gamma0(i64 N, i64 c_max, int count, u64 seed);

// z = -d/c + (u + i v)/c with u in [-0.3, 0.3], v in [0.8, 1.2], so that |cz + d| is in [0.8, 1.3].
std::vector<Complex> sample_points(const std::vector<GroupElement>& gammas, u64 seed);

// Smallest Im over z and gz for the sampled pairs; used to size truncation orders.
double min_imaginary_part(const std::vector<GroupElement>& gammas, const std::vector<Complex>& zs);

} // namespace bolhalf
