#pragma once

#include "bolhalf/form_meta.hpp"

#include <utility>
#include <vector>

namespace bolhalf {

enum class ThetaKind { theta0, theta1, serre_stark };

ThetaKind parse_theta_kind(const std::string& s); // theta0 | theta1 | st

struct ThetaContext {
    DirichletCharacter psi0; // even
    DirichletCharacter psi1; // odd
    i64 N0 = 1;
    i64 N1 = 1;
    i64 level = 4;

    static ThetaContext make(const DirichletCharacter& psi0, const DirichletCharacter& psi1);
    bool is_real() const { return psi0.is_real() && psi1.is_real(); }
};

// theta0 = sum_{n>=0} psi(n) q^{n^2} (psi(0) = 1/2 for the trivial character mod 1),
// theta1 = sum_{n>=1} n psi(n) q^{n^2}, theta_{psi,t} = sum_{n>=0} psi(n) q^{t n^2}.
// Exact instantiation requires psi with values in {0, +-1, +-i}.
template <class C>
TypedSeries<C> theta_series(ThetaKind kind, const DirichletCharacter& psi, i64 t, i64 P);

// The n = 0 value used by the theta builders.
DirichletCharacter theta0_character(const DirichletCharacter& psi);

std::vector<std::pair<DirichletCharacter, i64>> enumerate_serre_stark(i64 N0, const DirichletCharacter& psi0);

// theta0|W = (i N0)^{-1/2} tau(psi) theta0 ; theta1|W = -(i N1)^{-1/2} tau(psi) theta1 (W = W_{4N^2}).
Complex fricke_theta_constants(const DirichletCharacter& psi, ThetaKind kind);

} // namespace bolhalf
