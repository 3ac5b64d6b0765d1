#pragma once

#include "bolhalf/lseries.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bolhalf {

// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical-infrastructure failure.
int run_cli(int argc, const char* const* argv);
// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "lo:hi:count" (evenly spaced, both ends included) or a comma list "0.5,1,2".
std::vector<double> parse_grid(const std::string& spec);

// key = value lines (# comments): k, N, Np, D, chi, psi, psi_prime, lambda ("re" or "re,im"), h, phi.
// h is parsed after k is known; phi is returned through phi_spec when present.
SCParams parse_sc_params(const std::string& text, std::string& phi_spec);

} // namespace bolhalf
