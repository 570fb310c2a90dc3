#pragma once

#include <vector>

#include "gwcone/rational.hpp"

// Reference computations that share no code with the reduction engine. Used by the
// engine-oracles suite and by the tests.
namespace gwcone::oracle {

/// int_{M_{0,n}} psi_1^{k_1} ... psi_n^{k_n}, using only the string equation and <1,1,1> = 1.
Rational point_psi_integral(std::vector<int> psi_powers);

/// N_1, ..., N_dmax for P2 by the closed Kontsevich recursion
/// N_d = sum_{d1+d2=d} N_{d1} N_{d2} [d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)].
std::vector<Integer> kontsevich_numbers(int dmax);

}  // namespace gwcone::oracle
