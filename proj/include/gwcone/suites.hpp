#pragma once

#include <cstdint>
#include <vector>

#include "gwcone/config.hpp"
#include "gwcone/report.hpp"

namespace gwcone {

/// Omega(A_a^k, B_l^g) = -delta delta and Omega(A, A) = Omega(B, B) = 0 for k, l <= k_max,
/// with A_a^k = phi_a z^k and B_l^g = phi^g (-z)^{-1-l}; also antisymmetry on the same pairs.
std::vector<CheckResult> run_darboux(const TargetPtr& target, int k_max);

/// (a) point psi-integrals n <= 8 against the string-only evaluator, (b) P2 N_1..N_4 against the
/// standalone Kontsevich recursion, (c) divisor-first vs TRR-first agreement on `random_keys`
/// random P1/P2 keys, plus string and dilaton consistency of engine values.
std::vector<CheckResult> run_engine_oracles(std::uint64_t seed, int random_keys = 100);

/// Runs the selected suites for one configuration.
Report run_verification(const RunConfig& config);

}  // namespace gwcone
