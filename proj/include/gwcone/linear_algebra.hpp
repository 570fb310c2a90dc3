#pragma once

#include "gwcone/target.hpp"

namespace gwcone {

/// Rank over Q by fraction-exact Gaussian elimination.
std::size_t matrix_rank(RationalMatrix m);

}  // namespace gwcone
