#pragma once

#include <string>

#include "gwcone/correlator.hpp"

namespace gwcone {

/// Parses `d=<novikov>; (alpha,k) (alpha,k) ...`. The degree is `3`, `(3)`, `(1,2)` or `()`;
/// an insertion may be followed by `x8` (or `×8`) to repeat it. Throws ParseError.
CorrelatorKey parse_correlator_query(const std::string& query, const TargetSpace& target);

}  // namespace gwcone
