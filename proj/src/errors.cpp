#include "gwcone/errors.hpp"

namespace gwcone {

WindowOverflow::WindowOverflow(int exponent, int z_min, int z_max)
    : ConfigError("z-exponent " + std::to_string(exponent) + " escapes the window [" + std::to_string(z_min) + ", " +
                  std::to_string(z_max) + "]"),
      exponent_(exponent) {}

}  // namespace gwcone
