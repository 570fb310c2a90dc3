#include "gwcone/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwcone::oracle {

Rational point_psi_integral(std::vector<int> psi_powers) {
  const int n = static_cast<int>(psi_powers.size());
  if (n < 3) throw std::invalid_argument("point_psi_integral needs n >= 3");
  int total = 0;
  for (int k : psi_powers) {
    if (k < 0) return 0;
    total += k;
  }
  if (total != n - 3) return 0;
  if (n == 3) return 1;
  // total = n - 3 < n, so some marking carries no psi: remove it with the string equation.
  auto unit = std::find(psi_powers.begin(), psi_powers.end(), 0);
  psi_powers.erase(unit);
  Rational sum = 0;
  for (std::size_t j = 0; j < psi_powers.size(); ++j) {
    if (psi_powers[j] == 0) continue;
    auto lowered = psi_powers;
    --lowered[j];
    sum += point_psi_integral(lowered);
  }
  return sum;
}

namespace {

Integer choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

std::vector<Integer> kontsevich_numbers(int dmax) {
  std::vector<Integer> n(static_cast<std::size_t>(std::max(dmax, 0)) + 1, 0);
  if (dmax >= 1) n[1] = 1;
  for (long d = 2; d <= dmax; ++d) {
    Integer sum = 0;
    for (long d1 = 1; d1 < d; ++d1) {
      const long d2 = d - d1;
      sum += n[d1] * n[d2] *
             (Integer(d1 * d1 * d2 * d2) * choose(3 * d - 4, 3 * d1 - 2) -
              Integer(d1 * d1 * d1 * d2) * choose(3 * d - 4, 3 * d1 - 1));
    }
    n[d] = sum;
  }
  return n;
}

}  // namespace gwcone::oracle
