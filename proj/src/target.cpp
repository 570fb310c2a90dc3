#include "gwcone/target.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gwcone/errors.hpp"

namespace gwcone {

int NovikovDegree::total() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }

bool NovikovDegree::is_zero() const {
  return std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 0; });
}

NovikovDegree& NovikovDegree::operator+=(const NovikovDegree& other) {
  if (other.degrees.size() != degrees.size()) throw ContractError("Novikov degrees of different rank");
  for (std::size_t i = 0; i < degrees.size(); ++i) degrees[i] += other.degrees[i];
  return *this;
}

NovikovDegree operator-(const NovikovDegree& a, const NovikovDegree& b) {
  if (!b.divides(a)) throw ContractError("Novikov difference " + to_string(a) + " - " + to_string(b) + " is not effective");
  NovikovDegree out = a;
  for (std::size_t i = 0; i < out.degrees.size(); ++i) out.degrees[i] -= b.degrees[i];
  return out;
}

bool NovikovDegree::divides(const NovikovDegree& b) const {
  if (b.degrees.size() != degrees.size()) return false;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] > b.degrees[i]) return false;
  }
  return true;
}

std::string to_string(const NovikovDegree& beta) {
  std::string out = "(";
  for (std::size_t i = 0; i < beta.degrees.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(beta.degrees[i]);
  }
  return out + ")";
}

CohVector CohVector::basis(std::size_t size, std::size_t index) {
  CohVector v(size);
  v[index] = 1;
  return v;
}

bool CohVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

CohVector& CohVector::operator+=(const CohVector& other) {
  if (other.size() != size()) throw ContractError("CohVector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

CohVector& CohVector::operator-=(const CohVector& other) {
  if (other.size() != size()) throw ContractError("CohVector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

CohVector& CohVector::operator*=(const Rational& scalar) {
  for (auto& c : coords_) c *= scalar;
  return *this;
}

RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw ContractError("matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ContractError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

TargetSpace::TargetSpace(Data data) : d_(std::move(data)) {
  validate();
  try {
    inverse_ = invert(d_.pairing);
  } catch (const ContractError&) {
    throw ConfigError("target " + d_.name + ": pairing matrix is singular");
  }
}

void TargetSpace::validate() const {
  auto fail = [&](const std::string& what) { throw ConfigError("target " + d_.name + ": " + what); };
  const std::size_t n = d_.basis_degrees.size();
  if (n == 0) fail("empty basis");
  if (d_.dim < 0) fail("negative dimension");
  if (d_.basis_degrees[0] != 0) fail("basis element 0 must be the unit (degree 0)");
  for (int deg : d_.basis_degrees) {
    if (deg < 0 || deg > d_.dim) fail("basis degree out of range");
  }
  if (d_.pairing.size() != n) fail("pairing has wrong size");
  for (const auto& row : d_.pairing) {
    if (row.size() != n) fail("pairing has wrong size");
  }
  if (d_.cup.size() != n) fail("cup tensor has wrong size");
  for (const auto& m : d_.cup) {
    if (m.size() != n) fail("cup tensor has wrong size");
    for (const auto& row : m) {
      if (row.size() != n) fail("cup tensor has wrong size");
    }
  }
  if (d_.c1.size() != d_.class_rank) fail("c1 pairing length differs from class rank");
  if (d_.divisor.size() != n) fail("divisor table must have one row per basis element");
  for (std::size_t a = 0; a < n; ++a) {
    bool is_div = d_.basis_degrees[a] == 1;
    if (is_div && d_.divisor[a].size() != d_.class_rank) fail("divisor pairing missing for a degree-1 class");
    if (!is_div && !d_.divisor[a].empty()) fail("divisor pairing given for a class that is not of degree 1");
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (d_.pairing[a][b] != d_.pairing[b][a]) fail("pairing is not symmetric");
      if (d_.pairing[a][b] != 0 && d_.basis_degrees[a] + d_.basis_degrees[b] != d_.dim) {
        fail("pairing is not graded");
      }
      for (std::size_t c = 0; c < n; ++c) {
        const Rational& v = d_.cup[a][b][c];
        if (v != d_.cup[b][a][c]) fail("cup product is not commutative");
        if (v != 0 && d_.basis_degrees[c] != d_.basis_degrees[a] + d_.basis_degrees[b]) fail("cup product is not graded");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (d_.cup[0][a][c] != (a == c ? 1 : 0)) fail("basis element 0 is not a unit");
    }
  }
  // Associativity and the Frobenius property (a*b, c) = (a, b*c).
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t e = 0; e < n; ++e) {
          Rational left = 0, right = 0;
          for (std::size_t m = 0; m < n; ++m) {
            left += d_.cup[a][b][m] * d_.cup[m][c][e];
            right += d_.cup[b][c][m] * d_.cup[a][m][e];
          }
          if (left != right) fail("cup product is not associative");
        }
        Rational l = 0, r = 0;
        for (std::size_t m = 0; m < n; ++m) {
          l += d_.cup[a][b][m] * d_.pairing[m][c];
          r += d_.cup[b][c][m] * d_.pairing[a][m];
        }
        if (l != r) fail("pairing is not compatible with the cup product");
      }
    }
  }
}

int TargetSpace::c1_pairing(const NovikovDegree& beta) const {
  int v = 0;
  for (std::size_t i = 0; i < d_.class_rank; ++i) v += d_.c1[i] * beta.degrees[i];
  return v;
}

int TargetSpace::divisor_pairing(std::size_t alpha, const NovikovDegree& beta) const {
  if (!is_divisor(alpha)) throw ContractError("basis class " + std::to_string(alpha) + " is not a divisor");
  int v = 0;
  for (std::size_t i = 0; i < d_.class_rank; ++i) v += d_.divisor[alpha][i] * beta.degrees[i];
  return v;
}

CohVector TargetSpace::dual_vector(std::size_t alpha) const { return CohVector(inverse_[alpha]); }

Rational TargetSpace::integrate_product(const std::vector<std::size_t>& classes) const {
  CohVector acc = unit();
  for (std::size_t a : classes) acc = cup_product(*this, acc, basis_vector(a));
  return poincare_pair(*this, acc, unit());
}

std::vector<NovikovDegree> TargetSpace::effective_classes(int max_total) const {
  std::vector<NovikovDegree> out;
  NovikovDegree cur = zero_class();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
    if (i == d_.class_rank) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur.degrees[i] = v;
      rec(i + 1, budget - v);
    }
    cur.degrees[i] = 0;
  };
  if (max_total >= 0) rec(0, max_total);
  std::sort(out.begin(), out.end(), [](const NovikovDegree& a, const NovikovDegree& b) {
    return a.total() != b.total() ? a.total() < b.total() : a < b;
  });
  return out;
}

CohVector cup_product(const TargetSpace& t, const CohVector& a, const CohVector& b) {
  const std::size_t n = t.size();
  if (a.size() != n || b.size() != n) throw ContractError("cup_product: vector size mismatch");
  CohVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& c = t.cup_coefficient(i, j, k);
        if (c != 0) out[k] += a[i] * b[j] * c;
      }
    }
  }
  return out;
}

Rational poincare_pair(const TargetSpace& t, const CohVector& a, const CohVector& b) {
  const std::size_t n = t.size();
  if (a.size() != n || b.size() != n) throw ContractError("poincare_pair: vector size mismatch");
  Rational out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] != 0 && t.pairing()[i][j] != 0) out += a[i] * b[j] * t.pairing()[i][j];
    }
  }
  return out;
}

namespace {

TargetSpace::Data projective_space(int r) {
  TargetSpace::Data d;
  d.name = r == 0 ? "point" : "P" + std::to_string(r);
  d.dim = r;
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  for (int i = 0; i <= r; ++i) d.basis_degrees.push_back(i);
  d.pairing.assign(n, std::vector<Rational>(n));
  d.cup.assign(n, RationalMatrix(n, std::vector<Rational>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    d.pairing[a][n - 1 - a] = 1;
    for (std::size_t b = 0; a + b < n; ++b) d.cup[a][b][a + b] = 1;
  }
  d.divisor.assign(n, {});
  if (r > 0) {
    d.class_rank = 1;
    d.c1 = {r + 1};
    d.divisor[1] = {1};
  }
  d.builtin = true;
  return d;
}

Rational json_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ConfigError("expected an integer or a rational string, got " + v.dump());
}

RationalMatrix json_matrix(const nlohmann::json& v) {
  RationalMatrix m;
  for (const auto& row : v) {
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(json_rational(x));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

TargetPtr make_target(const std::string& name) {
  if (name == "point") return std::make_shared<const TargetSpace>(projective_space(0));
  if (name == "P1") return std::make_shared<const TargetSpace>(projective_space(1));
  if (name == "P2") return std::make_shared<const TargetSpace>(projective_space(2));
  throw ConfigError("unknown target '" + name + "' (expected point, P1 or P2)");
}

TargetPtr target_from_json(const nlohmann::json& j) {
  try {
    TargetSpace::Data d;
    d.name = j.at("name").get<std::string>();
    d.dim = j.at("dim").get<int>();
    d.basis_degrees = j.at("basis_degrees").get<std::vector<int>>();
    d.pairing = json_matrix(j.at("pairing"));
    for (const auto& m : j.at("cup")) d.cup.push_back(json_matrix(m));
    d.class_rank = j.value("class_rank", std::size_t{0});
    d.c1 = j.value("c1_pairing", std::vector<int>{});
    d.divisor.assign(d.basis_degrees.size(), {});
    if (j.contains("divisor_pairing")) {
      for (const auto& [key, row] : j.at("divisor_pairing").items()) {
        std::size_t idx = std::stoul(key);
        if (idx >= d.divisor.size()) throw ConfigError("divisor_pairing index out of range");
        d.divisor[idx] = row.get<std::vector<int>>();
      }
    }
    return std::make_shared<const TargetSpace>(std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed target presentation: ") + e.what());
  }
}

}  // namespace gwcone
