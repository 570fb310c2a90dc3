#include "gwcone/series.hpp"

#include "gwcone/errors.hpp"

namespace gwcone {

void Truncation::validate() const {
  if (novikov_order < 0 || epsilon_order < 0) throw ConfigError("truncation orders must be non-negative");
  if (!(z_min <= 0 && 0 < z_max)) {
    throw ConfigError("z-window [" + std::to_string(z_min) + ", " + std::to_string(z_max) + "] must satisfy z_min <= 0 < z_max");
  }
}

void Truncation::check_window(int z) const {
  if (!in_window(z)) throw WindowOverflow(z, z_min, z_max);
}

std::string to_string(const Grade& g) { return "Q^" + to_string(g.beta) + " eps^" + std::to_string(g.eps); }

void ScalarSeries::add_term(int z, const Grade& g, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{z, g}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ScalarSeries::coefficient(int z, const Grade& g) const {
  auto it = terms_.find(Key{z, g});
  return it == terms_.end() ? Rational(0) : it->second;
}

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& o) {
  for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, v);
  return *this;
}

ScalarSeries& ScalarSeries::operator-=(const ScalarSeries& o) {
  for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, -v);
  return *this;
}

ScalarSeries& ScalarSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

ScalarSeries ScalarSeries::multiply(const ScalarSeries& o, const Truncation& trunc) const {
  ScalarSeries out;
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : o.terms_) {
      Grade g = ka.second + kb.second;
      if (!trunc.admits(g.beta, g.eps)) continue;
      out.add_term(ka.first + kb.first, g, va * vb);
    }
  }
  return out;
}

ScalarSeries ScalarSeries::shifted(const Grade& shift, const Truncation& trunc) const {
  ScalarSeries out;
  for (const auto& [k, v] : terms_) {
    Grade g = k.second + shift;
    if (trunc.admits(g.beta, g.eps)) out.add_term(k.first, g, v);
  }
  return out;
}

GiventalSeries::GiventalSeries(TargetPtr target, Truncation trunc) : target_(std::move(target)), trunc_(trunc) {
  if (!target_) throw ContractError("GiventalSeries needs a target");
  trunc_.validate();
}

void GiventalSeries::add_term(int z, std::size_t basis, const NovikovDegree& beta, int eps, const Rational& c) {
  if (c == 0) return;
  if (basis >= target_->size()) throw ContractError("basis index out of range");
  if (beta.rank() != target_->class_rank()) throw ContractError("Novikov degree has the wrong rank");
  if (!trunc_.admits(beta, eps)) return;
  trunc_.check_window(z);
  auto [it, inserted] = terms_.try_emplace(SeriesKey{z, basis, beta, eps}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GiventalSeries::add_vector(int z, const CohVector& v, const Grade& g, const Rational& scale) {
  if (scale == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) add_term(z, i, g.beta, g.eps, scale * v[i]);
  }
}

Rational GiventalSeries::coefficient(const SeriesKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GiventalSeries::require_compatible(const GiventalSeries& o) const {
  if (!(trunc_ == o.trunc_)) throw ContractError("series have different truncations");
  if (target_ != o.target_ && target_->name() != o.target_->name()) throw ContractError("series live on different targets");
}

GiventalSeries& GiventalSeries::operator+=(const GiventalSeries& o) {
  require_compatible(o);
  for (const auto& [k, v] : o.terms_) add_term(k, v);
  return *this;
}

GiventalSeries& GiventalSeries::operator-=(const GiventalSeries& o) {
  require_compatible(o);
  for (const auto& [k, v] : o.terms_) add_term(k, -v);
  return *this;
}

GiventalSeries& GiventalSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

bool GiventalSeries::operator==(const GiventalSeries& o) const {
  require_compatible(o);
  return terms_ == o.terms_;
}

GiventalSeries GiventalSeries::grade_part(const Grade& g) const {
  GiventalSeries out(target_, trunc_);
  for (const auto& [k, v] : terms_) {
    if (k.beta == g.beta && k.eps == g.eps) out.terms_.emplace(k, v);
  }
  return out;
}

GiventalSeries GiventalSeries::flipped() const {
  GiventalSeries out(target_, trunc_);
  for (const auto& [k, v] : terms_) out.terms_.emplace(k, (k.z % 2 == 0) ? v : Rational(-v));
  return out;
}

GiventalSeries add(const GiventalSeries& f, const GiventalSeries& g) { return f + g; }

namespace {

void require_same(const GiventalSeries& f, const GiventalSeries& g) {
  if (!(f.trunc() == g.trunc())) throw ContractError("series have different truncations");
  if (f.target()->name() != g.target()->name()) throw ContractError("series live on different targets");
}

}  // namespace

ScalarSeries pair_extend(const GiventalSeries& f, const GiventalSeries& g) {
  require_same(f, g);
  const auto& t = *f.target();
  const auto& trunc = f.trunc();
  ScalarSeries out;
  for (const auto& [kf, vf] : f.terms()) {
    for (const auto& [kg, vg] : g.terms()) {
      const Rational& p = t.pairing()[kf.basis][kg.basis];
      if (p == 0) continue;
      Grade grade = kf.grade() + kg.grade();
      if (!trunc.admits(grade.beta, grade.eps)) continue;
      trunc.check_window(kf.z + kg.z);
      out.add_term(kf.z + kg.z, grade, vf * vg * p);
    }
  }
  return out;
}

ScalarSeries omega(const GiventalSeries& f, const GiventalSeries& g) {
  require_same(f, g);
  const auto& t = *f.target();
  const auto& trunc = f.trunc();
  // Only pairs with z-exponents summing to -1 reach the residue.
  std::map<int, std::vector<const std::pair<const SeriesKey, Rational>*>> g_by_z;
  for (const auto& entry : g.terms()) g_by_z[entry.first.z].push_back(&entry);
  ScalarSeries out;
  for (const auto& [kf, vf] : f.terms()) {
    auto it = g_by_z.find(-1 - kf.z);
    if (it == g_by_z.end()) continue;
    const Rational sign = (kf.z % 2 == 0) ? 1 : -1;
    for (const auto* eg : it->second) {
      const auto& [kg, vg] = *eg;
      const Rational& p = t.pairing()[kf.basis][kg.basis];
      if (p == 0) continue;
      Grade grade = kf.grade() + kg.grade();
      if (!trunc.admits(grade.beta, grade.eps)) continue;
      out.add_term(0, grade, sign * vf * vg * p);
    }
  }
  return out;
}

std::pair<GiventalSeries, GiventalSeries> split_plus_minus(const GiventalSeries& f) {
  GiventalSeries plus(f.target(), f.trunc()), minus(f.target(), f.trunc());
  for (const auto& [k, v] : f.terms()) (k.z >= 0 ? plus : minus).add_term(k, v);
  return {std::move(plus), std::move(minus)};
}

PolynomialVerdict is_z_polynomial(const GiventalSeries& f, PolynomialMode mode) {
  PolynomialVerdict verdict;
  const int threshold = mode == PolynomialMode::h_plus ? 0 : 1;
  for (const auto& [k, v] : f.terms()) {
    if (k.z < threshold) verdict.offending.push_back(k);
  }
  verdict.holds = verdict.offending.empty();
  return verdict;
}

nlohmann::json series_to_json(const GiventalSeries& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : f.terms()) {
    out.push_back({{"z_exp", k.z},
                   {"basis", k.basis},
                   {"novikov", k.beta.degrees},
                   {"eps", k.eps},
                   {"num", numerator_string(v)},
                   {"den", denominator_string(v)}});
  }
  return out;
}

GiventalSeries series_from_json(const nlohmann::json& records, TargetPtr target, Truncation trunc) {
  GiventalSeries out(std::move(target), trunc);
  try {
    for (const auto& r : records) {
      NovikovDegree beta{r.at("novikov").get<std::vector<int>>()};
      Rational c(Integer(r.at("num").get<std::string>()), Integer(r.at("den").get<std::string>()));
      c.canonicalize();
      out.add_term(r.at("z_exp").get<int>(), r.at("basis").get<std::size_t>(), beta, r.at("eps").get<int>(), c);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed series record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed series coefficient: ") + e.what());
  }
  return out;
}

std::string serialize(const GiventalSeries& f) { return series_to_json(f).dump(); }

nlohmann::json scalar_to_json(const ScalarSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : s.terms()) {
    out.push_back({{"z_exp", k.first},
                   {"novikov", k.second.beta.degrees},
                   {"eps", k.second.eps},
                   {"num", numerator_string(v)},
                   {"den", denominator_string(v)}});
  }
  return out;
}

}  // namespace gwcone
