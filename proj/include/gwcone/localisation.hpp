#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gwcone/givental.hpp"

namespace gwcone {

enum class SplittingKind { generic, case1, case2, case3, case4, case5 };

std::string to_string(SplittingKind kind);

/// (beta0, n0 | beta_inf, n_inf): degree and marked-point count carried by the pieces over
/// X_0 and X_inf. Which marked points go where is never materialized; the binomial
/// weight (n choose n_inf) accounts for it.
struct SplittingRecord {
  SplittingKind kind = SplittingKind::generic;
  NovikovDegree beta0;
  NovikovDegree beta_inf;
  int n0 = 0;
  int n_inf = 0;

  NovikovDegree beta() const { return beta0 + beta_inf; }
  int n() const { return n0 + n_inf; }
  auto operator<=>(const SplittingRecord&) const = default;
  bool operator==(const SplittingRecord&) const = default;
};

nlohmann::json to_json(const SplittingRecord& r);

/// Side shapes: over X_0 a piece is either absent (0,0), a single marking (0,1), or a stable
/// (beta0, n0 + 1); over X_inf either absent (0,0) or a stable (beta_inf, n_inf + 2).
/// Returns false for shapes that do not occur.
bool classify_splitting(const NovikovDegree& beta0, int n0, const NovikovDegree& beta_inf, int n_inf,
                        SplittingKind* kind);

std::vector<SplittingRecord> enumerate_splittings(const TargetSpace& t, const NovikovDegree& beta, int n);

/// Contribution of one record at grade Q^beta eps^n, including the weight 1/(n0! n_inf!).
GiventalSeries contribution(const SplittingRecord& rec, Givental& g);

/// Sum of all contributions over beta <= D, n <= E. Records used are appended to `used` if given.
GiventalSeries localisation_sum(Givental& g, std::vector<SplittingRecord>* used = nullptr);

/// localisation_sum(t) == S_t(cone_point(t)) coefficientwise.
CheckResult check_main_identity(Givental& g, std::vector<SplittingRecord>* used = nullptr);

/// (n choose n_inf) / n! == 1/(n0! n_inf!) and (beta, n) additive for every record.
CheckResult check_weight_bookkeeping(const std::vector<SplittingRecord>& records);

}  // namespace gwcone
