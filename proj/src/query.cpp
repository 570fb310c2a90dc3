#include "gwcone/query.hpp"

#include <cctype>

#include "gwcone/errors.hpp"

namespace gwcone {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= s_.size();
  }
  bool accept(const std::string& token) {
    skip_space();
    if (s_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }
  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }
  int integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '-')) fail("expected an integer");
    try {
      return std::stoi(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("correlator query, column " + std::to_string(pos_ + 1) + ": " + what + " in \"" + s_ + "\"");
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

CorrelatorKey parse_correlator_query(const std::string& query, const TargetSpace& target) {
  Cursor c(query);
  c.expect("d");
  c.expect("=");
  NovikovDegree beta;
  if (c.accept("(")) {
    if (!c.accept(")")) {
      do {
        beta.degrees.push_back(c.integer());
      } while (c.accept(","));
      c.expect(")");
    }
  } else {
    beta.degrees.push_back(c.integer());
  }
  c.expect(";");
  if (beta.rank() != target.class_rank()) {
    c.fail("degree has " + std::to_string(beta.rank()) + " components, target " + target.name() + " needs " +
           std::to_string(target.class_rank()));
  }
  for (int v : beta.degrees) {
    if (v < 0) c.fail("degree components must be non-negative");
  }
  std::vector<Insertion> ins;
  while (!c.done()) {
    c.expect("(");
    const int a = c.integer();
    c.expect(",");
    const int k = c.integer();
    c.expect(")");
    if (a < 0 || static_cast<std::size_t>(a) >= target.size()) c.fail("basis index out of range");
    if (k < 0) c.fail("psi power must be non-negative");
    int repeat = 1;
    if (c.accept("×") || c.accept("x") || c.accept("*")) repeat = c.integer();
    if (repeat < 1) c.fail("repetition count must be positive");
    for (int r = 0; r < repeat; ++r) ins.push_back(Insertion{static_cast<std::size_t>(a), k});
  }
  return CorrelatorKey(beta, std::move(ins));
}

}  // namespace gwcone
