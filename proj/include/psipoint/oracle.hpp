#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psipoint/rational.hpp"

namespace psipoint {

struct SelfCheckReport {
  int checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Intersection numbers from the DVV (Virasoro) recursion, memoized by
/// (genus, sorted degrees).
///
/// Values are only handed out after `selfcheck` has compared the recursion
/// with the closed one- and two-point functions and with the string and
/// dilaton equations.
class OracleTable {
 public:
  /// Throws OracleNotValidated before a successful selfcheck.
  Rational dvv_number(int g, std::vector<int> d);

  SelfCheckReport selfcheck();
  bool validated() const { return validated_; }

  void clear_memo() { memo_.clear(); }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  Rational compute(int g, std::vector<int> d);

  std::map<std::pair<int, std::vector<int>>, Rational> memo_;
  bool validated_ = false;
};

}  // namespace psipoint
