#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psipoint/dr.hpp"
#include "psipoint/kernel.hpp"
#include "psipoint/polynomial.hpp"
#include "psipoint/series.hpp"

namespace psipoint {

/// Replaces each a-monomial prod a_i^{d_i} by
/// (-1)^{sum d_i / 2} prod (d_i - 1)!! x_i^{d_i / 2} when every d_i is even
/// and by 0 otherwise (the Gaussian moments of the a-integral).
Polynomial gaussian_substitute(const Polynomial& a_poly);

/// Largest kernel x-degree whose transform lands at or below `target`:
/// a layer of x-degree D and a-degree D - n + 2 moves to D + (D - n + 2)/2.
int kernel_order_for(std::size_t n, int target);

/// Applies gaussian_substitute to every coefficient of the kernel and
/// collects the result through total degree `target`. Throws
/// std::invalid_argument when the kernel order is below
/// kernel_order_for(n, target).
TruncatedSeries gaussian_transform(const PnSymbolic& p, int target);

/// The n-point function F(x_1, ..., x_n) through total degree N.
///
/// n >= 2: (exp(X^3/24) * gaussian_transform(P_n) - delta_{n,2}) / X.
/// n = 1:  (exp(x^3/24) - 1) / x^2.
TruncatedSeries npoint_series(std::size_t n, int order);

/// <tau_{d_1} ... tau_{d_n}>_g; zero outside the dimension constraint and
/// in the unstable range.
Rational intersection_number(int g, const ExponentVector& d);

/// (exp(x^3/24) - 1) / x^2.
TruncatedSeries one_point_closed(int order);

/// exp((x1^3 + x2^3)/24) / (x1 + x2) * sum_k k!/(2k+1)! (x1 x2 (x1 + x2)/2)^k
/// - 1/(x1 + x2).
TruncatedSeries two_point_closed(int order);

struct CnRow {
  int k = 0;
  Rational direct;  // sum_{m1+m2=k} (-1)^{m2} / (m1! m2! (2 m2 + 1))
  Rational closed;  // 2^k / (2k+1)!!
  bool ok() const { return direct == closed; }
};

struct CnReport {
  std::vector<CnRow> rows;
  bool ok() const;
  std::vector<int> failures() const;
};

CnReport cn_identity_check(int max_k);

/// Homogeneous degree-(3g-3+n) part of F_g recomputed from DR cycles with
/// g forgotten points: kept weights (a, -A-B), forgotten weights b, the
/// last kept variable set to zero, normalized by g! prod b_j^2 and X.
/// Throws ConsistencyError if any coefficient below degree 3g-2+n
/// survives.
TruncatedSeries npoint_via_dr(int g, std::span<const long> a, std::span<const long> b);

/// Default deterministic (a, b) draws for npoint_via_dr cross-checks.
std::pair<IntVector, IntVector> default_dr_draw(int g, std::size_t n, int which);

enum class Provenance { theorem_route, oracle, closed_form, dr_route };
std::string to_string(Provenance p);

struct IntersectionKey {
  int g = 0;
  std::vector<int> d;  // sorted ascending

  IntersectionKey(int genus, std::vector<int> degrees);
  friend auto operator<=>(const IntersectionKey&, const IntersectionKey&) = default;
  friend bool operator==(const IntersectionKey&, const IntersectionKey&) = default;
};

/// Intersection numbers keyed by genus and sorted degree vector.
class IntersectionTable {
 public:
  struct Entry {
    Rational value;
    Provenance provenance;
  };

  /// Throws std::invalid_argument on a dimension-violating key and
  /// ConsistencyError when an existing entry carries another value.
  void insert(int g, std::span<const int> d, const Rational& value, Provenance provenance);
  std::optional<Rational> find(int g, std::span<const int> d) const;
  const std::map<IntersectionKey, Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Every coefficient of an n-point series; a nonzero coefficient outside
  /// the dimension constraint raises ConsistencyError.
  static IntersectionTable from_series(const TruncatedSeries& f, Provenance provenance);

 private:
  std::map<IntersectionKey, Entry> entries_;
};

/// Genus g with sum(d) = 3g - 3 + n and 2g - 2 + n > 0, if any.
std::optional<int> intersection_genus(std::size_t n, int degree_sum);

}  // namespace psipoint
