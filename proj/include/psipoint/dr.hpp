#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "psipoint/kernel.hpp"
#include "psipoint/polynomial.hpp"
#include "psipoint/series.hpp"

namespace psipoint {

/// Integer weights of marked points.
using IntVector = std::vector<long>;

AVector to_avector(std::span<const long> v);

/// Genus g with sum(d) = 2g - 3 + n and 2g - 2 + n > 0, if any.
std::optional<int> dr_genus(std::size_t n, int degree_sum);

/// Generating series of psi-integrals over DR_g(a), summed over g:
/// P_n(a; x) / zeta(X) - delta_{n,2} / (x_1 + x_2), through order N.
/// Requires n >= 2 and sum(a) = 0.
TruncatedSeries dr_series(std::span<const long> a, int order);

/// Integral of psi_1^{d_1} ... psi_n^{d_n} over DR_g(a), g inferred from d.
/// Returns 0 when no genus matches; the series coefficient is checked to
/// vanish there (ConsistencyError otherwise).
Rational dr_integral(std::span<const long> a, const ExponentVector& d);

/// a -> (integral over DR_g(a) of psi^d) as a polynomial in a_1..a_{n-1},
/// with a_n = -(a_1 + ... + a_{n-1}).
struct DrIntegralPolynomial {
  std::size_t n = 0;
  int genus = 0;
  ExponentVector d;
  Polynomial poly;

  Rational evaluate(std::span<const long> a_head) const;
};

/// Interpolates the DR integral (degree <= 2g in the weights) on a lattice
/// grid and verifies the result at held-out points.
DrIntegralPolynomial dr_integral_poly(std::size_t n, const ExponentVector& d);

/// Kept weights a_1..a_n and forgotten weights b_1..b_m with
/// sum(a) + sum(b) = 0.
struct ForgottenSpec {
  IntVector kept;
  IntVector forgotten;

  /// Throws std::invalid_argument unless kept.size() >= 3 and balanced.
  void validate() const;
};

/// Psi-integrals over pi_{m*} DR_g(a, b), summed over g, through order N:
///   1/S(X) * sum over I_0 u I_1 u ... u I_n = {1..m} of
///   X^{|I_0| - 1} prod_i (-x_i)^{|I_i|} prod_{j in I_0} S(b_j X)
///   * P_n(a_1 + B_{I_1}, ..., a_n + B_{I_n}; x).
TruncatedSeries forgotten_series(const ForgottenSpec& spec, int order);

/// The same integrals as signed sums of ordinary DR integrals on n + |I_0|
/// points, computed from dr_integral only. Throws std::invalid_argument
/// unless sum(d) = 2g - 3 + n + m for an integer g >= 0.
Rational forgotten_integral_direct(const ForgottenSpec& spec, const ExponentVector& d);

/// Every assignment {1..m} -> {0..n} (0 meaning I_0), in lexicographic order.
std::vector<std::vector<std::size_t>> partition_assignments(std::size_t m, std::size_t n);

}  // namespace psipoint
