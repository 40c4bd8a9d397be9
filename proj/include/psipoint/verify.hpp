#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psipoint/dr.hpp"

namespace psipoint {

/// Outcome of one verification suite. Exceptions raised inside a suite are
/// recorded as failures.
struct SuiteResult {
  std::string name;
  int checked = 0;
  std::vector<std::string> failures;
  double seconds = 0;

  bool ok() const { return failures.empty(); }
};

/// npoint_series(1) against (exp(x^3/24) - 1)/x^2.
SuiteResult one_point_suite(int order);

/// npoint_series(2) against the closed two-point function.
SuiteResult two_point_suite(int order);

/// Oracle self-check, then intersection_number == dvv_number for every
/// (g, d) with n points and g <= g_max, for each (n, g_max).
SuiteResult oracle_suite(std::span<const std::pair<std::size_t, int>> envelope);

/// F_n(x_1, ..., x_{n-1}, 0) == (x_1 + ... + x_{n-1}) F_{n-1} + delta_{n,3}
/// for 2 <= n <= max_n through `order`.
SuiteResult string_suite(std::size_t max_n, int order);

/// Symmetry, divisibility by X (balanced weights), the restriction identity
/// and homogeneity of the kernel on `trials` random vectors per n.
SuiteResult kernel_suite(std::span<const std::size_t> ns, int trials, int order, unsigned seed);

/// npoint_via_dr on both default draws against npoint_series, per (g, n).
SuiteResult dr_route_suite(std::span<const std::pair<int, std::size_t>> cases);

/// forgotten_series coefficients against forgotten_integral_direct for every
/// degree vector of total degree <= max_degree.
SuiteResult forgotten_suite(std::span<const ForgottenSpec> specs, int max_degree);
std::vector<ForgottenSpec> default_forgotten_specs();

/// dr_integral_poly(2, (1,0)) == (a^2 - 1)/24 and held-out verification for
/// every admissible d with 2 <= n <= max_n and sum(d) <= max_degree.
SuiteResult polynomiality_suite(std::size_t max_n, int max_degree);

SuiteResult cn_suite(int max_k);

/// Quick: small instances of every suite. Full: the acceptance envelope.
std::vector<SuiteResult> run_selftest(bool full);

}  // namespace psipoint
