#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "psipoint/rational.hpp"
#include "psipoint/series.hpp"

namespace psipoint {

/// Sparse multivariate polynomial over Rational (no stored zeros).
///
/// Used for the a-dependence of kernel coefficients, where every instance
/// is homogeneous, and for DR integrals as polynomials in the weights.
class Polynomial {
 public:
  using Terms = std::map<ExponentVector, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

  std::size_t n_vars() const { return n_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExponentVector& e, const Rational& c);
  Rational coefficient(const ExponentVector& e) const;

  /// Total degree, -1 for the zero polynomial.
  int degree() const;
  /// True when every term has total degree h (the zero polynomial qualifies).
  bool is_homogeneous(int h) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Human-readable form using `var` as the variable stem, e.g. "1/24*a2^2".
  std::string to_string(const std::string& var = "a") const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t n_vars_ = 0;
  Terms terms_;
};

/// Value of the monomial x^e at `point`.
Rational evaluate_monomial(const ExponentVector& e, std::span<const Rational> point);

/// Non-negative integer points c in `dims` dimensions with sum(c) <= degree,
/// sorted by sum(c) and then lexicographically (descending first entry), so
/// the first C(h + dims, dims) points form the lattice of degree h.
///
/// This simplex lattice is unisolvent for polynomials of total degree
/// <= degree in `dims` variables.
std::vector<std::vector<int>> principal_lattice(std::size_t dims, int degree);

/// Exact polynomial interpolation for a fixed monomial basis and point set.
///
/// The Vandermonde-type matrix is inverted once; `fit` is then a matrix
/// vector product. Throws SingularGrid when the points do not determine
/// the basis coefficients.
class Interpolator {
 public:
  Interpolator(std::vector<ExponentVector> basis, std::vector<std::vector<Rational>> points);

  std::size_t size() const { return basis_.size(); }
  const std::vector<std::vector<Rational>>& points() const { return points_; }

  Polynomial fit(std::span<const Rational> values) const;

 private:
  std::vector<ExponentVector> basis_;
  std::vector<std::vector<Rational>> points_;
  std::vector<std::vector<Rational>> inverse_;
};

}  // namespace psipoint
