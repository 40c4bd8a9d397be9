#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "psipoint/rational.hpp"

namespace psipoint {

/// Multi-index (d_1, ..., d_n) of a monomial x_1^{d_1} ... x_n^{d_n}.
///
/// Stored inline so that it can be used as a map key without allocation.
/// Ordering is lexicographic on the exponents.
class ExponentVector {
 public:
  static constexpr std::size_t kMaxVars = 8;
  static constexpr int kMaxExponent = 255;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t n_vars);
  ExponentVector(std::initializer_list<int> exponents);
  explicit ExponentVector(std::span<const int> exponents);

  static ExponentVector unit(std::size_t n_vars, std::size_t i);

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int exponent);
  int total_degree() const;

  std::vector<int> to_vector() const;
  std::string to_string() const;

  ExponentVector operator+(const ExponentVector& other) const;
  /// Component-wise difference; requires other <= *this entry-wise.
  ExponentVector operator-(const ExponentVector& other) const;

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

/// All exponent vectors in `n_vars` variables of total degree `degree`, in
/// lexicographic order.
std::vector<ExponentVector> monomials_of_degree(std::size_t n_vars, int degree);

/// Linear form sum_i c_i x_i.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> coefficients);

  /// X = x_1 + ... + x_n.
  static LinearForm sum(std::size_t n_vars);
  static LinearForm variable(std::size_t n_vars, std::size_t i);

  std::size_t n_vars() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const;

  LinearForm operator+(const LinearForm& other) const;
  LinearForm operator-(const LinearForm& other) const;
  LinearForm operator*(const Rational& s) const;

 private:
  std::vector<Rational> c_;
};

/// Multivariate power series over Rational truncated at total degree N.
///
/// Terms are kept per homogeneous layer (index = total degree); zero
/// coefficients are never stored, so two series are equal iff their
/// variable count, order and term maps are equal.
class TruncatedSeries {
 public:
  using Layer = std::map<ExponentVector, Rational>;

  TruncatedSeries() = default;
  TruncatedSeries(std::size_t n_vars, int order);

  static TruncatedSeries constant(std::size_t n_vars, int order, const Rational& c);
  static TruncatedSeries from_form(const LinearForm& form, int order);
  static TruncatedSeries monomial(const ExponentVector& e, int order,
                                  const Rational& c = 1);

  std::size_t n_vars() const { return n_vars_; }
  int order() const { return order_; }

  /// Homogeneous part of total degree d (0 <= d <= order).
  const Layer& layer(int d) const;
  /// Exact stored coefficient, zero if absent. Throws std::out_of_range
  /// when the monomial lies above the truncation order.
  Rational coefficient(const ExponentVector& e) const;

  /// Adds c to the coefficient of e; terms above the order are dropped.
  void add_term(const ExponentVector& e, const Rational& c);

  bool is_zero() const;
  std::size_t term_count() const;
  /// Lowest degree carrying a nonzero term, or -1 for the zero series.
  int valuation() const;

  TruncatedSeries truncated(int order) const;
  /// Only the layer of total degree d, same order.
  TruncatedSeries homogeneous_part(int d) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const Rational& s);
  TruncatedSeries operator-() const;

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    return a += b;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    return a -= b;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) {
    return a *= s;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  std::string to_string() const;

  template <typename F>
  void for_each_term(F&& f) const {
    for (const auto& layer : layers_)
      for (const auto& [e, c] : layer) f(e, c);
  }

 private:
  void check_compatible(const TruncatedSeries& other) const;

  std::size_t n_vars_ = 0;
  int order_ = -1;
  std::vector<Layer> layers_;
};

/// Product truncated at min(order(a), order(b)). Throws
/// std::invalid_argument on mismatched variable counts.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

/// Product with a linear form; the result keeps the order of `s`.
TruncatedSeries mul_form(const TruncatedSeries& s, const LinearForm& form);

/// Exact quotient q with form * q = s, of order order(s) - 1.
///
/// Synthetic division along the lowest-index variable with a nonzero
/// coefficient in `form`; throws NonExactDivision when the remainder does
/// not vanish (including a nonzero constant term in `s`).
TruncatedSeries series_div_linear(const TruncatedSeries& s, const LinearForm& form);

/// Inverse of a series with constant term 1, through the same order.
TruncatedSeries series_invert_unit(const TruncatedSeries& s);

/// exp(s) for s with zero constant term.
TruncatedSeries series_exp(const TruncatedSeries& s);

/// k-th power by repeated multiplication.
TruncatedSeries series_pow(const TruncatedSeries& s, int k);

/// Coefficient of L^{2i} in S(L) = zeta(L)/L, i.e. 1/(2^{2i} (2i+1)!).
Rational s_series_coefficient(int i);

/// S(L) = 1 + L^2/24 + L^4/1920 + ..., truncated at `order`.
TruncatedSeries s_of_form(const LinearForm& form, int order);

/// zeta(L) = L * S(L).
TruncatedSeries zeta_of_form(const LinearForm& form, int order);

/// exp(X^3 / 24) with X = x_1 + ... + x_n.
TruncatedSeries exp_cube(std::size_t n_vars, int order);

Rational coefficient(const TruncatedSeries& s, const ExponentVector& e);

/// Drops every monomial with a positive exponent at variable i (x_i = 0).
TruncatedSeries restrict_variable(const TruncatedSeries& s, std::size_t i);

/// Removes variable i from a series that does not depend on it.
TruncatedSeries drop_variable(const TruncatedSeries& s, std::size_t i);

/// Inserts a new variable at position i (the series does not depend on it).
TruncatedSeries insert_variable(const TruncatedSeries& s, std::size_t i);

/// Renames x_i -> x_{perm[i]}.
TruncatedSeries permute_variables(const TruncatedSeries& s,
                                  std::span<const std::size_t> perm);

/// Substitutes x_i -> scale * x_i for every variable.
TruncatedSeries scale_variables(const TruncatedSeries& s, const Rational& scale);

}  // namespace psipoint
