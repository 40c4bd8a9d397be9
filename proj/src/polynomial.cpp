#include "psipoint/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "psipoint/errors.hpp"

namespace psipoint {

void Polynomial::add_term(const ExponentVector& e, const Rational& c) {
  if (e.size() != n_vars_) throw std::invalid_argument("exponent vector size mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const ExponentVector& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
  return d;
}

bool Polynomial::is_homogeneous(int h) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [h](const auto& kv) { return kv.first.total_degree() == h; });
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_vars_) throw std::invalid_argument("evaluation point size mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += c * evaluate_monomial(e, point);
  return sum;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    const bool constant = e.total_degree() == 0;
    if (mag != 1 || constant) os << mag.get_str();
    bool need_star = mag != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << var << i + 1;
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

Rational evaluate_monomial(const ExponentVector& e, std::span<const Rational> point) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) v *= point[i];
  }
  return v;
}

std::vector<std::vector<int>> principal_lattice(std::size_t dims, int degree) {
  std::vector<std::vector<int>> out;
  for (int total = 0; total <= degree; ++total) {
    const auto layer = monomials_of_degree(dims, total);
    for (auto it = layer.rbegin(); it != layer.rend(); ++it) out.push_back(it->to_vector());
  }
  return out;
}

Interpolator::Interpolator(std::vector<ExponentVector> basis,
                           std::vector<std::vector<Rational>> points)
    : basis_(std::move(basis)), points_(std::move(points)) {
  const std::size_t m = basis_.size();
  if (points_.size() != m)
    throw std::invalid_argument("interpolation needs as many points as basis monomials");

  // Gauss-Jordan on [V | I], V[r][c] = basis_c(point_r).
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = evaluate_monomial(basis_[c], points_[r]);
    a[r][m + r] = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw SingularGrid("interpolation matrix is singular");
    std::swap(a[piv], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < 2 * m; ++c)
        if (a[col][c] != 0) a[r][c] -= f * a[col][c];
    }
  }
  inverse_.assign(m, std::vector<Rational>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) inverse_[r][c] = std::move(a[r][m + c]);
}

Polynomial Interpolator::fit(std::span<const Rational> values) const {
  const std::size_t m = basis_.size();
  if (values.size() != m) throw std::invalid_argument("value count mismatch");
  const std::size_t n_vars = points_.empty() ? basis_.front().size() : points_.front().size();
  Polynomial p(n_vars);
  for (std::size_t r = 0; r < m; ++r) {
    Rational c = 0;
    for (std::size_t k = 0; k < m; ++k)
      if (values[k] != 0) c += inverse_[r][k] * values[k];
    p.add_term(basis_[r], c);
  }
  return p;
}

}  // namespace psipoint
