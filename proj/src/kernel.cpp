#include "psipoint/kernel.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "psipoint/errors.hpp"
#include "psipoint/parallel.hpp"

namespace psipoint {

LinearForm pair_form(const AVector& a, std::size_t p, std::size_t q) {
  std::vector<Rational> c(a.size(), Rational(0));
  c[q] = a[p];
  c[p] = -a[q];
  return LinearForm(std::move(c));
}

bool is_degenerate(const AVector& a) {
  std::size_t zeros = 0;
  for (const auto& v : a) zeros += v == 0 ? 1 : 0;
  return zeros >= 2;
}

namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

PermTerm make_term(const AVector& a, std::vector<std::size_t> order) {
  const std::size_t n = a.size();
  PermTerm t;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  Rational a_prefix = 0;
  std::vector<Rational> x_prefix(n, Rational(0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t p = order[k];
    const std::size_t q = order[k + 1];
    if (p < q) {
      t.adjacent.push_back(pair_form(a, p, q));
    } else {
      t.adjacent.push_back(pair_form(a, q, p) * Rational(-1));
      t.sign = -t.sign;
    }
    used[std::min(p, q)][std::max(p, q)] = true;

    a_prefix += a[p];
    x_prefix[p] = 1;
    std::vector<Rational> c(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) c[i] = -a[q] * x_prefix[i];
    c[q] += a_prefix;
    t.cumulative.emplace_back(std::move(c));
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (!used[p][q]) t.unused_pairs.emplace_back(p, q);
  t.order = std::move(order);
  return t;
}

// sign * x_{s_2} ... x_{s_{n-1}} * prod C_k * prod(unused Delta), a
// homogeneous polynomial of degree n - 2 + C(n,2).
TruncatedSeries term_prefactor(const AVector& a, const PermTerm& t, int work_order) {
  const std::size_t n = a.size();
  ExponentVector inner(n);
  for (std::size_t k = 1; k + 1 < n; ++k) inner.set(t.order[k], 1);
  TruncatedSeries poly = TruncatedSeries::monomial(inner, work_order, Rational(t.sign));
  for (const auto& c : t.cumulative) poly = mul_form(poly, c);
  for (const auto& [p, q] : t.unused_pairs) poly = mul_form(poly, pair_form(a, p, q));
  return poly;
}

}  // namespace

std::vector<PermTerm> permutation_terms(const AVector& a) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("permutation terms need n >= 2");
  std::vector<std::size_t> rest(n - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  std::vector<PermTerm> terms;
  do {
    std::vector<std::size_t> order{0};
    order.insert(order.end(), rest.begin(), rest.end());
    terms.push_back(make_term(a, std::move(order)));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return terms;
}

TruncatedSeries pn_eval(const AVector& a, int order) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("pn_eval needs n >= 2");
  if (n > ExponentVector::kMaxVars) throw std::invalid_argument("too many points");
  if (order < 0) throw std::invalid_argument("negative truncation order");
  if (is_degenerate(a)) throw DegenerateA("kernel evaluation at a vector with a (0,0) pair");

  const int pairs = static_cast<int>(pair_count(n));
  const int work = order + pairs;
  // The prefactor has degree n - 2 + C(n,2), so only S-products up to
  // degree order - n + 2 reach the working order.
  const int s_order = order - static_cast<int>(n) + 2;
  if (s_order < 0) return TruncatedSeries(n, order);

  TruncatedSeries numerator(n, work);
  for (const PermTerm& t : permutation_terms(a)) {
    TruncatedSeries s_product = TruncatedSeries::constant(n, s_order, 1);
    for (const auto& c : t.cumulative) s_product = series_mul(s_product, s_of_form(c, s_order));
    numerator += series_mul(term_prefactor(a, t, work), s_product.truncated(work));
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) numerator = series_div_linear(numerator, pair_form(a, p, q));
  return numerator;
}

// ---------------------------------------------------------------------------
// Symbolic kernel

PnSymbolic::PnSymbolic(std::size_t n, int order, Coefficients coeffs, LayerSelection layers)
    : n_(n), order_(order), coeffs_(std::move(coeffs)), layers_(layers) {
  for (const auto& [e, p] : coeffs_) {
    const int h = e.total_degree() - static_cast<int>(n_) + 2;
    if (e.size() != n_ || p.n_vars() != n_ || !p.is_homogeneous(h))
      throw ConsistencyError("kernel coefficient at " + e.to_string() +
                             " is not homogeneous of a-degree " + std::to_string(h));
  }
}

Polynomial PnSymbolic::coefficient(const ExponentVector& e) const {
  const auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Polynomial(n_) : it->second;
}

TruncatedSeries PnSymbolic::evaluate(const AVector& a) const {
  if (layers_ != LayerSelection::all)
    throw std::logic_error("evaluation needs a kernel with all a-degree layers");
  if (a.size() != n_) throw std::invalid_argument("a-vector size mismatch");
  TruncatedSeries s(n_, order_);
  for (const auto& [e, p] : coeffs_) s.add_term(e, p.evaluate(a));
  return s;
}

std::vector<AVector> kernel_grid(std::size_t n, int h_max, int shift) {
  std::vector<AVector> grid;
  for (const auto& c : principal_lattice(n - 1, h_max)) {
    AVector a{Rational(1)};
    for (int v : c) a.emplace_back(shift + v);
    grid.push_back(std::move(a));
  }
  return grid;
}

PnSymbolic pn_symbolic(std::size_t n, int order, LayerSelection layers) {
  if (n < 2) throw std::invalid_argument("pn_symbolic needs n >= 2");
  const int h_max = order - static_cast<int>(n) + 2;
  PnSymbolic::Coefficients coeffs;
  if (h_max < 0) return PnSymbolic(n, order, std::move(coeffs), layers);

  for (int attempt = 0; attempt < kGridRetries; ++attempt) {
    const std::vector<AVector> grid = kernel_grid(n, h_max, 1 + attempt);
    try {
      std::vector<Interpolator> solvers;
      for (int h = 0; h <= h_max; ++h) {
        const auto basis = monomials_of_degree(n, h);
        solvers.emplace_back(basis, std::vector<std::vector<Rational>>(
                                        grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(basis.size())));
      }
      const auto values =
          parallel_map(grid.size(), [&](std::size_t j) { return pn_eval(grid[j], order); });

      for (int h = 0; h <= h_max; ++h) {
        if (layers == LayerSelection::even_a_degree && h % 2 != 0) continue;
        const Interpolator& solver = solvers[static_cast<std::size_t>(h)];
        const int degree = h + static_cast<int>(n) - 2;
        std::vector<Rational> samples(solver.size());
        for (const auto& e : monomials_of_degree(n, degree)) {
          for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = values[j].coefficient(e);
          Polynomial p = solver.fit(samples);
          if (!p.is_zero()) coeffs.emplace(e, std::move(p));
        }
      }
      return PnSymbolic(n, order, std::move(coeffs), layers);
    } catch (const SingularGrid&) {
      coeffs.clear();
    }
  }
  throw SingularGrid("no nonsingular kernel grid within the retry budget");
}

TruncatedSeries pn_value(const AVector& a, int order) {
  if (!is_degenerate(a)) return pn_eval(a, order);
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, PnSymbolic> cache;
  const std::size_t n = a.size();
  std::unique_lock lock(mutex);
  auto it = cache.lower_bound({n, order});
  if (it == cache.end() || it->first.first != n) {
    lock.unlock();
    PnSymbolic p = pn_symbolic(n, order);
    lock.lock();
    it = cache.insert_or_assign({n, order}, std::move(p)).first;
  }
  const PnSymbolic& p = it->second;
  lock.unlock();
  return p.evaluate(a).truncated(order);
}

TruncatedSeries pn_restrict(const TruncatedSeries& p, std::size_t i) {
  return restrict_variable(p, i);
}

PnSymbolic pn_restrict(const PnSymbolic& p, std::size_t i) {
  if (i >= p.n()) throw std::out_of_range("variable index out of range");
  PnSymbolic::Coefficients kept;
  for (const auto& [e, poly] : p.coefficients())
    if (e[i] == 0) kept.emplace(e, poly);
  return PnSymbolic(p.n(), p.order(), std::move(kept), p.layers());
}

}  // namespace psipoint
