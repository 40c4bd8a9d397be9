#include "psipoint/npoint.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "psipoint/errors.hpp"

namespace psipoint {

Polynomial gaussian_substitute(const Polynomial& a_poly) {
  const std::size_t n = a_poly.n_vars();
  Polynomial out(n);
  for (const auto& [e, c] : a_poly.terms()) {
    bool all_even = true;
    for (std::size_t i = 0; i < n; ++i) all_even = all_even && e[i] % 2 == 0;
    if (!all_even) continue;
    Rational value = c;
    ExponentVector half(n);
    for (std::size_t i = 0; i < n; ++i) {
      value *= Rational(double_factorial(e[i] - 1));
      half.set(i, e[i] / 2);
    }
    if ((e.total_degree() / 2) % 2) value = -value;
    out.add_term(half, value);
  }
  return out;
}

int kernel_order_for(std::size_t n, int target) {
  return (2 * target + static_cast<int>(n) - 2) / 3;
}

TruncatedSeries gaussian_transform(const PnSymbolic& p, int target) {
  const std::size_t n = p.n();
  if (p.order() < kernel_order_for(n, target))
    throw std::invalid_argument("kernel order " + std::to_string(p.order()) +
                                " is too low for transform order " + std::to_string(target));
  TruncatedSeries out(n, target);
  for (const auto& [x_mono, a_poly] : p.coefficients()) {
    const int h = x_mono.total_degree() - static_cast<int>(n) + 2;
    if (h % 2 != 0 || x_mono.total_degree() + h / 2 > target) continue;
    const Polynomial moments = gaussian_substitute(a_poly);
    for (const auto& [half, c] : moments.terms()) out.add_term(x_mono + half, c);
  }
  return out;
}

namespace {

PnSymbolic cached_even_kernel(std::size_t n, int order) {
  static std::mutex mutex;
  static std::map<std::size_t, PnSymbolic> cache;
  std::unique_lock lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end() || it->second.order() < order) {
    lock.unlock();
    PnSymbolic p = pn_symbolic(n, order, LayerSelection::even_a_degree);
    lock.lock();
    it = cache.find(n);
    if (it == cache.end() || it->second.order() < order)
      it = cache.insert_or_assign(n, std::move(p)).first;
  }
  return it->second;
}

TruncatedSeries compute_npoint(std::size_t n, int order) {
  if (n == 1) return one_point_closed(order);
  const int target = order + 1;
  const PnSymbolic kernel = cached_even_kernel(n, kernel_order_for(n, target));
  TruncatedSeries numerator = series_mul(exp_cube(n, target), gaussian_transform(kernel, target));
  if (n == 2) numerator -= TruncatedSeries::constant(n, target, 1);
  return series_div_linear(numerator, LinearForm::sum(n));
}

}  // namespace

TruncatedSeries npoint_series(std::size_t n, int order) {
  if (n == 0 || n > ExponentVector::kMaxVars) throw std::invalid_argument("point count out of range");
  if (order < 0) throw std::invalid_argument("negative truncation order");
  static std::mutex mutex;
  static std::map<std::size_t, TruncatedSeries> cache;
  {
    std::lock_guard lock(mutex);
    const auto it = cache.find(n);
    if (it != cache.end() && it->second.order() >= order) return it->second.truncated(order);
  }
  TruncatedSeries f = compute_npoint(n, order);
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot.order() < order) slot = f;
  return f;
}

std::optional<int> intersection_genus(std::size_t n, int degree_sum) {
  const int thrice_g = degree_sum - static_cast<int>(n) + 3;
  if (thrice_g < 0 || thrice_g % 3 != 0) return std::nullopt;
  const int g = thrice_g / 3;
  if (2 * g - 2 + static_cast<int>(n) <= 0) return std::nullopt;
  return g;
}

Rational intersection_number(int g, const ExponentVector& d) {
  const std::size_t n = d.size();
  if (n == 0 || g < 0) return 0;
  const auto genus = intersection_genus(n, d.total_degree());
  if (!genus || *genus != g) return 0;
  return npoint_series(n, d.total_degree()).coefficient(d);
}

// ---------------------------------------------------------------------------
// Closed forms

TruncatedSeries one_point_closed(int order) {
  const LinearForm x = LinearForm::variable(1, 0);
  TruncatedSeries num = exp_cube(1, order + 2) - TruncatedSeries::constant(1, order + 2, 1);
  return series_div_linear(series_div_linear(num, x), x);
}

TruncatedSeries two_point_closed(int order) {
  const int target = order + 1;
  const TruncatedSeries x1 = TruncatedSeries::monomial({1, 0}, target);
  const TruncatedSeries x2 = TruncatedSeries::monomial({0, 1}, target);
  const TruncatedSeries cubes = (series_pow(x1, 3) + series_pow(x2, 3)) * Rational(1, 24);
  const TruncatedSeries u = series_mul(series_mul(x1, x2), x1 + x2) * Rational(1, 2);

  TruncatedSeries sum = TruncatedSeries::constant(2, target, 1);
  TruncatedSeries power = sum;
  for (int k = 1; 3 * k <= target; ++k) {
    power = series_mul(power, u);
    sum += power * make_rational(factorial(static_cast<unsigned>(k)),
                                 factorial(static_cast<unsigned>(2 * k + 1)));
  }
  TruncatedSeries num = series_mul(series_exp(cubes), sum) - TruncatedSeries::constant(2, target, 1);
  return series_div_linear(num, LinearForm::sum(2));
}

bool CnReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const CnRow& r) { return r.ok(); });
}

std::vector<int> CnReport::failures() const {
  std::vector<int> out;
  for (const auto& r : rows)
    if (!r.ok()) out.push_back(r.k);
  return out;
}

CnReport cn_identity_check(int max_k) {
  if (max_k < 0) throw std::invalid_argument("negative bound");
  CnReport report;
  for (int k = 0; k <= max_k; ++k) {
    CnRow row;
    row.k = k;
    for (int m2 = 0; m2 <= k; ++m2) {
      const int m1 = k - m2;
      const Rational term = make_rational(
          1, factorial(static_cast<unsigned>(m1)) * factorial(static_cast<unsigned>(m2)) * (2 * m2 + 1));
      if (m2 % 2) row.direct -= term;
      else row.direct += term;
    }
    Integer two_k = 1;
    two_k <<= static_cast<mp_bitcnt_t>(k);
    row.closed = make_rational(two_k, double_factorial(2 * k + 1));
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// DR route

TruncatedSeries npoint_via_dr(int g, std::span<const long> a, std::span<const long> b) {
  const std::size_t n = a.size();
  if (g < 0) throw std::invalid_argument("negative genus");
  if (n < 3) throw std::invalid_argument("the DR route needs n >= 3");
  if (b.size() != static_cast<std::size_t>(g)) throw std::invalid_argument("need exactly g forgotten weights");
  if (std::any_of(b.begin(), b.end(), [](long v) { return v == 0; }))
    throw std::invalid_argument("forgotten weights must be nonzero");

  ForgottenSpec spec;
  spec.kept.assign(a.begin(), a.end());
  const long sum_a = std::accumulate(a.begin(), a.end(), 0L);
  const long sum_b = std::accumulate(b.begin(), b.end(), 0L);
  spec.kept.push_back(-sum_a - sum_b);
  spec.forgotten.assign(b.begin(), b.end());

  const int lowest = 3 * g - 2 + static_cast<int>(n);
  const TruncatedSeries restricted =
      drop_variable(restrict_variable(forgotten_series(spec, lowest), n), n);
  for (int d = 0; d < lowest; ++d) {
    if (!restricted.layer(d).empty())
      throw ConsistencyError("forgotten-point series has a nonzero coefficient at degree " +
                             std::to_string(d) + " below " + std::to_string(lowest));
  }
  Integer norm = factorial(static_cast<unsigned>(g));
  for (long v : b) norm *= Integer(v) * Integer(v);
  const TruncatedSeries part = restricted.homogeneous_part(lowest) * make_rational(1, norm);
  return series_div_linear(part, LinearForm::sum(n));
}

std::pair<IntVector, IntVector> default_dr_draw(int g, std::size_t n, int which) {
  IntVector a(n);
  IntVector b(static_cast<std::size_t>(g));
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<long>(i) + (which == 0 ? 1 : 2);
  for (int j = 0; j < g; ++j) b[static_cast<std::size_t>(j)] = which == 0 ? j + 1 : g - j;
  return {a, b};
}

// ---------------------------------------------------------------------------
// Tables

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::theorem_route: return "theorem-route";
    case Provenance::oracle: return "oracle";
    case Provenance::closed_form: return "closed-form";
    case Provenance::dr_route: return "dr-route";
  }
  return "unknown";
}

IntersectionKey::IntersectionKey(int genus, std::vector<int> degrees)
    : g(genus), d(std::move(degrees)) {
  std::sort(d.begin(), d.end());
}

void IntersectionTable::insert(int g, std::span<const int> d, const Rational& value,
                               Provenance provenance) {
  const auto genus = intersection_genus(d.size(), std::accumulate(d.begin(), d.end(), 0));
  if (!genus || *genus != g) throw std::invalid_argument("entry violates the dimension constraint");
  IntersectionKey key(g, std::vector<int>(d.begin(), d.end()));
  const auto [it, inserted] = entries_.try_emplace(std::move(key), Entry{value, provenance});
  if (!inserted && it->second.value != value)
    throw ConsistencyError("conflicting values for one intersection number");
}

std::optional<Rational> IntersectionTable::find(int g, std::span<const int> d) const {
  const auto it = entries_.find(IntersectionKey(g, std::vector<int>(d.begin(), d.end())));
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

IntersectionTable IntersectionTable::from_series(const TruncatedSeries& f, Provenance provenance) {
  IntersectionTable table;
  f.for_each_term([&](const ExponentVector& e, const Rational& c) {
    const auto genus = intersection_genus(f.n_vars(), e.total_degree());
    if (!genus)
      throw ConsistencyError("nonzero coefficient at " + e.to_string() +
                             " outside the dimension constraint");
    const auto v = e.to_vector();
    table.insert(*genus, v, c, provenance);
  });
  return table;
}

}  // namespace psipoint
