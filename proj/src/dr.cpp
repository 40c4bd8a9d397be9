#include "psipoint/dr.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "psipoint/errors.hpp"
#include "psipoint/parallel.hpp"

namespace psipoint {

AVector to_avector(std::span<const long> v) {
  AVector a;
  a.reserve(v.size());
  for (long x : v) a.emplace_back(x);
  return a;
}

std::optional<int> dr_genus(std::size_t n, int degree_sum) {
  const int twice_g = degree_sum - static_cast<int>(n) + 3;
  if (twice_g < 0 || twice_g % 2 != 0) return std::nullopt;
  const int g = twice_g / 2;
  if (2 * g - 2 + static_cast<int>(n) <= 0) return std::nullopt;
  return g;
}

namespace {

void require_balanced(std::span<const long> a) {
  if (a.size() < 2) throw std::invalid_argument("DR cycles need at least two points");
  if (std::accumulate(a.begin(), a.end(), 0L) != 0)
    throw std::invalid_argument("DR weights must sum to zero");
}

TruncatedSeries compute_dr_series(std::span<const long> a, int order) {
  const std::size_t n = a.size();
  const LinearForm x = LinearForm::sum(n);
  TruncatedSeries p = pn_value(to_avector(a), order + 1);
  if (n == 2) p -= s_of_form(x, order + 1);
  return series_mul(series_div_linear(p, x), series_invert_unit(s_of_form(x, order)));
}

}  // namespace

TruncatedSeries dr_series(std::span<const long> a, int order) {
  require_balanced(a);
  if (order < 0) throw std::invalid_argument("negative truncation order");
  static std::mutex mutex;
  static std::map<IntVector, TruncatedSeries> cache;
  const IntVector key(a.begin(), a.end());
  {
    std::lock_guard lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end() && it->second.order() >= order) return it->second.truncated(order);
  }
  TruncatedSeries s = compute_dr_series(a, order);
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (slot.order() < order) slot = s;
  return s;
}

Rational dr_integral(std::span<const long> a, const ExponentVector& d) {
  require_balanced(a);
  if (d.size() != a.size()) throw std::invalid_argument("degree vector size mismatch");
  const int total = d.total_degree();
  const Rational value = dr_series(a, total).coefficient(d);
  if (!dr_genus(a.size(), total)) {
    if (value != 0)
      throw ConsistencyError("DR series has a nonzero coefficient at " + d.to_string() +
                             " where no genus satisfies the dimension constraint");
    return 0;
  }
  return value;
}

// ---------------------------------------------------------------------------

Rational DrIntegralPolynomial::evaluate(std::span<const long> a_head) const {
  return poly.evaluate(to_avector(a_head));
}

namespace {

IntVector balanced_point(std::span<const Rational> head) {
  IntVector a;
  long sum = 0;
  for (const auto& v : head) {
    a.push_back(v.get_num().get_si());
    sum += a.back();
  }
  a.push_back(-sum);
  return a;
}

}  // namespace

DrIntegralPolynomial dr_integral_poly(std::size_t n, const ExponentVector& d) {
  if (n < 2 || d.size() != n) throw std::invalid_argument("dr_integral_poly needs n >= 2 and |d| = n");
  const auto genus = dr_genus(n, d.total_degree());
  if (!genus) throw std::invalid_argument("degree vector matches no genus");
  const int degree = 2 * *genus;
  const std::size_t dims = n - 1;

  std::vector<ExponentVector> basis;
  for (int k = 0; k <= degree; ++k)
    for (const auto& e : monomials_of_degree(dims, k)) basis.push_back(e);

  for (int attempt = 0; attempt < kGridRetries; ++attempt) {
    const int shift = 1 + attempt;
    // The lattice of degree `degree + 1` extends the interpolation grid;
    // its extra points are held out for verification.
    const auto lattice = principal_lattice(dims, degree + 1);
    std::vector<std::vector<Rational>> points;
    for (const auto& c : lattice) {
      std::vector<Rational> p;
      for (int v : c) p.emplace_back(shift + v);
      points.push_back(std::move(p));
    }
    std::vector<std::vector<Rational>> grid(points.begin(),
                                            points.begin() + static_cast<std::ptrdiff_t>(basis.size()));
    try {
      const Interpolator solver(basis, grid);
      const auto values = parallel_map(grid.size(), [&](std::size_t j) {
        return dr_integral(balanced_point(grid[j]), d);
      });
      DrIntegralPolynomial result{n, *genus, d, solver.fit(values)};

      std::vector<std::vector<Rational>> held_out(points.begin() + static_cast<std::ptrdiff_t>(basis.size()),
                                                  points.end());
      std::vector<Rational> negated;
      for (const auto& v : grid.back()) negated.push_back(-v);
      held_out.push_back(std::move(negated));
      for (const auto& p : held_out) {
        const IntVector a = balanced_point(p);
        if (result.poly.evaluate(p) != dr_integral(a, d))
          throw ConsistencyError("DR integral polynomial fails at a held-out point");
      }
      return result;
    } catch (const SingularGrid&) {
    }
  }
  throw SingularGrid("no nonsingular DR grid within the retry budget");
}

// ---------------------------------------------------------------------------

void ForgottenSpec::validate() const {
  if (kept.size() < 3) throw std::invalid_argument("forgotten-point series need >= 3 kept points");
  if (kept.size() > ExponentVector::kMaxVars) throw std::invalid_argument("too many kept points");
  const long total = std::accumulate(kept.begin(), kept.end(), 0L) +
                     std::accumulate(forgotten.begin(), forgotten.end(), 0L);
  if (total != 0) throw std::invalid_argument("kept and forgotten weights must sum to zero");
}

std::vector<std::vector<std::size_t>> partition_assignments(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(m, 0);
  for (;;) {
    out.push_back(f);
    std::size_t k = m;
    while (k > 0) {
      --k;
      if (++f[k] <= n) break;
      f[k] = 0;
      if (k == 0) return out;
    }
    if (m == 0) return out;
  }
}

TruncatedSeries forgotten_series(const ForgottenSpec& spec, int order) {
  spec.validate();
  if (order < 0) throw std::invalid_argument("negative truncation order");
  const std::size_t n = spec.kept.size();
  const std::size_t m = spec.forgotten.size();
  const int work = order + 1;
  const LinearForm x = LinearForm::sum(n);

  const auto assignments = partition_assignments(m, n);
  std::map<IntVector, std::size_t> kernel_index;
  std::vector<IntVector> shifted_of(assignments.size());
  std::vector<IntVector> distinct;
  for (std::size_t t = 0; t < assignments.size(); ++t) {
    IntVector shifted = spec.kept;
    for (std::size_t j = 0; j < m; ++j)
      if (assignments[t][j] != 0) shifted[assignments[t][j] - 1] += spec.forgotten[j];
    if (kernel_index.emplace(shifted, distinct.size()).second) distinct.push_back(shifted);
    shifted_of[t] = std::move(shifted);
  }
  const auto kernels = parallel_map(distinct.size(), [&](std::size_t i) {
    return pn_value(to_avector(distinct[i]), work);
  });

  TruncatedSeries total(n, work);
  for (std::size_t t = 0; t < assignments.size(); ++t) {
    const auto& f = assignments[t];
    ExponentVector shift(n);
    int i0 = 0;
    TruncatedSeries term = kernels[kernel_index.at(shifted_of[t])];
    for (std::size_t j = 0; j < m; ++j) {
      if (f[j] == 0) {
        ++i0;
        term = series_mul(term, s_of_form(x * Rational(spec.forgotten[j]), work));
      } else {
        shift.set(f[j] - 1, shift[f[j] - 1] + 1);
      }
    }
    for (int k = 0; k < i0; ++k) term = mul_form(term, x);
    const int sign = (m - static_cast<std::size_t>(i0)) % 2 ? -1 : 1;
    total += series_mul(TruncatedSeries::monomial(shift, work, Rational(sign)), term);
  }
  return series_mul(series_div_linear(total, x), series_invert_unit(s_of_form(x, order)));
}

Rational forgotten_integral_direct(const ForgottenSpec& spec, const ExponentVector& d) {
  spec.validate();
  const std::size_t n = spec.kept.size();
  const std::size_t m = spec.forgotten.size();
  if (d.size() != n) throw std::invalid_argument("degree vector size mismatch");
  const int twice_g = d.total_degree() - static_cast<int>(n + m) + 3;
  if (twice_g < 0 || twice_g % 2 != 0)
    throw std::invalid_argument("sum(d) must equal 2g - 3 + n + m for an integer g >= 0");

  Rational sum = 0;
  for (const auto& f : partition_assignments(m, n)) {
    std::vector<int> used(n, 0);
    IntVector weights = spec.kept;
    IntVector zero_points;
    for (std::size_t j = 0; j < m; ++j) {
      if (f[j] == 0) {
        zero_points.push_back(spec.forgotten[j]);
      } else {
        ++used[f[j] - 1];
        weights[f[j] - 1] += spec.forgotten[j];
      }
    }
    bool admissible = true;
    for (std::size_t i = 0; i < n; ++i) admissible = admissible && used[i] <= d[i];
    if (!admissible) continue;

    weights.insert(weights.end(), zero_points.begin(), zero_points.end());
    ExponentVector degrees(weights.size());
    for (std::size_t i = 0; i < n; ++i) degrees.set(i, d[i] - used[i]);
    const Rational value = dr_integral(weights, degrees);
    if ((m - zero_points.size()) % 2) sum -= value;
    else sum += value;
  }
  return sum;
}

}  // namespace psipoint
