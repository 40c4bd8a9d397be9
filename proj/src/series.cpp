#include "psipoint/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "psipoint/errors.hpp"

namespace psipoint {

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector::ExponentVector(std::size_t n_vars) {
  if (n_vars > kMaxVars) throw std::invalid_argument("too many variables");
  n_ = static_cast<std::uint8_t>(n_vars);
}

ExponentVector::ExponentVector(std::initializer_list<int> exponents)
    : ExponentVector(std::span<const int>(exponents.begin(), exponents.size())) {}

ExponentVector::ExponentVector(std::span<const int> exponents)
    : ExponentVector(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

ExponentVector ExponentVector::unit(std::size_t n_vars, std::size_t i) {
  ExponentVector e(n_vars);
  e.set(i, 1);
  return e;
}

void ExponentVector::set(std::size_t i, int exponent) {
  if (i >= n_) throw std::out_of_range("exponent index out of range");
  if (exponent < 0 || exponent > kMaxExponent)
    throw std::invalid_argument("exponent out of range");
  e_[i] = static_cast<std::uint8_t>(exponent);
}

int ExponentVector::total_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += e_[i];
  return d;
}

std::vector<int> ExponentVector::to_vector() const {
  return std::vector<int>(e_.begin(), e_.begin() + n_);
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ',';
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < n_; ++i) {
    const int v = e_[i] + other.e_[i];
    if (v > kMaxExponent) throw std::overflow_error("exponent overflow");
    r.e_[i] = static_cast<std::uint8_t>(v);
  }
  return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < n_; ++i) {
    if (other.e_[i] > e_[i]) throw std::invalid_argument("negative exponent");
    r.e_[i] = static_cast<std::uint8_t>(e_[i] - other.e_[i]);
  }
  return r;
}

namespace {

void enumerate_monomials(std::size_t n_vars, std::size_t i, int remaining,
                         ExponentVector& current, std::vector<ExponentVector>& out) {
  if (i + 1 == n_vars) {
    current.set(i, remaining);
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current.set(i, e);
    enumerate_monomials(n_vars, i + 1, remaining - e, current, out);
  }
}

}  // namespace

std::vector<ExponentVector> monomials_of_degree(std::size_t n_vars, int degree) {
  std::vector<ExponentVector> out;
  if (degree < 0) return out;
  if (n_vars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  ExponentVector current(n_vars);
  enumerate_monomials(n_vars, 0, degree, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm::LinearForm(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
  if (c_.size() > ExponentVector::kMaxVars)
    throw std::invalid_argument("too many variables");
}

LinearForm LinearForm::sum(std::size_t n_vars) {
  return LinearForm(std::vector<Rational>(n_vars, Rational(1)));
}

LinearForm LinearForm::variable(std::size_t n_vars, std::size_t i) {
  std::vector<Rational> c(n_vars, Rational(0));
  c.at(i) = 1;
  return LinearForm(std::move(c));
}

bool LinearForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c == 0; });
}

LinearForm LinearForm::operator+(const LinearForm& other) const {
  if (other.n_vars() != n_vars()) throw std::invalid_argument("form size mismatch");
  std::vector<Rational> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.c_[i];
  return LinearForm(std::move(c));
}

LinearForm LinearForm::operator-(const LinearForm& other) const {
  return *this + other * Rational(-1);
}

LinearForm LinearForm::operator*(const Rational& s) const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v *= s;
  return LinearForm(std::move(c));
}

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t n_vars, int order)
    : n_vars_(n_vars), order_(order) {
  if (n_vars > ExponentVector::kMaxVars) throw std::invalid_argument("too many variables");
  if (order < 0) throw std::invalid_argument("negative truncation order");
  layers_.resize(static_cast<std::size_t>(order) + 1);
}

TruncatedSeries TruncatedSeries::constant(std::size_t n_vars, int order, const Rational& c) {
  TruncatedSeries s(n_vars, order);
  s.add_term(ExponentVector(n_vars), c);
  return s;
}

TruncatedSeries TruncatedSeries::from_form(const LinearForm& form, int order) {
  TruncatedSeries s(form.n_vars(), order);
  for (std::size_t i = 0; i < form.n_vars(); ++i)
    s.add_term(ExponentVector::unit(form.n_vars(), i), form[i]);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const ExponentVector& e, int order,
                                          const Rational& c) {
  TruncatedSeries s(e.size(), order);
  s.add_term(e, c);
  return s;
}

const TruncatedSeries::Layer& TruncatedSeries::layer(int d) const {
  if (d < 0 || d > order_) throw std::out_of_range("layer above truncation order");
  return layers_[static_cast<std::size_t>(d)];
}

Rational TruncatedSeries::coefficient(const ExponentVector& e) const {
  if (e.size() != n_vars_) throw std::invalid_argument("exponent vector size mismatch");
  const int d = e.total_degree();
  if (d > order_) throw std::out_of_range("coefficient above truncation order");
  const auto& l = layers_[static_cast<std::size_t>(d)];
  const auto it = l.find(e);
  return it == l.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const ExponentVector& e, const Rational& c) {
  if (e.size() != n_vars_) throw std::invalid_argument("exponent vector size mismatch");
  const int d = e.total_degree();
  if (d > order_ || c == 0) return;
  auto& l = layers_[static_cast<std::size_t>(d)];
  auto [it, inserted] = l.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) l.erase(it);
  }
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(layers_.begin(), layers_.end(), [](const Layer& l) { return l.empty(); });
}

std::size_t TruncatedSeries::term_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

int TruncatedSeries::valuation() const {
  for (std::size_t d = 0; d < layers_.size(); ++d)
    if (!layers_[d].empty()) return static_cast<int>(d);
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries r(n_vars_, order);
  for (int d = 0; d <= std::min(order, order_); ++d)
    r.layers_[static_cast<std::size_t>(d)] = layers_[static_cast<std::size_t>(d)];
  return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int d) const {
  TruncatedSeries r(n_vars_, order_);
  if (d >= 0 && d <= order_) r.layers_[static_cast<std::size_t>(d)] = layer(d);
  return r;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const {
  if (other.n_vars_ != n_vars_) throw std::invalid_argument("series variable count mismatch");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  other.for_each_term([this](const ExponentVector& e, const Rational& c) { add_term(e, c); });
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  other.for_each_term([this](const ExponentVector& e, const Rational& c) { add_term(e, -c); });
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  if (s == 0) {
    for (auto& l : layers_) l.clear();
    return *this;
  }
  for (auto& l : layers_)
    for (auto& [e, c] : l) c *= s;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const { return *this * Rational(-1); }

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for_each_term([&](const ExponentVector& e, const Rational& c) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*x^" << e.to_string();
  });
  if (first) os << "0";
  os << " + O(" << order_ + 1 << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

void accumulate_product(const TruncatedSeries::Layer& a, const TruncatedSeries::Layer& b,
                        TruncatedSeries::Layer& out) {
  Rational prod;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, inserted] = out.try_emplace(ea + eb, prod);
      if (!inserted) it->second += prod;
    }
  }
}

void drop_zeros(TruncatedSeries::Layer& l) {
  std::erase_if(l, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.n_vars() != b.n_vars()) throw std::invalid_argument("series variable count mismatch");
  const int order = std::min(a.order(), b.order());
  std::vector<TruncatedSeries::Layer> out(static_cast<std::size_t>(order) + 1);
  for (int da = 0; da <= order; ++da) {
    const auto& la = a.layer(da);
    if (la.empty()) continue;
    for (int db = 0; da + db <= order; ++db) {
      const auto& lb = b.layer(db);
      if (lb.empty()) continue;
      accumulate_product(la, lb, out[static_cast<std::size_t>(da + db)]);
    }
  }
  TruncatedSeries r(a.n_vars(), order);
  for (auto& l : out) {
    drop_zeros(l);
    for (auto& [e, c] : l) r.add_term(e, c);
  }
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}

TruncatedSeries mul_form(const TruncatedSeries& s, const LinearForm& form) {
  if (form.n_vars() != s.n_vars()) throw std::invalid_argument("form size mismatch");
  TruncatedSeries r(s.n_vars(), s.order());
  Rational prod;
  for (int d = 0; d < s.order(); ++d) {
    for (const auto& [e, c] : s.layer(d)) {
      for (std::size_t i = 0; i < form.n_vars(); ++i) {
        if (form[i] == 0) continue;
        mpq_mul(prod.get_mpq_t(), c.get_mpq_t(), form[i].get_mpq_t());
        r.add_term(e + ExponentVector::unit(s.n_vars(), i), prod);
      }
    }
  }
  return r;
}

TruncatedSeries series_div_linear(const TruncatedSeries& s, const LinearForm& form) {
  if (form.n_vars() != s.n_vars()) throw std::invalid_argument("form size mismatch");
  if (form.is_zero()) throw std::invalid_argument("division by the zero linear form");
  if (s.order() < 1) throw std::invalid_argument("division needs truncation order >= 1");
  const std::size_t n = s.n_vars();
  std::size_t pivot = 0;
  while (form[pivot] == 0) ++pivot;
  const Rational inv_lead = 1 / form[pivot];

  if (!s.layer(0).empty())
    throw NonExactDivision("constant term is not divisible by a linear form");

  TruncatedSeries q(n, s.order() - 1);
  Rational qc, tmp;
  for (int d = 1; d <= s.order(); ++d) {
    // Bucket the layer by the exponent of the pivot variable and clear the
    // highest buckets first; each step only feeds the next lower bucket.
    std::vector<TruncatedSeries::Layer> buckets(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, c] : s.layer(d)) buckets[static_cast<std::size_t>(e[pivot])].emplace(e, c);
    for (int k = d; k >= 1; --k) {
      for (const auto& [e, c] : buckets[static_cast<std::size_t>(k)]) {
        if (c == 0) continue;
        mpq_mul(qc.get_mpq_t(), c.get_mpq_t(), inv_lead.get_mpq_t());
        ExponentVector base = e;
        base.set(pivot, k - 1);
        q.add_term(base, qc);
        auto& lower = buckets[static_cast<std::size_t>(k - 1)];
        for (std::size_t i = 0; i < n; ++i) {
          if (i == pivot || form[i] == 0) continue;
          mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), form[i].get_mpq_t());
          auto [it, inserted] = lower.try_emplace(base + ExponentVector::unit(n, i), -tmp);
          if (!inserted) it->second -= tmp;
        }
      }
    }
    for (const auto& [e, c] : buckets[0]) {
      if (c != 0)
        throw NonExactDivision("nonzero remainder at degree " + std::to_string(d) +
                               ", monomial " + e.to_string());
    }
  }
  return q;
}

TruncatedSeries series_invert_unit(const TruncatedSeries& s) {
  if (s.coefficient(ExponentVector(s.n_vars())) != 1)
    throw std::invalid_argument("series_invert_unit: constant term must be 1");
  const int order = s.order();
  std::vector<TruncatedSeries::Layer> t(static_cast<std::size_t>(order) + 1);
  t[0].emplace(ExponentVector(s.n_vars()), Rational(1));
  for (int d = 1; d <= order; ++d) {
    TruncatedSeries::Layer acc;
    for (int k = 1; k <= d; ++k) accumulate_product(s.layer(k), t[static_cast<std::size_t>(d - k)], acc);
    drop_zeros(acc);
    for (auto& [e, c] : acc) c = -c;
    t[static_cast<std::size_t>(d)] = std::move(acc);
  }
  TruncatedSeries r(s.n_vars(), order);
  for (auto& l : t)
    for (auto& [e, c] : l) r.add_term(e, c);
  return r;
}

TruncatedSeries series_exp(const TruncatedSeries& s) {
  if (!s.layer(0).empty())
    throw std::invalid_argument("series_exp: constant term must vanish");
  TruncatedSeries result = TruncatedSeries::constant(s.n_vars(), s.order(), 1);
  TruncatedSeries power = result;
  for (int k = 1; k <= s.order(); ++k) {
    power = series_mul(power, s) * Rational(1, k);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

TruncatedSeries series_pow(const TruncatedSeries& s, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  TruncatedSeries r = TruncatedSeries::constant(s.n_vars(), s.order(), 1);
  for (int i = 0; i < k; ++i) r = series_mul(r, s);
  return r;
}

Rational s_series_coefficient(int i) {
  Integer den = factorial(static_cast<unsigned>(2 * i + 1));
  den <<= static_cast<mp_bitcnt_t>(2 * i);
  return Rational(Integer(1), den);
}

TruncatedSeries s_of_form(const LinearForm& form, int order) {
  const std::size_t n = form.n_vars();
  TruncatedSeries result = TruncatedSeries::constant(n, order, 1);
  if (form.is_zero() || order < 2) return result;
  const TruncatedSeries l = TruncatedSeries::from_form(form, order);
  const TruncatedSeries l2 = series_mul(l, l);
  TruncatedSeries power = result;
  for (int i = 1; 2 * i <= order; ++i) {
    power = series_mul(power, l2);
    result += power * s_series_coefficient(i);
  }
  return result;
}

TruncatedSeries zeta_of_form(const LinearForm& form, int order) {
  if (order == 0) return TruncatedSeries(form.n_vars(), 0);
  return mul_form(s_of_form(form, order - 1).truncated(order), form);
}

TruncatedSeries exp_cube(std::size_t n_vars, int order) {
  const TruncatedSeries x = TruncatedSeries::from_form(LinearForm::sum(n_vars), order);
  return series_exp(series_mul(series_mul(x, x), x) * Rational(1, 24));
}

Rational coefficient(const TruncatedSeries& s, const ExponentVector& e) {
  return s.coefficient(e);
}

TruncatedSeries restrict_variable(const TruncatedSeries& s, std::size_t i) {
  if (i >= s.n_vars()) throw std::out_of_range("variable index out of range");
  TruncatedSeries r(s.n_vars(), s.order());
  s.for_each_term([&](const ExponentVector& e, const Rational& c) {
    if (e[i] == 0) r.add_term(e, c);
  });
  return r;
}

TruncatedSeries drop_variable(const TruncatedSeries& s, std::size_t i) {
  if (i >= s.n_vars()) throw std::out_of_range("variable index out of range");
  TruncatedSeries r(s.n_vars() - 1, s.order());
  s.for_each_term([&](const ExponentVector& e, const Rational& c) {
    if (e[i] != 0) throw std::invalid_argument("series depends on the dropped variable");
    ExponentVector f(s.n_vars() - 1);
    for (std::size_t k = 0, j = 0; k < s.n_vars(); ++k)
      if (k != i) f.set(j++, e[k]);
    r.add_term(f, c);
  });
  return r;
}

TruncatedSeries insert_variable(const TruncatedSeries& s, std::size_t i) {
  if (i > s.n_vars()) throw std::out_of_range("variable index out of range");
  TruncatedSeries r(s.n_vars() + 1, s.order());
  s.for_each_term([&](const ExponentVector& e, const Rational& c) {
    ExponentVector f(s.n_vars() + 1);
    for (std::size_t k = 0, j = 0; k < s.n_vars() + 1; ++k)
      if (k != i) f.set(k, e[j++]);
    r.add_term(f, c);
  });
  return r;
}

TruncatedSeries permute_variables(const TruncatedSeries& s, std::span<const std::size_t> perm) {
  if (perm.size() != s.n_vars()) throw std::invalid_argument("permutation size mismatch");
  TruncatedSeries r(s.n_vars(), s.order());
  s.for_each_term([&](const ExponentVector& e, const Rational& c) {
    ExponentVector f(s.n_vars());
    for (std::size_t k = 0; k < s.n_vars(); ++k) f.set(perm[k], e[k]);
    r.add_term(f, c);
  });
  return r;
}

TruncatedSeries scale_variables(const TruncatedSeries& s, const Rational& scale) {
  TruncatedSeries r(s.n_vars(), s.order());
  s.for_each_term([&](const ExponentVector& e, const Rational& c) {
    Rational f = c;
    for (int k = 0; k < e.total_degree(); ++k) f *= scale;
    r.add_term(e, f);
  });
  return r;
}

}  // namespace psipoint
