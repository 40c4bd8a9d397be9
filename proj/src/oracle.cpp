#include "psipoint/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "psipoint/errors.hpp"
#include "psipoint/npoint.hpp"

namespace psipoint {

Rational OracleTable::dvv_number(int g, std::vector<int> d) {
  if (!validated_) throw OracleNotValidated("run the oracle self-check first");
  return compute(g, std::move(d));
}

// (2k+3)!! <tau_{k+1} tau_S>_g =
//     sum_j (2k+2d_j+1)!!/(2d_j-1)!! <tau_{d_j+k} tau_{S\j}>_g
//   + 1/2 sum_{p+q=k-1} (2p+1)!!(2q+1)!! [ <tau_p tau_q tau_S>_{g-1}
//       + sum_{S=I+J, g1+g2=g} <tau_p tau_I>_{g1} <tau_q tau_J>_{g2} ]
Rational OracleTable::compute(int g, std::vector<int> d) {
  const int n = static_cast<int>(d.size());
  if (g < 0 || n == 0) return 0;
  if (std::any_of(d.begin(), d.end(), [](int v) { return v < 0; })) return 0;
  if (2 * g - 2 + n <= 0) return 0;
  if (std::accumulate(d.begin(), d.end(), 0) != 3 * g - 3 + n) return 0;
  std::sort(d.begin(), d.end());
  if (g == 0 && n == 3) return 1;  // <tau_0^3>_0
  if (g == 1 && n == 1) return Rational(1, 24);  // <tau_1>_1

  const auto key = std::make_pair(g, d);
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

  const int k = d.back() - 1;
  std::vector<int> rest(d.begin(), d.end() - 1);
  Rational acc = 0;

  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> next = rest;
    next[j] = rest[j] + k;
    if (next[j] < 0) continue;
    acc += make_rational(double_factorial(2 * k + 2 * rest[j] + 1), double_factorial(2 * rest[j] - 1)) *
           compute(g, next);
  }

  Rational split = 0;
  for (int p = 0; p <= k - 1; ++p) {
    const int q = k - 1 - p;
    const Rational weight(double_factorial(2 * p + 1) * double_factorial(2 * q + 1));
    std::vector<int> both = rest;
    both.push_back(p);
    both.push_back(q);
    Rational inner = compute(g - 1, both);

    const std::size_t m = rest.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<int> left{p};
      std::vector<int> right{q};
      for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? left : right).push_back(rest[i]);
      for (int g1 = 0; g1 <= g; ++g1) {
        const Rational l = compute(g1, left);
        if (l == 0) continue;
        inner += l * compute(g - g1, right);
      }
    }
    split += weight * inner;
  }
  acc += split / 2;
  acc /= Rational(double_factorial(2 * k + 3));
  memo_.emplace(key, acc);
  return acc;
}

namespace {

std::string describe(int g, const std::vector<int>& d) {
  std::string s = "<";
  for (int v : d) s += "tau_" + std::to_string(v);
  return s + ">_" + std::to_string(g);
}

}  // namespace

SelfCheckReport OracleTable::selfcheck() {
  SelfCheckReport report;
  auto expect = [&](int g, const std::vector<int>& d, const Rational& value, const char* source) {
    ++report.checked;
    const Rational got = compute(g, d);
    if (got != value)
      report.mismatches.push_back(describe(g, d) + ": recursion " + got.get_str() + " vs " + source +
                                  " " + value.get_str());
  };

  const TruncatedSeries one = one_point_closed(13);
  for (int deg = 0; deg <= 13; ++deg) {
    const Rational c = one.coefficient({deg});
    const auto genus = intersection_genus(1, deg);
    if (!genus) {
      ++report.checked;
      if (c != 0) report.mismatches.push_back("one-point closed form nonzero off-dimension");
      continue;
    }
    expect(*genus, {deg}, c, "one-point closed form");
  }

  const TruncatedSeries two = two_point_closed(12);
  two.for_each_term([&](const ExponentVector& e, const Rational& c) {
    const auto genus = intersection_genus(2, e.total_degree());
    if (!genus) {
      ++report.checked;
      report.mismatches.push_back("two-point closed form nonzero off-dimension at " + e.to_string());
      return;
    }
    expect(*genus, e.to_vector(), c, "two-point closed form");
  });
  // every admissible two-point coefficient must be present (or zero)
  for (int total = 0; total <= 12; ++total) {
    const auto genus = intersection_genus(2, total);
    if (!genus) continue;
    for (const auto& e : monomials_of_degree(2, total)) expect(*genus, e.to_vector(), two.coefficient(e), "two-point closed form");
  }

  // string and dilaton on deterministic instances
  int instances = 0;
  for (int g = 0; g <= 3 && instances < 20; ++g) {
    for (int n = 1; n <= 3 && instances < 20; ++n) {
      const int total = 3 * g - 3 + n + 1;  // after inserting tau_0
      if (total < 0) continue;
      for (const auto& e : monomials_of_degree(static_cast<std::size_t>(n), total)) {
        if (instances >= 20) break;
        std::vector<int> d = e.to_vector();
        if (2 * g - 2 + n + 1 <= 0) continue;
        // string: <tau_0 tau_d>_g = sum_j <tau_{d_j - 1} ...>_g
        std::vector<int> with0 = d;
        with0.push_back(0);
        Rational rhs = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
          if (d[j] == 0) continue;
          std::vector<int> lowered = d;
          --lowered[j];
          rhs += compute(g, lowered);
        }
        if (g == 0 && n == 2 && total == 0) rhs = 1;  // <tau_0^3>_0
        expect(g, with0, rhs, "string equation");

        // dilaton: <tau_1 tau_d'>_g = (2g - 2 + n) <tau_d'>_g with sum(d') = 3g - 3 + n
        std::vector<int> base = d;
        if (!base.empty() && base.back() > 0) {
          --base.back();
          if (2 * g - 2 + n > 0) {
            std::vector<int> with1 = base;
            with1.push_back(1);
            expect(g, with1, Rational(2 * g - 2 + n) * compute(g, base), "dilaton equation");
          }
        }
        ++instances;
      }
    }
  }

  validated_ = report.ok();
  return report;
}

}  // namespace psipoint
