#include "psipoint/verify.hpp"

#include <chrono>
#include <exception>
#include <numeric>
#include <random>

#include "psipoint/errors.hpp"
#include "psipoint/kernel.hpp"
#include "psipoint/npoint.hpp"
#include "psipoint/oracle.hpp"

namespace psipoint {

namespace {

template <class Body>
SuiteResult timed(std::string name, Body body) {
  SuiteResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void expect(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checked;
  if (!ok) r.failures.push_back(what);
}

void expect_equal_series(SuiteResult& r, const TruncatedSeries& got, const TruncatedSeries& want,
                         const std::string& what) {
  for (int d = 0; d <= want.order(); ++d) {
    for (const auto& e : monomials_of_degree(want.n_vars(), d)) {
      const Rational a = got.coefficient(e);
      const Rational b = want.coefficient(e);
      expect(r, a == b, what + " at " + e.to_string() + ": " + to_string(a) + " != " + to_string(b));
    }
  }
}

AVector random_a(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-6, 6);
  AVector a;
  while (a.size() < n) {
    const int v = dist(rng);
    if (v != 0) a.emplace_back(v);
  }
  return a;
}

}  // namespace

SuiteResult one_point_suite(int order) {
  return timed("one-point closed form", [&](SuiteResult& r) {
    const auto f = npoint_series(1, order);
    expect_equal_series(r, f, one_point_closed(order), "one-point");
    if (order >= 7) {
      expect(r, f.coefficient({1}) == make_rational(1, 24), "coefficient of x");
      expect(r, f.coefficient({4}) == make_rational(1, 1152), "coefficient of x^4");
      expect(r, f.coefficient({7}) == make_rational(1, 82944), "coefficient of x^7");
    }
  });
}

SuiteResult two_point_suite(int order) {
  return timed("two-point closed form", [&](SuiteResult& r) {
    const auto f = npoint_series(2, order);
    expect_equal_series(r, f, two_point_closed(order), "two-point");
    if (order >= 2) {
      expect(r, f.coefficient({2, 0}) == make_rational(1, 24), "<tau_0 tau_2>_1");
      expect(r, f.coefficient({1, 1}) == make_rational(1, 24), "<tau_1 tau_1>_1");
    }
  });
}

SuiteResult oracle_suite(std::span<const std::pair<std::size_t, int>> envelope) {
  return timed("oracle agreement", [&](SuiteResult& r) {
    OracleTable oracle;
    const auto report = oracle.selfcheck();
    for (const auto& m : report.mismatches) r.failures.push_back("oracle self-check: " + m);
    r.checked += report.checked;
    if (!report.ok()) return;
    for (const auto& [n, g_max] : envelope) {
      const int top = 3 * g_max - 3 + static_cast<int>(n);
      const auto f = npoint_series(n, top);
      for (int g = 0; g <= g_max; ++g) {
        const int total = 3 * g - 3 + static_cast<int>(n);
        if (total < 0 || 2 * g - 2 + static_cast<int>(n) <= 0) continue;
        for (const auto& e : monomials_of_degree(n, total)) {
          const Rational ours = f.coefficient(e);
          const Rational theirs = oracle.dvv_number(g, e.to_vector());
          expect(r, ours == theirs,
                 "g=" + std::to_string(g) + " d=" + e.to_string() + ": " + to_string(ours) +
                     " != " + to_string(theirs));
        }
      }
    }
  });
}

SuiteResult string_suite(std::size_t max_n, int order) {
  return timed("string equation", [&](SuiteResult& r) {
    for (std::size_t n = 2; n <= max_n; ++n) {
      const auto f = npoint_series(n, order);
      std::vector<Rational> c(n, Rational(1));
      c.back() = 0;
      TruncatedSeries expected =
          mul_form(insert_variable(npoint_series(n - 1, order - 1), n - 1).truncated(order), LinearForm(c));
      if (n == 3) expected += TruncatedSeries::constant(n, order, 1);
      expect_equal_series(r, restrict_variable(f, n - 1), expected, "n=" + std::to_string(n));
    }
  });
}

SuiteResult kernel_suite(std::span<const std::size_t> ns, int trials, int order, unsigned seed) {
  return timed("kernel invariants", [&](SuiteResult& r) {
    std::mt19937 rng(seed);
    for (std::size_t n : ns) {
      const std::string tag = "n=" + std::to_string(n);
      const PnSymbolic symbolic = pn_symbolic(n, order);
      for (const auto& [e, poly] : symbolic.coefficients()) {
        const int h = e.total_degree() - static_cast<int>(n) + 2;
        expect(r, poly.is_homogeneous(h), tag + " a-degree at " + e.to_string());
      }
      for (int trial = 0; trial < trials; ++trial) {
        const AVector a = random_a(rng, n);
        const auto p = pn_eval(a, order);
        expect(r, symbolic.evaluate(a) == p, tag + " symbolic kernel at a random vector");

        std::vector<std::size_t> rho(n);
        std::iota(rho.begin(), rho.end(), std::size_t{0});
        while (std::next_permutation(rho.begin(), rho.end())) {
          AVector b(n);
          for (std::size_t i = 0; i < n; ++i) b[rho[i]] = a[i];
          expect(r, pn_eval(b, order) == permute_variables(p, rho), tag + " symmetry");
        }

        AVector half = a;
        for (auto& v : half) v /= 2;
        expect(r, scale_variables(pn_eval(half, order), 2) == p * Rational(1 << (n - 2)),
               tag + " homogeneity at lambda = 2");

        const LinearForm x = LinearForm::sum(n);
        AVector balanced = a;
        balanced.back() = -std::accumulate(a.begin(), a.end() - 1, Rational(0));
        if (!is_degenerate(balanced)) {
          const auto pb = pn_value(balanced, order);
          const auto numerator = n >= 3 ? pb : pb - s_of_form(x, order);
          bool divisible = true;
          try {
            series_div_linear(numerator, x);
          } catch (const NonExactDivision&) {
            divisible = false;
          }
          expect(r, divisible, tag + " divisibility by X");
        }

        std::vector<Rational> y(n, Rational(1));
        y.back() = 0;
        const LinearForm head_sum(y);
        TruncatedSeries expected = s_of_form(head_sum * a.back(), order);
        if (n >= 3) {
          const AVector head(a.begin(), a.end() - 1);
          const auto lower = insert_variable(pn_eval(head, order - 1), n - 1).truncated(order);
          expected = series_mul(mul_form(lower, head_sum), expected);
        }
        expect(r, pn_restrict(p, n - 1) == expected, tag + " restriction at x_n = 0");
      }
    }
  });
}

SuiteResult dr_route_suite(std::span<const std::pair<int, std::size_t>> cases) {
  return timed("DR route", [&](SuiteResult& r) {
    for (const auto& [g, n] : cases) {
      const std::string tag = "(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ")";
      const int degree = 3 * g - 3 + static_cast<int>(n);
      const auto theorem = npoint_series(n, degree).homogeneous_part(degree);
      for (int which = 0; which < 2; ++which) {
        const auto [a, b] = default_dr_draw(g, n, which);
        expect_equal_series(r, npoint_via_dr(g, a, b), theorem, tag + " draw " + std::to_string(which));
      }
    }
  });
}

std::vector<ForgottenSpec> default_forgotten_specs() {
  return {
      {{1, 2, -3}, {}},        {{1, 1, 1, -3}, {}},     {{1, 1, -2}, {0}},      {{1, 2, -5}, {2}},
      {{1, 1, -3}, {1}},       {{2, -1, -2}, {1}},      {{1, 2, 3, -8}, {2}},   {{1, 1, 1}, {-1, -2}},
      {{2, 1, -1}, {-1, -1}},  {{1, -3, 1}, {2, -1}},   {{3, 1, -2}, {1, -3}},  {{1, 1, 1}, {0, -3}},
  };
}

SuiteResult forgotten_suite(std::span<const ForgottenSpec> specs, int max_degree) {
  return timed("forgotten points", [&](SuiteResult& r) {
    for (const auto& spec : specs) {
      const std::size_t n = spec.kept.size();
      const std::size_t m = spec.forgotten.size();
      const auto s = forgotten_series(spec, max_degree);
      for (int deg = 0; deg <= max_degree; ++deg) {
        const int twice_g = deg - static_cast<int>(n + m) + 3;
        for (const auto& e : monomials_of_degree(n, deg)) {
          const Rational series_value = s.coefficient(e);
          const Rational direct =
              twice_g < 0 || twice_g % 2 != 0 ? Rational(0) : forgotten_integral_direct(spec, e);
          std::string label = "kept";
          for (long v : spec.kept) label += " " + std::to_string(v);
          label += " forgotten";
          for (long v : spec.forgotten) label += " " + std::to_string(v);
          expect(r, series_value == direct,
                 label + " d=" + e.to_string() + ": " + to_string(series_value) + " != " + to_string(direct));
        }
      }
    }
  });
}

SuiteResult polynomiality_suite(std::size_t max_n, int max_degree) {
  return timed("DR polynomiality", [&](SuiteResult& r) {
    Polynomial expected(1);
    expected.add_term({2}, make_rational(1, 24));
    expected.add_term({0}, make_rational(-1, 24));
    expect(r, dr_integral_poly(2, {1, 0}).poly == expected, "n=2 d=(1,0) is (a^2-1)/24");
    for (std::size_t n = 2; n <= max_n; ++n) {
      for (int deg = 0; deg <= max_degree; ++deg) {
        if (!dr_genus(n, deg)) continue;
        for (const auto& e : monomials_of_degree(n, deg)) {
          bool ok = true;
          try {
            dr_integral_poly(n, e);
          } catch (const ConsistencyError&) {
            ok = false;
          }
          expect(r, ok, "held-out verification for d=" + e.to_string());
        }
      }
    }
  });
}

SuiteResult cn_suite(int max_k) {
  return timed("C_n identity", [&](SuiteResult& r) {
    const auto report = cn_identity_check(max_k);
    for (const auto& row : report.rows)
      expect(r, row.ok(), "k=" + std::to_string(row.k) + ": " + to_string(row.direct) + " != " +
                              to_string(row.closed));
  });
}

std::vector<SuiteResult> run_selftest(bool full) {
  std::vector<SuiteResult> out;
  const std::vector<std::pair<std::size_t, int>> envelope =
      full ? std::vector<std::pair<std::size_t, int>>{{3, 3}, {4, 2}}
           : std::vector<std::pair<std::size_t, int>>{{3, 2}, {4, 1}};
  const std::vector<std::size_t> kernel_ns = full ? std::vector<std::size_t>{2, 3, 4}
                                                  : std::vector<std::size_t>{2, 3};
  const std::vector<std::pair<int, std::size_t>> dr_cases =
      full ? std::vector<std::pair<int, std::size_t>>{{0, 3}, {1, 3}, {2, 3}, {1, 4}}
           : std::vector<std::pair<int, std::size_t>>{{0, 3}, {1, 3}};
  auto specs = default_forgotten_specs();
  if (!full) specs.resize(4);

  out.push_back(one_point_suite(13));
  out.push_back(two_point_suite(full ? 12 : 8));
  out.push_back(oracle_suite(envelope));
  out.push_back(string_suite(full ? 4 : 3, full ? 9 : 6));
  out.push_back(kernel_suite(kernel_ns, full ? 3 : 1, full ? 6 : 4, 20240501));
  out.push_back(dr_route_suite(dr_cases));
  out.push_back(forgotten_suite(specs, full ? 6 : 4));
  out.push_back(polynomiality_suite(full ? 3 : 2, full ? 5 : 3));
  out.push_back(cn_suite(20));
  return out;
}

}  // namespace psipoint
