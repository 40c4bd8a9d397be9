#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "psipoint/errors.hpp"
#include "psipoint/kernel.hpp"
#include "test_support.hpp"

using namespace psipoint;
using psipoint::testing::q;
using psipoint::testing::series_of;

namespace {

AVector ints(std::initializer_list<long> v) {
  AVector a;
  for (long x : v) a.emplace_back(x);
  return a;
}

AVector random_a(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-6, 6);
  for (;;) {
    AVector a;
    for (std::size_t i = 0; i < n; ++i) a.emplace_back(dist(rng));
    if (!is_degenerate(a)) return a;
  }
}

Polynomial poly(std::size_t n, std::initializer_list<std::pair<ExponentVector, const char*>> terms) {
  Polynomial p(n);
  for (const auto& [e, c] : terms) p.add_term(e, q(c));
  return p;
}

}  // namespace

TEST_CASE("permutation terms") {
  const AVector a = ints({1, 2, 5, -3});
  const auto terms = permutation_terms(a);
  CHECK(terms.size() == 6);
  for (const auto& t : terms) {
    CHECK(t.order.front() == 0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k + 1 < t.order.size(); ++k)
      pairs.emplace_back(std::minmax(t.order[k], t.order[k + 1]));
    std::sort(pairs.begin(), pairs.end());
    CHECK(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end());
    CHECK(pairs.size() + t.unused_pairs.size() == 6);

    // prod D_k == sign * prod(used canonical Delta)
    TruncatedSeries lhs = TruncatedSeries::constant(4, 3, 1);
    TruncatedSeries rhs = TruncatedSeries::constant(4, 3, t.sign);
    for (const auto& d : t.adjacent) lhs = mul_form(lhs, d);
    for (const auto& [p, qq] : pairs) rhs = mul_form(rhs, pair_form(a, p, qq));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pn_eval examples") {
  SUBCASE("n = 2 at a = (1,-1) is S(x1 + x2)") {
    CHECK(pn_eval(ints({1, -1}), 4) == s_of_form(LinearForm::sum(2), 4));
  }
  SUBCASE("n = 3 at a = (1,2,5)") {
    const auto p = pn_eval(ints({1, 2, 5}), 3);
    CHECK(p.homogeneous_part(1) == series_of(3, 3, {{{1, 0, 0}, "1"}, {{0, 1, 0}, "1"}, {{0, 0, 1}, "1"}}));
    CHECK(p.layer(0).empty());
    CHECK(p.layer(2).empty());
    // degree-3 layer from an independent symbolic expansion of the definition
    CHECK(p.homogeneous_part(3) == series_of(3, 3, {{{3, 0, 0}, "29/24"},
                                                    {{2, 1, 0}, "25/8"},
                                                    {{2, 0, 1}, "9/8"},
                                                    {{1, 2, 0}, "3"},
                                                    {{1, 1, 1}, "-17/4"},
                                                    {{1, 0, 2}, "1/8"},
                                                    {{0, 3, 0}, "13/12"},
                                                    {{0, 2, 1}, "1/3"},
                                                    {{0, 1, 2}, "-13/24"},
                                                    {{0, 0, 3}, "5/24"}}));
  }
  SUBCASE("n = 4 at a = (1,2,3,7) starts with X^2") {
    const auto p = pn_eval(ints({1, 2, 3, 7}), 3);
    const auto x = TruncatedSeries::from_form(LinearForm::sum(4), 3);
    CHECK(p == series_mul(x, x));
  }
  SUBCASE("n = 2 cross term") {
    CHECK(pn_eval(ints({2, 1}), 2).coefficient({1, 1}) == q("-1/6"));
  }
  SUBCASE("order below the first nonzero layer") {
    CHECK(pn_eval(ints({1, 2, 3, 7}), 1).is_zero());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(pn_eval(ints({0, 0, 1}), 3), DegenerateA);
    CHECK_THROWS_AS(pn_eval(ints({1}), 3), std::invalid_argument);
  }
}

TEST_CASE("pn_symbolic") {
  SUBCASE("n = 2, degree 2") {
    const auto p = pn_symbolic(2, 2);
    CHECK(p.coefficient({2, 0}) == poly(2, {{{0, 2}, "1/24"}}));
    CHECK(p.coefficient({1, 1}) == poly(2, {{{1, 1}, "-1/12"}}));
    CHECK(p.coefficient({0, 2}) == poly(2, {{{2, 0}, "1/24"}}));
    CHECK(p.coefficient({1, 0}).is_zero());
    CHECK(p.coefficient({0, 1}).is_zero());
  }
  SUBCASE("n = 3") {
    const auto p = pn_symbolic(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(p.coefficient(ExponentVector::unit(3, i)) == poly(3, {{{0, 0, 0}, "1"}}));
    CHECK(p.coefficient({1, 2, 0}) ==
          poly(3, {{{2, 0, 0}, "1/24"}, {{1, 1, 0}, "-1/12"}, {{0, 0, 2}, "1/8"}}));
    CHECK(p.coefficient({3, 0, 0}) == poly(3, {{{0, 2, 0}, "1/24"}, {{0, 0, 2}, "1/24"}}));
    CHECK(p.coefficient({0, 2, 1}) ==
          poly(3, {{{2, 0, 0}, "1/8"}, {{0, 1, 1}, "-1/12"}, {{0, 0, 2}, "1/24"}}));
    CHECK(p.coefficient({1, 1, 1}) ==
          poly(3, {{{1, 1, 0}, "-1/4"}, {{1, 0, 1}, "-1/4"}, {{0, 1, 1}, "-1/4"}}));
  }
  SUBCASE("homogeneity of every coefficient") {
    for (std::size_t n : {2u, 3u, 4u}) {
      const auto p = pn_symbolic(n, 6);
      for (const auto& [e, c] : p.coefficients())
        CHECK(c.is_homogeneous(e.total_degree() - static_cast<int>(n) + 2));
    }
  }
  SUBCASE("even layers only") {
    const auto p = pn_symbolic(3, 5, LayerSelection::even_a_degree);
    for (const auto& [e, c] : p.coefficients()) CHECK((e.total_degree() - 1) % 2 == 0);
    CHECK_THROWS_AS(p.evaluate(ints({1, 2, 3})), std::logic_error);
  }
  SUBCASE("interpolation reproduces fresh evaluations") {
    std::mt19937 rng(5);
    for (std::size_t n : {2u, 3u, 4u}) {
      const auto p = pn_symbolic(n, 6);
      for (int trial = 0; trial < 3; ++trial) {
        const AVector a = random_a(rng, n);
        CHECK(p.evaluate(a) == pn_eval(a, 6));
      }
    }
  }
  SUBCASE("grid points are nondegenerate and distinct") {
    const auto grid = kernel_grid(4, 5, 1);
    CHECK(grid.size() == 56);
    for (const auto& a : grid) CHECK_FALSE(is_degenerate(a));
    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
}

TEST_CASE("pn_value falls back to the symbolic kernel at degenerate a") {
  const AVector a = ints({0, 0, 2});
  const auto p = pn_value(a, 4);
  CHECK(p == pn_symbolic(3, 4).evaluate(a));
  CHECK(p.homogeneous_part(1) == series_of(3, 4, {{{1, 0, 0}, "1"}, {{0, 1, 0}, "1"}, {{0, 0, 1}, "1"}}));
}

TEST_CASE("pn_restrict") {
  SUBCASE("P2 at x2 = 0 is S(a2 x1)") {
    const auto p = pn_restrict(pn_eval(ints({3, -2}), 6), 1);
    CHECK(p == s_of_form(LinearForm({Rational(-2), Rational(0)}), 6));
  }
  SUBCASE("degree-1 part of P3 at x3 = 0") {
    const auto p = pn_restrict(pn_eval(ints({1, 2, 5}), 1), 2);
    CHECK(p == series_of(3, 1, {{{1, 0, 0}, "1"}, {{0, 1, 0}, "1"}}));
  }
  SUBCASE("constant") {
    CHECK(pn_restrict(TruncatedSeries::constant(2, 3, 1), 1) == TruncatedSeries::constant(2, 3, 1));
  }
  SUBCASE("symbolic restriction keeps only monomials free of x_i") {
    const auto p = pn_restrict(pn_symbolic(3, 3), 0);
    for (const auto& [e, c] : p.coefficients()) CHECK(e[0] == 0);
    CHECK(p.coefficient({0, 2, 1}) == pn_symbolic(3, 3).coefficient({0, 2, 1}));
  }
}

TEST_CASE("kernel invariants on random a") {
  std::mt19937 rng(1234);
  const int order = 6;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const AVector a = random_a(rng, n);
      const auto p = pn_eval(a, order);

      // symmetry under simultaneous permutation of a and x
      std::vector<std::size_t> rho(n);
      std::iota(rho.begin(), rho.end(), std::size_t{0});
      while (std::next_permutation(rho.begin(), rho.end())) {
        AVector b(n);
        for (std::size_t i = 0; i < n; ++i) b[rho[i]] = a[i];
        CHECK(pn_eval(b, order) == permute_variables(p, rho));
      }

      // homogeneity with lambda = 2
      AVector half = a;
      for (auto& v : half) v /= 2;
      CHECK(scale_variables(pn_eval(half, order), 2) == p * Rational(1 << (n - 2)));

      // divisibility by X holds for balanced weights
      const LinearForm x = LinearForm::sum(n);
      AVector balanced = a;
      balanced.back() = -std::accumulate(a.begin(), a.end() - 1, Rational(0));
      if (!is_degenerate(balanced)) {
        const auto pb = pn_eval(balanced, order);
        if (n >= 3) {
          CHECK_NOTHROW(series_div_linear(pb, x));
        } else {
          CHECK_NOTHROW(series_div_linear(pb - s_of_form(x, order), x));
        }
      }

      // restriction identity at x_n = 0
      const Rational& last = a.back();
      std::vector<Rational> y(n, Rational(1));
      y.back() = 0;
      const LinearForm sum_first(y);
      TruncatedSeries expected(n, order);
      if (n == 2) {
        expected = s_of_form(sum_first * last, order);
      } else {
        const AVector head(a.begin(), a.end() - 1);
        const auto lower = insert_variable(pn_eval(head, order - 1), n - 1).truncated(order);
        expected = series_mul(mul_form(lower, sum_first), s_of_form(sum_first * last, order));
      }
      CHECK(pn_restrict(p, n - 1) == expected);
    }
  }
}

TEST_CASE("P_n is not divisible by X for unbalanced weights") {
  CHECK_THROWS_AS(series_div_linear(pn_eval(ints({1, 2, 5}), 4), LinearForm::sum(3)), NonExactDivision);
  CHECK_NOTHROW(series_div_linear(pn_eval(ints({1, 4, -5}), 4), LinearForm::sum(3)));
}
