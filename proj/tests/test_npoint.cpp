#include "doctest.h"

#include <numeric>

#include "psipoint/errors.hpp"
#include "psipoint/npoint.hpp"
#include "psipoint/oracle.hpp"
#include "test_support.hpp"

using namespace psipoint;
using psipoint::testing::q;
using psipoint::testing::series_of;

TEST_CASE("gaussian substitution") {
  SUBCASE("a1^4 -> 3 x1^2") {
    Polynomial p(1);
    p.add_term({4}, 1);
    Polynomial expected(1);
    expected.add_term({2}, 3);
    CHECK(gaussian_substitute(p) == expected);
  }
  SUBCASE("odd exponents vanish") {
    Polynomial p(2);
    p.add_term({1, 1}, 5);
    CHECK(gaussian_substitute(p).is_zero());
  }
  SUBCASE("sign follows half the total degree") {
    Polynomial p(2);
    p.add_term({2, 0}, 1);
    p.add_term({2, 2}, 1);
    Polynomial expected(2);
    expected.add_term({1, 0}, -1);
    expected.add_term({1, 1}, 1);
    CHECK(gaussian_substitute(p) == expected);
  }
  SUBCASE("two-point degree-2 layer") {
    // (a2^2 x1^2 - 2 a1 a2 x1 x2 + a1^2 x2^2)/24 -> -x1 x2 (x1 + x2)/24
    PnSymbolic::Coefficients c;
    Polynomial p20(2), p11(2), p02(2);
    p20.add_term({0, 2}, q("1/24"));
    p11.add_term({1, 1}, q("-1/12"));
    p02.add_term({2, 0}, q("1/24"));
    c.emplace(ExponentVector{2, 0}, p20);
    c.emplace(ExponentVector{1, 1}, p11);
    c.emplace(ExponentVector{0, 2}, p02);
    const PnSymbolic layer(2, 2, c, LayerSelection::all);
    CHECK(gaussian_transform(layer, 3) ==
          series_of(2, 3, {{{2, 1}, "-1/24"}, {{1, 2}, "-1/24"}}));
  }
  SUBCASE("insufficient kernel order") {
    CHECK_THROWS_AS(gaussian_transform(pn_symbolic(3, 2), 6), std::invalid_argument);
  }
}

TEST_CASE("kernel order bookkeeping") {
  CHECK(kernel_order_for(2, 13) == 8);
  CHECK(kernel_order_for(4, 10) == 7);
  CHECK(kernel_order_for(3, 1) == 1);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int t = 0; t <= 12; ++t) {
      const int dmax = kernel_order_for(n, t);
      const int nn = static_cast<int>(n);
      CHECK(dmax + (dmax - nn + 2) / 2 <= t + 1);
      CHECK(3 * (dmax + 1) > 2 * t + nn - 2);
    }
  }
}

TEST_CASE("npoint_series examples") {
  SUBCASE("one point") {
    const auto f = npoint_series(1, 9);
    CHECK(f == series_of(1, 9, {{{1}, "1/24"}, {{4}, "1/1152"}, {{7}, "1/82944"}}));
  }
  SUBCASE("two points through degree 2") {
    const auto f = npoint_series(2, 2);
    CHECK(f == series_of(2, 2, {{{2, 0}, "1/24"}, {{1, 1}, "1/24"}, {{0, 2}, "1/24"}}));
  }
  SUBCASE("two points, degree 5 from the symbolic expansion") {
    const auto f = npoint_series(2, 5);
    CHECK(f.homogeneous_part(5) == series_of(2, 5, {{{5, 0}, "1/1152"},
                                                    {{4, 1}, "1/384"},
                                                    {{3, 2}, "29/5760"},
                                                    {{2, 3}, "29/5760"},
                                                    {{1, 4}, "1/384"},
                                                    {{0, 5}, "1/1152"}}));
  }
  SUBCASE("three points at order 0") {
    CHECK(npoint_series(3, 0) == TruncatedSeries::constant(3, 0, 1));
  }
  SUBCASE("invalid requests") {
    CHECK_THROWS_AS(npoint_series(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(npoint_series(2, -1), std::invalid_argument);
  }
}

TEST_CASE("intersection_number") {
  CHECK(intersection_number(0, {0, 0, 0}) == 1);
  CHECK(intersection_number(2, {4}) == q("1/1152"));
  CHECK(intersection_number(1, {1, 1, 1}) == q("1/12"));
  CHECK(intersection_number(1, {0, 1}) == 0);
  CHECK(intersection_number(0, {0, 0}) == 0);
  CHECK(intersection_number(0, {1}) == 0);
  CHECK(intersection_number(1, {2, 0, 1}) == q("1/12"));
}

TEST_CASE("closed forms") {
  CHECK(one_point_closed(4).coefficient({4}) == q("1/1152"));
  CHECK(two_point_closed(2).coefficient({1, 1}) == q("1/24"));
  CHECK(two_point_closed(0).coefficient({0, 0}) == 0);
  CHECK(npoint_series(1, 13) == one_point_closed(13));
  CHECK(npoint_series(2, 8) == two_point_closed(8));
}

TEST_CASE("cn identity") {
  const auto r = cn_identity_check(20);
  CHECK(r.ok());
  CHECK(r.failures().empty());
  CHECK(r.rows[0].direct == 1);
  CHECK(r.rows[1].direct == q("2/3"));
  CHECK(r.rows[5].direct == q("32/10395"));
  CHECK(r.rows[5].closed == q("32/10395"));
}

TEST_CASE("string equation and symmetry of the n-point function") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const int order = 7;
    const auto f = npoint_series(n, order);
    std::vector<Rational> c(n, Rational(1));
    c.back() = 0;
    auto expected = mul_form(insert_variable(npoint_series(n - 1, order - 1), n - 1).truncated(order),
                             LinearForm(c));
    if (n == 3) expected += TruncatedSeries::constant(n, order, 1);
    CHECK(restrict_variable(f, n - 1) == expected);

    std::vector<std::size_t> rho(n);
    std::iota(rho.rbegin(), rho.rend(), std::size_t{0});
    CHECK(permute_variables(f, rho) == f);
    CHECK_NOTHROW(IntersectionTable::from_series(f, Provenance::theorem_route));
  }
}

TEST_CASE("intersection table") {
  IntersectionTable t;
  const std::vector<int> d{2, 0, 1};
  t.insert(1, d, q("1/12"), Provenance::oracle);
  const std::vector<int> d2{0, 1, 2};
  CHECK(t.find(1, d2) == q("1/12"));
  CHECK_NOTHROW(t.insert(1, d2, q("1/12"), Provenance::theorem_route));
  CHECK_THROWS_AS(t.insert(1, d2, q("1/13"), Provenance::theorem_route), ConsistencyError);
  const std::vector<int> bad{0, 1};
  CHECK_THROWS_AS(t.insert(1, bad, 1, Provenance::oracle), std::invalid_argument);

  TruncatedSeries off(2, 3);
  off.add_term({1, 0}, 1);
  CHECK_THROWS_AS(IntersectionTable::from_series(off, Provenance::theorem_route), ConsistencyError);
  const auto table = IntersectionTable::from_series(npoint_series(2, 5), Provenance::theorem_route);
  CHECK(table.find(2, std::vector<int>{3, 2}) == q("29/5760"));
}

TEST_CASE("DR route reproduces the n-point function") {
  SUBCASE("genus 0, three points") {
    const std::vector<long> a{1, 2, 3};
    CHECK(npoint_via_dr(0, a, {}) == TruncatedSeries::constant(3, 0, 1));
  }
  SUBCASE("genus 1, three points, b-independence") {
    const std::vector<long> a{1, 1, 1};
    const auto r1 = npoint_via_dr(1, a, std::vector<long>{1});
    const auto r3 = npoint_via_dr(1, a, std::vector<long>{3});
    CHECK(r1 == r3);
    CHECK(r1 == npoint_series(3, 3).homogeneous_part(3));
  }
  SUBCASE("preconditions") {
    const std::vector<long> a{1, 2, 3};
    CHECK_THROWS_AS(npoint_via_dr(1, a, std::vector<long>{0}), std::invalid_argument);
    CHECK_THROWS_AS(npoint_via_dr(1, a, std::vector<long>{}), std::invalid_argument);
    CHECK_THROWS_AS(npoint_via_dr(0, std::vector<long>{1, 2}, {}), std::invalid_argument);
  }
  SUBCASE("default draws") {
    const auto [a0, b0] = default_dr_draw(2, 3, 0);
    const auto [a1, b1] = default_dr_draw(2, 3, 1);
    CHECK(a0 == IntVector{1, 2, 3});
    CHECK(b0 == IntVector{1, 2});
    CHECK(a1 == IntVector{2, 3, 4});
    CHECK(b1 == IntVector{2, 1});
  }
}
