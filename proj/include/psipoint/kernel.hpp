#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "psipoint/polynomial.hpp"
#include "psipoint/rational.hpp"
#include "psipoint/series.hpp"

namespace psipoint {

/// Values of the weights a_1, ..., a_n at which the kernel is evaluated.
using AVector = std::vector<Rational>;

/// Delta_pq = a_p x_q - a_q x_p for p < q (zero-based indices).
LinearForm pair_form(const AVector& a, std::size_t p, std::size_t q);

/// True when some pair (a_p, a_q) is (0, 0), i.e. some Delta_pq vanishes.
bool is_degenerate(const AVector& a);

/// One summand of the permutation sum defining P_n.
///
/// For the ordering s = (s_1, ..., s_n) with s_1 = first point, the adjacent
/// determinants are D_k = a_{s_k} x_{s_{k+1}} - a_{s_{k+1}} x_{s_k} and the
/// cumulative ones are C_k = (a_{s_1} + ... + a_{s_k}) x_{s_{k+1}} -
/// a_{s_{k+1}} (x_{s_1} + ... + x_{s_k}). Each D_k is +-Delta_pq for the
/// canonical p < q orientation; `sign` is the product of those signs, so
/// 1 / prod D_k = sign * prod(unused Delta) / prod(all Delta).
struct PermTerm {
  std::vector<std::size_t> order;
  std::vector<LinearForm> adjacent;
  std::vector<LinearForm> cumulative;
  int sign = 1;
  std::vector<std::pair<std::size_t, std::size_t>> unused_pairs;
};

/// All (n-1)! summands, orderings fixing the first point, in lexicographic
/// order.
std::vector<PermTerm> permutation_terms(const AVector& a);

/// P_n(a; x) truncated at total x-degree `order`, for numeric nondegenerate a.
///
/// The summands are put over the common denominator prod_{p<q} Delta_pq
/// and the numerator (accumulated at order + C(n,2)) is divided exactly by
/// every Delta_pq. Throws DegenerateA for a (0,0) pair, NonExactDivision if
/// the sum fails to be a power series.
TruncatedSeries pn_eval(const AVector& a, int order);

enum class LayerSelection { all, even_a_degree };

/// P_n with symbolic a: each x-monomial of degree D maps to a homogeneous
/// polynomial in a_1..a_n of degree D - n + 2.
class PnSymbolic {
 public:
  using Coefficients = std::map<ExponentVector, Polynomial>;

  PnSymbolic(std::size_t n, int order, Coefficients coeffs, LayerSelection layers);

  std::size_t n() const { return n_; }
  int order() const { return order_; }
  LayerSelection layers() const { return layers_; }
  const Coefficients& coefficients() const { return coeffs_; }
  /// Zero polynomial when the monomial is absent.
  Polynomial coefficient(const ExponentVector& e) const;

  /// Substitutes numeric a; valid for degenerate a as well.
  TruncatedSeries evaluate(const AVector& a) const;

 private:
  std::size_t n_;
  int order_;
  Coefficients coeffs_;
  LayerSelection layers_;
};

/// Recovers P_n symbolically through x-order `order` by exact interpolation
/// over a grid of kernel evaluations.
///
/// The grid for a-degree h consists of the points (1, s + c_1, ..., s +
/// c_{n-1}) with c on the simplex lattice of degree h; s starts at 1 and is
/// bumped on a singular system, at most kGridRetries times.
PnSymbolic pn_symbolic(std::size_t n, int order,
                       LayerSelection layers = LayerSelection::all);

inline constexpr int kGridRetries = 8;

/// The grid points used by pn_symbolic for a-degree up to h_max and shift s.
std::vector<AVector> kernel_grid(std::size_t n, int h_max, int shift);

/// pn_eval when a is nondegenerate; otherwise the (memoized) symbolic
/// kernel evaluated at a.
TruncatedSeries pn_value(const AVector& a, int order);

/// x_i = 0.
TruncatedSeries pn_restrict(const TruncatedSeries& p, std::size_t i);
PnSymbolic pn_restrict(const PnSymbolic& p, std::size_t i);

}  // namespace psipoint
