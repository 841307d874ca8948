#pragma once

#include <algorithm>
#include <vector>

#include "pickspace/gram.hpp"

namespace pickspace {

// Values of a multiplier on the index set.
using MultiplierValues = Vector;

// Operator norm of multiplication by the given values: the smallest
// t >= 0 with t^2 G - D G D^* positive semidefinite, computed from the
// largest generalized eigenvalue of (D G D^*, G).
inline double multiplier_norm(const GramMatrix& g, const MultiplierValues& values,
                              const Tolerances& tol = {}) {
  (void)tol;
  if (values.size() != g.size())
    throw DimensionMismatchError("multiplier_norm: wrong number of values");
  Matrix a = detail::hermitian_part(values.asDiagonal() * g.entries() *
                                    values.conjugate().asDiagonal());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(a, g.entries(),
                                                      Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, lmax));
}

namespace detail {

inline std::vector<Index> restricted_index_set(const GramMatrix& g, Index x,
                                               const std::vector<Index>& ys) {
  if (x < 0 || x >= g.size())
    throw ValidationError("extremal multiplier: base index out of range");
  std::vector<Index> s = ys;
  for (Index y : s) {
    if (y < 0 || y >= g.size())
      throw ValidationError("extremal multiplier: index out of range");
    if (y == x)
      throw IndexOverlapError("extremal multiplier: base index occurs in Y");
  }
  s.push_back(x);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ValidationError("extremal multiplier: repeated index in Y");
  return s;
}

}  // namespace detail

// The norm-one multiplier vanishing on Y that maximizes Re m(x),
// solved on the regular subspace spanned by the kernels of Y and x.
// `indices` is that (sorted) subset; `multiplier` and `h` live on it.
struct ExtremalSolution {
  double value;                // m(x), real positive
  MultiplierValues multiplier; // value at x, zero on Y
  Vector h;                    // the extremal unit vector, kernel-basis coords
  std::vector<Index> indices;
  Index base_position;         // position of x inside `indices`
};

// Closed form: the extremal value is (g_xx (G_S^{-1})_xx)^{-1/2} on the
// restricted Gram G_S, with h the normalized dual kernel of x.  The
// identity m(x) k_x / ||k_x|| = h is verified before returning.
inline ExtremalSolution extremal_vanishing_multiplier(
    const GramMatrix& g, Index x, const std::vector<Index>& ys,
    const Tolerances& tol = {}) {
  std::vector<Index> s = detail::restricted_index_set(g, x, ys);
  GramMatrix gs = regular_subspace(g, s, tol);
  const Index nr = gs.size();
  const Index xr = static_cast<Index>(
      std::lower_bound(s.begin(), s.end(), x) - s.begin());

  GramMatrix gd = dual_gram(gs, tol);
  const double gxx = gs(xr, xr).real();
  const double dxx = gd(xr, xr).real();
  const double value = 1.0 / std::sqrt(gxx * dxx);

  Vector multiplier = Vector::Zero(nr);
  multiplier(xr) = value;
  Vector h = gd.entries().col(xr) / std::sqrt(dxx);

  // values of m * k_x/||k_x|| against the values of h
  Vector lhs = multiplier.cwiseProduct(gs.entries().col(xr)) / std::sqrt(gxx);
  Vector rhs = gs.entries() * h;
  if ((lhs - rhs).cwiseAbs().maxCoeff() >
      tol.match_tol * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
    throw NumericalError("extremal multiplier: identity check failed");

  return ExtremalSolution{value, std::move(multiplier), std::move(h),
                          std::move(s), xr};
}

inline constexpr double kBisectionWidth = 1e-10;

// Independent oracle for the extremal value: bisects on v in [0, 1],
// testing feasibility of the values (v at x, 0 on Y) as a multiplier of
// norm at most one on the restricted Gram.
inline double extremal_value_bisection_oracle(const GramMatrix& g, Index x,
                                              const std::vector<Index>& ys,
                                              const Tolerances& tol = {}) {
  std::vector<Index> s = detail::restricted_index_set(g, x, ys);
  GramMatrix gs = regular_subspace(g, s, tol);
  const Index xr = static_cast<Index>(
      std::lower_bound(s.begin(), s.end(), x) - s.begin());

  auto feasible = [&](double v) {
    Vector values = Vector::Zero(gs.size());
    values(xr) = v;
    return multiplier_norm(gs, values, tol) <= 1.0 + tol.psd_tol;
  };

  if (feasible(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Gleason distance: extremal value of the pair problem {i, j} with the
// multiplier vanishing at j.  Coincides with delta_pair on complete
// Pick Grams.
inline double gleason_delta(const GramMatrix& g, Index i, Index j,
                            const Tolerances& tol = {}) {
  if (i == j) throw IndexOverlapError("gleason_delta: indices must differ");
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size())
    throw ValidationError("gleason_delta: index out of range");
  if (std::abs(g(i, j)) <= tol.match_tol * g.scale())
    throw DegenerateGramError("gleason_delta: orthogonal kernels");
  return extremal_vanishing_multiplier(g, i, {j}, tol).value;
}

// Norm of the idempotent multiplier e_i; equals ||k_i|| ||k_i^#||.
inline double idempotent_norm(const GramMatrix& g, Index i,
                              const Tolerances& tol = {}) {
  if (i < 0 || i >= g.size())
    throw ValidationError("idempotent_norm: index out of range");
  Vector values = Vector::Zero(g.size());
  values(i) = 1.0;
  return multiplier_norm(g, values, tol);
}

}  // namespace pickspace
