#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pickspace/blaschke.hpp"
#include "pickspace/gram.hpp"
#include "pickspace/hyperbolic.hpp"

namespace pickspace {

// Gram matrix of the Drury-Arveson kernels at a finite ball subset:
// entry (i, j) = 1 / (1 - <x_j, x_i>).
inline GramMatrix da_gram(const PointSet& ps, const Tolerances& tol = {}) {
  const Index n = ps.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if ((ps.points[i] - ps.points[j]).cwiseAbs().maxCoeff() == 0.0)
        throw DuplicatePointsError("da_gram: duplicate points");
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      g(i, j) = 1.0 / (1.0 - ps.points[j].dot(ps.points[i]));
  return GramMatrix(std::move(g), tol);
}

// Gram matrix of the model space K_B: the Drury-Arveson Gram of the
// zeros viewed as disk points.
inline GramMatrix model_gram(const BlaschkeData& b, const Tolerances& tol = {}) {
  return da_gram(PointSet::from_disk(b.zeros), tol);
}

// Coordinate matrix of the conjugation J_B of K_B in the kernel basis;
// the conjugate-linear action on coordinates is alpha -> C conj(alpha).
// J k_i = B'(x_i) k_i^#, so C = G^{-1} diag(B'(x_i)), which collapses
// to the closed form C_ij = conj(g_ij) / conj(B'(x_i)) because
// (G^{-1})_ij = conj(g_ij) / (conj(B'(x_i)) B'(x_j)) for model Grams.
// The closed form avoids inverting G and keeps the involution exact to
// rounding even for crowded zero sets.
inline Matrix model_conjugation_matrix(const BlaschkeData& b,
                                       const Tolerances& tol = {}) {
  GramMatrix g = model_gram(b, tol);
  const Index n = g.size();
  Vector dprime(n);
  for (Index i = 0; i < n; ++i)
    dprime(i) = blaschke_derivative_at_zero_i(b, static_cast<std::size_t>(i));
  return dprime.conjugate().cwiseInverse().asDiagonal() *
         g.entries().conjugate();
}

// Applies a conjugate-linear map given by its coordinate matrix.
inline Vector conjugation_apply(const Matrix& c, const Vector& alpha) {
  return c * alpha.conjugate();
}

// The base-point-normalized Pick criterion matrix
//   F_ij = 1 - (g_i0 g_0j) / (g_ij g_00),
// positive semidefinite exactly when g has a complete Pick kernel.
inline Matrix pick_criterion_matrix(const GramMatrix& g,
                                    const Tolerances& tol = {}) {
  if (g.is_degenerate(tol.match_tol))
    throw DegenerateGramError("Gram with a zero entry cannot have a "
                              "complete Pick kernel");
  const Index n = g.size();
  Matrix f(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      f(i, j) = 1.0 - g(i, 0) * g(0, j) / (g(i, j) * g(0, 0));
  return detail::hermitian_part(f);
}

inline bool is_complete_pick(const GramMatrix& g, const Tolerances& tol = {}) {
  Matrix f = pick_criterion_matrix(g, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(f, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  return ev(0) >= -tol.psd_tol * scale;
}

// A point set realizing a complete-Pick Gram as a rescaled
// Drury-Arveson Gram: da_gram(points) rescaled by `witness`
// reproduces the input within match_tol (max entry deviation
// `residual`, relative to the input scale).
struct PickRealization {
  PointSet points;
  RescalingWitness witness;
  double residual;
};

inline PickRealization realize_in_ball(const GramMatrix& g,
                                       const Tolerances& tol = {}) {
  if (!is_complete_pick(g, tol))
    throw NotCompletePickError("realize_in_ball: not a complete Pick Gram");
  const Index n = g.size();
  Matrix f = pick_criterion_matrix(g, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(f);
  const RealVector& ev = es.eigenvalues();  // ascending
  const double ev_max = ev(n - 1);
  Index rank = 0;
  for (Index k = 0; k < n; ++k)
    if (ev(k) > tol.psd_tol * std::max(ev_max, 0.0)) ++rank;
  const Index m = std::max<Index>(rank, 1);

  // rows of V_r diag(sqrt(ev_r)) are the points: F_ij = <b_j, b_i>
  std::vector<Vector> pts(n, Vector::Zero(m));
  for (Index k = 0; k < rank; ++k) {
    const Index col = n - 1 - k;  // largest eigenvalues first
    const double w = std::sqrt(ev(col));
    for (Index i = 0; i < n; ++i) pts[i](k) = w * es.eigenvectors()(i, col);
  }
  PointSet points(m, std::move(pts));

  Vector lambda(n);
  const double root = std::sqrt(g(0, 0).real());
  for (Index i = 0; i < n; ++i) lambda(i) = g(i, 0) / root;
  RescalingWitness witness{std::move(lambda)};

  Matrix rebuilt = witness.lambdas.asDiagonal() *
                   da_gram(points, tol).entries() *
                   witness.lambdas.conjugate().asDiagonal();
  const double residual =
      detail::max_abs(g.entries() - rebuilt) / std::max(1.0, g.scale());
  return PickRealization{std::move(points), std::move(witness), residual};
}

namespace detail {

inline RealMatrix pseudohyperbolic_table(const PointSet& ps) {
  const Index n = ps.size();
  RealMatrix d = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = pseudohyperbolic(ps.points[i], ps.points[j]);
  return d;
}

inline bool congruence_search(const RealMatrix& dx, const RealMatrix& dy,
                              const GramMatrix& gx, const GramMatrix& gy,
                              std::vector<Index>& perm,
                              std::vector<bool>& used, Index depth,
                              double prune_tol, const Tolerances& tol) {
  const Index n = dx.rows();
  if (depth == n) {
    Matrix h(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) h(i, j) = gy(perm[i], perm[j]);
    return are_rescalings(gx, GramMatrix(std::move(h), tol), tol).has_value();
  }
  for (Index cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    bool ok = true;
    for (Index k = 0; k < depth && ok; ++k)
      ok = std::abs(dx(depth, k) - dy(cand, perm[k])) <= prune_tol;
    if (!ok) continue;
    used[cand] = true;
    perm[depth] = cand;
    if (congruence_search(dx, dy, gx, gy, perm, used, depth + 1, prune_tol,
                          tol))
      return true;
    used[cand] = false;
  }
  return false;
}

}  // namespace detail

// Whether some ball automorphism maps x onto y, decided through the
// rescaling equivalence of the Drury-Arveson Grams over point
// re-indexings.  Permutations are pruned by the pairwise
// pseudohyperbolic distances, which any congruence preserves.
inline bool congruent_sets(const PointSet& x, const PointSet& y,
                           const Tolerances& tol = {}) {
  if (x.size() != y.size())
    throw SizeMismatchError("congruent_sets: sets have different sizes");
  const Index n = x.size();
  RealMatrix dx = detail::pseudohyperbolic_table(x);
  RealMatrix dy = detail::pseudohyperbolic_table(y);
  const double prune_tol = std::max(1e-7, 10.0 * tol.match_tol);

  std::vector<double> sx(dx.data(), dx.data() + dx.size());
  std::vector<double> sy(dy.data(), dy.data() + dy.size());
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  for (std::size_t k = 0; k < sx.size(); ++k)
    if (std::abs(sx[k] - sy[k]) > prune_tol) return false;

  GramMatrix gx = da_gram(x, tol);
  GramMatrix gy = da_gram(y, tol);
  std::vector<Index> perm(n, 0);
  std::vector<bool> used(n, false);
  return detail::congruence_search(dx, dy, gx, gy, perm, used, 0, prune_tol,
                                   tol);
}

}  // namespace pickspace
