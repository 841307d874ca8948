#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "pickspace/gram.hpp"

namespace pickspace {

namespace detail {

// max |(M conj(M) - I)_ij|: zero exactly when M is an orthogonal matrix
// (for Hermitian M, conj(M) is its transpose).
inline double orthogonality_residual(const Matrix& m) {
  const Index n = m.rows();
  return max_abs(m * m.conjugate() - Matrix::Identity(n, n));
}

inline double orthogonality_scale(const Matrix& m) {
  const double s = max_abs(m);
  return std::max(1.0, s * s);
}

// Gauss-Newton polish of a rescaling witness.  With
// K~ = D^{-1} g conj(D)^{-1} and E(lambda) = K~ conj(K~) - I, a
// first-order correction lambda_i -> lambda_i sqrt(1 + tau_i) changes E
// by (diag(tau)/2) M + M (diag(tau)/2) + K~ diag(conj tau) conj(K~)
// with M = K~ conj(K~).  All n^2 equations are solved for tau in the
// least-squares sense (the system is rank-deficient along the free
// global phase).  The fixed point involves only g and lambda, so the
// polished witness is not limited by the conditioning of the inverse
// that seeded it.
inline void polish_orthogonality_witness(const Matrix& g, Vector& lambda) {
  const Index n = g.rows();
  if (n < 2) return;
  Vector best = lambda;
  double best_resid = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 4; ++step) {
    Vector inv = lambda.cwiseInverse();
    Matrix rescaled = inv.asDiagonal() * g * inv.conjugate().asDiagonal();
    Matrix m = rescaled * rescaled.conjugate();
    Matrix e = m - Matrix::Identity(n, n);
    const double resid = max_abs(e);
    if (resid < best_resid) {
      best_resid = resid;
      best = lambda;
    }
    if (resid <= 1e-15 * orthogonality_scale(rescaled)) break;

    RealMatrix jac(2 * n * n, 2 * n);
    RealVector rhs(2 * n * n);
    for (Index t = 0; t < n; ++t) {
      Matrix rowcol = Matrix::Zero(n, n);
      rowcol.row(t) += 0.5 * m.row(t);
      rowcol.col(t) += 0.5 * m.col(t);
      Matrix rank1 = rescaled.col(t) * rescaled.col(t).transpose();
      // derivative against Re(tau_t); for Im(tau_t) the row/col parts
      // rotate by i and the rank-one part by -i
      Matrix d = rowcol + rank1;
      Matrix dimag = Complex(0, 1) * (rowcol - rank1);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          const Index row = i * n + j;
          jac(2 * row, t) = d(i, j).real();
          jac(2 * row + 1, t) = d(i, j).imag();
          jac(2 * row, n + t) = dimag(i, j).real();
          jac(2 * row + 1, n + t) = dimag(i, j).imag();
        }
    }
    // the update subtracts L(tau) from E, so target L(tau) = E
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        const Index row = i * n + j;
        rhs(2 * row) = e(i, j).real();
        rhs(2 * row + 1) = e(i, j).imag();
      }
    // minimum-norm solve: the Jacobian is singular along the free
    // global phase and a basic solution would run off along it
    Eigen::JacobiSVD<RealMatrix> svd(jac,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    RealVector tau = svd.solve(rhs);
    if (!tau.allFinite() || tau.cwiseAbs().maxCoeff() > 0.5) break;
    for (Index i = 0; i < n; ++i)
      lambda(i) *= std::sqrt(Complex(1.0 + tau(i), tau(n + i)));
  }
  Vector inv = lambda.cwiseInverse();
  Matrix rescaled = inv.asDiagonal() * g * inv.conjugate().asDiagonal();
  if (max_abs(rescaled * rescaled.conjugate() - Matrix::Identity(n, n)) >
      best_resid)
    lambda = best;
}

}  // namespace detail

// Whether the Gram satisfies sum_s k_is k_js = delta_ij, i.e. its
// inverse is its transpose.
inline bool is_orthogonal_gram(const GramMatrix& g, const Tolerances& tol = {}) {
  return detail::orthogonality_residual(g.entries()) <=
         tol.match_tol * detail::orthogonality_scale(g.entries());
}

enum class OrthogonalityVerdict {
  orthogonal,       // already an orthogonal matrix
  r_orthogonal,     // a rescaling is orthogonal; witness attached
  not_r_orthogonal,
  degenerate        // zero Gram entry: the ratio test does not apply
};

struct OrthogonalityReport {
  OrthogonalityVerdict verdict;
  std::optional<RescalingWitness> witness;
  // max deviation from the orthogonality equations after rescaling,
  // and the scaled threshold it was compared against
  double residual = std::numeric_limits<double>::infinity();
  double residual_tolerance = 0.0;
  // second/first eigenvalue magnitude of the ratio matrix
  double rank_ratio = std::numeric_limits<double>::infinity();

  bool accepted() const {
    return verdict == OrthogonalityVerdict::orthogonal ||
           verdict == OrthogonalityVerdict::r_orthogonal;
  }
};

// K~ = D^{-1} K conj(D)^{-1} with D = diag(lambda); must come out an
// orthogonal matrix, else the witness is rejected.
inline GramMatrix rescale_to_orthogonal(const GramMatrix& g,
                                        const RescalingWitness& w,
                                        const Tolerances& tol = {}) {
  if (w.lambdas.size() != g.size())
    throw DimensionMismatchError("rescale_to_orthogonal: witness length");
  Vector inv = w.lambdas.cwiseInverse();
  Matrix out = inv.asDiagonal() * g.entries() * inv.conjugate().asDiagonal();
  if (detail::orthogonality_residual(out) >
      tol.match_tol * detail::orthogonality_scale(out))
    throw InvalidWitnessError(
        "rescale_to_orthogonal: witness does not orthogonalize the Gram");
  return GramMatrix(std::move(out), tol);
}

// Decides r-orthogonality.  K~ = D^{-1} K conj(D)^{-1} is orthogonal
// exactly when the ratio matrix R_ij = (K^{-1})_ij / conj(K_ij) has the
// rank-one Hermitian form alpha alpha^*; then lambda_i is a square root
// of 1/conj(alpha_i) (any branch works, signs are free).
inline OrthogonalityReport r_orthogonality_witness(const GramMatrix& g,
                                                   const Tolerances& tol = {}) {
  OrthogonalityReport report{OrthogonalityVerdict::not_r_orthogonal,
                             std::nullopt};
  if (g.is_degenerate(tol.match_tol)) {
    report.verdict = OrthogonalityVerdict::degenerate;
    return report;
  }
  const Index n = g.size();
  if (is_orthogonal_gram(g, tol)) {
    report.verdict = OrthogonalityVerdict::orthogonal;
    report.witness = RescalingWitness::ones(n);
    report.residual = detail::orthogonality_residual(g.entries());
    report.residual_tolerance =
        tol.match_tol * detail::orthogonality_scale(g.entries());
    report.rank_ratio = 0.0;
    return report;
  }

  GramMatrix gd = dual_gram(g, tol);
  Matrix ratio = detail::hermitian_part(
      gd.entries().cwiseQuotient(g.entries().conjugate()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(ratio);
  const RealVector& ev = es.eigenvalues();  // ascending
  const double lead = ev(n - 1);
  const double second =
      n > 1 ? std::max(std::abs(ev(n - 2)), std::abs(ev(0))) : 0.0;
  report.rank_ratio = second / std::max(lead, 1e-300);
  if (!(lead > 0.0) || second > tol.rankone_tol * lead) return report;

  Vector alpha = std::sqrt(lead) * es.eigenvectors().col(n - 1);
  Vector lambda(n);
  for (Index i = 0; i < n; ++i) {
    if (std::abs(alpha(i)) == 0.0) return report;
    lambda(i) = std::sqrt(1.0 / std::conj(alpha(i)));
  }
  detail::polish_orthogonality_witness(g.entries(), lambda);
  RescalingWitness witness{std::move(lambda)};

  Vector inv = witness.lambdas.cwiseInverse();
  Matrix rescaled =
      inv.asDiagonal() * g.entries() * inv.conjugate().asDiagonal();
  report.residual = detail::orthogonality_residual(rescaled);
  report.residual_tolerance =
      tol.match_tol * detail::orthogonality_scale(rescaled);
  if (report.residual > report.residual_tolerance) return report;
  report.verdict = OrthogonalityVerdict::r_orthogonal;
  report.witness = std::move(witness);
  return report;
}

// The conjugate-linear map taking each kernel to its dual-basis
// partner, as a coordinate matrix C (action alpha -> C conj(alpha)).
// The coordinates of k_i^# are the columns of K^{-1}, so C = K^{-1};
// orthogonality of K makes this an isometric involution.
inline Matrix conjugation_from_orthogonal(const GramMatrix& g,
                                          const Tolerances& tol = {}) {
  if (!is_orthogonal_gram(g, tol))
    throw NotOrthogonalError(
        "conjugation_from_orthogonal: Gram matrix is not orthogonal");
  return dual_gram(g, tol).entries();
}

// Gram of the dual basis of the retained kernels, computed from the
// full dual Gram by projecting out the dropped dual kernel:
//   out_ij = k#_ij - k#_id k#_dj / k#_dd.
// Agrees with dual_gram(regular_subspace(g, retained)).
inline GramMatrix dual_gram_of_subspace(const GramMatrix& g_dual, Index drop,
                                        const Tolerances& tol = {}) {
  const Index n = g_dual.size();
  if (drop < 0 || drop >= n)
    throw ValidationError("dual_gram_of_subspace: drop index out of range");
  if (n < 2)
    throw ValidationError("dual_gram_of_subspace: nothing would remain");
  const double pivot = g_dual(drop, drop).real();
  if (pivot <= tol.psd_tol * g_dual.scale())
    throw ZeroPivotError("dual_gram_of_subspace: zero pivot");
  Matrix out(n - 1, n - 1);
  Index a = 0;
  for (Index i = 0; i < n; ++i) {
    if (i == drop) continue;
    Index b = 0;
    for (Index j = 0; j < n; ++j) {
      if (j == drop) continue;
      out(a, b) = g_dual(i, j) - g_dual(i, drop) * g_dual(drop, j) / pivot;
      ++b;
    }
    ++a;
  }
  return GramMatrix(std::move(out), tol);
}

// For every single-index deletion, checks the defining equations of the
// reduced dual basis, sum_s K_is g_sj = delta_ij, with g from
// dual_gram_of_subspace.
inline bool orthogonality_hereditary_check(const GramMatrix& g,
                                           const Tolerances& tol = {}) {
  if (!is_orthogonal_gram(g, tol))
    throw NotOrthogonalError(
        "orthogonality_hereditary_check: Gram matrix is not orthogonal");
  const Index n = g.size();
  if (n < 2)
    throw ValidationError("orthogonality_hereditary_check needs n >= 2");
  GramMatrix gd = dual_gram(g, tol);
  for (Index drop = 0; drop < n; ++drop) {
    GramMatrix sub_dual = dual_gram_of_subspace(gd, drop, tol);
    std::vector<Index> retained;
    for (Index i = 0; i < n; ++i)
      if (i != drop) retained.push_back(i);
    GramMatrix sub = regular_subspace(g, retained, tol);
    const double resid = detail::max_abs(
        sub.entries() * sub_dual.entries() - Matrix::Identity(n - 1, n - 1));
    const double scale = std::max(1.0, sub.scale() * sub_dual.scale());
    if (resid > tol.match_tol * scale) return false;
  }
  return true;
}

}  // namespace pickspace
