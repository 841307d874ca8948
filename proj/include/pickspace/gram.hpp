#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "pickspace/errors.hpp"
#include "pickspace/tolerances.hpp"

namespace pickspace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace detail {

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  for (Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

}  // namespace detail

// Gram matrix of a kernel basis: entry (i, j) = <k_i, k_j>, with the
// inner product conjugate-linear in the first slot.  Stored exactly
// Hermitian and checked positive definite at construction.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix entries, const Tolerances& tol = {}) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
      throw ValidationError("Gram matrix must be square and nonempty");
    const double scale = std::max(1.0, detail::max_abs(entries));
    const double herm_dev = detail::max_abs(entries - entries.adjoint());
    if (herm_dev > tol.match_tol * scale)
      throw ValidationError("matrix is not Hermitian");
    entries_ = detail::hermitian_part(entries);
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_,
                                             Eigen::EigenvaluesOnly);
    eigenvalues_ = es.eigenvalues();
    const double lambda_max = eigenvalues_(eigenvalues_.size() - 1);
    if (!(lambda_max > 0) || eigenvalues_(0) <= tol.psd_tol * lambda_max)
      throw SingularGramError("Gram matrix is not positive definite");
  }

  Index size() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

  // Eigenvalues in ascending order; all strictly positive.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  double condition() const {
    return eigenvalues_(eigenvalues_.size() - 1) / eigenvalues_(0);
  }
  double scale() const { return detail::max_abs(entries_); }

  // A Gram is degenerate when some entry is (numerically) zero,
  // i.e. two kernels are orthogonal.
  bool is_degenerate(double rel_tol) const {
    return entries_.cwiseAbs().minCoeff() <= rel_tol * scale();
  }

 private:
  Matrix entries_;
  RealVector eigenvalues_;
};

// Nonzero scalars lambda_1..lambda_n realizing a rescaling equivalence:
// g_ij = lambda_i * conj(lambda_j) * h_ij.
struct RescalingWitness {
  Vector lambdas;

  explicit RescalingWitness(Vector l) : lambdas(std::move(l)) {
    if (lambdas.size() == 0) throw ValidationError("empty rescaling witness");
    for (Index i = 0; i < lambdas.size(); ++i)
      if (std::abs(lambdas(i)) == 0.0)
        throw ValidationError("rescaling witness has a zero entry");
  }

  static RescalingWitness ones(Index n) {
    return RescalingWitness(Vector::Ones(n));
  }
};

// <sum a_i k_i, sum b_j k_j> in the space with Gram g.
inline Complex kernel_inner(const GramMatrix& g, const Vector& a,
                            const Vector& b) {
  return (a.adjoint() * g.entries() * b)(0, 0);
}

inline double kernel_norm(const GramMatrix& g, const Vector& a) {
  return std::sqrt(std::max(0.0, kernel_inner(g, a, a).real()));
}

// Gram matrix of the dual basis {k_i^#}; equals the matrix inverse,
// re-symmetrized.  Computed by a Cholesky solve with two refinement
// steps so that exact zero entries of the inverse come out clean.
inline GramMatrix dual_gram(const GramMatrix& g, const Tolerances& tol = {}) {
  const Index n = g.size();
  const double lambda_max = g.eigenvalues()(n - 1);
  if (g.eigenvalues()(0) <= tol.psd_tol * lambda_max)
    throw SingularGramError("dual_gram: Gram matrix is numerically singular");
  Eigen::LLT<Matrix> llt(g.entries());
  if (llt.info() != Eigen::Success)
    throw SingularGramError("dual_gram: Cholesky factorization failed");
  Matrix inv = llt.solve(Matrix::Identity(n, n));
  for (int step = 0; step < 2; ++step)
    inv += inv * (Matrix::Identity(n, n) - g.entries() * inv);
  return GramMatrix(detail::hermitian_part(inv), tol);
}

// delta(i, j) = sqrt(1 - |k_ij|^2 / (k_ii k_jj)), the distance between
// the rank-one projections onto k_i and k_j.
inline double delta_pair(const GramMatrix& g, Index i, Index j) {
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size())
    throw ValidationError("delta_pair: index out of range");
  if (i == j) return 0.0;
  const double num = std::norm(g(i, j));
  const double den = g(i, i).real() * g(j, j).real();
  const double v = 1.0 - num / den;
  return std::sqrt(std::min(1.0, std::max(0.0, v)));
}

// Same quantity computed as the operator norm ||P_i - P_j|| of the
// projections onto k_i and k_j, in coordinates from a Cholesky
// factorization of g.  Independent cross-check of delta_pair.
inline double delta_via_projections(const GramMatrix& g, Index i, Index j) {
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size())
    throw ValidationError("delta_via_projections: index out of range");
  if (i == j) return 0.0;
  Eigen::LLT<Matrix> llt(g.entries());
  if (llt.info() != Eigen::Success)
    throw SingularGramError("delta_via_projections: factorization failed");
  // Columns c_i of L^H satisfy <c_i, c_j> = g_ij.
  Matrix coords = Matrix(llt.matrixL()).adjoint();
  Vector ci = coords.col(i), cj = coords.col(j);
  Matrix pi = ci * ci.adjoint() / ci.squaredNorm();
  Matrix pj = cj * cj.adjoint() / cj.squaredNorm();
  Eigen::SelfAdjointEigenSolver<Matrix> es(pi - pj, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// g_ij = lambda_i conj(lambda_j) h_ij.
inline GramMatrix apply_rescaling(const GramMatrix& h,
                                  const RescalingWitness& w,
                                  const Tolerances& tol = {}) {
  if (w.lambdas.size() != h.size())
    throw DimensionMismatchError("rescaling witness has wrong length");
  Matrix out = w.lambdas.asDiagonal() * h.entries() *
               w.lambdas.conjugate().asDiagonal();
  return GramMatrix(std::move(out), tol);
}

// Decides whether g and h are rescalings of each other.  The entrywise
// ratio R_ij = g_ij / h_ij must be of the rank-one Hermitian form
// lambda_i conj(lambda_j); the witness is recovered from the leading
// singular pair and phase-normalized so lambda_1 is real positive.
inline std::optional<RescalingWitness> are_rescalings(
    const GramMatrix& g, const GramMatrix& h, const Tolerances& tol = {}) {
  if (g.size() != h.size())
    throw DimensionMismatchError("are_rescalings: dimension mismatch");
  if (h.is_degenerate(tol.match_tol))
    throw DegenerateGramError(
        "are_rescalings: denominator Gram has a zero entry");
  const Index n = g.size();
  Matrix ratio = g.entries().cwiseQuotient(h.entries());
  Eigen::JacobiSVD<Matrix> svd(ratio, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  if (sv(0) <= 0.0) return std::nullopt;
  if (n > 1 && sv(1) > tol.rankone_tol * sv(0)) return std::nullopt;
  Vector lambda = std::sqrt(sv(0)) * svd.matrixU().col(0);
  if (std::abs(lambda(0)) == 0.0) return std::nullopt;
  lambda *= std::conj(lambda(0)) / std::abs(lambda(0));
  for (Index i = 0; i < n; ++i)
    if (std::abs(lambda(i)) == 0.0) return std::nullopt;
  Matrix rebuilt = lambda.asDiagonal() * h.entries() *
                   lambda.conjugate().asDiagonal();
  const double resid = detail::max_abs(g.entries() - rebuilt);
  if (resid > tol.match_tol * std::max(1.0, g.scale())) return std::nullopt;
  return RescalingWitness(std::move(lambda));
}

// Principal submatrix on a strictly increasing index subset: the Gram
// matrix of the regular subspace spanned by those kernels.
inline GramMatrix regular_subspace(const GramMatrix& g,
                                   const std::vector<Index>& idx,
                                   const Tolerances& tol = {}) {
  if (idx.empty()) throw ValidationError("regular_subspace: empty index set");
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= g.size())
      throw ValidationError("regular_subspace: index out of range");
    if (k > 0 && idx[k] <= idx[k - 1])
      throw ValidationError("regular_subspace: indices must be increasing");
  }
  const Index m = static_cast<Index>(idx.size());
  Matrix sub(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) sub(a, b) = g(idx[a], idx[b]);
  return GramMatrix(std::move(sub), tol);
}

}  // namespace pickspace
