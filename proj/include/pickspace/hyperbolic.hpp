#pragma once

#include <cmath>
#include <vector>

#include "pickspace/gram.hpp"

namespace pickspace {

inline void check_ball_point(const Vector& z) {
  if (z.size() == 0) throw ValidationError("point has no coordinates");
  if (z.norm() >= 1.0 - kBoundaryTol)
    throw BoundaryPointError("point is not strictly inside the unit ball");
}

// Finite list of distinct points in the open unit ball of C^m.
struct PointSet {
  Index ambient_dim;
  std::vector<Vector> points;

  PointSet(Index m, std::vector<Vector> pts)
      : ambient_dim(m), points(std::move(pts)) {
    if (ambient_dim < 1) throw ValidationError("ambient dimension must be >= 1");
    if (points.empty()) throw ValidationError("point set is empty");
    for (const Vector& p : points) {
      if (p.size() != ambient_dim)
        throw DimensionMismatchError("point has wrong ambient dimension");
      check_ball_point(p);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if ((points[i] - points[j]).cwiseAbs().maxCoeff() == 0.0)
          throw DuplicatePointsError("point set has duplicate points");
  }

  Index size() const { return static_cast<Index>(points.size()); }

  static PointSet from_disk(const std::vector<Complex>& zs) {
    std::vector<Vector> pts;
    pts.reserve(zs.size());
    for (Complex z : zs) {
      Vector v(1);
      v(0) = z;
      pts.push_back(std::move(v));
    }
    return PointSet(1, std::move(pts));
  }
};

// The involutive Moebius map of the ball sending a to 0:
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>)
// with s_a = sqrt(1 - |a|^2), P_a the projection onto span{a} and
// Q_a = I - P_a.  The zero center degenerates to the identity.
inline Vector mobius_to_origin(const Vector& a, const Vector& z) {
  if (a.size() != z.size())
    throw DimensionMismatchError("mobius_to_origin: dimension mismatch");
  const double na2 = a.squaredNorm();
  if (na2 == 0.0) return z;
  const double s = std::sqrt(1.0 - na2);
  const Vector pz = (a.dot(z) / na2) * a;
  const Vector qz = z - pz;
  const Complex denom = 1.0 - a.dot(z);
  return (a - pz - s * qz) / denom;
}

// Pseudohyperbolic metric Delta(z, w) = |phi_z(w)|.  For m = 1 this is
// |(z - w) / (1 - conj(z) w)|.
inline double pseudohyperbolic(const Vector& z, const Vector& w) {
  if (z.size() != w.size())
    throw DimensionMismatchError("pseudohyperbolic: dimension mismatch");
  return mobius_to_origin(z, w).norm();
}

inline double pseudohyperbolic(Complex z, Complex w) {
  return std::abs((z - w) / (1.0 - std::conj(z) * w));
}

// Conformal automorphism of the ball: a unitary applied after the
// Moebius map sending `center` to 0.
struct BallAutomorphism {
  Vector center;
  Matrix unitary;

  BallAutomorphism(Vector a, Matrix u, const Tolerances& tol = {})
      : center(std::move(a)), unitary(std::move(u)) {
    check_ball_point(center);
    const Index m = center.size();
    if (unitary.rows() != m || unitary.cols() != m)
      throw DimensionMismatchError("automorphism unitary has wrong shape");
    const double dev = detail::max_abs(
        unitary.adjoint() * unitary - Matrix::Identity(m, m));
    if (dev > tol.match_tol * std::max(1.0, detail::max_abs(unitary)))
      throw ValidationError("automorphism matrix is not unitary");
  }

  Index dim() const { return center.size(); }

  Vector apply(const Vector& z) const {
    return unitary * mobius_to_origin(center, z);
  }

  PointSet apply(const PointSet& ps) const {
    if (ps.ambient_dim != dim())
      throw DimensionMismatchError("automorphism/point-set dimension mismatch");
    std::vector<Vector> out;
    out.reserve(ps.points.size());
    for (const Vector& p : ps.points) out.push_back(apply(p));
    return PointSet(ps.ambient_dim, std::move(out));
  }
};

inline BallAutomorphism automorphism_to_origin(const Vector& a,
                                               const Tolerances& tol = {}) {
  return BallAutomorphism(a, Matrix::Identity(a.size(), a.size()), tol);
}

struct GeodesicMembership {
  bool in_geodesic;
  // sigma_2 / sigma_1 of the translated image matrix; the quantity
  // compared against rankone_tol.
  double residual;
  // Unit direction of the geodesic through the origin after moving the
  // first point there (meaningful when in_geodesic).
  Vector direction;
};

// Whether the whole set lies in a single complex geodesic: after the
// Moebius map taking x_1 to the origin, the images of the remaining
// points must span a complex line.
inline GeodesicMembership in_single_geodesic(const PointSet& ps,
                                             const Tolerances& tol = {}) {
  const Index n = ps.size();
  const Index m = ps.ambient_dim;
  Vector dir = Vector::Zero(m);
  dir(0) = 1.0;
  if (n == 1) return {true, 0.0, dir};

  // rows are the adjoints, so the leading right singular vector is the
  // direction the images span
  Matrix images(n - 1, m);
  for (Index i = 1; i < n; ++i)
    images.row(i - 1) = mobius_to_origin(ps.points[0], ps.points[i]).adjoint();

  Eigen::JacobiSVD<Matrix> svd(images, Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double s0 = sv(0);
  const double s1 = sv.size() > 1 ? sv(1) : 0.0;
  const double ratio = s1 / std::max(s0, 1e-30);
  const bool in = s1 <= tol.rankone_tol * std::max(s0, 1e-30);
  dir = svd.matrixV().col(0);
  // fix the free phase so the output is reproducible
  Index k;
  dir.cwiseAbs().maxCoeff(&k);
  if (std::abs(dir(k)) > 0) dir *= std::conj(dir(k)) / std::abs(dir(k));
  return {in, ratio, dir};
}

// Theorem-style triple test: every {x_1, x_i, x_j} with 1 < i < j must
// lie in a single complex geodesic.
inline bool triples_in_geodesics(const PointSet& ps,
                                 const Tolerances& tol = {}) {
  const Index n = ps.size();
  if (n < 3) throw ValidationError("triples_in_geodesics needs n >= 3");
  for (Index i = 1; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      PointSet triple(ps.ambient_dim,
                      {ps.points[0], ps.points[i], ps.points[j]});
      if (!in_single_geodesic(triple, tol).in_geodesic) return false;
    }
  }
  return true;
}

// Disk coordinates of a set lying in a single geodesic: the coefficient
// of each translated point along the geodesic direction.  The first
// coordinate is exactly 0.
inline std::vector<Complex> project_to_geodesic_disk(const PointSet& ps,
                                                     const Vector& direction) {
  std::vector<Complex> zs;
  zs.reserve(ps.points.size());
  for (const Vector& p : ps.points) {
    Vector y = mobius_to_origin(ps.points[0], p);
    zs.push_back(direction.dot(y));
  }
  zs[0] = Complex(0.0, 0.0);
  return zs;
}

}  // namespace pickspace
