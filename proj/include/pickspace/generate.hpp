#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pickspace/conjugation.hpp"
#include "pickspace/pick.hpp"

namespace pickspace {

// Deterministic random source.  Normals come from an explicit
// Box-Muller transform so the stream does not depend on library
// internals; equal seeds give identical output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Complex cnormal() { return Complex(normal(), normal()); }

  std::uint64_t integer(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

inline Matrix random_unitary(Index m, Rng& rng) {
  Matrix a(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) a(i, j) = rng.cnormal();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < m; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline Vector random_ball_point(Index m, Rng& rng, double max_norm = 0.75) {
  while (true) {
    Vector v(m);
    for (Index i = 0; i < m; ++i) v(i) = rng.cnormal();
    const double nv = v.norm();
    if (nv == 0.0) continue;
    const double r =
        max_norm * std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(m)));
    return (r / nv) * v;
  }
}

inline BallAutomorphism random_automorphism(Index m, Rng& rng,
                                            double center_max = 0.5) {
  Vector center = random_ball_point(m, rng, center_max);
  return BallAutomorphism(std::move(center), random_unitary(m, rng));
}

// Distinct disk points with pairwise pseudohyperbolic separation.
inline std::vector<Complex> random_disk_points(Index n, Rng& rng,
                                               double min_sep = 0.15,
                                               double max_norm = 0.75) {
  std::vector<Complex> zs;
  while (static_cast<Index>(zs.size()) < n) {
    const Complex z = random_ball_point(1, rng, max_norm)(0);
    bool ok = true;
    for (Complex w : zs) ok = ok && pseudohyperbolic(z, w) >= min_sep;
    if (ok)
      zs.push_back(z);
    else if (zs.size() > 1 && rng.uniform() < 0.05)
      zs.clear();  // rare restart so crowded configurations cannot stall
  }
  return zs;
}

inline RescalingWitness random_rescaling(Index n, Rng& rng) {
  Vector lambda(n);
  for (Index i = 0; i < n; ++i) {
    const double mag = 0.5 + 1.5 * rng.uniform();
    const double phase = 6.283185307179586 * rng.uniform();
    lambda(i) = std::polar(mag, phase);
  }
  return RescalingWitness(std::move(lambda));
}

inline constexpr double kMaxGeneratedCondition = 1e6;

// n disk points pushed into the m-ball by a random automorphism: lies
// in a single complex geodesic by construction.  Rejects badly
// conditioned Grams.
inline PointSet random_geodesic_set(Index n, Index m, Rng& rng) {
  while (true) {
    std::vector<Complex> zs = random_disk_points(n, rng);
    std::vector<Vector> pts;
    pts.reserve(zs.size());
    for (Complex z : zs) {
      Vector v = Vector::Zero(m);
      v(0) = z;
      pts.push_back(std::move(v));
    }
    PointSet embedded(m, std::move(pts));
    PointSet mapped = m > 1 ? random_automorphism(m, rng).apply(embedded)
                            : std::move(embedded);
    if (da_gram(mapped).condition() <= kMaxGeneratedCondition) return mapped;
  }
}

// Rejection-sampled set that fails the geodesic test with a margin:
// sigma_2/sigma_1 of the translated image matrix at least min_margin.
inline PointSet random_generic_set(Index n, Rng& rng,
                                   double min_margin = 1e-4, Index m = 2) {
  if (n < 3)
    throw ValidationError("random_generic_set needs n >= 3 to miss a geodesic");
  if (m < 2)
    throw ValidationError(
        "random_generic_set needs ambient dimension >= 2; every subset of "
        "the disk lies in a geodesic");
  if (min_margin >= 0.5)
    throw ValidationError("random_generic_set: margin must be below 0.5");
  while (true) {
    std::vector<Vector> pts;
    while (static_cast<Index>(pts.size()) < n) {
      Vector p = random_ball_point(m, rng);
      bool ok = true;
      for (const Vector& q : pts) ok = ok && pseudohyperbolic(p, q) >= 0.15;
      if (ok) pts.push_back(std::move(p));
    }
    PointSet ps(m, std::move(pts));
    if (in_single_geodesic(ps).residual < min_margin) continue;
    if (da_gram(ps).condition() <= kMaxGeneratedCondition) return ps;
  }
}

// Random complete-Pick Gram: Drury-Arveson Gram of a random point set,
// randomly rescaled.
inline GramMatrix random_cnp_gram(Index n, Rng& rng,
                                  const Tolerances& tol = {}) {
  while (true) {
    const Index m = 1 + static_cast<Index>(rng.integer(3));
    std::vector<Vector> pts;
    while (static_cast<Index>(pts.size()) < n) {
      Vector p = random_ball_point(m, rng);
      bool ok = true;
      for (const Vector& q : pts) ok = ok && pseudohyperbolic(p, q) >= 0.15;
      if (ok) pts.push_back(std::move(p));
    }
    GramMatrix g = da_gram(PointSet(m, std::move(pts)), tol);
    if (g.condition() > kMaxGeneratedCondition) continue;
    return apply_rescaling(g, random_rescaling(n, rng), tol);
  }
}

// Generic Hermitian positive-definite matrix, comfortably conditioned.
inline GramMatrix random_pd_gram(Index n, Rng& rng,
                                 const Tolerances& tol = {}) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.cnormal();
  Matrix g = a.adjoint() * a / static_cast<double>(n) +
             0.5 * Matrix::Identity(n, n);
  return GramMatrix(detail::hermitian_part(g), tol);
}

// Simple Blaschke zeros whose model Gram stays comfortably conditioned,
// like every other generator here.
inline BlaschkeData random_blaschke_zeros(Index n, Rng& rng) {
  while (true) {
    BlaschkeData b(random_disk_points(n, rng));
    if (model_gram(b).condition() <= kMaxGeneratedCondition) return b;
  }
}

// Orthogonalized Gram of a random geodesic set.
inline GramMatrix random_orthogonal_gram(Index n, Rng& rng,
                                         const Tolerances& tol = {}) {
  while (true) {
    GramMatrix g = da_gram(random_geodesic_set(n, 3, rng), tol);
    OrthogonalityReport rep = r_orthogonality_witness(g, tol);
    if (!rep.witness) continue;  // does not happen for geodesic sets
    return rescale_to_orthogonal(g, *rep.witness, tol);
  }
}

}  // namespace pickspace
