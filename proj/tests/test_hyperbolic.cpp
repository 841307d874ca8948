#include <catch2/catch.hpp>

#include "pickspace/generate.hpp"
#include "pickspace/hyperbolic.hpp"
#include "pickspace/pick.hpp"

using namespace pickspace;

namespace {

Vector disk(Complex z) {
  Vector v(1);
  v(0) = z;
  return v;
}

}  // namespace

TEST_CASE("pseudohyperbolic metric on the disk") {
  CHECK(pseudohyperbolic(disk(0.0), disk(Complex(0.3, -0.4))) ==
        Approx(0.5).margin(1e-14));
  CHECK(pseudohyperbolic(disk(Complex(0.2, 0.7)), disk(Complex(0.2, 0.7))) ==
        0.0);
  CHECK(pseudohyperbolic(disk(0.5), disk(-0.5)) == Approx(0.8).margin(1e-14));
  // scalar overload matches vector computation
  CHECK(pseudohyperbolic(Complex(0.5), Complex(-0.5)) ==
        Approx(0.8).margin(1e-14));
}

TEST_CASE("pseudohyperbolic metric in the ball") {
  Rng rng(101);
  SECTION("distance from the origin is the norm") {
    for (int t = 0; t < 10; ++t) {
      Vector z = random_ball_point(3, rng);
      CHECK(pseudohyperbolic(Vector::Zero(3), z) == Approx(z.norm()));
    }
  }
  SECTION("symmetry") {
    for (int t = 0; t < 10; ++t) {
      Vector z = random_ball_point(2, rng), w = random_ball_point(2, rng);
      CHECK(pseudohyperbolic(z, w) == Approx(pseudohyperbolic(w, z)));
    }
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(pseudohyperbolic(Vector::Zero(2), Vector::Zero(3)),
                    DimensionMismatchError);
  }
}

TEST_CASE("automorphism_to_origin") {
  SECTION("zero center is the identity") {
    BallAutomorphism phi = automorphism_to_origin(Vector::Zero(2));
    Vector z = disk(0.3);
    Vector z2(2);
    z2 << Complex(0.1, 0.2), Complex(-0.3, 0.0);
    CHECK((phi.apply(z2) - z2).norm() == 0.0);
  }
  SECTION("disk involution with center 0.5") {
    BallAutomorphism phi = automorphism_to_origin(disk(0.5));
    CHECK(phi.apply(disk(0.5)).norm() < 1e-15);
    CHECK(std::abs(phi.apply(disk(0.0))(0) - 0.5) < 1e-15);
  }
  SECTION("involution and invariance on random pairs") {
    Rng rng(103);
    for (int t = 0; t < 20; ++t) {
      const Index m = 1 + t % 3;
      Vector a = random_ball_point(m, rng, 0.6);
      BallAutomorphism phi = automorphism_to_origin(a);
      Vector z = random_ball_point(m, rng), w = random_ball_point(m, rng);
      CHECK((phi.apply(phi.apply(z)) - z).norm() < 1e-13);
      CHECK(pseudohyperbolic(phi.apply(z), phi.apply(w)) ==
            Approx(pseudohyperbolic(z, w)).margin(1e-12));
    }
  }
  SECTION("boundary points are rejected") {
    CHECK_THROWS_AS(automorphism_to_origin(disk(1.0)), BoundaryPointError);
    CHECK_THROWS_AS(automorphism_to_origin(disk(Complex(0.8, 0.6))),
                    BoundaryPointError);
  }
}

TEST_CASE("BallAutomorphism validation and invariance") {
  Rng rng(107);
  SECTION("non-unitary matrix is rejected") {
    Matrix bad = 2.0 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(BallAutomorphism(random_ball_point(2, rng, 0.5), bad),
                    ValidationError);
  }
  SECTION("random automorphisms preserve the metric") {
    for (int t = 0; t < 20; ++t) {
      const Index m = 2 + t % 2;
      BallAutomorphism phi = random_automorphism(m, rng);
      Vector z = random_ball_point(m, rng), w = random_ball_point(m, rng);
      CHECK(pseudohyperbolic(phi.apply(z), phi.apply(w)) ==
            Approx(pseudohyperbolic(z, w)).margin(1e-12));
    }
  }
}

TEST_CASE("PointSet validation") {
  CHECK_THROWS_AS(PointSet(2, {}), ValidationError);
  CHECK_THROWS_AS(PointSet(2, {disk(0.1)}), DimensionMismatchError);
  CHECK_THROWS_AS(PointSet(1, {disk(0.1), disk(0.1)}), DuplicatePointsError);
  CHECK_THROWS_AS(PointSet(1, {disk(1.2)}), BoundaryPointError);
}

TEST_CASE("in_single_geodesic") {
  SECTION("one or two points always pass") {
    Rng rng(109);
    CHECK(in_single_geodesic(PointSet(3, {random_ball_point(3, rng)}))
              .in_geodesic);
    PointSet pair(3, {random_ball_point(3, rng), random_ball_point(3, rng)});
    CHECK(in_single_geodesic(pair).in_geodesic);
  }
  SECTION("points in the first-coordinate disk of B^2") {
    std::vector<Vector> pts;
    for (double x : {0.0, 0.3, 0.5}) {
      Vector v = Vector::Zero(2);
      v(0) = x;
      pts.push_back(v);
    }
    GeodesicMembership gm = in_single_geodesic(PointSet(2, pts));
    CHECK(gm.in_geodesic);
    CHECK(std::abs(gm.direction(0)) == Approx(1.0).margin(1e-12));
    CHECK(std::abs(gm.direction(1)) < 1e-12);
  }
  SECTION("the two-axis set is not in a geodesic") {
    Vector p0 = Vector::Zero(2), p1 = Vector::Zero(2), p2 = Vector::Zero(2);
    p1(0) = 0.5;
    p2(1) = 0.5;
    GeodesicMembership gm = in_single_geodesic(PointSet(2, {p0, p1, p2}));
    CHECK_FALSE(gm.in_geodesic);
    CHECK(gm.residual > 0.1);
  }
  SECTION("random geodesic sets pass, and membership is invariant") {
    Rng rng(113);
    for (int t = 0; t < 10; ++t) {
      PointSet ps = random_geodesic_set(4, 3, rng);
      CHECK(in_single_geodesic(ps).in_geodesic);
      PointSet moved = random_automorphism(3, rng).apply(ps);
      CHECK(in_single_geodesic(moved).in_geodesic);
    }
  }
  SECTION("generic sets fail and stay failing under automorphisms") {
    Rng rng(117);
    for (int t = 0; t < 10; ++t) {
      PointSet ps = random_generic_set(4, rng, 1e-3);
      CHECK_FALSE(in_single_geodesic(ps).in_geodesic);
      PointSet moved = random_automorphism(2, rng).apply(ps);
      CHECK_FALSE(in_single_geodesic(moved).in_geodesic);
    }
  }
}

TEST_CASE("triples_in_geodesics") {
  Rng rng(131);
  SECTION("agrees with the whole-set test") {
    for (int t = 0; t < 8; ++t) {
      PointSet good = random_geodesic_set(3 + t % 4, 3, rng);
      CHECK(triples_in_geodesics(good));
      PointSet bad = random_generic_set(3 + t % 4, rng, 1e-3);
      CHECK_FALSE(triples_in_geodesics(bad));
    }
  }
  SECTION("random points of a random geodesic pass") {
    PointSet ps = random_geodesic_set(4, 2, rng);
    CHECK(triples_in_geodesics(ps));
  }
  SECTION("needs three points") {
    PointSet pair(2, {random_ball_point(2, rng), random_ball_point(2, rng)});
    CHECK_THROWS_AS(triples_in_geodesics(pair), ValidationError);
  }
}

TEST_CASE("project_to_geodesic_disk recovers disk coordinates") {
  Rng rng(137);
  PointSet ps = random_geodesic_set(5, 3, rng);
  GeodesicMembership gm = in_single_geodesic(ps);
  REQUIRE(gm.in_geodesic);
  std::vector<Complex> zs = project_to_geodesic_disk(ps, gm.direction);
  CHECK(zs[0] == Complex(0.0, 0.0));
  // the projection preserves all pairwise distances
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      CHECK(pseudohyperbolic(zs[i], zs[j]) ==
            Approx(pseudohyperbolic(ps.points[i], ps.points[j]))
                .margin(1e-10));
}

TEST_CASE("congruent_sets") {
  Rng rng(139);
  SECTION("a set is congruent to itself") {
    PointSet ps = random_generic_set(4, rng);
    CHECK(congruent_sets(ps, ps));
  }
  SECTION("automorphic images are congruent, also after shuffling") {
    for (int t = 0; t < 6; ++t) {
      const Index n = 3 + t % 3;
      PointSet ps = random_generic_set(n, rng);
      BallAutomorphism phi = random_automorphism(2, rng);
      PointSet image = phi.apply(ps);
      CHECK(congruent_sets(ps, image));

      std::vector<Vector> shuffled(image.points.rbegin(),
                                   image.points.rend());
      CHECK(congruent_sets(ps, PointSet(2, shuffled)));
    }
  }
  SECTION("distinct distance multisets are never congruent") {
    PointSet a = PointSet::from_disk({Complex(0.0), Complex(0.5)});
    PointSet b = PointSet::from_disk({Complex(0.0), Complex(0.6)});
    CHECK_FALSE(congruent_sets(a, b));
  }
  SECTION("size mismatch raises") {
    PointSet a = PointSet::from_disk({Complex(0.0), Complex(0.5)});
    PointSet b = PointSet::from_disk({Complex(0.0)});
    CHECK_THROWS_AS(congruent_sets(a, b), SizeMismatchError);
  }
}
