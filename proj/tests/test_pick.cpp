#include <catch2/catch.hpp>

#include "pickspace/generate.hpp"
#include "pickspace/pick.hpp"

using namespace pickspace;

namespace {

PointSet two_axis_set(double a, double b) {
  Vector p0 = Vector::Zero(2), p1 = Vector::Zero(2), p2 = Vector::Zero(2);
  p1(0) = a;
  p2(1) = b;
  return PointSet(2, {p0, p1, p2});
}

}  // namespace

TEST_CASE("da_gram") {
  SECTION("single point at the origin") {
    GramMatrix g = da_gram(PointSet::from_disk({Complex(0.0)}));
    CHECK(g(0, 0) == Complex(1.0));
  }
  SECTION("disk points {0, 1/2}") {
    GramMatrix g = da_gram(PointSet::from_disk({Complex(0.0), Complex(0.5)}));
    Matrix expected(2, 2);
    expected << 1.0, 1.0, 1.0, 4.0 / 3.0;
    CHECK(detail::max_abs(g.entries() - expected) < 1e-15);
  }
  SECTION("two-axis set: ones in the first row/column and at (1,2)") {
    GramMatrix g = da_gram(two_axis_set(0.5, 0.5));
    for (Index j = 0; j < 3; ++j) {
      CHECK(g(0, j) == Complex(1.0));
      CHECK(g(j, 0) == Complex(1.0));
    }
    CHECK(g(1, 2) == Complex(1.0));
    CHECK(g(1, 1) == Complex(4.0 / 3.0));
  }
  SECTION("kernel inner products respect conjugation between slots") {
    Rng rng(303);
    PointSet ps(2, {random_ball_point(2, rng), random_ball_point(2, rng)});
    GramMatrix g = da_gram(ps);
    CHECK(g(0, 1) == std::conj(g(1, 0)));
    CHECK(std::abs(g(0, 1) -
                   1.0 / (1.0 - ps.points[1].dot(ps.points[0]))) < 1e-15);
  }
}

TEST_CASE("is_complete_pick") {
  Rng rng(307);
  SECTION("Drury-Arveson Grams always pass, before and after rescaling") {
    for (int t = 0; t < 15; ++t) {
      const Index n = 2 + t % 6;
      GramMatrix g = random_cnp_gram(n, rng);
      CHECK(is_complete_pick(g));
      CHECK(is_complete_pick(apply_rescaling(g, random_rescaling(n, rng))));
    }
  }
  SECTION("zero entries are degenerate, never in the Pick class") {
    CHECK_THROWS_AS(is_complete_pick(GramMatrix(Matrix::Identity(3, 3))),
                    DegenerateGramError);
    GramMatrix dual = dual_gram(da_gram(two_axis_set(0.5, 0.5)));
    CHECK_THROWS_AS(is_complete_pick(dual), DegenerateGramError);
  }
  SECTION("a generic positive-definite Gram fails") {
    int failures = 0;
    for (int t = 0; t < 10; ++t) {
      GramMatrix g = random_pd_gram(5, rng);
      try {
        if (!is_complete_pick(g)) ++failures;
      } catch (const DegenerateGramError&) {
        ++failures;
      }
    }
    CHECK(failures > 0);
  }
}

TEST_CASE("realize_in_ball") {
  SECTION("one-dimensional Gram realizes at the origin") {
    Matrix m(1, 1);
    m << 9.0;
    PickRealization r = realize_in_ball(GramMatrix(m));
    CHECK(r.points.size() == 1);
    CHECK(r.points.points[0].norm() < 1e-15);
    CHECK(std::abs(r.witness.lambdas(0) - Complex(3.0)) < 1e-12);
    CHECK(r.residual < 1e-12);
  }
  SECTION("the model Gram of {0, 1/2} realizes with Delta = 1/2") {
    GramMatrix g = model_gram(BlaschkeData({Complex(0.0), Complex(0.5)}));
    PickRealization r = realize_in_ball(g);
    REQUIRE(r.points.size() == 2);
    CHECK(pseudohyperbolic(r.points.points[0], r.points.points[1]) ==
          Approx(0.5).margin(1e-10));
    CHECK(r.residual < 1e-10);
  }
  SECTION("round trip: realization is congruent to the original set") {
    Rng rng(311);
    for (int t = 0; t < 8; ++t) {
      const Index n = 2 + t % 4;
      PointSet ps(2, [&] {
        std::vector<Vector> pts;
        while (static_cast<Index>(pts.size()) < n) {
          Vector p = random_ball_point(2, rng);
          bool ok = true;
          for (const Vector& q : pts)
            ok = ok && pseudohyperbolic(p, q) >= 0.15;
          if (ok) pts.push_back(p);
        }
        return pts;
      }());
      GramMatrix g = da_gram(ps);
      PickRealization r = realize_in_ball(g);
      CHECK(r.residual < 1e-9);
      CHECK(congruent_sets(ps, r.points));
    }
  }
  SECTION("rescaled inputs realize too, witness included") {
    Rng rng(313);
    GramMatrix g = random_cnp_gram(4, rng);
    PickRealization r = realize_in_ball(g);
    GramMatrix rebuilt =
        apply_rescaling(da_gram(r.points), r.witness);
    CHECK(detail::max_abs(rebuilt.entries() - g.entries()) <
          1e-8 * std::max(1.0, g.scale()));
  }
  SECTION("non-Pick inputs are rejected") {
    Rng rng(317);
    for (int t = 0; t < 10; ++t) {
      GramMatrix g = random_pd_gram(5, rng);
      bool pick = true;
      try {
        pick = is_complete_pick(g);
      } catch (const DegenerateGramError&) {
        continue;
      }
      if (!pick) {
        CHECK_THROWS_AS(realize_in_ball(g), NotCompletePickError);
        return;
      }
    }
  }
}
