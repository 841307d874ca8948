#pragma once

#include <optional>
#include <vector>

#include "pickspace/conjugation.hpp"
#include "pickspace/hyperbolic.hpp"
#include "pickspace/multiplier.hpp"
#include "pickspace/pick.hpp"

namespace pickspace {

enum class Verdict { yes, no, not_applicable };

struct CriterionResult {
  Verdict verdict = Verdict::not_applicable;
  double residual = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  // within a decade of the threshold on either side
  bool borderline = false;
};

namespace detail {

inline CriterionResult criterion(double residual, double tolerance) {
  CriterionResult r;
  r.verdict = residual <= tolerance ? Verdict::yes : Verdict::no;
  r.residual = residual;
  r.tolerance = tolerance;
  r.borderline = residual > 0.1 * tolerance && residual < 10.0 * tolerance;
  return r;
}

inline CriterionResult criterion(bool verdict, double residual,
                                 double tolerance) {
  CriterionResult r = criterion(residual, tolerance);
  r.verdict = verdict ? Verdict::yes : Verdict::no;
  return r;
}

}  // namespace detail

struct BaseExtremalResult {
  Index base;
  double extremal_value;
  double delta_product;
  double gap;
};

// Joint result of the six equivalent membership criteria:
//  1. the point set lies in a single complex geodesic
//  2. every triple {x_1, x_i, x_j} lies in a single complex geodesic
//  3. for some base x the extremal multiplier value equals the product
//     of the delta distances from x
//  4. the Gram is a rescaling of an orthogonal matrix (witness search)
//  5. the rescaled Gram passes the orthogonality equations
//  6. the Gram is a rescaling of a model-space Gram built from
//     reconstructed disk zeros
struct ClassificationReport {
  Index n = 0;
  CriterionResult c1_geodesic, c2_triples, c3_extremal_product,
      c4_r_orthogonal, c5_orthogonal_gram, c6_model;

  std::optional<Vector> geodesic_direction;
  std::vector<BaseExtremalResult> extremal_by_base;
  std::optional<RescalingWitness> orthogonality_witness;
  std::optional<std::vector<Complex>> model_zeros;
  std::optional<RescalingWitness> model_witness;

  // present when classifying a Gram: the same Gram-intrinsic criteria
  // evaluated directly on the input, not through the realized points
  std::optional<CriterionResult> c3_direct, c4_direct, c5_direct;
  bool routes_agree = true;

  bool consistent = false;
  bool is_model_space = false;
  bool any_borderline = false;

  std::vector<const CriterionResult*> applicable() const {
    std::vector<const CriterionResult*> out;
    for (const CriterionResult* c :
         {&c1_geodesic, &c2_triples, &c3_extremal_product, &c4_r_orthogonal,
          &c5_orthogonal_gram, &c6_model})
      if (c->verdict != Verdict::not_applicable) out.push_back(c);
    return out;
  }
};

namespace detail {

inline std::vector<BaseExtremalResult> extremal_products_by_base(
    const GramMatrix& g, const Tolerances& tol) {
  const Index n = g.size();
  std::vector<BaseExtremalResult> out;
  out.reserve(n);
  for (Index x = 0; x < n; ++x) {
    std::vector<Index> ys;
    for (Index j = 0; j < n; ++j)
      if (j != x) ys.push_back(j);
    const double value = extremal_vanishing_multiplier(g, x, ys, tol).value;
    double prod = 1.0;
    for (Index j : ys) prod *= delta_pair(g, x, j);
    out.push_back({x, value, prod, std::abs(value - prod)});
  }
  return out;
}

inline CriterionResult extremal_product_criterion(
    const std::vector<BaseExtremalResult>& by_base, const Tolerances& tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : by_base) best = std::min(best, r.gap);
  return criterion(best, tol.match_tol);
}

}  // namespace detail

inline ClassificationReport classify_points(const PointSet& ps,
                                            const Tolerances& tol = {}) {
  ClassificationReport report;
  const Index n = ps.size();
  report.n = n;
  GramMatrix g = da_gram(ps, tol);

  GeodesicMembership gm = in_single_geodesic(ps, tol);
  report.c1_geodesic =
      detail::criterion(gm.in_geodesic, gm.residual, tol.rankone_tol);
  if (gm.in_geodesic) report.geodesic_direction = gm.direction;

  if (n >= 3) {
    double worst = 0.0;
    for (Index i = 1; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        PointSet triple(ps.ambient_dim,
                        {ps.points[0], ps.points[i], ps.points[j]});
        worst = std::max(worst, in_single_geodesic(triple, tol).residual);
      }
    report.c2_triples = detail::criterion(worst, tol.rankone_tol);
  }

  report.extremal_by_base = detail::extremal_products_by_base(g, tol);
  report.c3_extremal_product =
      detail::extremal_product_criterion(report.extremal_by_base, tol);

  OrthogonalityReport orth = r_orthogonality_witness(g, tol);
  report.c4_r_orthogonal =
      detail::criterion(orth.accepted(), orth.rank_ratio, tol.rankone_tol);
  if (orth.witness) {
    report.orthogonality_witness = orth.witness;
    report.c5_orthogonal_gram =
        detail::criterion(orth.residual, orth.residual_tolerance);
  } else {
    report.c5_orthogonal_gram = detail::criterion(
        false, std::numeric_limits<double>::infinity(), tol.match_tol);
  }

  // (6): reconstruct disk zeros through the geodesic when (1) holds;
  // otherwise false without attempting, the criteria agree on that.
  report.c6_model = detail::criterion(
      false, std::numeric_limits<double>::infinity(), tol.match_tol);
  if (gm.in_geodesic) {
    try {
      std::vector<Complex> zeros = project_to_geodesic_disk(ps, gm.direction);
      BlaschkeData b(zeros);
      GramMatrix h = model_gram(b, tol);
      auto witness = are_rescalings(g, h, tol);
      if (witness) {
        Matrix rebuilt = witness->lambdas.asDiagonal() * h.entries() *
                         witness->lambdas.conjugate().asDiagonal();
        const double resid = detail::max_abs(g.entries() - rebuilt) /
                             std::max(1.0, g.scale());
        report.c6_model = detail::criterion(resid, tol.match_tol);
        report.model_zeros = std::move(zeros);
        report.model_witness = std::move(*witness);
      }
    } catch (const Error&) {
      // reconstruction failed; (6) stays false
    }
  }

  bool all_yes = true, all_no = true, any_borderline = false;
  for (const CriterionResult* c : report.applicable()) {
    all_yes = all_yes && c->verdict == Verdict::yes;
    all_no = all_no && c->verdict == Verdict::no;
    any_borderline = any_borderline || c->borderline;
  }
  report.consistent = all_yes || all_no;
  report.is_model_space = all_yes;
  report.any_borderline = any_borderline;
  return report;
}

// Classifies an abstract Gram by realizing it as a ball point set; the
// Gram-intrinsic criteria (3)-(5) are additionally evaluated directly
// on the input and must agree with the point-set route.
inline ClassificationReport classify_gram(const GramMatrix& g,
                                          const Tolerances& tol = {}) {
  if (!is_complete_pick(g, tol))
    throw NotCompletePickError(
        "classify_gram: Gram does not have a complete Pick kernel");
  PickRealization realization = realize_in_ball(g, tol);
  ClassificationReport report = classify_points(realization.points, tol);

  auto by_base = detail::extremal_products_by_base(g, tol);
  report.c3_direct = detail::extremal_product_criterion(by_base, tol);
  OrthogonalityReport orth = r_orthogonality_witness(g, tol);
  report.c4_direct =
      detail::criterion(orth.accepted(), orth.rank_ratio, tol.rankone_tol);
  report.c5_direct =
      orth.witness
          ? detail::criterion(orth.residual, orth.residual_tolerance)
          : detail::criterion(false, std::numeric_limits<double>::infinity(),
                              tol.match_tol);

  report.routes_agree =
      report.c3_direct->verdict == report.c3_extremal_product.verdict &&
      report.c4_direct->verdict == report.c4_r_orthogonal.verdict &&
      report.c5_direct->verdict == report.c5_orthogonal_gram.verdict;
  report.consistent = report.consistent && report.routes_agree;
  return report;
}

struct DualMembership {
  bool dual_in_pick_class;  // the dual Gram has a complete Pick kernel
  bool dual_is_model;       // ... and classifies as a model space
};

// Membership of the dual space: degenerate duals are outside the Pick
// class by definition.
inline DualMembership dual_membership_probe(const GramMatrix& g,
                                            const Tolerances& tol = {}) {
  if (g.is_degenerate(tol.match_tol))
    throw DegenerateGramError("dual_membership_probe: degenerate Gram");
  GramMatrix dual = dual_gram(g, tol);
  bool in_pick = false;
  try {
    in_pick = is_complete_pick(dual, tol);
  } catch (const DegenerateGramError&) {
    in_pick = false;
  }
  if (!in_pick) return {false, false};
  return {true, classify_gram(dual, tol).is_model_space};
}

}  // namespace pickspace
