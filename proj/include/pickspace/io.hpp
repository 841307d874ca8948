#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pickspace/classify.hpp"
#include "pickspace/conjugation.hpp"
#include "pickspace/multiplier.hpp"
#include "pickspace/pick.hpp"

namespace pickspace::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------
// scalar and matrix encoding: complex numbers as [re, im], matrices as
// row-major arrays of rows

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(where + ": expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------
// input documents

enum class DocKind { points, gram, blaschke };

struct TolOverrides {
  std::optional<double> psd, rankone, match;

  Tolerances merge_into(Tolerances base) const {
    if (psd) base.psd_tol = *psd;
    if (rankone) base.rankone_tol = *rankone;
    if (match) base.match_tol = *match;
    base.validate();
    return base;
  }
};

struct InputDocument {
  DocKind kind;
  std::optional<PointSet> points;
  std::optional<Matrix> gram_entries;  // validated into a GramMatrix later,
                                       // once effective tolerances are known
  std::optional<BlaschkeData> blaschke;
  TolOverrides tolerances;
};

namespace detail {

inline std::string line_anchor(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Vector point_from_json(const json& j, Index m, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != m)
    throw ValidationError(where + ": expected " + std::to_string(m) +
                          " coordinates");
  Vector v(m);
  for (Index t = 0; t < m; ++t)
    v(t) = complex_from_json(j[t], where + "[" + std::to_string(t) + "]");
  return v;
}

inline TolOverrides tolerances_from_json(const json& j) {
  TolOverrides out;
  if (!j.contains("tolerances")) return out;
  const json& t = j.at("tolerances");
  if (!t.is_object())
    throw ValidationError("tolerances: expected an object");
  if (t.contains("psd_tol")) out.psd = t.at("psd_tol").get<double>();
  if (t.contains("rankone_tol")) out.rankone = t.at("rankone_tol").get<double>();
  if (t.contains("match_tol")) out.match = t.at("match_tol").get<double>();
  return out;
}

}  // namespace detail

inline DocKind kind_from_json(const json& j) {
  if (j.contains("kind")) {
    const std::string k = j.at("kind").get<std::string>();
    if (k == "points") return DocKind::points;
    if (k == "gram") return DocKind::gram;
    if (k == "blaschke") return DocKind::blaschke;
    throw ValidationError("kind: must be points, gram or blaschke");
  }
  if (j.contains("points")) return DocKind::points;
  if (j.contains("entries")) return DocKind::gram;
  if (j.contains("zeros")) return DocKind::blaschke;
  throw ValidationError(
      "document needs a points, entries or zeros field (or an explicit kind)");
}

inline InputDocument document_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("document must be a JSON object");
  InputDocument doc{kind_from_json(j), std::nullopt, std::nullopt,
                    std::nullopt, detail::tolerances_from_json(j)};
  switch (doc.kind) {
    case DocKind::points: {
      if (!j.contains("m") || !j.at("m").is_number_integer())
        throw ValidationError("points document: integer field m is required");
      const Index m = j.at("m").get<Index>();
      const json& pts = j.at("points");
      if (!pts.is_array() || pts.empty())
        throw ValidationError("points: expected a nonempty array");
      std::vector<Vector> ps;
      for (std::size_t i = 0; i < pts.size(); ++i)
        ps.push_back(detail::point_from_json(
            pts[i], m, "points[" + std::to_string(i) + "]"));
      doc.points.emplace(m, std::move(ps));
      break;
    }
    case DocKind::gram: {
      const json& rows = j.at("entries");
      if (!rows.is_array() || rows.empty())
        throw ValidationError("entries: expected a nonempty array of rows");
      const Index n = j.contains("n") ? j.at("n").get<Index>()
                                      : static_cast<Index>(rows.size());
      if (static_cast<Index>(rows.size()) != n)
        throw ValidationError("entries: expected " + std::to_string(n) +
                              " rows");
      Matrix g(n, n);
      for (Index i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
          throw ValidationError("entries[" + std::to_string(i) +
                                "]: expected " + std::to_string(n) +
                                " entries");
        for (Index k = 0; k < n; ++k)
          g(i, k) = complex_from_json(row[k], "entries[" + std::to_string(i) +
                                                  "][" + std::to_string(k) +
                                                  "]");
      }
      doc.gram_entries = std::move(g);
      break;
    }
    case DocKind::blaschke: {
      const json& zs = j.at("zeros");
      if (!zs.is_array() || zs.empty())
        throw ValidationError("zeros: expected a nonempty array");
      std::vector<Complex> zeros;
      for (std::size_t i = 0; i < zs.size(); ++i)
        zeros.push_back(
            complex_from_json(zs[i], "zeros[" + std::to_string(i) + "]"));
      doc.blaschke.emplace(std::move(zeros));
      break;
    }
  }
  return doc;
}

inline InputDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON at " +
                          detail::line_anchor(text, e.byte) + ": " + e.what());
  }
  return document_from_json(j);
}

// ---------------------------------------------------------------------
// output documents

inline json points_to_json(const PointSet& ps) {
  json pts = json::array();
  for (const Vector& p : ps.points) pts.push_back(to_json(p));
  return json{{"kind", "points"}, {"m", ps.ambient_dim}, {"points", pts}};
}

inline json gram_to_json(const Matrix& entries) {
  return json{{"kind", "gram"},
              {"n", entries.rows()},
              {"entries", to_json(entries)}};
}

inline json blaschke_to_json(const BlaschkeData& b) {
  json zs = json::array();
  for (Complex z : b.zeros) zs.push_back(to_json(z));
  return json{{"kind", "blaschke"}, {"zeros", zs}};
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "true";
    case Verdict::no:
      return "false";
    default:
      return "not_applicable";
  }
}

inline json to_json(const CriterionResult& c) {
  json out{{"verdict", verdict_name(c.verdict)},
           {"tolerance", c.tolerance},
           {"borderline", c.borderline}};
  out["residual"] = std::isfinite(c.residual) ? json(c.residual) : json();
  return out;
}

inline const char* verdict_name(OrthogonalityVerdict v) {
  switch (v) {
    case OrthogonalityVerdict::orthogonal:
      return "orthogonal";
    case OrthogonalityVerdict::r_orthogonal:
      return "r_orthogonal";
    case OrthogonalityVerdict::not_r_orthogonal:
      return "not_r_orthogonal";
    default:
      return "degenerate";
  }
}

inline json report_to_json(const ClassificationReport& r) {
  json criteria{{"geodesic", to_json(r.c1_geodesic)},
                {"triples", to_json(r.c2_triples)},
                {"extremal_product", to_json(r.c3_extremal_product)},
                {"r_orthogonal", to_json(r.c4_r_orthogonal)},
                {"orthogonal_gram", to_json(r.c5_orthogonal_gram)},
                {"model", to_json(r.c6_model)}};

  json by_base = json::array();
  for (const BaseExtremalResult& b : r.extremal_by_base)
    by_base.push_back(json{{"base", b.base},
                           {"extremal_value", b.extremal_value},
                           {"delta_product", b.delta_product},
                           {"gap", b.gap}});

  json witnesses;
  if (r.geodesic_direction)
    witnesses["geodesic_direction"] = to_json(*r.geodesic_direction);
  witnesses["extremal_by_base"] = std::move(by_base);
  if (r.orthogonality_witness)
    witnesses["orthogonality_rescaling"] =
        to_json(Vector(r.orthogonality_witness->lambdas));
  if (r.model_zeros) {
    json zs = json::array();
    for (Complex z : *r.model_zeros) zs.push_back(to_json(z));
    witnesses["model_zeros"] = std::move(zs);
  }
  if (r.model_witness)
    witnesses["model_rescaling"] = to_json(Vector(r.model_witness->lambdas));

  json out{{"kind", "classification"},
           {"n", r.n},
           {"criteria", std::move(criteria)},
           {"witnesses", std::move(witnesses)},
           {"consistent", r.consistent},
           {"is_model_space", r.is_model_space},
           {"any_borderline", r.any_borderline}};
  if (r.c3_direct) {
    out["gram_route"] = json{{"extremal_product", to_json(*r.c3_direct)},
                             {"r_orthogonal", to_json(*r.c4_direct)},
                             {"orthogonal_gram", to_json(*r.c5_direct)},
                             {"routes_agree", r.routes_agree}};
  }
  return out;
}

inline json extremal_to_json(const ExtremalSolution& s, double delta_product) {
  json idx = json::array();
  for (Index i : s.indices) idx.push_back(i);
  return json{{"kind", "extremal"},
              {"base", s.indices[s.base_position]},
              {"indices", std::move(idx)},
              {"value", s.value},
              {"delta_product", delta_product},
              {"multiplier", to_json(s.multiplier)},
              {"h", to_json(s.h)}};
}

inline json orthogonality_to_json(const OrthogonalityReport& r,
                                  const Matrix* rescaled) {
  json out{{"kind", "orthogonality"}, {"verdict", verdict_name(r.verdict)}};
  out["residual"] = std::isfinite(r.residual) ? json(r.residual) : json();
  out["rank_ratio"] =
      std::isfinite(r.rank_ratio) ? json(r.rank_ratio) : json();
  if (r.witness) out["witness"] = to_json(Vector(r.witness->lambdas));
  if (rescaled) out["rescaled_gram"] = gram_to_json(*rescaled);
  return out;
}

inline json realization_to_json(const PickRealization& r) {
  return json{{"kind", "realization"},
              {"points", points_to_json(r.points)},
              {"witness", to_json(Vector(r.witness.lambdas))},
              {"residual", r.residual}};
}

}  // namespace pickspace::io
