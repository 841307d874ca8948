// Command-line front end: classify finite-dimensional complete-Pick
// spaces and run the individual computations on point sets, Gram
// matrices and Blaschke zero sets given as JSON documents.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pickspace/generate.hpp"
#include "pickspace/io.hpp"
#include "pickspace/pickspace.hpp"

using namespace pickspace;
using io::InputDocument;
using io::json;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         fmt(std::abs(z.imag())) + "i";
}

void print_matrix(const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    std::string line = "  ";
    for (Index j = 0; j < m.cols(); ++j) {
      line += fmt(m(i, j));
      if (j + 1 < m.cols()) line += "   ";
    }
    std::puts(line.c_str());
  }
}

struct CommandContext {
  std::string input_path = "-";
  bool json_out = false;
  io::TolOverrides flag_tols;

  Tolerances resolve(const InputDocument* doc) const {
    Tolerances tol;  // library defaults
    if (doc) tol = doc->tolerances.merge_into(tol);
    if (const char* env = std::getenv("PICKSPACE_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v >= 0))
        throw ValidationError("PICKSPACE_TOL must be a nonnegative number");
      tol = Tolerances::uniform(v);
    }
    return flag_tols.merge_into(tol);
  }

  InputDocument load() const { return io::parse_document(read_input(input_path)); }

  void emit(const json& j) const {
    if (json_out) std::puts(j.dump(2).c_str());
  }
};

GramMatrix doc_to_gram(const InputDocument& doc, const Tolerances& tol) {
  switch (doc.kind) {
    case io::DocKind::points:
      return da_gram(*doc.points, tol);
    case io::DocKind::gram:
      return GramMatrix(*doc.gram_entries, tol);
    default:
      return model_gram(*doc.blaschke, tol);
  }
}

PointSet doc_to_points(const InputDocument& doc, const Tolerances& tol) {
  switch (doc.kind) {
    case io::DocKind::points:
      return *doc.points;
    case io::DocKind::blaschke:
      return PointSet::from_disk(doc.blaschke->zeros);
    default:
      return realize_in_ball(GramMatrix(*doc.gram_entries, tol), tol).points;
  }
}

void attach_common(CLI::App* cmd, CommandContext& ctx, bool with_input = true) {
  if (with_input)
    cmd->add_option("input", ctx.input_path,
                    "input document (JSON file, or - for stdin)");
  cmd->add_flag("--json", ctx.json_out, "emit a single JSON document");
  cmd->add_option("--tol-psd", ctx.flag_tols.psd, "positive-definiteness tolerance");
  cmd->add_option("--tol-rankone", ctx.flag_tols.rankone, "rank-one test tolerance");
  cmd->add_option("--tol-match", ctx.flag_tols.match, "equality tolerance");
}

void print_criterion(const char* name, const CriterionResult& c) {
  std::string line = "  ";
  line += name;
  line.resize(20, ' ');
  line += io::verdict_name(c.verdict);
  if (std::isfinite(c.residual))
    line += "   (residual " + fmt(c.residual) + ", tol " + fmt(c.tolerance) +
            (c.borderline ? ", borderline)" : ")");
  std::puts(line.c_str());
}

void print_report(const ClassificationReport& r) {
  std::printf("classification of a %ld-dimensional space\n",
              static_cast<long>(r.n));
  print_criterion("geodesic", r.c1_geodesic);
  print_criterion("triples", r.c2_triples);
  print_criterion("extremal_product", r.c3_extremal_product);
  print_criterion("r_orthogonal", r.c4_r_orthogonal);
  print_criterion("orthogonal_gram", r.c5_orthogonal_gram);
  print_criterion("model", r.c6_model);
  for (const BaseExtremalResult& b : r.extremal_by_base)
    std::printf("  base %ld: extremal %s, delta product %s\n",
                static_cast<long>(b.base), fmt(b.extremal_value).c_str(),
                fmt(b.delta_product).c_str());
  if (r.c3_direct)
    std::printf("  gram route agrees: %s\n", r.routes_agree ? "yes" : "no");
  std::printf("consistent: %s   model space: %s\n",
              r.consistent ? "yes" : "no", r.is_model_space ? "yes" : "no");
}

int run_classify(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  ClassificationReport rep = doc.kind == io::DocKind::points
                                 ? classify_points(*doc.points, tol)
                                 : classify_gram(doc_to_gram(doc, tol), tol);
  if (ctx.json_out)
    ctx.emit(io::report_to_json(rep));
  else
    print_report(rep);
  return 0;
}

int run_delta(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  GramMatrix g = doc_to_gram(doc, tol);
  const Index n = g.size();
  RealMatrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) = delta_pair(g, i, j);
  if (ctx.json_out) {
    ctx.emit(json{{"kind", "delta"}, {"n", n}, {"delta", io::to_json(d)}});
  } else {
    std::puts("delta matrix");
    for (Index i = 0; i < n; ++i) {
      std::string line = "  ";
      for (Index j = 0; j < n; ++j) {
        line += fmt(d(i, j));
        if (j + 1 < n) line += "   ";
      }
      std::puts(line.c_str());
    }
  }
  return 0;
}

int run_dual(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  GramMatrix d = dual_gram(doc_to_gram(doc, tol), tol);
  if (ctx.json_out) {
    ctx.emit(io::gram_to_json(d.entries()));
  } else {
    std::puts("dual Gram matrix");
    print_matrix(d.entries());
  }
  return 0;
}

int run_orthogonalize(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  GramMatrix g = doc_to_gram(doc, tol);
  OrthogonalityReport rep = r_orthogonality_witness(g, tol);
  std::optional<GramMatrix> rescaled;
  if (rep.witness) rescaled = rescale_to_orthogonal(g, *rep.witness, tol);
  if (ctx.json_out) {
    ctx.emit(io::orthogonality_to_json(
        rep, rescaled ? &rescaled->entries() : nullptr));
  } else {
    std::printf("verdict: %s\n", io::verdict_name(rep.verdict));
    if (std::isfinite(rep.residual))
      std::printf("residual: %s\n", fmt(rep.residual).c_str());
    if (rep.witness) {
      std::puts("rescaling witness:");
      for (Index i = 0; i < rep.witness->lambdas.size(); ++i)
        std::printf("  lambda_%ld = %s\n", static_cast<long>(i),
                    fmt(rep.witness->lambdas(i)).c_str());
      std::puts("rescaled Gram matrix:");
      print_matrix(rescaled->entries());
    }
  }
  return 0;
}

int run_extremal(const CommandContext& ctx, Index base) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  GramMatrix g = doc_to_gram(doc, tol);
  std::vector<Index> ys;
  for (Index j = 0; j < g.size(); ++j)
    if (j != base) ys.push_back(j);
  ExtremalSolution s = extremal_vanishing_multiplier(g, base, ys, tol);
  double prod = 1.0;
  for (Index j : ys) prod *= delta_pair(g, base, j);
  if (ctx.json_out) {
    ctx.emit(io::extremal_to_json(s, prod));
  } else {
    std::printf("extremal value at base %ld: %s\n", static_cast<long>(base),
                fmt(s.value).c_str());
    std::printf("delta product: %s\n", fmt(prod).c_str());
    std::printf("gap: %s\n", fmt(std::abs(s.value - prod)).c_str());
  }
  return 0;
}

int run_geodesic(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  PointSet ps = doc_to_points(doc, tol);
  GeodesicMembership gm = in_single_geodesic(ps, tol);
  if (ctx.json_out) {
    json out{{"kind", "geodesic"},
             {"in_geodesic", gm.in_geodesic},
             {"residual", gm.residual}};
    if (gm.in_geodesic) out["direction"] = io::to_json(gm.direction);
    ctx.emit(out);
  } else {
    std::printf("in a single complex geodesic: %s (residual %s)\n",
                gm.in_geodesic ? "yes" : "no", fmt(gm.residual).c_str());
    if (gm.in_geodesic) {
      std::string line = "direction:";
      for (Index i = 0; i < gm.direction.size(); ++i)
        line += " " + fmt(gm.direction(i));
      std::puts(line.c_str());
    }
  }
  return 0;
}

int run_congruent(const CommandContext& ctx, const std::string& path_a,
                  const std::string& path_b) {
  InputDocument da = io::parse_document(read_input(path_a));
  InputDocument db = io::parse_document(read_input(path_b));
  Tolerances tol = ctx.resolve(&da);
  const bool result =
      congruent_sets(doc_to_points(da, tol), doc_to_points(db, tol), tol);
  if (ctx.json_out)
    ctx.emit(json{{"kind", "congruence"}, {"congruent", result}});
  else
    std::printf("congruent: %s\n", result ? "yes" : "no");
  return 0;
}

int run_realize(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  PickRealization r = realize_in_ball(doc_to_gram(doc, tol), tol);
  if (ctx.json_out) {
    ctx.emit(io::realization_to_json(r));
  } else {
    std::printf("realized %ld points in the %ld-ball (residual %s)\n",
                static_cast<long>(r.points.size()),
                static_cast<long>(r.points.ambient_dim),
                fmt(r.residual).c_str());
    for (const Vector& p : r.points.points) {
      std::string line = "  (";
      for (Index i = 0; i < p.size(); ++i) {
        line += fmt(p(i));
        if (i + 1 < p.size()) line += ", ";
      }
      line += ")";
      std::puts(line.c_str());
    }
  }
  return 0;
}

int run_probe_dual(const CommandContext& ctx) {
  InputDocument doc = ctx.load();
  Tolerances tol = ctx.resolve(&doc);
  DualMembership dm = dual_membership_probe(doc_to_gram(doc, tol), tol);
  if (ctx.json_out)
    ctx.emit(json{{"kind", "dual_membership"},
                  {"dual_in_pick_class", dm.dual_in_pick_class},
                  {"dual_is_model", dm.dual_is_model}});
  else
    std::printf("dual in the complete-Pick class: %s\ndual is a model space: %s\n",
                dm.dual_in_pick_class ? "yes" : "no",
                dm.dual_is_model ? "yes" : "no");
  return 0;
}

struct GenOptions {
  bool geodesic = false;
  bool generic = false;
  Index n = 4;
  Index m = 0;  // 0: pick a default per mode
  std::uint64_t seed = 0;
  double min_sep = 0.15;
  double margin = 0.0;  // 0: 10 * rankone_tol
};

int run_gen(const CommandContext& ctx, const GenOptions& opt) {
  Tolerances tol = ctx.resolve(nullptr);
  Rng rng(opt.seed);
  PointSet ps = [&] {
    if (opt.geodesic) {
      const Index m = opt.m > 0 ? opt.m : 3;
      return random_geodesic_set(opt.n, m, rng);
    }
    const Index m = opt.m > 0 ? opt.m : 2;
    const double margin =
        opt.margin > 0 ? opt.margin : 10.0 * tol.rankone_tol;
    return random_generic_set(opt.n, rng, margin, m);
  }();
  std::puts(io::points_to_json(ps).dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional complete-Pick space toolkit"};
  app.require_subcommand(1);

  CommandContext ctx;
  GenOptions gen_opt;
  Index extremal_base = 0;
  std::string congruent_a, congruent_b;

  CLI::App* c_classify = app.add_subcommand(
      "classify", "evaluate all six model-space criteria");
  attach_common(c_classify, ctx);

  CLI::App* c_delta =
      app.add_subcommand("delta", "pairwise delta-metric matrix");
  attach_common(c_delta, ctx);

  CLI::App* c_dual = app.add_subcommand("dual", "Gram matrix of the dual basis");
  attach_common(c_dual, ctx);

  CLI::App* c_orth = app.add_subcommand(
      "orthogonalize", "r-orthogonality witness and rescaled Gram");
  attach_common(c_orth, ctx);

  CLI::App* c_ext = app.add_subcommand(
      "extremal", "extremal multiplier vanishing away from the base");
  attach_common(c_ext, ctx);
  c_ext->add_option("--base", extremal_base, "base index (0-based)");

  CLI::App* c_geo =
      app.add_subcommand("geodesic", "complex-geodesic membership");
  attach_common(c_geo, ctx);

  CLI::App* c_cong =
      app.add_subcommand("congruent", "congruence of two point sets");
  c_cong->add_option("a", congruent_a, "first points document")->required();
  c_cong->add_option("b", congruent_b, "second points document")->required();
  attach_common(c_cong, ctx, false);

  CLI::App* c_real = app.add_subcommand(
      "realize", "realize a complete-Pick Gram as ball points");
  attach_common(c_real, ctx);

  CLI::App* c_probe = app.add_subcommand(
      "probe-dual", "membership of the dual space");
  attach_common(c_probe, ctx);

  CLI::App* c_gen =
      app.add_subcommand("gen", "reproducible random test inputs");
  attach_common(c_gen, ctx, false);
  CLI::Option* g_flag =
      c_gen->add_flag("--geodesic", gen_opt.geodesic, "a set in one geodesic");
  c_gen->add_flag("--generic", gen_opt.generic, "a set missing every geodesic")
      ->excludes(g_flag);
  c_gen->add_option("--n", gen_opt.n, "number of points")
      ->check(CLI::Range(1, 64));
  c_gen->add_option("--m", gen_opt.m, "ambient dimension");
  c_gen->add_option("--seed", gen_opt.seed, "random seed");
  c_gen->add_option("--min-sep", gen_opt.min_sep, "pairwise separation");
  c_gen->add_option("--margin", gen_opt.margin,
                    "generic class: geodesic-test failure margin");

  try {
    app.parse(argc, argv);

    if (c_classify->parsed()) return run_classify(ctx);
    if (c_delta->parsed()) return run_delta(ctx);
    if (c_dual->parsed()) return run_dual(ctx);
    if (c_orth->parsed()) return run_orthogonalize(ctx);
    if (c_ext->parsed()) return run_extremal(ctx, extremal_base);
    if (c_geo->parsed()) return run_geodesic(ctx);
    if (c_cong->parsed()) return run_congruent(ctx, congruent_a, congruent_b);
    if (c_real->parsed()) return run_realize(ctx);
    if (c_probe->parsed()) return run_probe_dual(ctx);
    if (c_gen->parsed()) {
      if (!gen_opt.geodesic && !gen_opt.generic)
        throw ValidationError("gen: pass --geodesic or --generic");
      return run_gen(ctx, gen_opt);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
