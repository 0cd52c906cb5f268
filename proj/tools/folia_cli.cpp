// folia: flat-surface pipeline driver. Subcommands wrap library stages so each
// one can be scripted on its own; `pipeline` runs everything and `verify`
// prints the full check table.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "folia/curves.hpp"
#include "folia/errors.hpp"
#include "folia/flatsurf.hpp"
#include "folia/foliation.hpp"
#include "folia/forms.hpp"
#include "folia/gauss_solve.hpp"
#include "folia/halfpipe.hpp"
#include "folia/io.hpp"
#include "folia/mesh.hpp"
#include "folia/pipeline.hpp"
#include "folia/schwarzian.hpp"
#include "folia/svg.hpp"

namespace {

using namespace folia;

struct Common {
  PipelineConfig cfg;
};

void add_common(CLI::App* sub, Common& c, bool needs_surface = true) {
  auto* opt = sub->add_option("--surface", c.cfg.surface_path, "surface description file");
  if (needs_surface) opt->required();
  sub->add_option("--h-target", c.cfg.h_target, "mesh edge target");
  sub->add_option("--s0", c.cfg.s0, "largest s value");
  sub->add_option("--s-ratio", c.cfg.s_ratio, "geometric ratio of the s grid");
  sub->add_option("--s-count", c.cfg.s_count, "number of s values");
  sub->add_option("--ends", c.cfg.ends, "plus, minus or both");
  sub->add_option("--out", c.cfg.out_dir, "output directory");
  sub->add_option("--seed", c.cfg.seed, "seed for randomized property checks");
  sub->add_flag("--checks,!--no-checks", c.cfg.checks, "evaluate bounds (exit 1 on failure)");
}

FlatSurface load_surface(const PipelineConfig& cfg) {
  const SurfaceSpec spec = read_surface_file(cfg.surface_path);
  return realize(build_surface(spec.n, spec.perm_h, spec.perm_v, spec.weights_h, spec.weights_v));
}

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return cfg.out_dir + "/" + name;
}

void print_rows(const std::vector<CheckRow>& rows) {
  for (const CheckRow& r : rows) {
    std::string bound;
    if (r.recorded)
      bound = "recorded";
    else if (r.two_sided)
      bound = "in [" + fmt17(r.lo) + ", " + fmt17(r.hi) + "]";
    else if (r.upper_only)
      bound = "<= " + fmt17(r.hi);
    else
      bound = ">= " + fmt17(r.lo);
    std::printf("%-42s %-24s %-32s %s\n", r.name.c_str(), fmt17(r.measured).c_str(), bound.c_str(),
                r.recorded ? "recorded" : (r.pass ? "pass" : "FAIL"));
  }
}

int finish(const std::vector<CheckRow>& rows, bool checks) {
  print_rows(rows);
  if (!checks) return 0;
  for (const CheckRow& r : rows)
    if (!r.pass) return 1;
  return 0;
}

int cmd_realize(const Common& c) {
  const FlatSurface f = load_surface(c.cfg);
  write_flat_surface(out_path(c.cfg, "flat_surface.txt"), f);
  std::printf("genus %d  rects %zu  cones %zu  area %s\n", f.base.genus, f.rects.size(),
              f.base.cone_angles.size(), fmt17(f.area).c_str());
  return 0;
}

int cmd_flow(const Common& c) {
  const FlatSurface f = load_surface(c.cfg);
  const FlowResult fr = teich_flow(f, c.cfg.s0);
  write_flat_surface(out_path(c.cfg, "flat_surface.txt"), fr.surface);
  std::printf("s %s  area %s -> %s%s\n", fmt17(c.cfg.s0).c_str(), fmt17(f.area).c_str(),
              fmt17(fr.surface.area).c_str(), fr.clamped ? "  (clamped)" : "");
  return 0;
}

int cmd_uniformize(const Common& c) {
  const FlatSurface f = load_surface(c.cfg);
  const TriangleMesh m = triangulate(f, c.cfg.h_target);
  const UniformizeResult u = uniformize(m);
  write_mesh(out_path(c.cfg, "mesh.txt"), m);
  write_metric_field(out_path(c.cfg, "u_hyp.txt"), u.field);
  std::printf("vertices %d  faces %d  iterations %d  residual %s  area %s\n", m.n_vertices(),
              m.n_faces(), u.stats.iterations, fmt17(u.stats.final_residual).c_str(),
              fmt17(u.hyperbolic_area).c_str());
  if (c.cfg.checks && u.stats.final_residual > c.cfg.tol.solver_residual) return 1;
  return 0;
}

int cmd_minsurf(const Common& c) {
  if (!(c.cfg.s0 > 0.0) || !(c.cfg.s_ratio > 0.0) || !(c.cfg.s_ratio < 1.0))
    throw ParseError("s grid must decrease strictly toward zero");
  const FlatSurface f = load_surface(c.cfg);
  const TriangleMesh m = triangulate(f, c.cfg.h_target);
  const QdField q = qd_field(m);
  const UniformizeResult u = uniformize(m);
  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < c.cfg.s_count; ++k) {
    const double s = c.cfg.s0 * std::pow(c.cfg.s_ratio, k);
    const GaussResult g = solve_gauss(m, u.field, q, s);
    double uinf = 0.0;
    for (double ui : g.field.u) uinf = std::max(uinf, std::abs(ui));
    rows.push_back({fmt17(s), std::to_string(g.stats.iterations), fmt17(g.stats.final_residual),
                    fmt17(g.lambda_max), g.almost_fuchsian ? "1" : "0", fmt17(uinf)});
    write_metric_field(out_path(c.cfg, "u_s_" + std::to_string(k) + ".txt"), g.field);
    std::printf("s %-22s residual %-22s lambda_max %-22s u_inf %s\n", fmt17(s).c_str(),
                fmt17(g.stats.final_residual).c_str(), fmt17(g.lambda_max).c_str(),
                fmt17(uinf).c_str());
    ok = ok && g.stats.final_residual <= c.cfg.tol.solver_residual;
  }
  write_table(out_path(c.cfg, "minsurf.tsv"),
              {"s", "iterations", "residual", "lambda_max", "almost_fuchsian", "u_inf"}, rows);
  return (c.cfg.checks && !ok) ? 1 : 0;
}

int cmd_schwarzian(const Common& c) {
  const FlatSurface f = load_surface(c.cfg);
  const TriangleMesh m = triangulate(f, c.cfg.h_target);
  const QdField q = qd_field(m);
  const UniformizeResult u = uniformize(m);
  const double s = c.cfg.s0;
  const GaussResult g = solve_gauss(m, u.field, q, s);
  bool ok = true;
  for (int e : {1, -1}) {
    if (c.cfg.ends == "plus" && e != 1) continue;
    if (c.cfg.ends == "minus" && e != -1) continue;
    const SchwarzianField sf = schwarzian_at_infinity(m, g.field, u.field, q, s, e);
    std::vector<std::vector<std::string>> rows;
    for (int fc = 0; fc < m.n_faces(); ++fc)
      rows.push_back({std::to_string(fc), fmt17(sf.sigma[fc].real()), fmt17(sf.sigma[fc].imag())});
    const std::string name = e == 1 ? "sigma_plus.tsv" : "sigma_minus.tsv";
    write_table(out_path(c.cfg, name), {"face", "re", "im"}, rows);
    const double err = sigma_first_order_error(m, q, sf, 3.0 * c.cfg.h_target);
    std::printf("end %+d  s %s  first_order_error %s\n", e, fmt17(s).c_str(), fmt17(err).c_str());
    ok = ok && err <= c.cfg.tol.sigma_l1;
  }
  return (c.cfg.checks && !ok) ? 1 : 0;
}

int cmd_halfpipe(const Common& c) {
  const FlatSurface f = load_surface(c.cfg);
  const TriangleMesh m = triangulate(f, c.cfg.h_target);
  const QdField q = qd_field(m);
  const UniformizeResult u = uniformize(m);
  const double s = c.cfg.s0;
  const GaussResult g = solve_gauss(m, u.field, q, s);
  const SchwarzianField sp = schwarzian_at_infinity(m, g.field, u.field, q, s, 1);
  const SchwarzianField sm = schwarzian_at_infinity(m, g.field, u.field, q, s, -1);
  const HPSchwarzianReport rep = hp_schwarzian(f, m, q, sp, sm);
  double conj = 0.0;
  for (const HPJet& j : random_jets(20, c.cfg.seed)) {
    const HPElement lim = rescale_limit(j);
    conj = std::max(conj,
                    (conjugate_rescale(j, c.cfg.tol.hp_conj_t) - hp_matrix(lim)).cwiseAbs().maxCoeff());
  }
  std::printf("s %s  sigma_plus_err %s  sigma_minus_err %s  rescale_conj_err %s\n",
              fmt17(rep.s).c_str(), fmt17(rep.error_plus).c_str(), fmt17(rep.error_minus).c_str(),
              fmt17(conj).c_str());
  for (const HPEcho& e : rep.echoes)
    std::printf("echo %s%d  hor %s  ver %s\n", e.horizontal ? "h" : "v", e.cylinder,
                fmt17(e.hor_measure).c_str(), fmt17(e.ver_measure).c_str());
  const bool ok = rep.error_plus <= c.cfg.tol.sigma_l1 && rep.error_minus <= c.cfg.tol.sigma_l1 &&
                  conj <= c.cfg.tol.hp_conj_entrywise;
  return (c.cfg.checks && !ok) ? 1 : 0;
}

int cmd_export(const Common& c, const std::string& kind_name) {
  const SvgKind kind = parse_svg_kind(kind_name);
  const FlatSurface f = load_surface(c.cfg);
  std::string name, body;
  if (kind == SvgKind::surface) {
    name = "surface.svg";
    body = render_surface_svg(f);
  } else if (kind == SvgKind::foliation) {
    name = "foliation.svg";
    body = render_foliation_svg(f);
  } else {
    const TriangleMesh m = triangulate(f, c.cfg.h_target);
    const QdField q = qd_field(m);
    const UniformizeResult u = uniformize(m);
    const GaussResult g = solve_gauss(m, u.field, q, c.cfg.s0);
    const SchwarzianField sf = schwarzian_at_infinity(m, g.field, u.field, q, c.cfg.s0, 1);
    name = "schwarzian.svg";
    body = render_schwarzian_svg(f, m, sf.sigma);
  }
  const std::string p = out_path(c.cfg, name);
  write_text_file(p, body);
  std::printf("%s\n", p.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flat-surface minimal-surface laboratory"};
  app.require_subcommand(1);

  Common c;
  std::string kind = "surface";

  auto* s_realize = app.add_subcommand("realize", "build the flat surface from a description");
  auto* s_flow = app.add_subcommand("flow", "apply the stretch flow with parameter --s0");
  auto* s_unif = app.add_subcommand("uniformize", "mesh and solve for the hyperbolic metric");
  auto* s_min = app.add_subcommand("minsurf", "solve the immersion equation over the s grid");
  auto* s_schw = app.add_subcommand("schwarzian", "extract the boundary Schwarzian at s = --s0");
  auto* s_hp = app.add_subcommand("halfpipe", "run the degenerate-limit suite");
  auto* s_verify = app.add_subcommand("verify", "run every check and print the table");
  auto* s_export = app.add_subcommand("export", "render a figure");
  auto* s_pipe = app.add_subcommand("pipeline", "run all stages and write the report bundle");
  for (CLI::App* sub : {s_realize, s_flow, s_unif, s_min, s_schw, s_hp, s_verify, s_export, s_pipe})
    add_common(sub, c);
  s_export->add_option("kind", kind, "surface, foliation or schwarzian-field");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_realize->parsed()) return cmd_realize(c);
    if (s_flow->parsed()) return cmd_flow(c);
    if (s_unif->parsed()) return cmd_uniformize(c);
    if (s_min->parsed()) return cmd_minsurf(c);
    if (s_schw->parsed()) return cmd_schwarzian(c);
    if (s_hp->parsed()) return cmd_halfpipe(c);
    if (s_export->parsed()) return cmd_export(c, kind);
    if (s_verify->parsed()) return finish(verify_suite(c.cfg), c.cfg.checks);
    if (s_pipe->parsed()) {
      const PipelineResult r = run_pipeline(c.cfg);
      print_rows(r.checks);
      std::printf("bundle: %zu files in %s\n", r.files.size(), c.cfg.out_dir.c_str());
      if (c.cfg.checks && !r.all_pass) return 1;
      return 0;
    }
  } catch (const folia::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
