#include "folia/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "folia/curves.hpp"
#include "folia/errors.hpp"
#include "folia/flatsurf.hpp"
#include "folia/foliation.hpp"
#include "folia/forms.hpp"
#include "folia/gauss_solve.hpp"
#include "folia/halfpipe.hpp"
#include "folia/io.hpp"
#include "folia/kernels.hpp"
#include "folia/mesh.hpp"
#include "folia/schwarzian.hpp"
#include "folia/svg.hpp"

namespace folia {

namespace {

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double frob(const Eigen::Matrix2d& m) { return m.norm(); }

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

bool plus_zero(double x) { return bits(x) == bits(0.0); }

struct Checker {
  std::vector<CheckRow> rows;
  void upper(const std::string& name, double measured, double bound) {
    rows.push_back({.name = name, .measured = measured, .hi = bound, .upper_only = true,
                    .pass = measured <= bound});
  }
  void lower(const std::string& name, double measured, double bound) {
    rows.push_back({.name = name, .measured = measured, .lo = bound, .lower_only = true,
                    .pass = measured >= bound});
  }
  void positive(const std::string& name, double measured) {
    rows.push_back({.name = name, .measured = measured, .lo = 0.0, .lower_only = true,
                    .pass = measured > 0.0});
  }
  void band(const std::string& name, double measured, double lo, double hi) {
    rows.push_back({.name = name, .measured = measured, .lo = lo, .hi = hi, .two_sided = true,
                    .pass = measured >= lo && measured <= hi});
  }
  void record(const std::string& name, double measured) {
    rows.push_back({.name = name, .measured = measured, .recorded = true, .pass = true});
  }
};

template <class F>
auto stage(const char* tag, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string(tag) + ": " + e.what());
  }
}

std::vector<int> parse_ends(const std::string& ends) {
  if (ends == "plus") return {1};
  if (ends == "minus") return {-1};
  if (ends == "both") return {1, -1};
  throw ParseError("ends must be plus, minus or both");
}

const char* end_tag(int e) { return e == 1 ? "plus" : "minus"; }

// relative L1 distance of a per-face matrix field to a target field, skipping
// faces near cones
double field_l1_error(const TriangleMesh& m, const std::vector<Eigen::Matrix2d>& got,
                      const std::vector<Eigen::Matrix2d>& want, double exclude_radius) {
  double num = 0.0, den = 0.0;
  for (int f = 0; f < m.n_faces(); ++f) {
    if (m.tdist_cone[f] <= exclude_radius) continue;
    num += m.tarea[f] * frob(got[f] - want[f]);
    den += m.tarea[f] * frob(want[f]);
  }
  return num / den;
}

}  // namespace

CurvatureStats curvature_stats(const TriangleMesh& m, const MetricField& u, double band_lo,
                               double band_hi, double exclude_radius) {
  const int nv = m.n_vertices();
  std::vector<double> angle(nv, 0.0), dual(nv, 0.0);
  for (int f = 0; f < m.n_faces(); ++f) {
    const auto& t = m.tri[f];
    std::array<double, 3> l;
    for (int k = 0; k < 3; ++k) {
      const int i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      const double flat = (m.tpos[f][(k + 2) % 3] - m.tpos[f][(k + 1) % 3]).norm();
      l[k] = std::exp(0.5 * (u.u[i] + u.u[j])) * flat;
    }
    const double sp = 0.5 * (l[0] + l[1] + l[2]);
    const double area = std::sqrt(std::max(sp * (sp - l[0]) * (sp - l[1]) * (sp - l[2]), 0.0));
    for (int k = 0; k < 3; ++k) {
      const double li = l[(k + 1) % 3], lj = l[(k + 2) % 3];
      const double c = std::clamp((li * li + lj * lj - l[k] * l[k]) / (2.0 * li * lj), -1.0, 1.0);
      angle[t[k]] += std::acos(c);
      dual[t[k]] += area / 3.0;
    }
  }
  CurvatureStats st;
  std::vector<double> devs;
  int in_band = 0;
  for (int v = 0; v < nv; ++v) {
    if (m.vcone[v] || m.vdist_cone[v] <= exclude_radius) continue;
    const double curv = (2.0 * std::numbers::pi - angle[v]) / dual[v];
    devs.push_back(std::abs(curv - (-1.0)));
    if (curv >= band_lo && curv <= band_hi) ++in_band;
    ++st.counted;
  }
  st.fraction_in_band = st.counted ? static_cast<double>(in_band) / st.counted : 0.0;
  std::sort(devs.begin(), devs.end());
  st.median_dev = devs.empty() ? 0.0 : devs[devs.size() / 2];
  return st;
}

namespace {

PipelineResult execute(const PipelineConfig& cfg, bool write) {
  if (!(cfg.s0 > 0.0) || !(cfg.s_ratio > 0.0) || !(cfg.s_ratio < 1.0))
    throw ParseError("s grid must decrease strictly toward zero");
  if (cfg.s_count < 2) throw ParseError("s grid needs at least two points");
  const std::vector<int> ends = parse_ends(cfg.ends);
  const Tolerances& tol = cfg.tol;

  PipelineResult res;
  Checker ck;
  auto emit = [&](const std::string& name, const std::string& content) {
    if (!write) return;
    const std::string p = cfg.out_dir + "/" + name;
    write_text_file(p, content);
    res.files.push_back(name);
  };
  auto emit_table = [&](const std::string& name, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
    if (!write) return;
    write_table(cfg.out_dir + "/" + name, header, rows);
    res.files.push_back(name);
  };
  if (write) std::filesystem::create_directories(cfg.out_dir);

  // surface
  const FlatSurface f = stage("realize", [&] {
    const SurfaceSpec spec = read_surface_file(cfg.surface_path);
    return realize(build_surface(spec.n, spec.perm_h, spec.perm_v, spec.weights_h, spec.weights_v));
  });
  if (write) {
    write_flat_surface(cfg.out_dir + "/flat_surface.txt", f);
    res.files.push_back("flat_surface.txt");
  }
  emit("surface.svg", render_surface_svg(f));
  emit("foliation.svg", render_foliation_svg(f));
  const int genus = f.base.genus;
  const double area = f.area;

  // disk suite
  stage("disk", [&] {
    double ext_dev = 0.0, prod_dev = 0.0;
    for (double s : {-1.0, 0.0, 1.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const DiskExtremalLengths e = extremal_length_on_disk(f, s, t);
        ext_dev = std::max(ext_dev,
                           std::abs(e.horizontal - t * t * std::exp(2.0 * s) * area) / e.horizontal);
        ext_dev = std::max(ext_dev,
                           std::abs(e.vertical - t * t * std::exp(-2.0 * s) * area) / e.vertical);
        prod_dev = std::max(prod_dev,
                            std::abs(e.horizontal * e.vertical - t * t * t * t * area * area) /
                                (t * t * t * t * area * area));
      }
    ck.upper("disk:ext_closed_form", ext_dev, tol.ext_match);
    ck.upper("disk:ext_product_invariance", prod_dev, 1e-12);

    double mindev = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const CriticalPoint cp = critical_point_on_disk(f, t);
      mindev = std::max(mindev, std::abs(cp.numeric - cp.closed_form.s));
    }
    ck.upper("disk:minimizer_agreement", mindev, tol.closed_form_agreement);

    std::vector<double> wh2 = f.base.weights_h, wv2 = f.base.weights_v;
    for (double& w : wh2) w *= 2.0;
    for (double& w : wv2) w *= 2.0;
    const FlatSurface f2 = realize(build_surface(f.base.n, f.base.perm_h, f.base.perm_v, wh2, wv2));
    ck.upper("disk:scale_echo_s_star", std::abs(critical_point_on_disk(f2, 1.0).numeric),
             tol.closed_form_agreement);

    double flow_dev = 0.0, meas_dev = 0.0;
    for (double s : {-3.0, -1.0, 1.0, 3.0}) {
      const FlowResult fr = teich_flow(f, s);
      flow_dev = std::max(flow_dev, std::abs(area_l1(fr.surface) - area) / area);
      for (const CoreCurve& c : f.cylinders.cores_h) {
        const double i0 = intersection_number(f, c, false);
        const double is = intersection_number(fr.surface, c, false);
        meas_dev = std::max(meas_dev, std::abs(is - std::exp(s) * i0) / (std::exp(s) * i0));
      }
    }
    ck.upper("disk:flow_area_invariance", flow_dev, tol.flow_area_rel);
    ck.upper("disk:flow_measure_scaling", meas_dev, 1e-12);

    const DerivativeRatio dr = gardiner_derivative_check(f);
    ck.record("disk:gardiner_fd_slope", dr.fd_slope);
    ck.record("disk:gardiner_pairing", dr.pairing);
    ck.record("disk:gardiner_ratio", dr.ratio);
    return 0;
  });

  // mesh
  const TriangleMesh m = stage("mesh", [&] { return triangulate(f, cfg.h_target); });
  const QdField q = stage("mesh", [&] { return qd_field(m); });
  if (write) {
    write_mesh(cfg.out_dir + "/mesh.txt", m);
    res.files.push_back("mesh.txt");
  }
  ck.upper("mesh:qd_phase_consistency", q.max_edge_phase_error, 1e-12);
  ck.upper("mesh:qd_cone_holonomy", q.max_cone_holonomy_defect, 1e-9);
  {
    double defect_sum = 0.0;
    for (int v = 0; v < m.n_vertices(); ++v) defect_sum += 2.0 * std::numbers::pi - m.vangle[v];
    const double chi = 2.0 - 2.0 * genus;
    ck.upper("mesh:gauss_bonnet", std::abs(defect_sum - 2.0 * std::numbers::pi * chi),
             tol.gauss_bonnet);
  }
  const double excl = 3.0 * cfg.h_target;

  // uniformize
  const UniformizeResult uh = stage("uniformize", [&] { return uniformize(m); });
  if (write) {
    write_metric_field(cfg.out_dir + "/u_hyp.txt", uh.field);
    res.files.push_back("u_hyp.txt");
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < uh.stats.residual_history.size(); ++i)
      rows.push_back({std::to_string(i), fmt17(uh.stats.residual_history[i])});
    rows.push_back({"area", fmt17(uh.hyperbolic_area)});
    rows.push_back({"area_expected", fmt17(4.0 * std::numbers::pi * (genus - 1))});
    emit_table("uniformize.tsv", {"iteration", "value"}, rows);
  }
  ck.upper("uniformize:residual", uh.stats.final_residual, tol.solver_residual);
  const double area_expected = 4.0 * std::numbers::pi * (genus - 1);
  ck.upper("uniformize:area_rel_err", std::abs(uh.hyperbolic_area - area_expected) / area_expected,
           tol.area_rel);
  const CurvatureStats cstat =
      curvature_stats(m, uh.field, -1.0 - tol.curvature_band, -1.0 + tol.curvature_band, excl);
  ck.lower("uniformize:curvature_fraction", cstat.fraction_in_band, tol.curvature_fraction);
  stage("uniformize", [&] {
    const TriangleMesh m2 = triangulate(f, 0.5 * cfg.h_target);
    const UniformizeResult uh2 = uniformize(m2);
    const CurvatureStats c2 = curvature_stats(m2, uh2.field, -1.0 - tol.curvature_band,
                                              -1.0 + tol.curvature_band, 0.5 * excl);
    ck.lower("uniformize:median_improvement", cstat.median_dev / c2.median_dev,
             tol.median_improvement);
    return 0;
  });

  // minimal-surface solves over the s grid
  std::vector<double> sgrid(cfg.s_count);
  for (int k = 0; k < cfg.s_count; ++k) sgrid[k] = cfg.s0 * std::pow(cfg.s_ratio, k);
  std::vector<GaussResult> gres;
  stage("minsurf", [&] {
    std::vector<std::vector<std::string>> rows;
    double rmax = 0.0;
    std::vector<double> logs, logu;
    for (int k = 0; k < cfg.s_count; ++k) {
      gres.push_back(solve_gauss(m, uh.field, q, sgrid[k]));
      const GaussResult& g = gres.back();
      double uinf = 0.0;
      for (double ui : g.field.u) uinf = std::max(uinf, std::abs(ui));
      rows.push_back({fmt17(sgrid[k]), std::to_string(g.stats.iterations),
                      fmt17(g.stats.final_residual), fmt17(g.lambda_max),
                      g.almost_fuchsian ? "1" : "0", fmt17(uinf)});
      rmax = std::max(rmax, g.stats.final_residual);
      logs.push_back(std::log(sgrid[k]));
      logu.push_back(std::log(uinf));
      if (write) {
        const std::string name = "u_s_" + std::to_string(k) + ".txt";
        write_metric_field(cfg.out_dir + "/" + name, g.field);
        res.files.push_back(name);
      }
    }
    emit_table("minsurf.tsv", {"s", "iterations", "residual", "lambda_max", "almost_fuchsian", "u_inf"},
               rows);
    ck.upper("minsurf:residual_max", rmax, tol.solver_residual);
    ck.band("minsurf:u_slope", lsq_slope(logs, logu), tol.u_slope_lo, tol.u_slope_hi);
    return 0;
  });

  // s = 0 solve: exact zeros by construction
  const GaussResult g0 = stage("minsurf", [&] { return solve_gauss(m, uh.field, q, 0.0); });
  {
    int nonzero = 0;
    for (double ui : g0.field.u)
      if (ui != 0.0) ++nonzero;
    ck.upper("minsurf:u_zero_at_s0", nonzero, 0.0);
  }

  // first-order sweep at both ends
  const ImmersionData im0 = immersion_forms(m, g0.field, uh.field, q, 0.0);
  std::vector<Eigen::Matrix2d> rq(m.n_faces());
  for (int fc = 0; fc < m.n_faces(); ++fc) {
    rq[fc] << q.coeff[fc].real(), -q.coeff[fc].imag(), -q.coeff[fc].imag(), -q.coeff[fc].real();
  }
  std::vector<std::vector<std::string>> fo_rows;
  std::map<int, std::vector<double>> sigma_errors;  // per end, per grid s
  const GaussResult gprobe =
      stage("firstorder", [&] { return solve_gauss(m, uh.field, q, tol.sigma_probe_s); });
  stage("firstorder", [&] {
    for (int e : ends) {
      const InfinityData inf0 = infinity_forms(im0, e);
      const SchwarzianField sz0 = schwarzian_at_infinity(m, g0.field, uh.field, q, 0.0, e);
      int nonzero = 0;
      for (const auto& sg : sz0.sigma)
        if (!plus_zero(sg.real()) || !plus_zero(sg.imag())) ++nonzero;
      ck.upper(std::string("schwarzian:zero_bitwise_") + end_tag(e), nonzero, 0.0);

      std::vector<double> err_i, err_ii, dev_k, err_s;
      for (int k = 0; k < cfg.s_count; ++k) {
        const double s = sgrid[k];
        const ImmersionData im = immersion_forms(m, gres[k].field, uh.field, q, s);
        const InfinityData inf = infinity_forms(im, e);
        std::vector<Eigen::Matrix2d> fd_i(m.n_faces()), fd_ii(m.n_faces()), tgt_i(m.n_faces()),
            tgt_ii(m.n_faces());
        for (int fc = 0; fc < m.n_faces(); ++fc) {
          fd_i[fc] = (inf.face[fc].Istar - inf0.face[fc].Istar) / s;
          fd_ii[fc] = inf.face[fc].IIstar0 / s;
          tgt_i[fc] = e * rq[fc];
          tgt_ii[fc] = -e * rq[fc];
        }
        err_i.push_back(field_l1_error(m, fd_i, tgt_i, excl));
        err_ii.push_back(field_l1_error(m, fd_ii, tgt_ii, excl));
        double num = 0.0, den = 0.0;
        for (int fc = 0; fc < m.n_faces(); ++fc) {
          if (m.tdist_cone[fc] <= excl) continue;
          num += m.tarea[fc] * std::abs(inf.face[fc].kstar - (-1.0));
          den += m.tarea[fc];
        }
        dev_k.push_back(num / den);
        const SchwarzianField sf = schwarzian_at_infinity(m, gres[k].field, uh.field, q, s, e);
        err_s.push_back(sigma_first_order_error(m, q, sf, excl));
      }
      sigma_errors[e] = err_s;

      auto push_rows = [&](const std::string& qty, const std::vector<double>& err, double bound) {
        for (int k = 0; k < cfg.s_count; ++k) {
          std::string slope = "-";
          if (k > 0)
            slope = fmt17(std::log(err[k - 1] / err[k]) / std::log(sgrid[k - 1] / sgrid[k]));
          const bool mono = k == 0 || err[k] <= err[k - 1];
          const bool bounded = k + 1 < cfg.s_count || err[k] <= bound;
          fo_rows.push_back({qty, fmt17(sgrid[k]), fmt17(err[k]), slope,
                             mono && bounded ? "ok" : "attn"});
        }
      };
      push_rows(std::string("dIstar_") + end_tag(e), err_i, tol.first_order_l1);
      push_rows(std::string("dIIstar0_") + end_tag(e), err_ii, tol.first_order_l1);
      push_rows(std::string("dKstar_") + end_tag(e), dev_k, tol.kstar_rate * sgrid.back());
      push_rows(std::string("dsigma_") + end_tag(e), err_s, tol.sigma_l1);

      ck.upper(std::string("firstorder:dIstar_") + end_tag(e), err_i.back(), tol.first_order_l1);
      ck.upper(std::string("firstorder:dIIstar0_") + end_tag(e), err_ii.back(), tol.first_order_l1);
      ck.upper(std::string("firstorder:kstar_rate_") + end_tag(e), dev_k.back() / sgrid.back(),
               tol.kstar_rate);
      std::vector<double> logs, logk;
      for (int k = 0; k < cfg.s_count; ++k) {
        logs.push_back(std::log(sgrid[k]));
        logk.push_back(std::log(dev_k[k]));
      }
      ck.band(std::string("firstorder:kstar_slope_") + end_tag(e), lsq_slope(logs, logk),
              tol.kstar_slope_lo, tol.kstar_slope_hi);

      // law at the pinned probe value, plus monotone decrease across the grid
      const SchwarzianField sp =
          schwarzian_at_infinity(m, gprobe.field, uh.field, q, tol.sigma_probe_s, e);
      ck.upper(std::string("schwarzian:probe_") + end_tag(e),
               sigma_first_order_error(m, q, sp, excl), tol.sigma_l1);
      double margin = std::numeric_limits<double>::infinity();
      for (int k = 1; k < cfg.s_count; ++k) margin = std::min(margin, err_s[k - 1] - err_s[k]);
      ck.positive(std::string("schwarzian:monotone_") + end_tag(e), margin);
    }
    return 0;
  });
  emit_table("first_order.tsv", {"quantity", "s", "error_L1", "slope", "status"}, fo_rows);

  // schwarzian direction field figure at the probe value
  stage("firstorder", [&] {
    const SchwarzianField sp =
        schwarzian_at_infinity(m, gprobe.field, uh.field, q, tol.sigma_probe_s, 1);
    emit("schwarzian.svg", render_schwarzian_svg(f, m, sp.sigma));
    return 0;
  });

  // foliation residuals over the t grid
  stage("foliation", [&] {
    std::vector<FoliationCheck> fchecks;
    for (int i = 0; i < tol.foliation_count; ++i) {
      const double t = tol.foliation_t0 * std::pow(tol.foliation_ratio, i);
      const double s = t * t;
      const GaussResult g = solve_gauss(m, uh.field, q, s);
      const SchwarzianField sp = schwarzian_at_infinity(m, g.field, uh.field, q, s, 1);
      const SchwarzianField sm = schwarzian_at_infinity(m, g.field, uh.field, q, s, -1);
      fchecks.push_back(foliation_check(f, m, sp, sm, t));
    }
    std::vector<std::vector<std::string>> rows;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_echo = std::numeric_limits<double>::infinity();
    double hbound_ratio = 0.0;
    const size_t ncores = fchecks[0].rows.size();
    for (size_t c = 0; c < ncores; ++c) {
      double prev = 0.0;
      for (int i = 0; i < tol.foliation_count; ++i) {
        const CoreQuadrature& cq = fchecks[i].rows[c];
        const double resid = std::abs(cq.measured_plus - cq.target_plus) / fchecks[i].t;
        rows.push_back({fmt17(fchecks[i].t), (cq.horizontal ? "h" : "v") + std::to_string(cq.cylinder),
                        fmt17(cq.measured_plus), fmt17(cq.target_plus), fmt17(cq.measured_minus),
                        fmt17(cq.target_minus), fmt17(resid), fmt17(cq.echo)});
        if (i > 0) min_margin = std::min(min_margin, prev - resid);
        prev = resid;
        min_echo = std::min(min_echo, cq.echo);
        if (cq.horizontal)
          hbound_ratio = std::max(
              hbound_ratio, cq.measured_plus / (0.1 * fchecks[i].t * std::sqrt(area)));
      }
    }
    emit_table("foliation.tsv",
               {"t", "core", "measured_plus", "target_plus", "measured_minus", "target_minus",
                "residual_over_t", "echo"},
               rows);
    ck.positive("foliation:residual_decrease", min_margin);
    ck.positive("foliation:filling_echo", min_echo);
    ck.upper("foliation:horizontal_core_bound", hbound_ratio, 1.0);
    return 0;
  });

  // half-pipe suite
  stage("halfpipe", [&] {
    const auto jets = random_jets(20, cfg.seed);
    double conj_err = 0.0, conj_err_coarse = 0.0;
    for (const HPJet& j : jets) {
      const HPElement lim = rescale_limit(j);
      conj_err = std::max(
          conj_err, (conjugate_rescale(j, tol.hp_conj_t) - hp_matrix(lim)).cwiseAbs().maxCoeff());
      conj_err_coarse = std::max(
          conj_err_coarse,
          (conjugate_rescale(j, 1e-2) - hp_matrix(lim)).cwiseAbs().maxCoeff());
    }
    ck.upper("halfpipe:rescale_conjugation", conj_err, tol.hp_conj_entrywise);
    ck.upper("halfpipe:rescale_conjugation_coarse", conj_err_coarse, 10.0 * 1e-2);

    std::vector<HPElement> elems;
    for (const HPJet& j : jets) elems.push_back(rescale_limit(j));
    const Eigen::Matrix3d eta = []() {
      Eigen::Matrix3d e = Eigen::Matrix3d::Identity();
      e(0, 0) = -1.0;
      return e;
    }();
    double closure = 0.0;
    for (int i = 0; i < 100; ++i) {
      const HPElement& a = elems[i % elems.size()];
      const HPElement& b = elems[(i * 7 + 3) % elems.size()];
      HPElement c = hp_compose(a, b);
      if (i % 3 == 0) c = hp_inverse(c);
      closure = std::max(closure, (c.A.transpose() * eta * c.A - eta).cwiseAbs().maxCoeff());
    }
    ck.upper("halfpipe:closure", closure, tol.hp_closure);

    if (sigma_errors.count(1))
      ck.upper("halfpipe:sigma_plus", sigma_errors[1].back(), tol.sigma_l1);
    if (sigma_errors.count(-1))
      ck.upper("halfpipe:sigma_minus", sigma_errors[-1].back(), tol.sigma_l1);

    // power-of-two parameter so the scaling divides out exactly
    const double s2 = 1.0 / 128.0;
    const GaussResult g2 = solve_gauss(m, uh.field, q, s2);
    const ImmersionData im2 = immersion_forms(m, g2.field, uh.field, q, s2);
    const HPMinimalSurface hp = hp_minimal_surface(uh.field, q);
    int mism = 0;
    for (int fc = 0; fc < m.n_faces(); ++fc) {
      const Eigen::Matrix2d scaled = im2.face[fc].II / s2;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          if (bits(scaled(r, c)) != bits(hp.second_form[fc](r, c))) ++mism;
    }
    ck.upper("halfpipe:second_form_bitwise", mism, 0.0);

    const SchwarzianField spf =
        schwarzian_at_infinity(m, gres.back().field, uh.field, q, sgrid.back(), 1);
    const SchwarzianField smf =
        schwarzian_at_infinity(m, gres.back().field, uh.field, q, sgrid.back(), -1);
    const HPSchwarzianReport rep = hp_schwarzian(f, m, q, spf, smf);
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"s", fmt17(rep.s)});
    rows.push_back({"sigma_plus_err", fmt17(rep.error_plus)});
    rows.push_back({"sigma_minus_err", fmt17(rep.error_minus)});
    rows.push_back({"rescale_conjugation_err", fmt17(conj_err)});
    rows.push_back({"closure_err", fmt17(closure)});
    for (const HPEcho& e : rep.echoes)
      rows.push_back({std::string("echo_") + (e.horizontal ? "h" : "v") + std::to_string(e.cylinder),
                      fmt17(e.hor_measure) + " " + fmt17(e.ver_measure)});
    emit_table("halfpipe.tsv", {"key", "value"}, rows);
    return 0;
  });

  // verification table
  {
    std::vector<std::vector<std::string>> rows;
    for (const CheckRow& r : ck.rows) {
      std::string lo = r.two_sided || r.lower_only ? fmt17(r.lo) : "-";
      std::string hi = r.two_sided || r.upper_only ? fmt17(r.hi) : "-";
      rows.push_back({r.name, fmt17(r.measured), lo, hi,
                      r.recorded ? "recorded" : (r.pass ? "pass" : "FAIL")});
    }
    emit_table("verify.tsv", {"check", "measured", "lower", "upper", "status"}, rows);
  }

  res.checks = ck.rows;
  res.all_pass = true;
  for (const CheckRow& r : res.checks) res.all_pass = res.all_pass && r.pass;
  return res;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) { return execute(cfg, true); }

std::vector<CheckRow> verify_suite(const PipelineConfig& cfg) { return execute(cfg, false).checks; }

}  // namespace folia
