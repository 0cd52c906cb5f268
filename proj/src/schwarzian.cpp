#include "folia/schwarzian.hpp"

#include <cmath>

#include "folia/errors.hpp"
#include "folia/kernels.hpp"

namespace folia {

SchwarzianField schwarzian_at_infinity(const TriangleMesh& m, const MetricField& u_gauss,
                                       const MetricField& u_hyp, const QdField& q, double s,
                                       int end, const SolveOptions& opts) {
  const ImmersionData imm = immersion_forms(m, u_gauss, u_hyp, q, s);
  const InfinityData inf = infinity_forms(imm, end);
  const int nf = m.n_faces();
  const int nv = m.n_vertices();

  // unimodular part of the boundary metric, uniformized on the same mesh
  std::vector<Eigen::Matrix2d> chat(nf);
  for_index(nf, [&](int f) {
    const FaceForms& ff = imm.face[f];
    Eigen::Matrix2d r;
    r << ff.f.real(), -ff.f.imag(), -ff.f.imag(), -ff.f.real();
    chat[f] = (ff.alpha / ff.beta) * Eigen::Matrix2d::Identity() + (s * end / ff.beta) * r;
  });

  SchwarzianField out;
  out.s = s;
  out.end = end;
  UniformizeResult uni = uniformize(m, &chat, opts);
  out.stats = uni.stats;
  out.w = uni.field;

  // The factor taking the unimodular metric to the hyperbolic one is constant
  // to this order; the mesh solve leaves an odd-in-(s*end) residue that the
  // Hessian below would amplify. The residue flips sign with the deformation
  // while the genuine quadratic part does not, so solving again with the
  // opposite sign and averaging keeps only the even part.
  std::vector<double> ubar = uni.field.u;
  if (s != 0.0) {
    std::vector<Eigen::Matrix2d> chat_opp(nf);
    for_index(nf, [&](int f) {
      const FaceForms& ff = imm.face[f];
      Eigen::Matrix2d r;
      r << ff.f.real(), -ff.f.imag(), -ff.f.imag(), -ff.f.real();
      chat_opp[f] = (ff.alpha / ff.beta) * Eigen::Matrix2d::Identity() - (s * end / ff.beta) * r;
    });
    const UniformizeResult opp = uniformize(m, &chat_opp, opts);
    for (int v = 0; v < nv; ++v) ubar[v] = 0.5 * (ubar[v] + opp.field.u[v]);
  }

  // squared differential density at vertices, averaged over the star
  std::vector<double> f2v(nv);
  for (int v = 0; v < nv; ++v) {
    double num = 0.0, den = 0.0;
    for (const auto& [f, k] : m.vstar[v]) {
      const double w3 = m.tarea[f] / 3.0;
      num += w3 * std::norm(q.coeff[f]);
      den += w3;
    }
    f2v[v] = num / den;
  }

  // log factor of the boundary metric against its unimodular part, and the
  // difference field carrying the deviation from the uniformized factor
  std::vector<double> vfield(nv), wfield(nv);
  for (int v = 0; v < nv; ++v) {
    const double g = u_gauss.u[v] + u_hyp.u[v];
    const double c = 1.0 - (s * s) * f2v[v] * std::exp(-4.0 * g);
    if (!(c > 0.0)) throw DegenerateEplusB("boundary factor vanishes at vertex " + std::to_string(v));
    const double half_log = 0.5 * std::log(0.5 * c);
    vfield[v] = (ubar[v] - g) - half_log;
    wfield[v] = g + half_log;
  }

  const auto dv = face_gradient(m, vfield);
  const auto dw = face_gradient(m, wfield);
  const auto hv = face_hessian(m, vfield);

  out.sigma.resize(nf);
  for_index(nf, [&](int f) {
    const Eigen::Matrix2d& istar = inf.face[f].Istar;
    const Eigen::Vector2d& a = dw[f];
    const Eigen::Vector2d& b = dv[f];
    const Eigen::Matrix2d sym = a * b.transpose() + b * a.transpose();
    const double dot = a.dot(b);
    const double nb = b.dot(istar.inverse() * b);
    const Eigen::Matrix2d corr = hv[f] - (sym - dot * Eigen::Matrix2d::Identity()) -
                                 b * b.transpose() + 0.5 * nb * istar;
    const Eigen::Matrix2d t = inf.face[f].IIstar0 + corr;
    const Eigen::Matrix2d th = t - 0.5 * t.trace() * Eigen::Matrix2d::Identity();
    out.sigma[f] = {0.0 - th(0, 0), th(0, 1) + 0.0};
  });
  return out;
}

double sigma_first_order_error(const TriangleMesh& m, const QdField& q,
                               const SchwarzianField& sf, double exclude_radius) {
  double num = 0.0, den = 0.0;
  for (int f = 0; f < m.n_faces(); ++f) {
    if (m.tdist_cone[f] <= exclude_radius) continue;
    const std::complex<double> target = static_cast<double>(sf.end) * q.coeff[f];
    num += m.tarea[f] * std::abs(sf.sigma[f] / sf.s - target);
    den += m.tarea[f] * std::abs(target);
  }
  return num / den;
}

double kstar_deviation(const TriangleMesh& m, const InfinityData& inf, double exclude_radius) {
  double num = 0.0, den = 0.0;
  for (int f = 0; f < m.n_faces(); ++f) {
    if (m.tdist_cone[f] <= exclude_radius) continue;
    num += m.tarea[f] * std::abs(inf.face[f].kstar - (-1.0));
    den += m.tarea[f];
  }
  return num / den;
}

}  // namespace folia
