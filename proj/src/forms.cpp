#include "folia/forms.hpp"

#include <cmath>

#include "folia/errors.hpp"
#include "folia/kernels.hpp"

namespace folia {

namespace {

Eigen::Matrix2d real_part_matrix(std::complex<double> f) {
  Eigen::Matrix2d r;
  r << f.real(), -f.imag(), -f.imag(), -f.real();
  return r;
}

}  // namespace

ImmersionData immersion_forms(const TriangleMesh& m, const MetricField& u_gauss,
                              const MetricField& u_hyp, const QdField& q, double s) {
  const auto ub = face_average(m, u_gauss.u);
  const auto uhb = face_average(m, u_hyp.u);

  ImmersionData d;
  d.s = s;
  d.face.resize(m.n_faces());
  for_index(m.n_faces(), [&](int fc) {
    FaceForms& ff = d.face[fc];
    ff.f = q.coeff[fc];
    ff.rho = std::exp(2.0 * (ub[fc] + uhb[fc]));
    const Eigen::Matrix2d r = real_part_matrix(ff.f);
    ff.I = ff.rho * Eigen::Matrix2d::Identity();
    ff.II = s * r;
    ff.B = (s / ff.rho) * r;
    const double f2 = std::norm(ff.f);
    ff.det_B = -(s * s) * f2 / (ff.rho * ff.rho);
    ff.III = ((s * s) * f2 / ff.rho) * Eigen::Matrix2d::Identity();
    ff.alpha = 0.5 * (ff.rho + (s * s) * f2 / ff.rho);
    ff.beta = 0.5 * (ff.rho - (s * s) * f2 / ff.rho);
  });
  return d;
}

InfinityData infinity_forms(const ImmersionData& d, int end) {
  if (end != 1 && end != -1) throw Error("end must be +1 or -1");
  InfinityData out;
  out.s = d.s;
  out.end = end;
  out.face.resize(d.face.size());
  std::vector<std::uint8_t> bad(d.face.size(), 0);
  for_index(static_cast<int>(d.face.size()), [&](int fc) {
    const FaceForms& ff = d.face[fc];
    if (std::abs(1.0 + ff.det_B) <= 1e-12) {
      bad[fc] = 1;
      return;
    }
    FaceInfinity& fi = out.face[fc];
    const Eigen::Matrix2d r = real_part_matrix(ff.f);
    fi.Istar = ff.alpha * Eigen::Matrix2d::Identity() + (d.s * end) * r;
    fi.IIstar = ff.beta * Eigen::Matrix2d::Identity();
    fi.det_Istar = fi.Istar.determinant();
    fi.hstar_trace = ff.alpha / ff.beta;
    fi.hstar = (1.0 - ff.det_B) / (1.0 + ff.det_B);
    fi.kstar = (-1.0 + ff.det_B) / (1.0 + ff.det_B);
    fi.kstar_gauss = 2.0 * (-1.0 + ff.det_B) / (1.0 + ff.det_B);
    fi.IIstar0 = fi.IIstar - fi.hstar_trace * fi.Istar;
  });
  for (size_t fc = 0; fc < bad.size(); ++fc)
    if (bad[fc])
      throw DegenerateEplusB("1 + det B vanishes on face " + std::to_string(fc));
  return out;
}

EquidistantForms equidistant_forms(const FaceForms& ff, double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  const Eigen::Matrix2d mm = ch * Eigen::Matrix2d::Identity() + sh * ff.B;
  const double det_m = mm.determinant();
  if (std::abs(det_m) <= 1e-12)
    throw DegenerateEplusB("normal flow frame degenerates at distance " + std::to_string(r));
  EquidistantForms eq;
  eq.I_r = ff.rho * (mm.transpose() * mm);
  eq.II_r = ff.rho * (ch * sh * (Eigen::Matrix2d::Identity() + ff.B * ff.B) +
                      (ch * ch + sh * sh) * ff.B);
  eq.B_r = mm.inverse() * (sh * Eigen::Matrix2d::Identity() + ch * ff.B);
  return eq;
}

}  // namespace folia
