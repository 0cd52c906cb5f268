#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "folia/conformal.hpp"
#include "folia/flatsurf.hpp"
#include "folia/mesh.hpp"
#include "folia/schwarzian.hpp"

namespace folia {

// element of the degenerate isometry group, block form [[A, 0], [v, eps]]
// with A preserving diag(-1, 1, 1) and eps = +-1
struct HPElement {
  Eigen::Matrix3d A;
  Eigen::RowVector3d v;
  int eps = 1;
};

HPElement hp_element(const Eigen::Matrix3d& a, const Eigen::RowVector3d& v, int eps);
HPElement hp_compose(const HPElement& x, const HPElement& y);
HPElement hp_inverse(const HPElement& x);
Eigen::Matrix4d hp_matrix(const HPElement& x);

// first-order family of isometries, rho_t = [[A0 + t A1, w0 + t w1],
// [v0 + t v1, a0 + t a1]]; passing through the stabilized locus at t = 0
// requires w0 = v0 = 0, |a0| = 1 and A0 Lorentz
struct HPJet {
  Eigen::Matrix3d A0 = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d A1 = Eigen::Matrix3d::Zero();
  Eigen::Vector3d w0 = Eigen::Vector3d::Zero();
  Eigen::Vector3d w1 = Eigen::Vector3d::Zero();
  Eigen::RowVector3d v0 = Eigen::RowVector3d::Zero();
  Eigen::RowVector3d v1 = Eigen::RowVector3d::Zero();
  double a0 = 1.0;
  double a1 = 0.0;
};

Eigen::Matrix4d jet_matrix(const HPJet& j, double t);
Eigen::Matrix4d conjugate_rescale(const HPJet& j, double t);
HPElement rescale_limit(const HPJet& j);
std::vector<HPJet> random_jets(int count, std::uint64_t seed);

// the degenerate-space minimal surface over the same differential: first form
// is the uniformized hyperbolic metric, second form is the real part of the
// differential itself
struct HPMinimalSurface {
  MetricField factor;
  std::vector<Eigen::Matrix2d> second_form;
};

HPMinimalSurface hp_minimal_surface(const MetricField& u_hyp, const QdField& q);

struct HPEcho {
  bool horizontal = true;
  int cylinder = 0;
  double hor_measure = 0.0;
  double ver_measure = 0.0;
};

// derivative data of the two Schwarzians against the differential, plus the
// exact transverse measures of its foliations along every core
struct HPSchwarzianReport {
  double s = 0.0;
  double error_plus = 0.0;
  double error_minus = 0.0;
  std::vector<HPEcho> echoes;
};

HPSchwarzianReport hp_schwarzian(const FlatSurface& fs, const TriangleMesh& m, const QdField& q,
                                 const SchwarzianField& plus, const SchwarzianField& minus);

}  // namespace folia
