#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "folia/conformal.hpp"
#include "folia/mesh.hpp"

namespace folia {

// fundamental forms of the minimal immersion on one face, in the face chart;
// rho is the conformal factor of the induced metric against the flat chart
struct FaceForms {
  Eigen::Matrix2d I, II, B, III;
  double rho = 0.0;
  double det_B = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::complex<double> f;
};

struct ImmersionData {
  double s = 0.0;
  std::vector<FaceForms> face;
};

ImmersionData immersion_forms(const TriangleMesh& m, const MetricField& u_gauss,
                              const MetricField& u_hyp, const QdField& q, double s);

// boundary value of the metric at an end of the hyperbolic product region,
// with both curvature normalizations kept side by side
struct FaceInfinity {
  Eigen::Matrix2d Istar, IIstar, IIstar0;
  double det_Istar = 0.0;
  double hstar_trace = 0.0;
  double hstar = 0.0;
  double kstar = 0.0;
  double kstar_gauss = 0.0;
};

struct InfinityData {
  double s = 0.0;
  int end = 1;
  std::vector<FaceInfinity> face;
};

// end = +1 or -1; throws DegenerateEplusB when 1 + det B vanishes
InfinityData infinity_forms(const ImmersionData& d, int end);

// forms of the surface at signed distance r along the normal flow
struct EquidistantForms {
  Eigen::Matrix2d I_r, II_r, B_r;
};

EquidistantForms equidistant_forms(const FaceForms& ff, double r);

}  // namespace folia
