#pragma once

#include "folia/conformal.hpp"
#include "folia/mesh.hpp"

namespace folia {

struct GaussOptions {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 60;
};

// conformal factor of the induced metric relative to the hyperbolic one,
// solving stiffness*u + Mh.*(exp(2u)-1) + s^2*exp(-2u).*Q = 0 where Mh is the
// hyperbolic lumped mass and Q carries the squared differential density
struct GaussResult {
  MetricField field;
  SolveStats stats;
  double lambda_max = 0.0;
  bool almost_fuchsian = true;
  bool curvature_warning = false;
};

GaussResult solve_gauss(const TriangleMesh& m, const MetricField& u_hyp, const QdField& q,
                        double s, const GaussOptions& opts = {});

}  // namespace folia
