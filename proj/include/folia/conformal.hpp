#pragma once

#include <vector>

#include <Eigen/Dense>

#include "folia/laplace.hpp"
#include "folia/mesh.hpp"

namespace folia {

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 30;
  int max_halvings = 60;
};

struct SolveStats {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;
};

// log conformal factor per mesh vertex, relative to the flat charts, to the
// uniformized hyperbolic metric, or to a supplied per-face background metric
enum class Background { flat, hyperbolic, face_metric };

struct MetricField {
  Background background = Background::flat;
  std::vector<double> u;
};

struct UniformizeResult {
  MetricField field;
  SolveStats stats;
  Operators op;
  double hyperbolic_area = 0.0;
};

// solve stiffness*u + defect + exp(2u).*mass = 0 by a damped Newton method;
// throws NewtonDiverged or NonConvergedTolerance
UniformizeResult uniformize(const TriangleMesh& m,
                            const std::vector<Eigen::Matrix2d>* metric = nullptr,
                            const SolveOptions& opts = {});

}  // namespace folia
