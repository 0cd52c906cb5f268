#pragma once

#include <vector>

#include "folia/flatsurf.hpp"
#include "folia/mesh.hpp"
#include "folia/schwarzian.hpp"

namespace folia {

// transverse measure of the horizontal foliations of both Schwarzians along
// one core curve, against the first-order predictions t*i(core, foliation)
struct CoreQuadrature {
  bool horizontal = true;
  int cylinder = 0;
  double measured_plus = 0.0;
  double target_plus = 0.0;
  double measured_minus = 0.0;
  double target_minus = 0.0;
  double echo = 0.0;
};

struct FoliationCheck {
  double t = 0.0;
  double s = 0.0;
  std::vector<CoreQuadrature> rows;
};

// integrates along cell-center rows and columns; throws QuadratureFailure if
// a core passes within three target lengths of a cone point
FoliationCheck foliation_check(const FlatSurface& fs, const TriangleMesh& m,
                               const SchwarzianField& plus, const SchwarzianField& minus,
                               double t);

}  // namespace folia
