#pragma once

#include <complex>
#include <vector>

#include "folia/conformal.hpp"
#include "folia/forms.hpp"
#include "folia/mesh.hpp"

namespace folia {

// holomorphic quadratic coefficient per face of the Schwarzian-type tensor at
// one end, together with the uniformizing factor of the unimodular part of
// the boundary metric
struct SchwarzianField {
  double s = 0.0;
  int end = 1;
  std::vector<std::complex<double>> sigma;
  MetricField w;
  SolveStats stats;
};

SchwarzianField schwarzian_at_infinity(const TriangleMesh& m, const MetricField& u_gauss,
                                       const MetricField& u_hyp, const QdField& q, double s,
                                       int end, const SolveOptions& opts = {});

// area-weighted relative L1 distance between sigma/s and end*coeff, skipping
// faces within exclude_radius of a cone point
double sigma_first_order_error(const TriangleMesh& m, const QdField& q,
                               const SchwarzianField& sf, double exclude_radius);

// area-weighted L1 deviation of the curvature field from its value at s = 0,
// with the same cone exclusion
double kstar_deviation(const TriangleMesh& m, const InfinityData& inf, double exclude_radius);

}  // namespace folia
