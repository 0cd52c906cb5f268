#pragma once

#include <vector>

#include "folia/perm.hpp"

namespace folia {

// A pair of weighted multicurves presented combinatorially: square i has
// perm_h[i] to its right and perm_v[i] above it. Horizontal cylinders are the
// cycles of perm_h (one weighted curve each), vertical cylinders the cycles of
// perm_v. Weights attach to cylinders in canonical cycle order (cycles sorted
// by smallest square id).
struct CombinatorialSurface {
  int n = 0;
  Perm perm_h, perm_v;
  std::vector<double> weights_h, weights_v;

  // derived
  int genus = 0;
  std::vector<std::vector<int>> vertex_cycles;  // corner-walk cycles, one per vertex
  std::vector<double> cone_angles;              // 2*pi*len for cycles with len > 1
};

struct CoreCurve {
  bool horizontal = true;
  int cylinder = 0;          // index into the matching decomposition list
  std::vector<int> squares;  // visited in cycle order
};

struct CylinderDecomposition {
  std::vector<std::vector<int>> horizontal, vertical;  // cycles, canonical order
  std::vector<int> hcyl_of_square, vcyl_of_square;
  std::vector<double> circumference_h, circumference_v;  // weighted by the crossed cylinders
  std::vector<CoreCurve> cores_h, cores_v;
};

struct FillingWitness {
  bool fills = false;
  struct Row {
    bool horizontal;
    int cylinder;
    double crossing_total;  // i(core, F) + i(core, G)
  };
  std::vector<Row> rows;
};

// Validates and derives genus/cones. Throws NonPositiveWeight, NotConnected,
// GenusTooSmall. Empty weight vectors default to all ones.
CombinatorialSurface build_surface(int n, const Perm& perm_h, const Perm& perm_v,
                                   std::vector<double> weights_h = {},
                                   std::vector<double> weights_v = {});

// Corner-walk permutation perm_h * perm_v * perm_h^-1 * perm_v^-1 (left to right).
Perm vertex_perm(const Perm& perm_h, const Perm& perm_v);

// (genus, cone angles) from the vertex cycles; also used by build_surface.
std::pair<int, std::vector<double>> genus_and_cones(const Perm& perm_h, const Perm& perm_v);

CylinderDecomposition core_curves(const CombinatorialSurface& s);

// Exact combinatorial intersection number of a core with the horizontal or
// vertical multicurve: weighted count of shared squares.
double core_intersection(const CombinatorialSurface& s, const CylinderDecomposition& d,
                         const CoreCurve& core, bool with_horizontal);

FillingWitness filling_check(const CombinatorialSurface& s);

}  // namespace folia
