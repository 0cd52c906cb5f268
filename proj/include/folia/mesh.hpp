#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "folia/flatsurf.hpp"

namespace folia {

// Structured conforming triangulation of the rectangle complex. Every face
// lives in the flat chart of its rectangle (frame angle 0 there), so the
// realized differential has coefficient 1 on every face and chart changes are
// translations or half-turns; the per-corner parity bit rotates face vectors
// into the corner vertex's owner chart.
struct TriangleMesh {
  // vertices, canonically ordered by (chart, gy, gx) of the representative copy
  std::vector<int> vchart;
  std::vector<int> vgx, vgy;
  std::vector<Eigen::Vector2d> vpos;
  std::vector<std::uint8_t> vcone;
  std::vector<double> vangle;      // total incident angle, filled by triangulate
  std::vector<double> vdist_cone;  // flat distance to the nearest cone corner of the owner rect

  // faces, ordered rect-major, cell-major, lower then upper
  std::vector<std::array<int, 3>> tri;
  std::vector<std::array<Eigen::Vector2d, 3>> tpos;   // corner positions in the face chart
  std::vector<std::array<std::uint8_t, 3>> tparity;   // face chart -> corner owner chart rotation (1 = pi)
  std::vector<int> tchart;
  std::vector<int> tcell;  // cy*nx + cx within the rect
  std::vector<std::uint8_t> thalf;
  std::vector<double> tarea;
  std::vector<double> tframe;      // chart frame angle per face
  std::vector<double> tdist_cone;  // centroid distance to the nearest cone corner of the rect

  struct EdgeAdj {
    int nbr;
    std::uint8_t parity;
  };
  std::vector<std::array<EdgeAdj, 3>> adj;  // adj[f][k] across the edge opposite corner k

  // vertex stars in face order: (face, corner)
  std::vector<std::vector<std::array<int, 2>>> vstar;

  std::vector<int> nx, ny;  // subdivisions per rect
  double h_target = 0.0;
  int n_rect = 0;

  int n_vertices() const { return static_cast<int>(vpos.size()); }
  int n_faces() const { return static_cast<int>(tri.size()); }
  Eigen::Vector2d centroid(int f) const { return (tpos[f][0] + tpos[f][1] + tpos[f][2]) / 3.0; }
};

// Throws TargetTooCoarse unless 0 < h_target <= min(side)/2.
TriangleMesh triangulate(const FlatSurface& f, double h_target);

// Per-face coefficient of the realized differential in the face chart, with a
// consistency report across edges and around cones.
struct QdField {
  std::vector<std::complex<double>> coeff;
  double max_edge_phase_error = 0.0;  // |phase jump - 2*frame rotation| over interior edges
  double max_cone_holonomy_defect = 0.0;  // distance of accumulated loop phase from 2*pi*Z
};
QdField qd_field(const TriangleMesh& m);

}  // namespace folia
