#include "folia/foliation.hpp"

#include <cmath>
#include <complex>

#include "folia/errors.hpp"

namespace folia {

namespace {

struct FaceIndex {
  std::vector<int> foff;
  const TriangleMesh* m;
  explicit FaceIndex(const TriangleMesh& mesh) : m(&mesh) {
    foff.assign(mesh.n_rect + 1, 0);
    for (int r = 0; r < mesh.n_rect; ++r) foff[r + 1] = foff[r] + 2 * mesh.nx[r] * mesh.ny[r];
  }
  int operator()(int r, int cx, int cy, int half) const {
    return foff[r] + 2 * (cy * m->nx[r] + cx) + half;
  }
};

void guard_cone_distance(const FlatSurface& fs, const TriangleMesh& m, int rect, bool horizontal,
                         double coord) {
  const double eps = 3.0 * m.h_target;
  const Rect& rc = fs.rects[rect];
  const std::array<Eigen::Vector2d, 4> corners = {
      Eigen::Vector2d(0, 0), Eigen::Vector2d(rc.w, 0), Eigen::Vector2d(rc.w, rc.h),
      Eigen::Vector2d(0, rc.h)};
  for (const VertexClass& vc : fs.vertices) {
    if (!vc.cone) continue;
    for (const auto& c : vc.corners) {
      if (c[0] != rect) continue;
      const Eigen::Vector2d p = corners[c[1]];
      const double d = horizontal ? std::abs(coord - p.y()) : std::abs(coord - p.x());
      if (d <= eps)
        throw QuadratureFailure("core passes within " + std::to_string(eps) +
                                " of a cone point in rectangle " + std::to_string(rect));
    }
  }
}

// measure of the horizontal foliation of sigma along one core, integrating
// |im(sqrt(sigma) dz)| cell by cell at the center row or column
double core_measure(const FlatSurface& fs, const TriangleMesh& m, const FaceIndex& fid,
                    const std::vector<std::complex<double>>& sigma, const CoreCurve& core) {
  const auto& squares =
      core.horizontal ? fs.cylinders.horizontal[core.cylinder] : fs.cylinders.vertical[core.cylinder];
  double total = 0.0;
  for (int r : squares) {
    if (core.horizontal) {
      const int ny = m.ny[r], j = ny / 2;
      const double h = fs.rects[r].h;
      const double yc = 0.5 * (h * j / ny + h * (j + 1) / ny);
      guard_cone_distance(fs, m, r, true, yc);
      const int nx = m.nx[r];
      const double w = fs.rects[r].w;
      for (int cx = 0; cx < nx; ++cx) {
        const double x0 = w * cx / nx;
        const double x1 = (cx + 1 == nx) ? w : w * (cx + 1) / nx;
        const double half = 0.5 * (x1 - x0);
        const double up = std::abs(std::sqrt(sigma[fid(r, cx, j, 1)]).imag());
        const double lo = std::abs(std::sqrt(sigma[fid(r, cx, j, 0)]).imag());
        total += half * (up + lo);
      }
    } else {
      const int nx = m.nx[r], i = nx / 2;
      const double w = fs.rects[r].w;
      const double xc = 0.5 * (w * i / nx + w * (i + 1) / nx);
      guard_cone_distance(fs, m, r, false, xc);
      const int ny = m.ny[r];
      const double h = fs.rects[r].h;
      for (int cy = 0; cy < ny; ++cy) {
        const double y0 = h * cy / ny;
        const double y1 = (cy + 1 == ny) ? h : h * (cy + 1) / ny;
        const double half = 0.5 * (y1 - y0);
        const double lo = std::abs(std::sqrt(sigma[fid(r, i, cy, 0)]).real());
        const double up = std::abs(std::sqrt(sigma[fid(r, i, cy, 1)]).real());
        total += half * (lo + up);
      }
    }
  }
  return total;
}

}  // namespace

FoliationCheck foliation_check(const FlatSurface& fs, const TriangleMesh& m,
                               const SchwarzianField& plus, const SchwarzianField& minus,
                               double t) {
  if (plus.end != 1 || minus.end != -1) throw Error("foliation check needs both ends");
  FoliationCheck out;
  out.t = t;
  out.s = plus.s;
  const FaceIndex fid(m);

  auto add_core = [&](const CoreCurve& core) {
    CoreQuadrature cq;
    cq.horizontal = core.horizontal;
    cq.cylinder = core.cylinder;
    cq.measured_plus = core_measure(fs, m, fid, plus.sigma, core);
    cq.target_plus = t * intersection_number(fs, core, true);
    cq.measured_minus = core_measure(fs, m, fid, minus.sigma, core);
    cq.target_minus = t * intersection_number(fs, core, false);
    cq.echo = cq.measured_plus + cq.measured_minus;
    out.rows.push_back(cq);
  };
  for (const CoreCurve& c : fs.cylinders.cores_h) add_core(c);
  for (const CoreCurve& c : fs.cylinders.cores_v) add_core(c);
  return out;
}

}  // namespace folia
