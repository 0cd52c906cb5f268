#include "folia/kernels.hpp"

#include <atomic>
#include <cmath>

#include "folia/errors.hpp"

namespace folia {

namespace {

std::atomic<ExecMode> g_mode{ExecMode::parallel};

template <class F>
void run(ExecMode mode, int n, F&& f) {
#ifdef FOLIA_OPENMP
  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
#else
  (void)mode;
#endif
  for (int i = 0; i < n; ++i) f(i);
}

// gradient of a linear function on one face from its corner differences
Eigen::Vector2d fe_gradient(const std::array<Eigen::Vector2d, 3>& p, double d1, double d2) {
  const Eigen::Vector2d e1 = p[1] - p[0], e2 = p[2] - p[0];
  const double det = e1.x() * e2.y() - e1.y() * e2.x();
  return {(e2.y() * d1 - e1.y() * d2) / det, (-e2.x() * d1 + e1.x() * d2) / det};
}

std::vector<FaceCotan> cotan_impl(ExecMode mode, const TriangleMesh& m,
                                  const std::vector<Eigen::Matrix2d>* metric) {
  const int nf = m.n_faces();
  std::vector<FaceCotan> out(nf);
  std::vector<std::uint8_t> bad(nf, 0);
  run(mode, nf, [&](int f) {
    const auto& p = m.tpos[f];
    std::array<double, 3> l2;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d e = p[(k + 2) % 3] - p[(k + 1) % 3];
      l2[k] = metric ? e.dot((*metric)[f] * e) : e.squaredNorm();
    }
    const double scale = metric ? std::sqrt((*metric)[f].determinant()) : 1.0;
    const double area = m.tarea[f] * scale;
    if (!(area > 0.0) || !(l2[0] > 0.0) || !(l2[1] > 0.0) || !(l2[2] > 0.0) ||
        !std::isfinite(area) || !std::isfinite(l2[0] + l2[1] + l2[2])) {
      bad[f] = 1;
      return;
    }
    FaceCotan fc;
    fc.area = area;
    for (int k = 0; k < 3; ++k) {
      const double li2 = l2[(k + 1) % 3], lj2 = l2[(k + 2) % 3];
      fc.cot[k] = (li2 + lj2 - l2[k]) / (4.0 * area);
      const double c = (li2 + lj2 - l2[k]) / (2.0 * std::sqrt(li2 * lj2));
      fc.angle[k] = std::acos(std::clamp(c, -1.0, 1.0));
    }
    out[f] = fc;
  });
  for (int f = 0; f < nf; ++f)
    if (bad[f]) throw DegenerateTriangle("face " + std::to_string(f) + " degenerates under the metric");
  return out;
}

std::vector<Eigen::Vector2d> face_gradient_impl(ExecMode mode, const TriangleMesh& m,
                                                const std::vector<double>& u) {
  std::vector<Eigen::Vector2d> out(m.n_faces());
  run(mode, m.n_faces(), [&](int f) {
    const auto& t = m.tri[f];
    out[f] = fe_gradient(m.tpos[f], u[t[1]] - u[t[0]], u[t[2]] - u[t[0]]);
  });
  return out;
}

std::vector<Eigen::Vector2d> vertex_average_impl(ExecMode mode, const TriangleMesh& m,
                                                 const std::vector<Eigen::Vector2d>& g) {
  std::vector<Eigen::Vector2d> out(m.n_vertices());
  run(mode, m.n_vertices(), [&](int v) {
    Eigen::Vector2d num(0.0, 0.0);
    double den = 0.0;
    for (const auto& [f, k] : m.vstar[v]) {
      const double w = m.tarea[f] / 3.0;
      num += w * (m.tparity[f][k] ? Eigen::Vector2d(-g[f]) : g[f]);
      den += w;
    }
    out[v] = num / den;
  });
  return out;
}

std::vector<Eigen::Matrix2d> face_hessian_impl(ExecMode mode, const TriangleMesh& m,
                                               const std::vector<double>& u) {
  const auto fg = face_gradient_impl(mode, m, u);
  const auto vg = vertex_average_impl(mode, m, fg);
  std::vector<Eigen::Matrix2d> out(m.n_faces());
  run(mode, m.n_faces(), [&](int f) {
    std::array<Eigen::Vector2d, 3> gc;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d gv = vg[m.tri[f][k]];
      gc[k] = m.tparity[f][k] ? Eigen::Vector2d(-gv) : gv;
    }
    const Eigen::Vector2d hx = fe_gradient(m.tpos[f], gc[1].x() - gc[0].x(), gc[2].x() - gc[0].x());
    const Eigen::Vector2d hy = fe_gradient(m.tpos[f], gc[1].y() - gc[0].y(), gc[2].y() - gc[0].y());
    Eigen::Matrix2d h;
    h << hx.x(), 0.5 * (hx.y() + hy.x()), 0.5 * (hx.y() + hy.x()), hy.y();
    out[f] = h;
  });
  return out;
}

std::vector<double> face_average_impl(ExecMode mode, const TriangleMesh& m,
                                      const std::vector<double>& u) {
  std::vector<double> out(m.n_faces());
  run(mode, m.n_faces(), [&](int f) {
    const auto& t = m.tri[f];
    out[f] = (u[t[0]] + u[t[1]] + u[t[2]]) / 3.0;
  });
  return out;
}

}  // namespace

ExecMode exec_mode() { return g_mode.load(); }
void set_exec_mode(ExecMode mode) { g_mode.store(mode); }

std::vector<FaceCotan> cotan_corners_serial(const TriangleMesh& m, const std::vector<Eigen::Matrix2d>* metric) {
  return cotan_impl(ExecMode::serial, m, metric);
}
std::vector<FaceCotan> cotan_corners_parallel(const TriangleMesh& m, const std::vector<Eigen::Matrix2d>* metric) {
  return cotan_impl(ExecMode::parallel, m, metric);
}
std::vector<FaceCotan> cotan_corners(const TriangleMesh& m, const std::vector<Eigen::Matrix2d>* metric) {
  return cotan_impl(exec_mode(), m, metric);
}

std::vector<Eigen::Vector2d> face_gradient_serial(const TriangleMesh& m, const std::vector<double>& u) {
  return face_gradient_impl(ExecMode::serial, m, u);
}
std::vector<Eigen::Vector2d> face_gradient_parallel(const TriangleMesh& m, const std::vector<double>& u) {
  return face_gradient_impl(ExecMode::parallel, m, u);
}
std::vector<Eigen::Vector2d> face_gradient(const TriangleMesh& m, const std::vector<double>& u) {
  return face_gradient_impl(exec_mode(), m, u);
}

std::vector<Eigen::Vector2d> vertex_average_gradient_serial(const TriangleMesh& m,
                                                            const std::vector<Eigen::Vector2d>& g) {
  return vertex_average_impl(ExecMode::serial, m, g);
}
std::vector<Eigen::Vector2d> vertex_average_gradient_parallel(const TriangleMesh& m,
                                                              const std::vector<Eigen::Vector2d>& g) {
  return vertex_average_impl(ExecMode::parallel, m, g);
}
std::vector<Eigen::Vector2d> vertex_average_gradient(const TriangleMesh& m,
                                                     const std::vector<Eigen::Vector2d>& g) {
  return vertex_average_impl(exec_mode(), m, g);
}

std::vector<Eigen::Matrix2d> face_hessian_serial(const TriangleMesh& m, const std::vector<double>& u) {
  return face_hessian_impl(ExecMode::serial, m, u);
}
std::vector<Eigen::Matrix2d> face_hessian_parallel(const TriangleMesh& m, const std::vector<double>& u) {
  return face_hessian_impl(ExecMode::parallel, m, u);
}
std::vector<Eigen::Matrix2d> face_hessian(const TriangleMesh& m, const std::vector<double>& u) {
  return face_hessian_impl(exec_mode(), m, u);
}

std::vector<double> face_average_serial(const TriangleMesh& m, const std::vector<double>& u) {
  return face_average_impl(ExecMode::serial, m, u);
}
std::vector<double> face_average_parallel(const TriangleMesh& m, const std::vector<double>& u) {
  return face_average_impl(ExecMode::parallel, m, u);
}
std::vector<double> face_average(const TriangleMesh& m, const std::vector<double>& u) {
  return face_average_impl(exec_mode(), m, u);
}

}  // namespace folia
