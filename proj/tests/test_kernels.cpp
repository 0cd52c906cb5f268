#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <vector>

#include "folia/kernels.hpp"

using namespace folia;

namespace {

FlatSurface ell() { return realize(build_surface(3, {1, 0, 2}, {2, 1, 0})); }

// one square with every side folded onto itself by a half turn; no cones at
// the corners, but every seam crossing flips the chart, which is exactly the
// parity path the vertex fold has to handle
FlatSurface pillow() {
  FlatSurface f;
  f.base.n = 1;
  f.base.perm_h = {0};
  f.base.perm_v = {0};
  f.base.weights_h = {1.0};
  f.base.weights_v = {1.0};
  f.base.genus = 0;
  f.base.vertex_cycles = {{0}};
  f.cylinders = core_curves(f.base);
  f.rects = {{1.0, 1.0, 0, 0}};
  f.gluings = {{0, Side::L, 0, Side::L, GlueIso::half_turn},
               {0, Side::R, 0, Side::R, GlueIso::half_turn},
               {0, Side::B, 0, Side::B, GlueIso::half_turn},
               {0, Side::T, 0, Side::T, GlueIso::half_turn}};
  f.vertices = {{{{0, 0}, {0, 1}, {0, 2}, {0, 3}}, 2.0 * std::numbers::pi, false}};
  f.area = 1.0;
  return f;
}

std::vector<double> bumpy(const TriangleMesh& m) {
  std::vector<double> u(m.n_vertices());
  for (int v = 0; v < m.n_vertices(); ++v) u[v] = 0.01 * double((v * 7) % 17 - 8);
  return u;
}

struct ModeGuard {
  ExecMode saved = exec_mode();
  ~ModeGuard() { set_exec_mode(saved); }
};

}  // namespace

TEST_CASE("mode switch round trip") {
  ModeGuard guard;
  set_exec_mode(ExecMode::serial);
  CHECK_EQ(exec_mode(), ExecMode::serial);
  set_exec_mode(ExecMode::parallel);
  CHECK_EQ(exec_mode(), ExecMode::parallel);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  for (const FlatSurface& f : {ell(), pillow()}) {
    const TriangleMesh m = triangulate(f, 0.125);
    const std::vector<double> u = bumpy(m);

    const auto fc_s = cotan_corners_serial(m);
    const auto fc_p = cotan_corners_parallel(m);
    REQUIRE_EQ(fc_s.size(), fc_p.size());
    for (size_t i = 0; i < fc_s.size(); ++i) {
      CHECK_EQ(fc_s[i].area, fc_p[i].area);
      for (int k = 0; k < 3; ++k) {
        CHECK_EQ(fc_s[i].cot[k], fc_p[i].cot[k]);
        CHECK_EQ(fc_s[i].angle[k], fc_p[i].angle[k]);
      }
    }

    const auto g_s = face_gradient_serial(m, u);
    const auto g_p = face_gradient_parallel(m, u);
    for (size_t i = 0; i < g_s.size(); ++i) CHECK((g_s[i].array() == g_p[i].array()).all());

    const auto va_s = vertex_average_gradient_serial(m, g_s);
    const auto va_p = vertex_average_gradient_parallel(m, g_s);
    for (size_t i = 0; i < va_s.size(); ++i) CHECK((va_s[i].array() == va_p[i].array()).all());

    const auto h_s = face_hessian_serial(m, u);
    const auto h_p = face_hessian_parallel(m, u);
    for (size_t i = 0; i < h_s.size(); ++i) CHECK((h_s[i].array() == h_p[i].array()).all());

    const auto fa_s = face_average_serial(m, u);
    const auto fa_p = face_average_parallel(m, u);
    CHECK_EQ(fa_s, fa_p);
  }
}

TEST_CASE("dispatch follows the mode") {
  ModeGuard guard;
  const TriangleMesh m = triangulate(ell(), 0.25);
  const std::vector<double> u = bumpy(m);
  set_exec_mode(ExecMode::serial);
  const auto a = face_hessian(m, u);
  set_exec_mode(ExecMode::parallel);
  const auto b = face_hessian(m, u);
  REQUIRE_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK((a[i].array() == b[i].array()).all());
}

TEST_CASE("pillow seams carry nontrivial parity") {
  const TriangleMesh m = triangulate(pillow(), 0.25);
  int flips = 0;
  for (int fct = 0; fct < m.n_faces(); ++fct)
    for (int k = 0; k < 3; ++k) flips += m.adj[fct][k].parity;
  CHECK_GT(flips, 0);
}

TEST_CASE("constant fields have exact zero derivatives") {
  for (const FlatSurface& f : {ell(), pillow()}) {
    const TriangleMesh m = triangulate(f, 0.25);
    const std::vector<double> c(m.n_vertices(), 0.25);
    for (const auto& g : face_gradient(m, c)) {
      CHECK_EQ(g.x(), 0.0);
      CHECK_EQ(g.y(), 0.0);
    }
    for (const auto& h : face_hessian(m, c)) CHECK_EQ(h.cwiseAbs().maxCoeff(), 0.0);
    for (double a : face_average(m, c)) CHECK_EQ(a, 0.25);
  }
}

TEST_CASE("constant face vectors average to themselves without parity") {
  const TriangleMesh m = triangulate(ell(), 0.25);
  const std::vector<Eigen::Vector2d> g(m.n_faces(), Eigen::Vector2d(1.0, 2.0));
  for (const auto& a : vertex_average_gradient(m, g)) {
    CHECK_EQ(a.x(), 1.0);
    CHECK_EQ(a.y(), 2.0);
  }
}

TEST_CASE("hessian is symmetric") {
  const TriangleMesh m = triangulate(ell(), 0.125);
  for (const auto& h : face_hessian(m, bumpy(m)))
    CHECK_EQ(h(0, 1), h(1, 0));
}
