#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "folia/errors.hpp"
#include "folia/laplace.hpp"

using namespace folia;

namespace {

FlatSurface ell() { return realize(build_surface(3, {1, 0, 2}, {2, 1, 0})); }

FlatSurface unit_torus() {
  FlatSurface f;
  f.base.n = 1;
  f.base.perm_h = {0};
  f.base.perm_v = {0};
  f.base.weights_h = {1.0};
  f.base.weights_v = {1.0};
  f.base.genus = 1;
  f.base.vertex_cycles = {{0}};
  f.cylinders = core_curves(f.base);
  f.rects = {{1.0, 1.0, 0, 0}};
  f.gluings = {{0, Side::R, 0, Side::L, GlueIso::translation},
               {0, Side::T, 0, Side::B, GlueIso::translation}};
  f.vertices = {{{{0, 0}, {0, 1}, {0, 2}, {0, 3}}, 2.0 * std::numbers::pi, false}};
  f.area = 1.0;
  return f;
}

Operators ops_of(const FlatSurface& f, double h) {
  const TriangleMesh m = triangulate(f, h);
  return assemble(m, cotan_corners(m));
}

}  // namespace

TEST_CASE("cotangents of the grid triangles") {
  const TriangleMesh m = triangulate(unit_torus(), 0.5);
  const auto fc = cotan_corners(m);
  REQUIRE_EQ(fc.size(), m.n_faces());
  for (const auto& c : fc) {
    // right isoceles: one right angle, two quarter turns
    CHECK_EQ(c.area, doctest::Approx(0.125).epsilon(1e-15));
    double cot_sum = 0.0, angle_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      cot_sum += c.cot[k];
      angle_sum += c.angle[k];
    }
    CHECK_EQ(cot_sum, doctest::Approx(2.0).epsilon(1e-12));
    CHECK_EQ(angle_sum, doctest::Approx(std::numbers::pi).epsilon(1e-12));
  }
}

TEST_CASE("identity metric reproduces the flat cotangents bitwise") {
  const TriangleMesh m = triangulate(ell(), 0.25);
  const auto flat = cotan_corners(m);
  const std::vector<Eigen::Matrix2d> id(m.n_faces(), Eigen::Matrix2d::Identity());
  const auto withm = cotan_corners(m, &id);
  REQUIRE_EQ(withm.size(), flat.size());
  for (size_t i = 0; i < flat.size(); ++i) {
    CHECK_EQ(flat[i].area, withm[i].area);
    for (int k = 0; k < 3; ++k) {
      CHECK_EQ(flat[i].cot[k], withm[i].cot[k]);
      CHECK_EQ(flat[i].angle[k], withm[i].angle[k]);
    }
  }
}

TEST_CASE("degenerate metric is rejected") {
  const TriangleMesh m = triangulate(unit_torus(), 0.5);
  std::vector<Eigen::Matrix2d> bad(m.n_faces(), Eigen::Matrix2d::Identity());
  bad[3] << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(cotan_corners(m, &bad), DegenerateTriangle);
}

TEST_CASE("stiffness annihilates constants and is symmetric") {
  const Operators op = ops_of(ell(), 0.2);
  const int n = int(op.mass.size());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  CHECK_LE((op.stiffness * ones).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::SparseMatrix<double> diff =
      Eigen::SparseMatrix<double>(op.stiffness.transpose()) - op.stiffness;
  CHECK_EQ(diff.norm(), 0.0);
}

TEST_CASE("lumped mass sums to the area") {
  const FlatSurface f = ell();
  const Operators op = ops_of(f, 0.2);
  CHECK_GT(op.mass.minCoeff(), 0.0);
  CHECK_EQ(op.mass.sum(), doctest::Approx(f.area).epsilon(1e-13));
}

TEST_CASE("angle defects vanish on the torus and mark the cone") {
  const Operators flat = ops_of(unit_torus(), 0.25);
  CHECK_LE(flat.defect.cwiseAbs().maxCoeff(), 1e-12);

  const FlatSurface f = ell();
  const TriangleMesh m = triangulate(f, 0.25);
  const Operators op = assemble(m, cotan_corners(m));
  double total = 0.0;
  int cones = 0;
  for (int v = 0; v < m.n_vertices(); ++v) {
    total += op.defect[op.canon[v]];
    if (m.vcone[v]) {
      ++cones;
      CHECK_EQ(op.defect[op.canon[v]], doctest::Approx(-4.0 * std::numbers::pi).epsilon(1e-12));
    } else {
      CHECK_LE(std::abs(op.defect[op.canon[v]]), 1e-12);
    }
  }
  CHECK_EQ(cones, 1);
  // discrete curvature integral equals 2 pi chi
  CHECK_EQ(total, doctest::Approx(-4.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("canonical index maps are inverse bijections") {
  const TriangleMesh m = triangulate(ell(), 0.25);
  const Operators op = assemble(m, cotan_corners(m));
  REQUIRE_EQ(int(op.canon.size()), m.n_vertices());
  REQUIRE_EQ(int(op.mesh_of.size()), m.n_vertices());
  for (int v = 0; v < m.n_vertices(); ++v) CHECK_EQ(op.mesh_of[op.canon[v]], v);
  REQUIRE_EQ(int(op.face_order.size()), m.n_faces());
  std::vector<char> seen(m.n_faces(), 0);
  for (int fct : op.face_order) seen[fct] = 1;
  for (char s : seen) CHECK_EQ(s, 1);
}

TEST_CASE("flat torus spectrum matches the first band") {
  const Operators op = ops_of(unit_torus(), 0.05);
  const int n = int(op.mass.size());
  REQUIRE_EQ(n, 400);
  const Eigen::MatrixXd a = Eigen::MatrixXd(op.stiffness);
  const Eigen::MatrixXd b = op.mass.asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
  REQUIRE_EQ(es.info(), Eigen::Success);
  const Eigen::VectorXd ev = es.eigenvalues();
  CHECK_LE(std::abs(ev[0]), 1e-8);
  const double first = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int k = 1; k <= 4; ++k)
    CHECK_EQ(ev[k], doctest::Approx(first).epsilon(0.02));
  CHECK_GT(ev[5], 1.5 * first);
}
