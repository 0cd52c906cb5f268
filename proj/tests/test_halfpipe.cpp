#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "folia/errors.hpp"
#include "folia/gauss_solve.hpp"
#include "folia/halfpipe.hpp"

using namespace folia;

namespace {

Eigen::Matrix3d form3() {
  Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

// boost with cosh = 5/4, sinh = 3/4: dyadic entries, exactly Lorentz in
// double arithmetic
Eigen::Matrix3d dyadic_boost() {
  Eigen::Matrix3d a;
  a << 1.25, 0.75, 0.0, 0.75, 1.25, 0.0, 0.0, 0.0, 1.0;
  return a;
}

double gram_dev(const HPElement& x) {
  const Eigen::Matrix3d eta = form3();
  return (x.A.transpose() * eta * x.A - eta).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("element gates") {
  CHECK_NOTHROW(hp_element(dyadic_boost(), {0.5, -1.0, 2.0}, 1));
  CHECK_NOTHROW(hp_element(Eigen::Matrix3d::Identity(), Eigen::RowVector3d::Zero(), -1));
  CHECK_THROWS_AS(hp_element(2.0 * Eigen::Matrix3d::Identity(), Eigen::RowVector3d::Zero(), 1),
                  NotLorentz);
  CHECK_THROWS_AS(hp_element(dyadic_boost(), Eigen::RowVector3d::Zero(), 0), NotLorentz);
}

TEST_CASE("inverse cancels exactly on dyadic elements") {
  const HPElement x = hp_element(dyadic_boost(), {0.5, -1.0, 2.0}, -1);
  CHECK_EQ(gram_dev(x), 0.0);
  const HPElement e = hp_compose(x, hp_inverse(x));
  CHECK_EQ((e.A - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(e.v.cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(e.eps, 1);
  const Eigen::Matrix4d m = hp_matrix(x);
  CHECK_EQ(m.topRightCorner<3, 1>().cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(m(3, 3), -1.0);
}

TEST_CASE("composition is associative") {
  const auto jets = random_jets(3, 11);
  const HPElement a = rescale_limit(jets[0]);
  const HPElement b = rescale_limit(jets[1]);
  const HPElement c = rescale_limit(jets[2]);
  const Eigen::Matrix4d lhs = hp_matrix(hp_compose(hp_compose(a, b), c));
  const Eigen::Matrix4d rhs = hp_matrix(hp_compose(a, hp_compose(b, c)));
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  CHECK_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * scale);
  // matrix composition agrees with the block formula
  CHECK_LE((hp_matrix(a) * hp_matrix(b) - hp_matrix(hp_compose(a, b))).cwiseAbs().maxCoeff(),
           1e-12 * scale);
}

TEST_CASE("closure under products and inverses") {
  const auto jets = random_jets(20, 7);
  std::vector<HPElement> elems;
  for (const HPJet& j : jets) elems.push_back(rescale_limit(j));
  for (const HPElement& e : elems) CHECK_LE(gram_dev(e), 1e-9);
  for (int i = 0; i < 100; ++i) {
    HPElement p = hp_compose(elems[i % elems.size()], elems[(i * 7 + 3) % elems.size()]);
    if (i % 3 == 0) p = hp_inverse(p);
    CHECK_LE(gram_dev(p), 1e-8);
    CHECK((p.eps == 1 || p.eps == -1));
    CHECK_EQ(hp_matrix(p).topRightCorner<3, 1>().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST_CASE("conjugated rescalings converge to the jet limit") {
  auto jets = random_jets(20, 42);
  jets[5].a0 = -1.0;  // orientation-reversing branch
  for (const HPJet& j : jets) {
    const Eigen::Matrix4d lim = hp_matrix(rescale_limit(j));
    for (double t : {1e-2, 1e-3}) {
      const double dev = (conjugate_rescale(j, t) - lim).cwiseAbs().maxCoeff();
      CHECK_LE(dev, 10.0 * t);
    }
  }
}

TEST_CASE("limit keeps the translation jet and drops the rest") {
  auto jets = random_jets(2, 3);
  const HPJet& j = jets[0];
  const HPElement base = rescale_limit(j);
  CHECK_EQ((base.A - j.A0).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ((base.v - j.v1).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(base.eps, 1);

  HPJet scaled = j;
  scaled.v1 = 2.0 * j.v1;
  CHECK_EQ((rescale_limit(scaled).v - 2.0 * j.v1).cwiseAbs().maxCoeff(), 0.0);

  HPJet other = j;
  other.A1 = jets[1].A1;
  other.w0 = jets[1].w0;
  other.w1 = jets[1].w1;
  other.a1 = jets[1].a1;
  const HPElement e = rescale_limit(other);
  CHECK_EQ((e.A - base.A).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ((e.v - base.v).cwiseAbs().maxCoeff(), 0.0);
}

TEST_CASE("jets outside the stabilized locus are rejected") {
  HPJet j;
  j.v0 << 1e-6, 0.0, 0.0;
  CHECK_THROWS_AS(rescale_limit(j), NotThroughFuchsian);
  HPJet k;
  k.a0 = 0.5;
  CHECK_THROWS_AS(rescale_limit(k), NotThroughFuchsian);
  HPJet l;
  l.A0 = 1.1 * Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(rescale_limit(l), NotLorentz);
  HPJet ok;
  ok.a0 = -1.0;
  ok.w0 << 1.0, 1.0, 1.0;  // translation top block is allowed at t = 0
  CHECK_EQ(rescale_limit(ok).eps, -1);
}

TEST_CASE("jet matrices interpolate the written blocks") {
  const HPJet j = random_jets(1, 9)[0];
  const Eigen::Matrix4d m0 = jet_matrix(j, 0.0);
  CHECK_EQ((m0.topLeftCorner<3, 3>() - j.A0).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ((m0.topRightCorner<3, 1>() - j.w0).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(m0.bottomLeftCorner<1, 3>().cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(m0(3, 3), 1.0);
}

TEST_CASE("rescaled group preserves the squashed quadric exactly") {
  // two dyadic boosts in the 4d form diag(-1,1,1,1), then conjugated by
  // diag(1,1,1,t) with t = 1/2: every entry stays a small dyadic rational,
  // so the quadratic form values match bit for bit
  Eigen::Matrix4d b01 = Eigen::Matrix4d::Identity();
  b01.topLeftCorner<3, 3>() = dyadic_boost();
  Eigen::Matrix4d b03 = Eigen::Matrix4d::Identity();
  b03(0, 0) = 1.25;
  b03(0, 3) = 0.75;
  b03(3, 0) = 0.75;
  b03(3, 3) = 1.25;
  const Eigen::Matrix4d g1 = b01 * b03;

  Eigen::Matrix4d eta1 = Eigen::Matrix4d::Identity();
  eta1(0, 0) = -1.0;
  CHECK_EQ((g1.transpose() * eta1 * g1 - eta1).cwiseAbs().maxCoeff(), 0.0);

  const double t = 0.5;
  Eigen::Matrix4d gt = g1;
  gt.row(3) /= t;
  gt.col(3) *= t;
  Eigen::Matrix4d etat = eta1;
  etat(3, 3) = t * t;

  const auto q_t = [&](const Eigen::Vector4d& x) { return x.dot(etat * x); };
  const Eigen::Vector4d samples[] = {{1.0, 0.25, 0.25, 0.5},
                                     {2.0, 1.0, 0.5, 0.25},
                                     {1.0, 0.0, 0.0, 0.0},
                                     {1.25, 0.75, 0.5, 1.0}};
  for (const Eigen::Vector4d& x : samples) {
    CHECK_EQ(q_t(gt * x), q_t(x));
    if (q_t(x) < 0.0) CHECK_LT(q_t(gt * x), 0.0);
  }
}

TEST_CASE("flat minimal surface data copies the inputs") {
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.25);
  const MetricField uh = uniformize(m).field;
  const QdField q = qd_field(m);
  const HPMinimalSurface hp = hp_minimal_surface(uh, q);
  CHECK_EQ(hp.factor.u, uh.u);
  REQUIRE_EQ(int(hp.second_form.size()), m.n_faces());
  for (const Eigen::Matrix2d& b : hp.second_form) {
    CHECK_EQ(b(0, 0), 1.0);
    CHECK_EQ(b(1, 1), -1.0);
    CHECK_EQ(b(0, 1), 0.0);
    CHECK_EQ(b(1, 0), 0.0);
  }
}

TEST_CASE("derivative report with exact transverse echoes") {
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.1);
  const MetricField uh = uniformize(m).field;
  const QdField q = qd_field(m);
  const double s = 1e-2;
  const GaussResult g = solve_gauss(m, uh, q, s);
  const SchwarzianField plus = schwarzian_at_infinity(m, g.field, uh, q, s, 1);
  const SchwarzianField minus = schwarzian_at_infinity(m, g.field, uh, q, s, -1);

  const HPSchwarzianReport rep = hp_schwarzian(f, m, q, plus, minus);
  CHECK_EQ(rep.s, s);
  CHECK_LE(rep.error_plus, 0.05);
  CHECK_LE(rep.error_minus, 0.05);

  REQUIRE_EQ(rep.echoes.size(), 4);
  // horizontal cores meet only the vertical foliation and vice versa
  CHECK(rep.echoes[0].horizontal);
  CHECK_EQ(rep.echoes[0].hor_measure, 0.0);
  CHECK_EQ(rep.echoes[0].ver_measure, 2.0);
  CHECK_EQ(rep.echoes[1].hor_measure, 0.0);
  CHECK_EQ(rep.echoes[1].ver_measure, 1.0);
  CHECK_FALSE(rep.echoes[2].horizontal);
  CHECK_EQ(rep.echoes[2].hor_measure, 2.0);
  CHECK_EQ(rep.echoes[2].ver_measure, 0.0);
  CHECK_EQ(rep.echoes[3].hor_measure, 1.0);
  CHECK_EQ(rep.echoes[3].ver_measure, 0.0);

  CHECK_THROWS_AS(hp_schwarzian(f, m, q, plus, plus), Error);

  // doubling the weights doubles every echo
  const FlatSurface f2 =
      realize(build_surface(3, {1, 0, 2}, {2, 1, 0}, {2.0, 2.0}, {2.0, 2.0}));
  for (const CoreCurve& c : f2.cylinders.cores_h)
    CHECK_EQ(intersection_number(f2, c, false),
             2.0 * intersection_number(f, f.cylinders.cores_h[c.cylinder], false));
}
