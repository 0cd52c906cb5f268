#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "folia/errors.hpp"
#include "folia/foliation.hpp"
#include "folia/gauss_solve.hpp"
#include "folia/schwarzian.hpp"

using namespace folia;

namespace {

struct Setup {
  TriangleMesh m;
  MetricField u_hyp;
  QdField q;
  double excl;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup out{triangulate(realize(build_surface(3, {1, 0, 2}, {2, 1, 0})), 0.1), {}, {}, 0.3};
    out.u_hyp = uniformize(out.m).field;
    out.q = qd_field(out.m);
    return out;
  }();
  return s;
}

SchwarzianField field_at(double s, int end) {
  const auto& st = setup();
  const GaussResult g = solve_gauss(st.m, st.u_hyp, st.q, s);
  return schwarzian_at_infinity(st.m, g.field, st.u_hyp, st.q, s, end);
}

bool is_positive_zero(double x) {
  return std::bit_cast<std::uint64_t>(x) == 0;
}

}  // namespace

TEST_CASE("tensor vanishes bitwise at zero bending") {
  const auto& st = setup();
  for (int end : {1, -1}) {
    const SchwarzianField sf = field_at(0.0, end);
    CHECK(sf.stats.converged);
    REQUIRE_EQ(int(sf.sigma.size()), st.m.n_faces());
    for (const auto& z : sf.sigma) {
      CHECK(is_positive_zero(z.real()));
      CHECK(is_positive_zero(z.imag()));
    }
    // with nothing bent the unimodular boundary metric is the hyperbolic one
    CHECK_EQ(sf.w.u, st.u_hyp.u);
  }
}

TEST_CASE("first order law holds at the probe parameter") {
  for (int end : {1, -1}) {
    const SchwarzianField sf = field_at(1e-2, end);
    CHECK(sf.stats.converged);
    const double err = sigma_first_order_error(setup().m, setup().q, sf, setup().excl);
    CHECK_LE(err, 0.05);
  }
}

TEST_CASE("first order error decreases along the parameter grid") {
  std::vector<double> errs;
  for (double s : {8e-3, 4e-3, 2e-3, 1e-3})
    errs.push_back(sigma_first_order_error(setup().m, setup().q, field_at(s, 1), setup().excl));
  for (size_t i = 0; i + 1 < errs.size(); ++i) CHECK_GT(errs[i], errs[i + 1]);
  CHECK_LE(errs.back(), 0.05);
}

TEST_CASE("the two ends are opposite to first order") {
  const auto& st = setup();
  const double s = 4e-3;
  const SchwarzianField plus = field_at(s, 1);
  const SchwarzianField minus = field_at(s, -1);
  double num = 0.0, den = 0.0;
  for (int f = 0; f < st.m.n_faces(); ++f) {
    if (st.m.tdist_cone[f] <= st.excl) continue;
    num += st.m.tarea[f] * std::abs(plus.sigma[f] + minus.sigma[f]);
    den += st.m.tarea[f] * std::abs(plus.sigma[f] - minus.sigma[f]);
  }
  CHECK_GT(den, 0.0);
  CHECK_LE(num / den, 0.05);
}

TEST_CASE("exclusion radius only removes cone neighborhoods") {
  const auto& st = setup();
  const SchwarzianField sf = field_at(1e-2, 1);
  const double all = sigma_first_order_error(st.m, st.q, sf, 0.0);
  const double trimmed = sigma_first_order_error(st.m, st.q, sf, st.excl);
  CHECK_GT(all, 0.0);
  CHECK_GT(trimmed, 0.0);
  CHECK_LT(trimmed, 1.0);
}

namespace {

SchwarzianField constant_field(const TriangleMesh& m, std::complex<double> value, int end) {
  SchwarzianField sf;
  sf.s = 1e-2;
  sf.end = end;
  sf.sigma.assign(m.n_faces(), value);
  return sf;
}

}  // namespace

TEST_CASE("core quadrature is exact for constant fields") {
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.125);
  // sqrt(-1) = i and sqrt(-4) = 2i: pure vertical direction fields
  const SchwarzianField plus = constant_field(m, {-1.0, 0.0}, 1);
  const SchwarzianField minus = constant_field(m, {-4.0, 0.0}, -1);
  const FoliationCheck fc = foliation_check(f, m, plus, minus, 0.1);
  CHECK_EQ(fc.t, 0.1);
  REQUIRE_EQ(fc.rows.size(), f.cylinders.cores_h.size() + f.cylinders.cores_v.size());
  size_t k = 0;
  for (const CoreCurve& c : f.cylinders.cores_h) {
    const CoreQuadrature& row = fc.rows[k++];
    CHECK(row.horizontal);
    const double circ = f.cylinders.circumference_h[c.cylinder];
    CHECK_EQ(row.measured_plus, doctest::Approx(circ).epsilon(1e-14));
    CHECK_EQ(row.measured_minus, doctest::Approx(2.0 * circ).epsilon(1e-14));
    CHECK_EQ(row.echo, doctest::Approx(3.0 * circ).epsilon(1e-14));
    CHECK_EQ(row.target_plus, 0.1 * intersection_number(f, c, true));
    CHECK_EQ(row.target_minus, 0.1 * intersection_number(f, c, false));
  }
  for (const CoreCurve& c : f.cylinders.cores_v) {
    const CoreQuadrature& row = fc.rows[k++];
    CHECK_FALSE(row.horizontal);
    // vertical cores integrate the real part, which vanishes here
    CHECK_EQ(row.measured_plus, 0.0);
    CHECK_EQ(row.measured_minus, 0.0);
  }
}

TEST_CASE("foliation check requires one field per end") {
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.25);
  const SchwarzianField plus = constant_field(m, {-1.0, 0.0}, 1);
  CHECK_THROWS_AS(foliation_check(f, m, plus, plus, 0.1), Error);
}

TEST_CASE("cores too close to a cone are rejected") {
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.2);  // guard radius 0.6 exceeds the half side
  const SchwarzianField plus = constant_field(m, {-1.0, 0.0}, 1);
  const SchwarzianField minus = constant_field(m, {-1.0, 0.0}, -1);
  CHECK_THROWS_AS(foliation_check(f, m, plus, minus, 0.1), QuadratureFailure);
}
