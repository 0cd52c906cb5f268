#include "folia/halfpipe.hpp"

#include <cmath>
#include <random>

#include "folia/errors.hpp"
#include "folia/kernels.hpp"

namespace folia {

namespace {

Eigen::Matrix3d lorentz_form() {
  Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

void check_lorentz(const Eigen::Matrix3d& a) {
  const Eigen::Matrix3d eta = lorentz_form();
  const double dev = (a.transpose() * eta * a - eta).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-9))
    throw NotLorentz("linear block deviates from the form by " + std::to_string(dev));
}

double unit_double(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
double signed_unit(std::mt19937_64& gen) { return 2.0 * unit_double(gen) - 1.0; }

}  // namespace

HPElement hp_element(const Eigen::Matrix3d& a, const Eigen::RowVector3d& v, int eps) {
  if (eps != 1 && eps != -1) throw NotLorentz("eps must be +1 or -1");
  check_lorentz(a);
  return {a, v, eps};
}

HPElement hp_compose(const HPElement& x, const HPElement& y) {
  HPElement r;
  r.A = x.A * y.A;
  r.v = x.v * y.A + static_cast<double>(x.eps) * y.v;
  r.eps = x.eps * y.eps;
  return r;
}

HPElement hp_inverse(const HPElement& x) {
  const Eigen::Matrix3d eta = lorentz_form();
  HPElement r;
  r.A = eta * x.A.transpose() * eta;
  r.v = -static_cast<double>(x.eps) * (x.v * r.A);
  r.eps = x.eps;
  return r;
}

Eigen::Matrix4d hp_matrix(const HPElement& x) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<3, 3>() = x.A;
  m.bottomLeftCorner<1, 3>() = x.v;
  m(3, 3) = static_cast<double>(x.eps);
  return m;
}

Eigen::Matrix4d jet_matrix(const HPJet& j, double t) {
  Eigen::Matrix4d m;
  m.topLeftCorner<3, 3>() = j.A0 + t * j.A1;
  m.topRightCorner<3, 1>() = j.w0 + t * j.w1;
  m.bottomLeftCorner<1, 3>() = j.v0 + t * j.v1;
  m(3, 3) = j.a0 + t * j.a1;
  return m;
}

Eigen::Matrix4d conjugate_rescale(const HPJet& j, double t) {
  Eigen::Matrix4d m = jet_matrix(j, t);
  m.topRightCorner<3, 1>() *= t;
  m.bottomLeftCorner<1, 3>() /= t;
  return m;
}

HPElement rescale_limit(const HPJet& j) {
  if (j.v0.cwiseAbs().maxCoeff() > 1e-12 || std::abs(std::abs(j.a0) - 1.0) > 1e-12)
    throw NotThroughFuchsian("jet does not pass through the stabilized locus at t = 0");
  check_lorentz(j.A0);
  HPElement r;
  r.A = j.A0;
  r.v = j.v1;
  r.eps = j.a0 > 0.0 ? 1 : -1;
  return r;
}

std::vector<HPJet> random_jets(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  // so(2,1) generators for diag(-1,1,1): two boosts and a rotation
  Eigen::Matrix3d k1 = Eigen::Matrix3d::Zero(), k2 = Eigen::Matrix3d::Zero(),
                  jr = Eigen::Matrix3d::Zero();
  k1(0, 1) = k1(1, 0) = 1.0;
  k2(0, 2) = k2(2, 0) = 1.0;
  jr(1, 2) = -1.0;
  jr(2, 1) = 1.0;

  std::vector<HPJet> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    const Eigen::Matrix3d b = signed_unit(gen) * k1 + signed_unit(gen) * k2 + signed_unit(gen) * jr;
    Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d expb = Eigen::Matrix3d::Identity();
    for (int k = 1; k <= 30; ++k) {
      term = (term * b) / static_cast<double>(k);
      expb += term;
    }
    HPJet j;
    j.A0 = expb;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) j.A1(r, c) = signed_unit(gen);
    for (int r = 0; r < 3; ++r) {
      j.w0[r] = signed_unit(gen);
      j.w1[r] = signed_unit(gen);
      j.v1[r] = signed_unit(gen);
    }
    j.a1 = signed_unit(gen);
    out.push_back(j);
  }
  return out;
}

HPMinimalSurface hp_minimal_surface(const MetricField& u_hyp, const QdField& q) {
  HPMinimalSurface s;
  s.factor = u_hyp;
  s.second_form.resize(q.coeff.size());
  for_index(static_cast<int>(q.coeff.size()), [&](int f) {
    Eigen::Matrix2d r;
    r << q.coeff[f].real(), -q.coeff[f].imag(), -q.coeff[f].imag(), -q.coeff[f].real();
    s.second_form[f] = r;
  });
  return s;
}

HPSchwarzianReport hp_schwarzian(const FlatSurface& fs, const TriangleMesh& m, const QdField& q,
                                 const SchwarzianField& plus, const SchwarzianField& minus) {
  if (plus.end != 1 || minus.end != -1) throw Error("report needs one field per end");
  HPSchwarzianReport rep;
  rep.s = plus.s;
  const double excl = 3.0 * m.h_target;
  rep.error_plus = sigma_first_order_error(m, q, plus, excl);
  rep.error_minus = sigma_first_order_error(m, q, minus, excl);
  auto add = [&](const CoreCurve& c) {
    HPEcho e;
    e.horizontal = c.horizontal;
    e.cylinder = c.cylinder;
    e.hor_measure = intersection_number(fs, c, true);
    e.ver_measure = intersection_number(fs, c, false);
    rep.echoes.push_back(e);
  };
  for (const CoreCurve& c : fs.cylinders.cores_h) add(c);
  for (const CoreCurve& c : fs.cylinders.cores_v) add(c);
  return rep;
}

}  // namespace folia
