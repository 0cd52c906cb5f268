#include "folia/flatsurf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "folia/errors.hpp"

namespace folia {

namespace {

// Corner union-find over 4n corners, id = 4*rect + k.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

constexpr int kBL = 0, kBR = 1, kTR = 2, kTL = 3;

}  // namespace

FlatSurface realize(const CombinatorialSurface& s) {
  FlatSurface f;
  f.base = s;
  f.cylinders = core_curves(s);
  f.rects.resize(s.n);
  for (int r = 0; r < s.n; ++r) {
    const int hc = f.cylinders.hcyl_of_square[r];
    const int vc = f.cylinders.vcyl_of_square[r];
    f.rects[r] = {s.weights_v[vc], s.weights_h[hc], hc, vc};
  }
  for (int r = 0; r < s.n; ++r)
    f.gluings.push_back({r, Side::R, s.perm_h[r], Side::L, GlueIso::translation});
  for (int r = 0; r < s.n; ++r)
    f.gluings.push_back({r, Side::T, s.perm_v[r], Side::B, GlueIso::translation});

  Dsu dsu(4 * s.n);
  for (int r = 0; r < s.n; ++r) {
    const int rr = s.perm_h[r];
    dsu.unite(4 * r + kBR, 4 * rr + kBL);
    dsu.unite(4 * r + kTR, 4 * rr + kTL);
    const int ru = s.perm_v[r];
    dsu.unite(4 * r + kTL, 4 * ru + kBL);
    dsu.unite(4 * r + kTR, 4 * ru + kBR);
  }
  std::vector<std::vector<std::array<int, 2>>> classes(4 * s.n);
  for (int c = 0; c < 4 * s.n; ++c) classes[dsu.find(c)].push_back({c / 4, c % 4});
  for (auto& cls : classes) {
    if (cls.empty()) continue;
    VertexClass v;
    v.corners = cls;
    v.angle = 0.5 * std::numbers::pi * static_cast<double>(cls.size());
    v.cone = cls.size() > 4;
    f.vertices.push_back(std::move(v));
  }

  double area = 0.0;
  for (const Rect& r : f.rects) area += r.w * r.h;
  f.area = area;
  return f;
}

double area_l1(const FlatSurface& f) {
  double area = 0.0;
  for (const Rect& r : f.rects) area += r.w * r.h;
  return area;
}

double intersection_number(const FlatSurface& f, const CoreCurve& core, bool horizontal_foliation) {
  const auto& list = core.horizontal ? f.cylinders.horizontal : f.cylinders.vertical;
  if (core.cylinder < 0 || core.cylinder >= static_cast<int>(list.size()) ||
      core.squares != list[core.cylinder])
    throw UnsupportedCurve("curve is not a cylinder core of this surface");
  // Horizontal measure |dy| vanishes on horizontal segments; a vertical crossing
  // of a rectangle picks up its height. Symmetrically for |dx|.
  double total = 0.0;
  for (int sq : core.squares) {
    if (horizontal_foliation)
      total += core.horizontal ? 0.0 : f.rects[sq].h;
    else
      total += core.horizontal ? f.rects[sq].w : 0.0;
  }
  return total;
}

FlowResult teich_flow(const FlatSurface& f, double s) {
  FlowResult out;
  out.clamped = std::abs(s) > 10.0;
  const double sc = std::clamp(s, -10.0, 10.0);
  const double ex = std::exp(sc), ey = std::exp(-sc);
  // widths come from vertical weights and heights from horizontal ones, so the
  // stretch is a weight rescaling; rebuilding keeps every derived table in step
  CombinatorialSurface base = f.base;
  for (double& w : base.weights_v) w *= ex;
  for (double& w : base.weights_h) w *= ey;
  out.surface = realize(build_surface(base.n, base.perm_h, base.perm_v, base.weights_h,
                                      base.weights_v));
  return out;
}

DiskExtremalLengths extremal_length_on_disk(const FlatSurface& f, double s, double t) {
  if (!(t > 0.0)) throw NonPositiveScale("scale t must be positive");
  const double a = area_l1(f);
  return {t * t * std::exp(2.0 * s) * a, t * t * std::exp(-2.0 * s) * a};
}

CriticalPoint critical_point_on_disk(const FlatSurface& f, double t) {
  if (!(t > 0.0)) throw NonPositiveScale("scale t must be positive");
  CriticalPoint cp;
  cp.closed_form.s = -0.5 * std::log(t);

  // Independent route: the total length t e^{2s} A + (1/t) e^{-2s} A is strictly
  // convex; bracket the sign change of its derivative and bisect.
  const double a = area_l1(f);
  auto deriv = [&](double s) { return 2.0 * a * (t * std::exp(2.0 * s) - std::exp(-2.0 * s) / t); };
  double lo = -10.0, hi = 10.0;
  if (!(deriv(lo) < 0.0 && deriv(hi) > 0.0)) throw Error("derivative bracket failed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (deriv(mid) < 0.0 ? lo : hi) = mid;
  }
  cp.numeric = 0.5 * (lo + hi);
  return cp;
}

DerivativeRatio gardiner_derivative_check(const FlatSurface& f) {
  DerivativeRatio r;
  const double ds = 1e-5;
  const double ep = extremal_length_on_disk(f, ds, 1.0).horizontal;
  const double em = extremal_length_on_disk(f, -ds, 1.0).horizontal;
  r.fd_slope = (ep - em) / (2.0 * ds);
  // Re<q, q/|q|> integrated rectangle by rectangle; |q| = 1 on every chart.
  double pairing = 0.0;
  for (const Rect& rc : f.rects) pairing += rc.w * rc.h;
  r.pairing = pairing;
  r.ratio = r.fd_slope / r.pairing;
  return r;
}

}  // namespace folia
