#include "folia/curves.hpp"

#include <cmath>
#include <numbers>

#include "folia/errors.hpp"

namespace folia {

Perm vertex_perm(const Perm& perm_h, const Perm& perm_v) {
  Perm c = compose(perm_h, perm_v);
  c = compose(c, inverse_perm(perm_h));
  c = compose(c, inverse_perm(perm_v));
  return c;
}

std::pair<int, std::vector<double>> genus_and_cones(const Perm& perm_h, const Perm& perm_v) {
  const int n = static_cast<int>(perm_h.size());
  auto vcyc = cycles(vertex_perm(perm_h, perm_v));
  const int v = static_cast<int>(vcyc.size());
  // V - E + F with E = 2n, F = n
  const int chi = v - n;
  if ((2 - chi) % 2 != 0) throw Error("odd Euler characteristic, gluing data corrupt");
  const int genus = (2 - chi) / 2;
  std::vector<double> cones;
  for (const auto& c : vcyc)
    if (c.size() > 1) cones.push_back(2.0 * std::numbers::pi * static_cast<double>(c.size()));
  return {genus, cones};
}

CombinatorialSurface build_surface(int n, const Perm& perm_h, const Perm& perm_v,
                                   std::vector<double> weights_h, std::vector<double> weights_v) {
  if (n <= 0) throw Error("need at least one square");
  if (static_cast<int>(perm_h.size()) != n || static_cast<int>(perm_v.size()) != n)
    throw Error("permutation size does not match n");
  if (!is_permutation(perm_h) || !is_permutation(perm_v)) throw Error("not a permutation");

  const auto hcyc = cycles(perm_h);
  const auto vcyc = cycles(perm_v);
  if (weights_h.empty()) weights_h.assign(hcyc.size(), 1.0);
  if (weights_v.empty()) weights_v.assign(vcyc.size(), 1.0);
  if (weights_h.size() != hcyc.size() || weights_v.size() != vcyc.size())
    throw Error("weight count must match cylinder count");
  for (double w : weights_h)
    if (!(w > 0.0) || !std::isfinite(w)) throw NonPositiveWeight("horizontal weight " + std::to_string(w));
  for (double w : weights_v)
    if (!(w > 0.0) || !std::isfinite(w)) throw NonPositiveWeight("vertical weight " + std::to_string(w));

  if (!transitive({perm_h, perm_v}, n)) throw NotConnected("squares do not form one orbit");

  CombinatorialSurface s;
  s.n = n;
  s.perm_h = perm_h;
  s.perm_v = perm_v;
  s.weights_h = std::move(weights_h);
  s.weights_v = std::move(weights_v);
  s.vertex_cycles = cycles(vertex_perm(perm_h, perm_v));
  auto [genus, cones] = genus_and_cones(perm_h, perm_v);
  if (genus < 2) throw GenusTooSmall("genus " + std::to_string(genus) + " < 2");
  s.genus = genus;
  s.cone_angles = std::move(cones);
  return s;
}

CylinderDecomposition core_curves(const CombinatorialSurface& s) {
  CylinderDecomposition d;
  d.horizontal = cycles(s.perm_h);
  d.vertical = cycles(s.perm_v);
  d.hcyl_of_square.assign(s.n, -1);
  d.vcyl_of_square.assign(s.n, -1);
  for (int i = 0; i < static_cast<int>(d.horizontal.size()); ++i)
    for (int sq : d.horizontal[i]) d.hcyl_of_square[sq] = i;
  for (int i = 0; i < static_cast<int>(d.vertical.size()); ++i)
    for (int sq : d.vertical[i]) d.vcyl_of_square[sq] = i;
  // A horizontal core crosses one square of width weights_v[vcyl] per step.
  for (int i = 0; i < static_cast<int>(d.horizontal.size()); ++i) {
    double c = 0.0;
    for (int sq : d.horizontal[i]) c += s.weights_v[d.vcyl_of_square[sq]];
    d.circumference_h.push_back(c);
    d.cores_h.push_back({true, i, d.horizontal[i]});
  }
  for (int i = 0; i < static_cast<int>(d.vertical.size()); ++i) {
    double c = 0.0;
    for (int sq : d.vertical[i]) c += s.weights_h[d.hcyl_of_square[sq]];
    d.circumference_v.push_back(c);
    d.cores_v.push_back({false, i, d.vertical[i]});
  }
  return d;
}

double core_intersection(const CombinatorialSurface& s, const CylinderDecomposition& d,
                         const CoreCurve& core, bool with_horizontal) {
  // i(core of an h-cylinder, F) = 0: the core is isotopic to a leaf of F.
  if (core.horizontal == with_horizontal) return 0.0;
  double total = 0.0;
  for (int sq : core.squares)
    total += with_horizontal ? s.weights_h[d.hcyl_of_square[sq]] : s.weights_v[d.vcyl_of_square[sq]];
  return total;
}

FillingWitness filling_check(const CombinatorialSurface& s) {
  const auto d = core_curves(s);
  FillingWitness w;
  w.fills = true;
  for (const auto& core : d.cores_h) {
    double t = core_intersection(s, d, core, true) + core_intersection(s, d, core, false);
    if (!(t > 0.0)) w.fills = false;
    w.rows.push_back({true, core.cylinder, t});
  }
  for (const auto& core : d.cores_v) {
    double t = core_intersection(s, d, core, true) + core_intersection(s, d, core, false);
    if (!(t > 0.0)) w.fills = false;
    w.rows.push_back({false, core.cylinder, t});
  }
  return w;
}

}  // namespace folia
