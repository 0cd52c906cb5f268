#include "folia/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "folia/errors.hpp"

namespace folia {

namespace {

int snap_ceil(double x) {
  const int n = static_cast<int>(std::ceil(x - 1e-9));
  return std::max(n, 1);
}

// Union-find over grid points carrying a Z2 chart rotation to the parent
// (gluings are translations or half-turns, so the rotation group is {0, pi}).
struct ParityDsu {
  std::vector<int> parent;
  std::vector<std::uint8_t> par;
  explicit ParityDsu(int n) : parent(n), par(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    if (parent[i] == i) return i;
    const int p = parent[i];
    const int r = find(p);
    par[i] = par[i] ^ par[p];
    parent[i] = r;
    return r;
  }
  void unite(int a, int b, std::uint8_t rel) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) return;
    const std::uint8_t link = par[a] ^ rel ^ par[b];
    if (rb < ra) {
      parent[ra] = rb;
      par[ra] = link;
    } else {
      parent[rb] = ra;
      par[rb] = link;
    }
  }
};

struct SideRef {
  int rect = -1;
  Side side = Side::L;
  GlueIso iso = GlueIso::translation;
};

bool vertical(Side s) { return s == Side::L || s == Side::R; }

}  // namespace

TriangleMesh triangulate(const FlatSurface& f, double h_target) {
  const int nr = static_cast<int>(f.rects.size());
  double min_side = std::numeric_limits<double>::infinity();
  for (const Rect& r : f.rects) min_side = std::min({min_side, r.w, r.h});
  if (!(h_target > 0.0)) throw TargetTooCoarse("h_target must be positive");
  if (h_target > 0.5 * min_side + 1e-15)
    throw TargetTooCoarse("h_target exceeds half the shortest rectangle side");

  TriangleMesh m;
  m.h_target = h_target;
  m.n_rect = nr;
  m.nx.resize(nr);
  m.ny.resize(nr);
  for (int r = 0; r < nr; ++r) {
    m.nx[r] = snap_ceil(f.rects[r].w / h_target);
    m.ny[r] = snap_ceil(f.rects[r].h / h_target);
  }

  // gluing lookup by (rect, side); realize() emits translations (R<->L, T<->B),
  // files may add half-turns (same-side pairs)
  std::vector<std::array<SideRef, 4>> tbl(nr);
  auto set_side = [&](int r, Side s, int r2, Side s2, GlueIso iso) {
    SideRef& ref = tbl[r][static_cast<int>(s)];
    if (ref.rect >= 0) throw ParseError("side glued twice");
    ref = {r2, s2, iso};
  };
  for (const Gluing& g : f.gluings) {
    if (vertical(g.side_a) != vertical(g.side_b))
      throw ParseError("gluing pairs a vertical side with a horizontal one");
    // orientation: translations identify opposite side names, half-turns equal ones
    const bool same = g.side_a == g.side_b;
    if (same != (g.iso == GlueIso::half_turn))
      throw ParseError("gluing isometry inconsistent with the sides it identifies");
    set_side(g.rect_a, g.side_a, g.rect_b, g.side_b, g.iso);
    if (!(g.rect_a == g.rect_b && g.side_a == g.side_b))
      set_side(g.rect_b, g.side_b, g.rect_a, g.side_a, g.iso);
  }
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < 4; ++s)
      if (tbl[r][s].rect < 0) throw ParseError("rectangle side left unglued");

  // grid point ids
  std::vector<int> off(nr + 1, 0);
  for (int r = 0; r < nr; ++r) off[r + 1] = off[r] + (m.nx[r] + 1) * (m.ny[r] + 1);
  auto gid = [&](int r, int ix, int iy) { return off[r] + iy * (m.nx[r] + 1) + ix; };
  auto gpos = [&](int r, int ix, int iy) {
    const double w = f.rects[r].w, h = f.rects[r].h;
    const double x = (ix == m.nx[r]) ? w : w * ix / m.nx[r];
    const double y = (iy == m.ny[r]) ? h : h * iy / m.ny[r];
    return Eigen::Vector2d(x, y);
  };

  ParityDsu dsu(off[nr]);
  auto side_count = [&](int r, Side s) { return vertical(s) ? m.ny[r] : m.nx[r]; };
  auto side_point = [&](int r, Side s, int k) {
    switch (s) {
      case Side::L: return gid(r, 0, k);
      case Side::R: return gid(r, m.nx[r], k);
      case Side::B: return gid(r, k, 0);
      case Side::T: return gid(r, k, m.ny[r]);
    }
    return -1;
  };
  for (const Gluing& g : f.gluings) {
    const int ca = side_count(g.rect_a, g.side_a);
    const int cb = side_count(g.rect_b, g.side_b);
    if (ca != cb) throw ParseError("glued sides subdivide differently (length mismatch)");
    const std::uint8_t parity = g.iso == GlueIso::half_turn ? 1 : 0;
    for (int k = 0; k <= ca; ++k) {
      const int k2 = g.iso == GlueIso::half_turn ? ca - k : k;
      dsu.unite(side_point(g.rect_a, g.side_a, k), side_point(g.rect_b, g.side_b, k2), parity);
    }
  }

  // cone flags per rectangle corner (BL, BR, TR, TL)
  std::vector<std::uint8_t> corner_cone(4 * nr, 0);
  for (const VertexClass& vc : f.vertices)
    if (vc.cone)
      for (const auto& c : vc.corners) corner_cone[4 * c[0] + c[1]] = 1;

  // vertices = union-find roots, ascending root id = (rect, gy, gx) order
  std::vector<int> vid(off[nr], -1);
  for (int r = 0; r < nr; ++r)
    for (int iy = 0; iy <= m.ny[r]; ++iy)
      for (int ix = 0; ix <= m.nx[r]; ++ix) {
        const int i = gid(r, ix, iy);
        if (dsu.find(i) != i) continue;
        vid[i] = m.n_vertices();
        m.vchart.push_back(r);
        m.vgx.push_back(ix);
        m.vgy.push_back(iy);
        m.vpos.push_back(gpos(r, ix, iy));
        m.vcone.push_back(0);
      }
  auto vertex_of = [&](int r, int ix, int iy) { return vid[dsu.find(gid(r, ix, iy))]; };
  auto parity_of = [&](int r, int ix, int iy) {
    const int i = gid(r, ix, iy);
    dsu.find(i);
    return dsu.par[i];
  };
  for (int r = 0; r < nr; ++r) {
    const std::array<std::array<int, 2>, 4> cs = {{{0, 0}, {m.nx[r], 0}, {m.nx[r], m.ny[r]}, {0, m.ny[r]}}};
    for (int k = 0; k < 4; ++k)
      if (corner_cone[4 * r + k]) m.vcone[vertex_of(r, cs[k][0], cs[k][1])] = 1;
  }

  // distance to the nearest cone corner of the owner rect
  auto corner_dist = [&](int r, const Eigen::Vector2d& p) {
    const double w = f.rects[r].w, h = f.rects[r].h;
    const std::array<Eigen::Vector2d, 4> pos = {
        Eigen::Vector2d(0, 0), Eigen::Vector2d(w, 0), Eigen::Vector2d(w, h), Eigen::Vector2d(0, h)};
    double d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k)
      if (corner_cone[4 * r + k]) d = std::min(d, (p - pos[k]).norm());
    return d;
  };
  m.vdist_cone.resize(m.n_vertices());
  for (int v = 0; v < m.n_vertices(); ++v) m.vdist_cone[v] = corner_dist(m.vchart[v], m.vpos[v]);

  // faces: two per cell, lower (v00,v10,v11) then upper (v00,v11,v01)
  std::vector<int> foff(nr + 1, 0);
  for (int r = 0; r < nr; ++r) foff[r + 1] = foff[r] + 2 * m.nx[r] * m.ny[r];
  auto face_id = [&](int r, int cx, int cy, int half) { return foff[r] + 2 * (cy * m.nx[r] + cx) + half; };

  for (int r = 0; r < nr; ++r)
    for (int cy = 0; cy < m.ny[r]; ++cy)
      for (int cx = 0; cx < m.nx[r]; ++cx) {
        const std::array<std::array<int, 2>, 4> g4 = {{{cx, cy}, {cx + 1, cy}, {cx + 1, cy + 1}, {cx, cy + 1}}};
        for (int half = 0; half < 2; ++half) {
          // corner grid indices: lower = BL, BR, TR; upper = BL, TR, TL
          const std::array<int, 3> pick = half == 0 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 3};
          std::array<int, 3> t;
          std::array<Eigen::Vector2d, 3> tp;
          std::array<std::uint8_t, 3> par;
          for (int k = 0; k < 3; ++k) {
            const auto [ix, iy] = std::pair(g4[pick[k]][0], g4[pick[k]][1]);
            t[k] = vertex_of(r, ix, iy);
            tp[k] = gpos(r, ix, iy);
            par[k] = parity_of(r, ix, iy);
          }
          m.tri.push_back(t);
          m.tpos.push_back(tp);
          m.tparity.push_back(par);
          m.tchart.push_back(r);
          m.tcell.push_back(cy * m.nx[r] + cx);
          m.thalf.push_back(static_cast<std::uint8_t>(half));
          const Eigen::Vector2d e1 = tp[1] - tp[0], e2 = tp[2] - tp[0];
          m.tarea.push_back(0.5 * (e1.x() * e2.y() - e1.y() * e2.x()));
          m.tframe.push_back(0.0);
          m.tdist_cone.push_back(corner_dist(r, (tp[0] + tp[1] + tp[2]) / 3.0));
        }
      }

  // adjacency; edge k of a face is opposite corner k
  m.adj.assign(m.n_faces(), {});
  auto cross_face = [&](int r, Side s, int c) -> std::pair<int, int> {
    const SideRef ref = tbl[r][static_cast<int>(s)];
    const int count = side_count(ref.rect, ref.side);
    const int c2 = ref.iso == GlueIso::half_turn ? count - 1 - c : c;
    switch (ref.side) {
      case Side::L: return {face_id(ref.rect, 0, c2, 1), 1};
      case Side::R: return {face_id(ref.rect, m.nx[ref.rect] - 1, c2, 0), 0};
      case Side::B: return {face_id(ref.rect, c2, 0, 0), 2};
      case Side::T: return {face_id(ref.rect, c2, m.ny[ref.rect] - 1, 1), 0};
    }
    return {-1, -1};
  };
  for (int r = 0; r < nr; ++r)
    for (int cy = 0; cy < m.ny[r]; ++cy)
      for (int cx = 0; cx < m.nx[r]; ++cx) {
        const int lo = face_id(r, cx, cy, 0), up = face_id(r, cx, cy, 1);
        m.adj[lo][1] = {up, 0};
        m.adj[up][2] = {lo, 0};
        // lower edge 0: right side of the cell
        if (cx + 1 < m.nx[r])
          m.adj[lo][0] = {face_id(r, cx + 1, cy, 1), 0};
        else {
          auto [nf, ne] = cross_face(r, Side::R, cy);
          (void)ne;
          m.adj[lo][0] = {nf, static_cast<std::uint8_t>(tbl[r][1].iso == GlueIso::half_turn ? 1 : 0)};
        }
        // lower edge 2: bottom side
        if (cy > 0)
          m.adj[lo][2] = {face_id(r, cx, cy - 1, 1), 0};
        else {
          auto [nf, ne] = cross_face(r, Side::B, cx);
          (void)ne;
          m.adj[lo][2] = {nf, static_cast<std::uint8_t>(tbl[r][2].iso == GlueIso::half_turn ? 1 : 0)};
        }
        // upper edge 0: top side
        if (cy + 1 < m.ny[r])
          m.adj[up][0] = {face_id(r, cx, cy + 1, 0), 0};
        else {
          auto [nf, ne] = cross_face(r, Side::T, cx);
          (void)ne;
          m.adj[up][0] = {nf, static_cast<std::uint8_t>(tbl[r][3].iso == GlueIso::half_turn ? 1 : 0)};
        }
        // upper edge 1: left side
        if (cx > 0)
          m.adj[up][1] = {face_id(r, cx - 1, cy, 0), 0};
        else {
          auto [nf, ne] = cross_face(r, Side::L, cy);
          (void)ne;
          m.adj[up][1] = {nf, static_cast<std::uint8_t>(tbl[r][0].iso == GlueIso::half_turn ? 1 : 0)};
        }
      }

  // vertex stars and total angles, accumulated in face order
  m.vstar.assign(m.n_vertices(), {});
  m.vangle.assign(m.n_vertices(), 0.0);
  for (int fct = 0; fct < m.n_faces(); ++fct)
    for (int k = 0; k < 3; ++k) {
      m.vstar[m.tri[fct][k]].push_back({fct, k});
      const Eigen::Vector2d a = m.tpos[fct][(k + 1) % 3] - m.tpos[fct][k];
      const Eigen::Vector2d b = m.tpos[fct][(k + 2) % 3] - m.tpos[fct][k];
      const double cosv = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
      m.vangle[m.tri[fct][k]] += std::acos(cosv);
    }

  return m;
}

QdField qd_field(const TriangleMesh& m) {
  QdField q;
  q.coeff.assign(m.n_faces(), std::complex<double>(1.0, 0.0));

  // phase jump across an edge must equal twice the chart rotation
  double max_err = 0.0;
  for (int fct = 0; fct < m.n_faces(); ++fct)
    for (int k = 0; k < 3; ++k) {
      const auto [nbr, parity] = m.adj[fct][k];
      const double rot = parity ? std::numbers::pi : 0.0;
      const double jump = std::arg(q.coeff[nbr]) - std::arg(q.coeff[fct]) + 2.0 * rot;
      max_err = std::max(max_err, std::abs(std::remainder(jump, 2.0 * std::numbers::pi)));
    }
  q.max_edge_phase_error = max_err;

  // accumulated phase around each cone vertex must close up to a multiple of 2*pi
  double max_hol = 0.0;
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (!m.vcone[v] || m.vstar[v].empty()) continue;
    const int f0 = m.vstar[v][0][0];
    int fct = f0, corner = m.vstar[v][0][1];
    int entry_edge = -1;
    double phase = 0.0;
    size_t steps = 0;
    do {
      // cross one of the two edges at this corner, not the one we came in by
      int k1 = (corner + 1) % 3, k2 = (corner + 2) % 3;
      const int exit_edge = (k1 == entry_edge) ? k2 : k1;
      const auto [nbr, parity] = m.adj[fct][exit_edge];
      phase += parity ? 2.0 * std::numbers::pi : 0.0;
      // find the corner of nbr at v and the edge we entered by
      int ncorner = -1;
      for (int k = 0; k < 3; ++k)
        if (m.tri[nbr][k] == v) ncorner = k;
      int nentry = -1;
      for (int k = 0; k < 3; ++k)
        if (k != ncorner && m.adj[nbr][k].nbr == fct) nentry = k;
      fct = nbr;
      corner = ncorner;
      entry_edge = nentry;
      if (++steps > m.vstar[v].size() + 1) throw Error("cone loop failed to close");
    } while (fct != f0);
    max_hol = std::max(max_hol, std::abs(std::remainder(phase, 2.0 * std::numbers::pi)));
  }
  q.max_cone_holonomy_defect = max_hol;
  return q;
}

}  // namespace folia
