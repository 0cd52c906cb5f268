#include "folia/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "folia/errors.hpp"

namespace folia {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur)) {
    const size_t hash = cur.find('#');
    if (hash != std::string::npos) cur.erase(hash);
    while (!cur.empty() && (cur.back() == ' ' || cur.back() == '\t' || cur.back() == '\r')) cur.pop_back();
    size_t start = cur.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    lines.push_back(cur.substr(start));
  }
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError("bad number '" + s + "'");
  return v;
}

long parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) throw ParseError("bad integer '" + s + "'");
  return v;
}

const char* side_tag(Side s) {
  switch (s) {
    case Side::L: return "L";
    case Side::R: return "R";
    case Side::B: return "B";
    case Side::T: return "T";
  }
  return "?";
}

Side parse_side(const std::string& s) {
  if (s == "L") return Side::L;
  if (s == "R") return Side::R;
  if (s == "B") return Side::B;
  if (s == "T") return Side::T;
  throw ParseError("bad side tag '" + s + "'");
}

const char* iso_tag(GlueIso g) { return g == GlueIso::translation ? "translation" : "half_turn"; }

GlueIso parse_iso(const std::string& s) {
  if (s == "translation") return GlueIso::translation;
  if (s == "half_turn") return GlueIso::half_turn;
  throw ParseError("bad isometry tag '" + s + "'");
}

std::string join17(const std::vector<double>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += fmt17(xs[i]);
  }
  return out;
}

}  // namespace

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

SurfaceSpec read_surface_file(const std::string& path) {
  std::map<std::string, std::string> kv;
  for (const std::string& line : split_lines(read_text_file(path))) {
    const size_t sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : line.substr(line.find_first_not_of(" \t", sp));
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "' in " + path);
    kv[key] = rest;
  }
  for (const auto& [key, value] : kv)
    if (key != "n" && key != "perm_h" && key != "perm_v" && key != "weights_h" && key != "weights_v")
      throw ParseError("unknown key '" + key + "' in " + path);
  if (!kv.count("n") || !kv.count("perm_h") || !kv.count("perm_v"))
    throw ParseError("surface file needs n, perm_h and perm_v");
  SurfaceSpec spec;
  spec.n = static_cast<int>(parse_int(kv["n"]));
  spec.perm_h = parse_cycles(kv["perm_h"], spec.n);
  spec.perm_v = parse_cycles(kv["perm_v"], spec.n);
  for (const char* key : {"weights_h", "weights_v"}) {
    if (!kv.count(key)) continue;
    std::vector<double>& out = key[8] == 'h' ? spec.weights_h : spec.weights_v;
    for (const std::string& t : tokens(kv[key])) out.push_back(parse_double(t));
  }
  return spec;
}

void write_surface_file(const std::string& path, const SurfaceSpec& spec) {
  std::string out;
  out += "n " + std::to_string(spec.n) + "\n";
  out += "perm_h " + format_cycles(spec.perm_h) + "\n";
  out += "perm_v " + format_cycles(spec.perm_v) + "\n";
  if (!spec.weights_h.empty()) out += "weights_h " + join17(spec.weights_h) + "\n";
  if (!spec.weights_v.empty()) out += "weights_v " + join17(spec.weights_v) + "\n";
  write_text_file(path, out);
}

void write_flat_surface(const std::string& path, const FlatSurface& f) {
  std::string out = "flatsurface\n";
  out += "base_n " + std::to_string(f.base.n) + "\n";
  out += "base_perm_h " + format_cycles(f.base.perm_h) + "\n";
  out += "base_perm_v " + format_cycles(f.base.perm_v) + "\n";
  out += "base_weights_h " + join17(f.base.weights_h) + "\n";
  out += "base_weights_v " + join17(f.base.weights_v) + "\n";
  out += "rects " + std::to_string(f.rects.size()) + "\n";
  for (size_t i = 0; i < f.rects.size(); ++i)
    out += "rect " + std::to_string(i) + " " + fmt17(f.rects[i].w) + " " + fmt17(f.rects[i].h) + "\n";
  out += "gluings " + std::to_string(f.gluings.size()) + "\n";
  for (const Gluing& g : f.gluings)
    out += std::string("glue ") + std::to_string(g.rect_a) + " " + side_tag(g.side_a) + " " +
           std::to_string(g.rect_b) + " " + side_tag(g.side_b) + " " + iso_tag(g.iso) + "\n";
  size_t ncones = 0;
  for (const VertexClass& vc : f.vertices)
    if (vc.cone) ++ncones;
  out += "cones " + std::to_string(ncones) + "\n";
  for (const VertexClass& vc : f.vertices) {
    if (!vc.cone) continue;
    out += "cone " + fmt17(vc.angle) + " corners";
    for (const auto& c : vc.corners) out += " " + std::to_string(c[0]) + ":" + std::to_string(c[1]);
    out += "\n";
  }
  out += "end\n";
  write_text_file(path, out);
}

FlatSurface read_flat_surface(const std::string& path) {
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty() || lines[0] != "flatsurface") throw ParseError("not a flat surface file: " + path);
  std::map<std::string, std::string> base;
  std::vector<std::vector<std::string>> rects, gluings, cones;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto t = tokens(lines[i]);
    if (t[0] == "end") break;
    if (t[0].rfind("base_", 0) == 0) {
      const size_t sp = lines[i].find_first_of(" \t");
      base[t[0]] = sp == std::string::npos ? "" : lines[i].substr(lines[i].find_first_not_of(" \t", sp));
    } else if (t[0] == "rect")
      rects.push_back(t);
    else if (t[0] == "glue")
      gluings.push_back(t);
    else if (t[0] == "cone")
      cones.push_back(t);
    else if (t[0] != "rects" && t[0] != "gluings" && t[0] != "cones")
      throw ParseError("unexpected line '" + lines[i] + "' in " + path);
  }
  if (!base.count("base_n")) throw ParseError("missing base_n in " + path);
  const int n = static_cast<int>(parse_int(base["base_n"]));
  std::vector<double> wh, wv;
  for (const std::string& t : tokens(base["base_weights_h"])) wh.push_back(parse_double(t));
  for (const std::string& t : tokens(base["base_weights_v"])) wv.push_back(parse_double(t));
  const CombinatorialSurface cs =
      build_surface(n, parse_cycles(base["base_perm_h"], n), parse_cycles(base["base_perm_v"], n), wh, wv);
  FlatSurface f = realize(cs);

  if (rects.size() != f.rects.size()) throw ParseError("rectangle count mismatch in " + path);
  for (const auto& t : rects) {
    if (t.size() != 4) throw ParseError("bad rect line in " + path);
    const int id = static_cast<int>(parse_int(t[1]));
    if (id < 0 || id >= static_cast<int>(f.rects.size()) || parse_double(t[2]) != f.rects[id].w ||
        parse_double(t[3]) != f.rects[id].h)
      throw ParseError("rectangle table disagrees with generating data in " + path);
  }
  if (gluings.size() != f.gluings.size()) throw ParseError("gluing count mismatch in " + path);
  for (size_t i = 0; i < gluings.size(); ++i) {
    const auto& t = gluings[i];
    if (t.size() != 6) throw ParseError("bad glue line in " + path);
    const Gluing& g = f.gluings[i];
    if (parse_int(t[1]) != g.rect_a || parse_side(t[2]) != g.side_a || parse_int(t[3]) != g.rect_b ||
        parse_side(t[4]) != g.side_b || parse_iso(t[5]) != g.iso)
      throw ParseError("gluing table disagrees with generating data in " + path);
  }
  size_t ci = 0;
  for (const VertexClass& vc : f.vertices) {
    if (!vc.cone) continue;
    if (ci >= cones.size() || parse_double(cones[ci][1]) != vc.angle)
      throw ParseError("cone table disagrees with generating data in " + path);
    ++ci;
  }
  if (ci != cones.size()) throw ParseError("cone count mismatch in " + path);
  return f;
}

void write_mesh(const std::string& path, const TriangleMesh& m) {
  std::string out = "mesh h_target " + fmt17(m.h_target) + "\n";
  out += "vertices " + std::to_string(m.n_vertices()) + "\n";
  for (int v = 0; v < m.n_vertices(); ++v)
    out += "v " + std::to_string(v) + " " + std::to_string(m.vchart[v]) + " " +
           std::to_string(m.vgx[v]) + " " + std::to_string(m.vgy[v]) + " " + fmt17(m.vpos[v].x()) +
           " " + fmt17(m.vpos[v].y()) + " " + fmt17(m.vangle[v]) + " " +
           std::to_string(static_cast<int>(m.vcone[v])) + "\n";
  out += "faces " + std::to_string(m.n_faces()) + "\n";
  for (int f = 0; f < m.n_faces(); ++f)
    out += "f " + std::to_string(f) + " " + std::to_string(m.tri[f][0]) + " " +
           std::to_string(m.tri[f][1]) + " " + std::to_string(m.tri[f][2]) + " " +
           std::to_string(m.tchart[f]) + " " + std::to_string(m.tcell[f]) + " " +
           std::to_string(static_cast<int>(m.thalf[f])) + " " + fmt17(m.tframe[f]) + " " +
           std::to_string(static_cast<int>(m.tparity[f][0])) +
           std::to_string(static_cast<int>(m.tparity[f][1])) +
           std::to_string(static_cast<int>(m.tparity[f][2])) + "\n";
  out += "end\n";
  write_text_file(path, out);
}

void write_metric_field(const std::string& path, const MetricField& f) {
  const char* tag = f.background == Background::flat
                        ? "flat"
                        : (f.background == Background::hyperbolic ? "hyperbolic" : "face_metric");
  std::string out = std::string("metricfield ") + tag + " " + std::to_string(f.u.size()) + "\n";
  for (size_t i = 0; i < f.u.size(); ++i)
    out += "u " + std::to_string(i) + " " + fmt17(f.u[i]) + "\n";
  out += "end\n";
  write_text_file(path, out);
}

MetricField read_metric_field(const std::string& path) {
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty()) throw ParseError("empty metric field file: " + path);
  auto head = tokens(lines[0]);
  if (head.size() != 3 || head[0] != "metricfield") throw ParseError("bad metric field header in " + path);
  MetricField f;
  if (head[1] == "flat")
    f.background = Background::flat;
  else if (head[1] == "hyperbolic")
    f.background = Background::hyperbolic;
  else if (head[1] == "face_metric")
    f.background = Background::face_metric;
  else
    throw ParseError("bad background tag in " + path);
  f.u.assign(parse_int(head[2]), 0.0);
  for (size_t i = 1; i < lines.size(); ++i) {
    auto t = tokens(lines[i]);
    if (t[0] == "end") break;
    if (t.size() != 3 || t[0] != "u") throw ParseError("bad metric field line in " + path);
    const long id = parse_int(t[1]);
    if (id < 0 || id >= static_cast<long>(f.u.size())) throw ParseError("vertex id out of range in " + path);
    f.u[id] = parse_double(t[2]);
  }
  return f;
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += '\t';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += row[i];
    }
    out += '\n';
  }
  write_text_file(path, out);
}

HPJet read_jet_file(const std::string& path) {
  const auto lines = split_lines(read_text_file(path));
  std::vector<std::string> all;
  for (const std::string& line : lines)
    for (const std::string& t : tokens(line)) all.push_back(t);
  size_t pos = 0;
  auto next = [&]() -> std::string {
    if (pos >= all.size()) throw ParseError("truncated jet file: " + path);
    return all[pos++];
  };
  if (all.empty() || next() != "jet") throw ParseError("not a jet file: " + path);
  HPJet j;
  std::map<std::string, bool> seen;
  for (;;) {
    const std::string label = next();
    if (label == "end") break;
    if (seen[label]) throw ParseError("duplicate block '" + label + "' in " + path);
    seen[label] = true;
    if (label == "A0" || label == "A1") {
      Eigen::Matrix3d& mref = label == "A0" ? j.A0 : j.A1;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) mref(r, c) = parse_double(next());
    } else if (label == "v0" || label == "v1") {
      Eigen::RowVector3d& vref = label == "v0" ? j.v0 : j.v1;
      for (int c = 0; c < 3; ++c) vref[c] = parse_double(next());
    } else if (label == "w0" || label == "w1") {
      Eigen::Vector3d& wref = label == "w0" ? j.w0 : j.w1;
      for (int r = 0; r < 3; ++r) wref[r] = parse_double(next());
    } else if (label == "a0")
      j.a0 = parse_double(next());
    else if (label == "a1")
      j.a1 = parse_double(next());
    else
      throw ParseError("unknown block '" + label + "' in " + path);
  }
  return j;
}

std::string format_hp_element(const HPElement& x) {
  std::string out;
  for (int r = 0; r < 3; ++r)
    out += fmt17(x.A(r, 0)) + " " + fmt17(x.A(r, 1)) + " " + fmt17(x.A(r, 2)) + " 0\n";
  out += fmt17(x.v[0]) + " " + fmt17(x.v[1]) + " " + fmt17(x.v[2]) + " " + std::to_string(x.eps) + "\n";
  return out;
}

}  // namespace folia
