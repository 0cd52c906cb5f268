#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>

#include "folia/errors.hpp"
#include "folia/io.hpp"

using namespace folia;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::path("io_scratch") / std::to_string(::rand());
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

SurfaceSpec ell_spec() {
  SurfaceSpec s;
  s.n = 3;
  s.perm_h = {1, 0, 2};
  s.perm_v = {2, 1, 0};
  s.weights_h = {1.0 / 3.0, 2.5};
  s.weights_v = {1e-3, 7.0};
  return s;
}

}  // namespace

TEST_CASE("seventeen digit round trip") {
  for (double x : {1.0 / 3.0, 3.141592653589793, 1e-300, -2.5e7, 0.1, -0.0, 4.0}) {
    const std::string s = fmt17(x);
    char* end = nullptr;
    CHECK_EQ(std::strtod(s.c_str(), &end), x);
    CHECK_EQ(end, s.c_str() + s.size());
  }
}

TEST_CASE("surface file round trip") {
  const TempDir tmp;
  const SurfaceSpec spec = ell_spec();
  write_surface_file(tmp("s.txt"), spec);
  const SurfaceSpec back = read_surface_file(tmp("s.txt"));
  CHECK_EQ(back.n, 3);
  CHECK_EQ(back.perm_h, spec.perm_h);
  CHECK_EQ(back.perm_v, spec.perm_v);
  CHECK_EQ(back.weights_h, spec.weights_h);
  CHECK_EQ(back.weights_v, spec.weights_v);

  write_surface_file(tmp("s2.txt"), back);
  CHECK_EQ(read_text_file(tmp("s.txt")), read_text_file(tmp("s2.txt")));
}

TEST_CASE("surface file rejects malformed input") {
  const TempDir tmp;
  write_text_file(tmp("dup.txt"), "n 3\nn 3\nperm_h (1 2)\nperm_v (1 3)\n");
  CHECK_THROWS_AS(read_surface_file(tmp("dup.txt")), ParseError);
  write_text_file(tmp("unk.txt"), "n 3\nperm_h (1 2)\nperm_v (1 3)\ncolor blue\n");
  CHECK_THROWS_AS(read_surface_file(tmp("unk.txt")), ParseError);
  write_text_file(tmp("missing.txt"), "n 3\nperm_h (1 2)\n");
  CHECK_THROWS_AS(read_surface_file(tmp("missing.txt")), ParseError);
  CHECK_THROWS_AS(read_surface_file(tmp("absent.txt")), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const TempDir tmp;
  write_text_file(tmp("c.txt"),
                  "# generated\n\nn 3\t\nperm_h (1 2)  # swap\nperm_v (1 3)\n   \n");
  const SurfaceSpec spec = read_surface_file(tmp("c.txt"));
  CHECK_EQ(spec.n, 3);
  CHECK_EQ(spec.perm_h, Perm{1, 0, 2});
  CHECK(spec.weights_h.empty());
}

TEST_CASE("flat surface round trip verifies against the generating data") {
  const TempDir tmp;
  const FlatSurface f =
      realize(build_surface(3, {1, 0, 2}, {2, 1, 0}, {1.0 / 3.0, 2.5}, {1e-3, 7.0}));
  write_flat_surface(tmp("f.txt"), f);
  const FlatSurface back = read_flat_surface(tmp("f.txt"));
  REQUIRE_EQ(back.rects.size(), f.rects.size());
  for (size_t i = 0; i < f.rects.size(); ++i) {
    CHECK_EQ(back.rects[i].w, f.rects[i].w);
    CHECK_EQ(back.rects[i].h, f.rects[i].h);
  }
  REQUIRE_EQ(back.gluings.size(), f.gluings.size());
  CHECK_EQ(back.area, f.area);

  // a corrupted rectangle entry no longer matches the rebuilt surface
  std::string text = read_text_file(tmp("f.txt"));
  const std::string needle = "rect 1 7 ";
  REQUIRE_NE(text.find(needle), std::string::npos);
  text.replace(text.find(needle), needle.size(), "rect 1 8 ");
  write_text_file(tmp("bad.txt"), text);
  CHECK_THROWS_AS(read_flat_surface(tmp("bad.txt")), ParseError);

  write_text_file(tmp("alien.txt"), "something else\n");
  CHECK_THROWS_AS(read_flat_surface(tmp("alien.txt")), ParseError);
}

TEST_CASE("metric field round trip keeps bits and background") {
  const TempDir tmp;
  for (Background bg : {Background::flat, Background::hyperbolic, Background::face_metric}) {
    MetricField f;
    f.background = bg;
    f.u = {0.1, -1.0 / 3.0, 5e-17, -0.0};
    write_metric_field(tmp("m.txt"), f);
    const MetricField back = read_metric_field(tmp("m.txt"));
    CHECK_EQ(back.background, bg);
    CHECK_EQ(back.u, f.u);
  }
  write_text_file(tmp("badbg.txt"), "metricfield curved 1\nu 0 0\nend\n");
  CHECK_THROWS_AS(read_metric_field(tmp("badbg.txt")), ParseError);
  write_text_file(tmp("badid.txt"), "metricfield flat 1\nu 5 0\nend\n");
  CHECK_THROWS_AS(read_metric_field(tmp("badid.txt")), ParseError);
}

TEST_CASE("mesh writer is deterministic") {
  const TempDir tmp;
  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, 0.25);
  write_mesh(tmp("a.txt"), m);
  write_mesh(tmp("b.txt"), m);
  const std::string a = read_text_file(tmp("a.txt"));
  CHECK_EQ(a, read_text_file(tmp("b.txt")));
  CHECK_EQ(a.rfind("mesh h_target", 0), 0);
  CHECK_NE(a.find("vertices "), std::string::npos);
  CHECK_NE(a.find("faces 96"), std::string::npos);
}

TEST_CASE("tab separated tables") {
  const TempDir tmp;
  write_table(tmp("t.tsv"), {"a", "b"}, {{"1", "2"}, {"x", "y"}});
  CHECK_EQ(read_text_file(tmp("t.tsv")), "a\tb\n1\t2\nx\ty\n");
}

TEST_CASE("jet files parse block by block") {
  const TempDir tmp;
  write_text_file(tmp("j.txt"),
                  "jet\n"
                  "A0 1 0 0 0 1 0 0 0 1\n"
                  "A1 0 1 0 1 0 0 0 0 0\n"
                  "v1 0.5 -1 2\n"
                  "w0 1 2 3\n"
                  "a1 -0.25\n"
                  "end\n");
  const HPJet j = read_jet_file(tmp("j.txt"));
  CHECK_EQ(j.A0, Eigen::Matrix3d::Identity());
  CHECK_EQ(j.A1(0, 1), 1.0);
  CHECK_EQ(j.v0.cwiseAbs().maxCoeff(), 0.0);  // absent block keeps the default
  CHECK_EQ(j.v1[2], 2.0);
  CHECK_EQ(j.w0[1], 2.0);
  CHECK_EQ(j.a0, 1.0);
  CHECK_EQ(j.a1, -0.25);

  write_text_file(tmp("dup.txt"), "jet\na0 1\na0 1\nend\n");
  CHECK_THROWS_AS(read_jet_file(tmp("dup.txt")), ParseError);
  write_text_file(tmp("trunc.txt"), "jet\nA0 1 0 0 0 1\n");
  CHECK_THROWS_AS(read_jet_file(tmp("trunc.txt")), ParseError);
  write_text_file(tmp("unk.txt"), "jet\nB2 1\nend\n");
  CHECK_THROWS_AS(read_jet_file(tmp("unk.txt")), ParseError);
  write_text_file(tmp("head.txt"), "matrix\nend\n");
  CHECK_THROWS_AS(read_jet_file(tmp("head.txt")), ParseError);
}

TEST_CASE("group elements print with the frozen zero column") {
  HPElement x;
  x.A = Eigen::Matrix3d::Identity();
  x.v << 1.0, 2.0, 3.0;
  x.eps = -1;
  CHECK_EQ(format_hp_element(x), "1 0 0 0\n0 1 0 0\n0 0 1 0\n1 2 3 -1\n");
}
