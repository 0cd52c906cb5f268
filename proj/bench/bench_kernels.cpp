// Times the per-face kernels in serial and parallel mode on a fine mesh.
#include <chrono>
#include <cstdio>
#include <vector>

#include "folia/curves.hpp"
#include "folia/flatsurf.hpp"
#include "folia/kernels.hpp"
#include "folia/mesh.hpp"

using namespace folia;

namespace {

double time_ms(int reps, auto&& fn) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  double h = 0.01;
  int reps = 20;
  if (argc > 1) h = std::atof(argv[1]);
  if (argc > 2) reps = std::atoi(argv[2]);

  const FlatSurface f = realize(build_surface(3, {1, 0, 2}, {2, 1, 0}));
  const TriangleMesh m = triangulate(f, h);
  std::printf("mesh: %d vertices, %d faces, h_target %g, %d reps\n", m.n_vertices(), m.n_faces(), h,
              reps);

  std::vector<double> field(m.n_vertices());
  for (int v = 0; v < m.n_vertices(); ++v) field[v] = 0.01 * (v % 17) - 0.05;

  struct Row {
    const char* name;
    double serial_ms, parallel_ms;
  };
  std::vector<Row> rows;

  auto bench = [&](const char* name, auto&& fn) {
    set_exec_mode(ExecMode::serial);
    const double ts = time_ms(reps, fn);
    set_exec_mode(ExecMode::parallel);
    const double tp = time_ms(reps, fn);
    rows.push_back({name, ts, tp});
  };

  bench("cotan_corners", [&] { cotan_corners(m, nullptr); });
  bench("face_gradient", [&] { face_gradient(m, field); });
  bench("vertex_average_gradient", [&] { vertex_average_gradient(m, face_gradient(m, field)); });
  bench("face_hessian", [&] { face_hessian(m, field); });
  bench("face_average", [&] { face_average(m, field); });

  std::printf("%-26s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
  for (const Row& r : rows)
    std::printf("%-26s %12.3f %12.3f %8.2f\n", r.name, r.serial_ms, r.parallel_ms,
                r.serial_ms / r.parallel_ms);
  set_exec_mode(ExecMode::parallel);
  return 0;
}
