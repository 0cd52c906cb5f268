#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "folia/mesh.hpp"

namespace folia {

// Every kernel has a serial reference and an OpenMP implementation that writes
// only per-slot outputs, so the two agree bitwise. The global mode picks which
// one the unsuffixed entry points dispatch to.
enum class ExecMode { serial, parallel };

ExecMode exec_mode();
void set_exec_mode(ExecMode mode);

template <class F>
void for_index(int n, F&& f) {
#ifdef FOLIA_OPENMP
  if (exec_mode() == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (int i = 0; i < n; ++i) f(i);
}

// cotangents, corner angles and area per face, optionally under a per-face
// symmetric metric (lengths l^2 = e^T C e); throws DegenerateTriangle
struct FaceCotan {
  std::array<double, 3> cot;
  std::array<double, 3> angle;
  double area;
};

std::vector<FaceCotan> cotan_corners_serial(const TriangleMesh& m,
                                            const std::vector<Eigen::Matrix2d>* metric = nullptr);
std::vector<FaceCotan> cotan_corners_parallel(const TriangleMesh& m,
                                              const std::vector<Eigen::Matrix2d>* metric = nullptr);
std::vector<FaceCotan> cotan_corners(const TriangleMesh& m,
                                     const std::vector<Eigen::Matrix2d>* metric = nullptr);

// piecewise-linear gradient per face, in the face chart; built from corner
// differences so a constant field yields exact zeros
std::vector<Eigen::Vector2d> face_gradient_serial(const TriangleMesh& m, const std::vector<double>& u);
std::vector<Eigen::Vector2d> face_gradient_parallel(const TriangleMesh& m, const std::vector<double>& u);
std::vector<Eigen::Vector2d> face_gradient(const TriangleMesh& m, const std::vector<double>& u);

// area-weighted average of face vectors at each vertex, rotated into the
// vertex chart (gluing parities act by sign flips); folds stars in face order
std::vector<Eigen::Vector2d> vertex_average_gradient_serial(const TriangleMesh& m,
                                                            const std::vector<Eigen::Vector2d>& g);
std::vector<Eigen::Vector2d> vertex_average_gradient_parallel(const TriangleMesh& m,
                                                              const std::vector<Eigen::Vector2d>& g);
std::vector<Eigen::Vector2d> vertex_average_gradient(const TriangleMesh& m,
                                                     const std::vector<Eigen::Vector2d>& g);

// symmetrized two-pass Hessian per face: gradient, vertex average, gradient again
std::vector<Eigen::Matrix2d> face_hessian_serial(const TriangleMesh& m, const std::vector<double>& u);
std::vector<Eigen::Matrix2d> face_hessian_parallel(const TriangleMesh& m, const std::vector<double>& u);
std::vector<Eigen::Matrix2d> face_hessian(const TriangleMesh& m, const std::vector<double>& u);

// mean of the three corner values per face
std::vector<double> face_average_serial(const TriangleMesh& m, const std::vector<double>& u);
std::vector<double> face_average_parallel(const TriangleMesh& m, const std::vector<double>& u);
std::vector<double> face_average(const TriangleMesh& m, const std::vector<double>& u);

}  // namespace folia
