#include "folia/laplace.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <tuple>

namespace folia {

Operators assemble(const TriangleMesh& m, const std::vector<FaceCotan>& fc) {
  const int nv = m.n_vertices();
  const int nf = m.n_faces();

  Operators op;
  op.mesh_of.resize(nv);
  std::iota(op.mesh_of.begin(), op.mesh_of.end(), 0);
  std::sort(op.mesh_of.begin(), op.mesh_of.end(), [&](int a, int b) {
    return std::tuple(m.vchart[a], m.vgy[a], m.vgx[a]) < std::tuple(m.vchart[b], m.vgy[b], m.vgx[b]);
  });
  op.canon.resize(nv);
  for (int i = 0; i < nv; ++i) op.canon[op.mesh_of[i]] = i;

  op.face_order.resize(nf);
  std::iota(op.face_order.begin(), op.face_order.end(), 0);
  std::sort(op.face_order.begin(), op.face_order.end(), [&](int a, int b) {
    return std::tuple(m.tchart[a], m.tcell[a], m.thalf[a]) < std::tuple(m.tchart[b], m.tcell[b], m.thalf[b]);
  });

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(12) * nf);
  op.mass = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd angle = Eigen::VectorXd::Zero(nv);
  for (int f : op.face_order) {
    for (int k = 0; k < 3; ++k) {
      const int i = op.canon[m.tri[f][(k + 1) % 3]];
      const int j = op.canon[m.tri[f][(k + 2) % 3]];
      const double w = 0.5 * fc[f].cot[k];
      trip.emplace_back(i, i, w);
      trip.emplace_back(j, j, w);
      trip.emplace_back(i, j, -w);
      trip.emplace_back(j, i, -w);
      const int c = op.canon[m.tri[f][k]];
      op.mass[c] += fc[f].area / 3.0;
      angle[c] += fc[f].angle[k];
    }
  }
  op.stiffness.resize(nv, nv);
  op.stiffness.setFromTriplets(trip.begin(), trip.end());
  op.defect = Eigen::VectorXd::Constant(nv, 2.0 * std::numbers::pi) - angle;
  return op;
}

}  // namespace folia
