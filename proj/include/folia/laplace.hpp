#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "folia/kernels.hpp"
#include "folia/mesh.hpp"

namespace folia {

// cotangent stiffness, lumped mass and angle-defect loads, all indexed in the
// canonical vertex order (chart, gy, gx) so results do not depend on input
// labeling; canon/mesh_of translate between the two index spaces
struct Operators {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
  Eigen::VectorXd defect;
  std::vector<int> canon;
  std::vector<int> mesh_of;
  std::vector<int> face_order;
};

Operators assemble(const TriangleMesh& m, const std::vector<FaceCotan>& fc);

}  // namespace folia
