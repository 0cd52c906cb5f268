#include "folia/conformal.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

#include "folia/errors.hpp"
#include "folia/kernels.hpp"

namespace folia {

namespace {

Eigen::VectorXd residual(const Operators& op, const Eigen::VectorXd& u) {
  return op.stiffness * u + op.defect + u.array().exp().square().matrix().cwiseProduct(op.mass);
}

double residual_norm(const Operators& op, const Eigen::VectorXd& r) {
  return r.cwiseQuotient(op.mass).cwiseAbs().maxCoeff();
}

}  // namespace

UniformizeResult uniformize(const TriangleMesh& m, const std::vector<Eigen::Matrix2d>* metric,
                            const SolveOptions& opts) {
  const auto fc = cotan_corners(m, metric);

  UniformizeResult res;
  res.op = assemble(m, fc);
  const Operators& op = res.op;
  const int nv = m.n_vertices();

  Eigen::VectorXd u = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd r = residual(op, u);
  double rn = residual_norm(op, r);
  res.stats.residual_history.push_back(rn);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;

  while (rn > opts.tol) {
    if (res.stats.iterations >= opts.max_iter)
      throw NonConvergedTolerance("uniformize stalled at residual " + std::to_string(rn));
    const Eigen::VectorXd e2u = u.array().exp().square().matrix();
    Eigen::SparseMatrix<double> jac = op.stiffness;
    const Eigen::VectorXd diag = 2.0 * e2u.cwiseProduct(op.mass);
    for (int i = 0; i < nv; ++i) jac.coeffRef(i, i) += diag[i];
    if (!analyzed) {
      ldlt.analyzePattern(jac);
      analyzed = true;
    }
    ldlt.factorize(jac);
    if (ldlt.info() != Eigen::Success) throw NewtonDiverged("uniformize factorization failed");
    const Eigen::VectorXd step = ldlt.solve(-r);

    double t = 1.0;
    int halvings = 0;
    Eigen::VectorXd u_try, r_try;
    double rn_try;
    for (;;) {
      u_try = u + t * step;
      r_try = residual(op, u_try);
      rn_try = residual_norm(op, r_try);
      if (std::isfinite(rn_try) && rn_try < rn) break;
      if (++halvings > opts.max_halvings)
        throw NewtonDiverged("uniformize line search failed at residual " + std::to_string(rn));
      t *= 0.5;
    }
    u = u_try;
    r = r_try;
    rn = rn_try;
    ++res.stats.iterations;
    res.stats.residual_history.push_back(rn);
  }

  res.stats.final_residual = rn;
  res.stats.converged = true;
  res.hyperbolic_area = u.array().exp().square().matrix().cwiseProduct(op.mass).sum();

  res.field.background = metric ? Background::face_metric : Background::flat;
  res.field.u.resize(nv);
  for (int i = 0; i < nv; ++i) res.field.u[op.mesh_of[i]] = u[i];
  return res;
}

}  // namespace folia
