#include "folia/gauss_solve.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

#include "folia/errors.hpp"
#include "folia/kernels.hpp"

namespace folia {

GaussResult solve_gauss(const TriangleMesh& m, const MetricField& u_hyp, const QdField& q,
                        double s, const GaussOptions& opts) {
  const auto fc = cotan_corners(m);
  const Operators op = assemble(m, fc);
  const int nv = m.n_vertices();

  Eigen::VectorXd uh(nv);
  for (int v = 0; v < nv; ++v) uh[op.canon[v]] = u_hyp.u[v];
  const Eigen::VectorXd mh = uh.array().exp().square().matrix().cwiseProduct(op.mass);

  Eigen::VectorXd qdens = Eigen::VectorXd::Zero(nv);
  for (int f : op.face_order) {
    const double a3 = m.tarea[f] / 3.0;
    const double f2 = std::norm(q.coeff[f]);
    for (int k = 0; k < 3; ++k) qdens[op.canon[m.tri[f][k]]] += a3 * f2;
  }
  const Eigen::VectorXd qq = (s * s) * (-2.0 * uh.array()).exp().matrix().cwiseProduct(qdens);

  auto residual = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return op.stiffness * u +
           mh.cwiseProduct((u.array().exp().square() - 1.0).matrix()) +
           (-2.0 * u.array()).exp().matrix().cwiseProduct(qq);
  };
  auto rnorm = [&](const Eigen::VectorXd& r) { return r.cwiseQuotient(mh).cwiseAbs().maxCoeff(); };

  GaussResult res;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd r = residual(u);
  double rn = rnorm(r);
  res.stats.residual_history.push_back(rn);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;

  while (rn > opts.tol) {
    if (res.stats.iterations >= opts.max_iter)
      throw NonConvergedTolerance("gauss solve stalled at residual " + std::to_string(rn));
    const Eigen::VectorXd e2u = u.array().exp().square().matrix();
    const Eigen::VectorXd em2u = (-2.0 * u.array()).exp().matrix();
    Eigen::SparseMatrix<double> jac = op.stiffness;
    const Eigen::VectorXd diag = 2.0 * (mh.cwiseProduct(e2u) - qq.cwiseProduct(em2u));
    for (int i = 0; i < nv; ++i) jac.coeffRef(i, i) += diag[i];
    if (!analyzed) {
      ldlt.analyzePattern(jac);
      analyzed = true;
    }
    ldlt.factorize(jac);
    if (ldlt.info() != Eigen::Success) throw NewtonDiverged("gauss solve factorization failed");
    const Eigen::VectorXd step = ldlt.solve(-r);

    double t = 1.0;
    int halvings = 0;
    for (;;) {
      const Eigen::VectorXd u_try = u + t * step;
      const Eigen::VectorXd r_try = residual(u_try);
      const double rn_try = rnorm(r_try);
      if (std::isfinite(rn_try) && rn_try < rn) {
        u = u_try;
        r = r_try;
        rn = rn_try;
        break;
      }
      if (++halvings > opts.max_halvings)
        throw NewtonDiverged("gauss solve line search failed at residual " + std::to_string(rn));
      t *= 0.5;
    }
    ++res.stats.iterations;
    res.stats.residual_history.push_back(rn);
  }

  res.stats.final_residual = rn;
  res.stats.converged = true;
  res.field.background = Background::hyperbolic;
  res.field.u.resize(nv);
  for (int i = 0; i < nv; ++i) res.field.u[op.mesh_of[i]] = u[i];

  // largest principal curvature magnitude over faces, from face averages
  const auto ub = face_average(m, res.field.u);
  const auto uhb = face_average(m, u_hyp.u);
  double lam = 0.0;
  for (int f = 0; f < m.n_faces(); ++f)
    lam = std::max(lam, std::abs(s) * std::abs(q.coeff[f]) * std::exp(-2.0 * (ub[f] + uhb[f])));
  res.lambda_max = lam;
  res.almost_fuchsian = lam < 1.0;
  res.curvature_warning = !res.almost_fuchsian;
  return res;
}

}  // namespace folia
