#include "remsamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "remsamp/errors.hpp"

namespace remsamp {

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Eigen::LLT<Eigen::MatrixXd> spd_llt(const Eigen::MatrixXd& A, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw NumericalFailure(std::string("Cholesky factorization failed: ") + what);
  return llt;
}

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const char* what) {
  return spd_llt(A, what).solve(B);
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A, const char* what) {
  Eigen::MatrixXd inv = spd_llt(A, what).solve(
      Eigen::MatrixXd::Identity(A.rows(), A.cols()));
  return 0.5 * (inv + inv.transpose());
}

double sym_condition(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A,
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  const double tiny = 1e-300;
  return std::abs(hi) / std::max(std::abs(lo), tiny);
}

double rel_gap_max(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionMismatch("rel_gap_max: shape mismatch");
  if (A.size() == 0) return 0.0;
  const double scale = std::max({A.cwiseAbs().maxCoeff(),
                                 B.cwiseAbs().maxCoeff(), 1e-300});
  return (A - B).cwiseAbs().maxCoeff() / scale;
}

}  // namespace remsamp
