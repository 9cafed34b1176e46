#pragma once
// Small dense linear-algebra helpers shared by the estimator and the
// randomized inequality checks.

#include <Eigen/Dense>

namespace remsamp {

// Kronecker product A (x) B, dense.
Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

// Cholesky factorization of a symmetric positive definite matrix; throws
// NumericalFailure naming `what` if the factorization reports a problem.
Eigen::LLT<Eigen::MatrixXd> spd_llt(const Eigen::MatrixXd& A, const char* what);

// A^{-1} B via Cholesky.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const char* what);

// Explicit SPD inverse (used only where the inverse itself is the result).
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A, const char* what);

// Eigenvalue-ratio condition estimate of a symmetric matrix.
double sym_condition(const Eigen::MatrixXd& A);

// max_ij |A_ij - B_ij| / max(max|A|, max|B|, tiny)
double rel_gap_max(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace remsamp
