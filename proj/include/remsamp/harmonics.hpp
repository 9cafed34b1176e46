#pragma once
// Trigonometric sampling matrices and the covariance blocks of the model.
// Row j of a signal matrix is [cos(N1 w t_j) .. cos(N2 w t_j),
// sin(N1 w t_j) .. sin(N2 w t_j)]; every row has squared norm exactly N.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "remsamp/model.hpp"

namespace remsamp {

struct HarmonicSystem {
  ModelConfig cfg;
  std::vector<Eigen::MatrixXd> Qi;  // per-signal trig matrices, m_i x 2N
  Eigen::MatrixXd Qa;               // vertical stack of the Qi, m x 2N
  Eigen::MatrixXd Qb;               // direct sum of the Qi, m x 2Nk
  Eigen::VectorXd Cz_diag;          // sampling-noise covariance diagonal, m
  Eigen::MatrixXd CzTilde;          // eta Qb Qb^T + Cz, effective remote noise
  Eigen::MatrixXd Lambda;           // cross-signal coefficient covariance, k x k
  Eigen::MatrixXd Gamma;            // Lambda^{-1}, closed form
  Eigen::MatrixXd LambdaSq;         // Lambda^2, closed form

  std::int64_t m() const { return Qa.rows(); }
};

// Signal matrix for one time list; times must lie in [0, T).
Eigen::MatrixXd build_Qi(const ModelConfig& cfg,
                         const std::vector<double>& times_i);

HarmonicSystem assemble(const ModelConfig& cfg, const SamplingPlan& plan);

// Closed forms: Lambda has 1+eta on the diagonal and 1 elsewhere; its inverse
// has (eta+k-1)/(eta(eta+k)) on the diagonal and -1/(eta(eta+k)) elsewhere;
// Lambda^2 has (1+eta)^2 + (k-1) on the diagonal and 2(1+eta) + (k-2) elsewhere.
Eigen::MatrixXd lambda_matrix(int k, double eta);
Eigen::MatrixXd gamma_matrix(int k, double eta);
Eigen::MatrixXd lambda_sq_matrix(int k, double eta);

// True iff Qa Qa^T == N I and Qb Qb^T == N I to abs 1e-10 N. Requires every
// time to sit on the grid {j T/N} (tol 1e-9 T) and all grid slots distinct
// across signals; throws PreconditionViolated otherwise.
bool check_fact_grid(const ModelConfig& cfg, const SamplingPlan& plan);

// True iff every Qi^T Qi == (m_i/2) I to abs 1e-10 m_i. Requires every signal
// to be uniformly sampled ({j T/m_i}, any order) with m_i > 2 N2.
bool check_fact_uniform(const ModelConfig& cfg, const SamplingPlan& plan);

// Qi^T Qi accumulated in fixed-size row chunks; never materializes Qi, so it
// scales to very large m_i.
Eigen::MatrixXd gram_matrix(const ModelConfig& cfg,
                            const std::vector<double>& times_i);

}  // namespace remsamp
