#pragma once
// Exact LMMSE error covariances and distortions for a sampling plan. Two
// algebraically equivalent routes are implemented: the gain form
//   Ce = Cx - Cx A^T (A Cx A^T + Cn)^{-1} A Cx
// and the information form
//   Ce = (A^T Cn^{-1} A + Cx^{-1})^{-1}.
// For the remote target A = Qa, Cn = CzTilde, Cx = I; for the corrupted-stack
// target A = Qb, Cn = Cz, Cx = Lambda (x) I. Distortions are half the error
// covariance traces.

#include <cstdint>

#include <Eigen/Dense>

#include "remsamp/harmonics.hpp"
#include "remsamp/model.hpp"

namespace remsamp {

enum class CovForm { gain, information };

struct DistortionReport {
  double Da = 0.0;                  // remote-signal distortion
  double Db = 0.0;                  // corrupted-stack distortion
  double trace_Ce_a = 0.0;
  double trace_Ce_b = 0.0;
  double form_discrepancy = 0.0;    // max rel gap between the two routes
  double condition_estimate = 0.0;  // worst conditioning among solved systems
};

struct DistortionOptions {
  // Above this many total samples the dense dual-form path is skipped and the
  // information form is evaluated through per-signal Gram matrices.
  std::int64_t max_dual_form_m = 2048;
};

Eigen::MatrixXd error_cov_remote(const HarmonicSystem& sys, CovForm form);
Eigen::MatrixXd error_cov_corrupted(const HarmonicSystem& sys, CovForm form);

DistortionReport distortion(const ModelConfig& cfg, const SamplingPlan& plan,
                            const DistortionOptions& opts = {});

struct Estimates {
  Eigen::VectorXd xhat;   // remote coefficients, 2N
  Eigen::VectorXd xihat;  // stacked corrupted coefficients, 2Nk
};

// LMMSE gains for both targets from one Cholesky factorization:
// Qb (Lambda (x) I) Qb^T + Cz and Qa Qa^T + CzTilde are the same matrix.
class LmmseFilter {
 public:
  LmmseFilter(const ModelConfig& cfg, const SamplingPlan& plan);

  // y is the stacked sample vector [Y_1; ...; Y_k], length m.
  Estimates apply(const Eigen::VectorXd& y) const;

  const HarmonicSystem& system() const { return sys_; }
  const Eigen::MatrixXd& remote_gain() const { return Wa_; }
  const Eigen::MatrixXd& corrupted_gain() const { return Wb_; }

 private:
  HarmonicSystem sys_;
  Eigen::MatrixXd Wa_;  // 2N x m
  Eigen::MatrixXd Wb_;  // 2Nk x m
};

Estimates reconstruct(const ModelConfig& cfg, const SamplingPlan& plan,
                      const Eigen::VectorXd& noisy_samples);

}  // namespace remsamp
