#include "remsamp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "remsamp/errors.hpp"
#include "remsamp/harmonics.hpp"
#include "remsamp/linalg.hpp"

namespace remsamp {

namespace {

// sum_i m_i / (2(1+eta)N + 2 sigma_i^2)
double low_branch_sum(const ModelConfig& cfg) {
  const double N = cfg.N();
  double s = 0.0;
  for (int i = 0; i < cfg.k; ++i)
    s += static_cast<double>(cfg.m[i]) /
         (2.0 * (1.0 + cfg.eta) * N + 2.0 * cfg.sigma2[i]);
  return s;
}

bool all_above_nyquist(const ModelConfig& cfg) {
  for (auto mi : cfg.m)
    if (mi <= 2 * static_cast<std::int64_t>(cfg.N2)) return false;
  return true;
}

}  // namespace

PhiFunctionals phi_functionals(const ModelConfig& cfg) {
  validate_config(cfg);
  PhiFunctionals out;
  out.phi.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    out.phi[i] =
        static_cast<double>(cfg.m[i]) / (2.0 * cfg.sigma2[i]) + 1.0 / cfg.eta;
    out.Phi1 += out.phi[i];
    out.PhiMinus1 += 1.0 / out.phi[i];
    out.PhiMinus2 += 1.0 / (out.phi[i] * out.phi[i]);
  }
  return out;
}

BoundReport bound_remote(const ModelConfig& cfg) {
  const PhiFunctionals ph = phi_functionals(cfg);
  const double N = cfg.N();
  const double koe = cfg.k / cfg.eta;
  BoundReport r;
  r.target = Target::remote;
  r.low_branch = N - N * low_branch_sum(cfg);
  r.high_branch = N / ((1.0 + koe) - koe * koe / ph.Phi1);
  r.bound = std::max(r.low_branch, r.high_branch);
  r.tight_low = cfg.total_samples() <= N;
  r.tight_high = all_above_nyquist(cfg);
  return r;
}

BoundReport bound_corrupted(const ModelConfig& cfg) {
  const PhiFunctionals ph = phi_functionals(cfg);
  const double N = cfg.N();
  const double alpha = (1.0 + cfg.eta) * (1.0 + cfg.eta) + (cfg.k - 1.0);
  BoundReport r;
  r.target = Target::corrupted;
  r.low_branch = N * cfg.k * (1.0 + cfg.eta) - N * alpha * low_branch_sum(cfg);
  const double den = cfg.eta * (cfg.eta + cfg.k) - ph.PhiMinus1;
  if (std::abs(den) < 1e-14)
    throw DegenerateDenominator(
        "eta(eta+k) - Phi_{-1} within 1e-14 of zero");
  r.high_branch = N * ph.PhiMinus1 + N * ph.PhiMinus2 / den;
  r.bound = std::max(r.low_branch, r.high_branch);
  r.tight_low = cfg.total_samples() <= N;
  r.tight_high = all_above_nyquist(cfg);
  return r;
}

BoundReport bound_for(const ModelConfig& cfg, Target target) {
  return target == Target::remote ? bound_remote(cfg) : bound_corrupted(cfg);
}

double asymptotic_remote_floor(const ModelConfig& cfg) {
  validate_config(cfg);
  return cfg.N() / (1.0 + cfg.k / cfg.eta);
}

double closed_form_high_rate_corrupted(const ModelConfig& cfg) {
  validate_config(cfg);
  Eigen::MatrixXd A = gamma_matrix(cfg.k, cfg.eta);
  for (int i = 0; i < cfg.k; ++i)
    A(i, i) += static_cast<double>(cfg.m[i]) / (2.0 * cfg.sigma2[i]);
  return cfg.N() *
         spd_inverse(A, "high-rate corrupted closed form").trace();
}

}  // namespace remsamp
