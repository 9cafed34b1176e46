#include "remsamp/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "remsamp/errors.hpp"

namespace remsamp {

double ModelConfig::omega() const { return 2.0 * std::numbers::pi / T; }

std::int64_t ModelConfig::total_samples() const {
  std::int64_t total = 0;
  for (auto mi : m) total += mi;
  return total;
}

void validate_config(const ModelConfig& cfg) {
  if (!(cfg.T > 0.0)) throw InvalidConfig("T must be > 0");
  if (cfg.N1 < 1) throw InvalidConfig("N1 must be >= 1");
  if (cfg.N2 < cfg.N1) throw InvalidConfig("N2 >= N1 required");
  if (cfg.k < 1) throw InvalidConfig("k must be >= 1");
  if (!(cfg.eta > 0.0)) throw InvalidConfig("eta must be > 0");
  if (static_cast<int>(cfg.sigma2.size()) != cfg.k)
    throw InvalidConfig("sigma2 must have k entries");
  for (int i = 0; i < cfg.k; ++i)
    if (!(cfg.sigma2[i] > 0.0))
      throw InvalidConfig("sigma2[" + std::to_string(i) + "] must be > 0");
  if (static_cast<int>(cfg.m.size()) != cfg.k)
    throw InvalidConfig("m must have k entries");
  for (int i = 0; i < cfg.k; ++i)
    if (cfg.m[i] < 0)
      throw InvalidConfig("m[" + std::to_string(i) + "] must be >= 0");
}

void validate_plan(const ModelConfig& cfg, const SamplingPlan& plan) {
  if (static_cast<int>(plan.times.size()) != cfg.k)
    throw DimensionMismatch("plan must have one time list per signal");
  for (int i = 0; i < cfg.k; ++i) {
    if (static_cast<std::int64_t>(plan.times[i].size()) != cfg.m[i])
      throw DimensionMismatch("times[" + std::to_string(i) +
                              "] length does not match m[" + std::to_string(i) +
                              "]");
    for (double t : plan.times[i])
      if (!(t >= 0.0 && t < cfg.T))
        throw OutOfRangeTime("sampling time outside [0, T)");
  }
}

Realization draw_realization(const ModelConfig& cfg, Rng& rng) {
  const int twoN = 2 * cfg.N();
  Realization r;
  r.x.resize(twoN);
  for (int j = 0; j < twoN; ++j) r.x[j] = rng.gaussian();
  const double sd = std::sqrt(cfg.eta);
  r.deltas.resize(cfg.k);
  r.xi.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    r.deltas[i].resize(twoN);
    for (int j = 0; j < twoN; ++j) r.deltas[i][j] = sd * rng.gaussian();
    r.xi[i] = r.x + r.deltas[i];
  }
  return r;
}

Realization draw_realization(const ModelConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  Rng rng(seed);
  return draw_realization(cfg, rng);
}

double evaluate_signal(const Eigen::VectorXd& coeffs, const ModelConfig& cfg,
                       double t) {
  const int N = cfg.N();
  if (coeffs.size() != 2 * N)
    throw DimensionMismatch("coefficient vector must have length 2N");
  if (!(t >= 0.0 && t < cfg.T)) throw OutOfRangeTime("t outside [0, T)");
  const double w = cfg.omega();
  double acc = 0.0;
  for (int l = 0; l < N; ++l) {
    const double arg = (cfg.N1 + l) * w * t;
    acc += coeffs[l] * std::cos(arg) + coeffs[N + l] * std::sin(arg);
  }
  return acc;
}

}  // namespace remsamp
