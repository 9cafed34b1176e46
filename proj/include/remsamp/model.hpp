#pragma once
// Problem instance for the remote-signal sampling model: a bandpass periodic
// Gaussian signal S(t) = sum_{l=N1..N2} A_l cos(l w t) + B_l sin(l w t),
// observed through k corrupted versions, each sampled at chosen instants under
// additive noise. Coefficients are laid out [A_N1..A_N2, B_N1..B_N2].

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "remsamp/rng.hpp"

namespace remsamp {

struct ModelConfig {
  double T = 1.0;                   // period
  int N1 = 1;                       // lowest harmonic index, >= 1
  int N2 = 1;                       // highest harmonic index, >= N1
  int k = 1;                        // number of corrupted signals
  double eta = 0.1;                 // corruption variance, > 0
  std::vector<double> sigma2;       // per-signal sampling-noise variance, > 0
  std::vector<std::int64_t> m;      // per-signal sample count, >= 0

  int N() const { return N2 - N1 + 1; }
  double omega() const;
  std::int64_t total_samples() const;
};

struct SamplingPlan {
  // times[i] holds signal i's m_i sampling instants, each in [0, T)
  std::vector<std::vector<double>> times;
};

struct Realization {
  Eigen::VectorXd x;                    // remote-signal coefficients, 2N
  std::vector<Eigen::VectorXd> deltas;  // per-signal corruptions, 2N each
  std::vector<Eigen::VectorXd> xi;      // xi[i] = x + deltas[i]
};

// Throws InvalidConfig naming the first violated constraint.
void validate_config(const ModelConfig& cfg);

// Shape and range checks for a plan against its config.
void validate_plan(const ModelConfig& cfg, const SamplingPlan& plan);

Realization draw_realization(const ModelConfig& cfg, std::uint64_t seed);
// Stream variant, used where several draws share one stream (Monte Carlo).
Realization draw_realization(const ModelConfig& cfg, Rng& rng);

// S(t) for one coefficient vector; t must lie in [0, T).
double evaluate_signal(const Eigen::VectorXd& coeffs, const ModelConfig& cfg,
                       double t);

}  // namespace remsamp
