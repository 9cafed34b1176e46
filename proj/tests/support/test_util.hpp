#pragma once
// Shared fixtures for the test binaries: the workhorse three-signal
// configuration and randomized desk-scale instance generators.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "remsamp/model.hpp"
#include "remsamp/rng.hpp"

namespace testutil {

using remsamp::ModelConfig;
using remsamp::Rng;
using remsamp::SamplingPlan;

// 15 harmonics between indices 5 and 19, three unit-noise signals.
inline ModelConfig reference_config() {
  ModelConfig cfg;
  cfg.T = 1.0;
  cfg.N1 = 5;
  cfg.N2 = 19;
  cfg.k = 3;
  cfg.eta = 0.1;
  cfg.sigma2 = {1.0, 1.0, 1.0};
  cfg.m = {40, 40, 40};
  return cfg;
}

inline ModelConfig random_config(Rng& rng) {
  ModelConfig cfg;
  const double periods[] = {0.5, 1.0, 6.283185307179586};
  cfg.T = periods[rng.uniform_int(0, 2)];
  cfg.N1 = rng.uniform_int(1, 5);
  cfg.N2 = cfg.N1 + rng.uniform_int(0, 5);
  cfg.k = rng.uniform_int(1, 4);
  cfg.eta = rng.uniform(0.05, 1.5);
  cfg.sigma2.resize(cfg.k);
  cfg.m.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    cfg.sigma2[i] = rng.uniform(0.25, 4.0);
    cfg.m[i] = rng.uniform_int(0, 2 * cfg.N2 + 4);
  }
  return cfg;
}

// Overwrites cfg.m with a random split of `total` across the k signals.
inline void assign_total_samples(ModelConfig& cfg, Rng& rng, std::int64_t total) {
  cfg.m.assign(cfg.k, 0);
  for (std::int64_t s = 0; s < total; ++s) cfg.m[rng.uniform_int(0, cfg.k - 1)]++;
}

// Random config whose total sample count is exactly `total` (<= N).
inline ModelConfig random_config_with_total(Rng& rng, std::int64_t total) {
  ModelConfig cfg = random_config(rng);
  assign_total_samples(cfg, rng, total);
  return cfg;
}

inline ModelConfig random_grid_config(Rng& rng) {
  ModelConfig cfg = random_config(rng);
  assign_total_samples(cfg, rng, rng.uniform_int(0, cfg.N()));
  return cfg;
}

// i.i.d. uniform times matching cfg.m, drawn from the given stream.
inline SamplingPlan random_times(const ModelConfig& cfg, Rng& rng) {
  SamplingPlan plan;
  plan.times.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i)
    for (std::int64_t j = 0; j < cfg.m[i]; ++j)
      plan.times[i].push_back(rng.uniform() * cfg.T * 0.999999);
  return plan;
}

}  // namespace testutil
