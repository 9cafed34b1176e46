#include "remsamp/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "remsamp/errors.hpp"
#include "remsamp/rng.hpp"

namespace remsamp {

SamplingPlan uniform_plan(const ModelConfig& cfg) {
  validate_config(cfg);
  SamplingPlan p;
  p.times.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    p.times[i].reserve(cfg.m[i]);
    for (std::int64_t j = 0; j < cfg.m[i]; ++j)
      p.times[i].push_back(static_cast<double>(j) * cfg.T / cfg.m[i]);
  }
  return p;
}

SamplingPlan grid_plan(const ModelConfig& cfg) {
  validate_config(cfg);
  const int N = cfg.N();
  if (cfg.total_samples() > N)
    throw BudgetExceedsGrid("sum of m_i exceeds the N available grid points");
  SamplingPlan p;
  p.times.resize(cfg.k);
  std::int64_t next = 0;
  for (int i = 0; i < cfg.k; ++i) {
    p.times[i].reserve(cfg.m[i]);
    for (std::int64_t j = 0; j < cfg.m[i]; ++j)
      p.times[i].push_back(static_cast<double>(next++) * cfg.T / N);
  }
  return p;
}

SamplingPlan random_plan(const ModelConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  Rng rng(seed);
  SamplingPlan p;
  p.times.resize(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    p.times[i].reserve(cfg.m[i]);
    for (std::int64_t j = 0; j < cfg.m[i]; ++j) {
      double t = rng.uniform() * cfg.T;
      if (t >= cfg.T) t = std::nextafter(cfg.T, 0.0);
      p.times[i].push_back(t);
    }
  }
  return p;
}

namespace {

ModelConfig with_alloc(const ModelConfig& base,
                       const std::vector<std::int64_t>& alloc) {
  ModelConfig cfg = base;
  cfg.m = alloc;
  return cfg;
}

double high_branch_at(const ModelConfig& base,
                      const std::vector<std::int64_t>& alloc, Target target) {
  return bound_for(with_alloc(base, alloc), target).high_branch;
}

// Number of compositions of `extra` into k nonnegative parts,
// C(extra + k - 1, k - 1), in floating point to spot cap overruns early.
double composition_count(std::int64_t extra, int k) {
  double c = 1.0;
  for (int i = 1; i <= k - 1; ++i)
    c *= static_cast<double>(extra + i) / static_cast<double>(i);
  return c;
}

}  // namespace

AllocationResult allocate_low_rate(const ModelConfig& base,
                                   std::int64_t budget, Target target) {
  ModelConfig cfg = base;
  cfg.m.assign(cfg.k, 0);
  validate_config(cfg);
  if (budget < 0) throw InvalidConfig("budget must be >= 0");
  if (budget > cfg.N())
    throw PreconditionViolated("low-rate allocation requires budget <= N");

  int best = 0;
  for (int i = 1; i < cfg.k; ++i)
    if (cfg.sigma2[i] < cfg.sigma2[best]) best = i;
  cfg.m[best] = budget;

  AllocationResult res;
  res.m_alloc = cfg.m;
  res.objective = bound_for(cfg, target).low_branch;
  res.target = target;
  res.regime = Regime::low_rate;
  return res;
}

AllocationResult allocate_high_rate(const ModelConfig& base,
                                    std::int64_t budget, Target target,
                                    std::size_t enum_cap,
                                    std::vector<AllocationRow>* rows) {
  ModelConfig cfg = base;
  cfg.m.assign(cfg.k, 0);
  validate_config(cfg);
  const std::int64_t mmin = 2 * static_cast<std::int64_t>(cfg.N2) + 1;
  if (budget < mmin * cfg.k)
    throw BudgetTooSmall(
        "budget cannot give every signal at least 2*N2+1 samples");
  if (composition_count(budget - mmin * cfg.k, cfg.k) >
      static_cast<double>(enum_cap))
    throw SearchSpaceTooLarge("allocation search exceeds the enumeration cap");

  std::vector<std::int64_t> alloc(cfg.k, mmin);
  AllocationResult res;
  res.target = target;
  res.regime = Regime::high_rate;
  res.objective = std::numeric_limits<double>::infinity();
  if (rows) rows->clear();

  // ascending lexicographic enumeration with strict improvement keeps the
  // lexicographically smallest among tied optima
  auto recurse = [&](auto&& self, int pos, std::int64_t remaining) -> void {
    if (pos == cfg.k - 1) {
      alloc[pos] = remaining;
      const double obj = high_branch_at(cfg, alloc, target);
      if (rows) rows->push_back({alloc, obj});
      if (obj < res.objective) {
        res.objective = obj;
        res.m_alloc = alloc;
      }
      return;
    }
    const std::int64_t reserve = mmin * (cfg.k - 1 - pos);
    for (std::int64_t v = mmin; v <= remaining - reserve; ++v) {
      alloc[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  recurse(recurse, 0, budget);
  return res;
}

}  // namespace remsamp
