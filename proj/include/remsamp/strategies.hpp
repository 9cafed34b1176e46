#pragma once
// Sampling plans with known optimality regimes, and exact integer allocation
// of a total sample budget across signals.

#include <cstdint>
#include <vector>

#include "remsamp/bounds.hpp"
#include "remsamp/model.hpp"

namespace remsamp {

// times[i] = {0, T/m_i, ..., (m_i-1) T/m_i}; empty where m_i = 0.
SamplingPlan uniform_plan(const ModelConfig& cfg);

// Consecutive points of the N-point grid {j T/N}, signal 1 first. Requires
// sum m_i <= N (BudgetExceedsGrid otherwise); distortion is invariant to
// which distinct grid points each signal receives.
SamplingPlan grid_plan(const ModelConfig& cfg);

// i.i.d. uniform times on [0, T), drawn signal by signal.
SamplingPlan random_plan(const ModelConfig& cfg, std::uint64_t seed);

enum class Regime { low_rate, high_rate };

struct AllocationResult {
  std::vector<std::int64_t> m_alloc;
  double objective;  // bound branch value at the chosen allocation
  Target target;
  Regime regime;
};

struct AllocationRow {
  std::vector<std::int64_t> m;
  double objective;
};

// budget <= N: the low branch is minimized by giving every sample to the
// least-noisy signal (lowest sigma2, ties to the lowest index).
AllocationResult allocate_low_rate(const ModelConfig& base, std::int64_t budget,
                                   Target target);

// Exhaustive search over all allocations with every m_i >= 2 N2 + 1 summing
// to the budget, minimizing the high branch; lexicographically smallest
// allocation wins ties. `rows` optionally receives every evaluated
// allocation. base.m is ignored.
AllocationResult allocate_high_rate(const ModelConfig& base,
                                    std::int64_t budget, Target target,
                                    std::size_t enum_cap = 2'000'000,
                                    std::vector<AllocationRow>* rows = nullptr);

}  // namespace remsamp
