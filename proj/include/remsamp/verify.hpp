#pragma once
// Validation machinery: Monte Carlo confirmation of the analytic distortions,
// and randomized checks of every matrix inequality the bounds rest on. Each
// randomized suite reports its most positive normalized violation; a suite
// passes iff that stays within kInequalityTolerance.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "remsamp/model.hpp"

namespace remsamp {

struct MonteCarloReport {
  std::int64_t trials = 0;
  double empirical_Da = 0.0;
  double empirical_Db = 0.0;
  double analytic_Da = 0.0;
  double analytic_Db = 0.0;
  double stderr_Da = 0.0;
  double stderr_Db = 0.0;

  bool within(double n_sigma) const;
};

// Per trial: draw a realization, then per-signal sample noise in signal
// order; reconstruct with the precomputed LMMSE filter; average the squared
// coefficient errors (halved). Sub-seeded per trial from (seed, trial index).
MonteCarloReport monte_carlo(const ModelConfig& cfg, const SamplingPlan& plan,
                             std::int64_t trials, std::uint64_t seed);

inline constexpr double kInequalityTolerance = 1e-10;

struct InequalityTrialReport {
  std::string name;
  std::int64_t trials = 0;
  // most positive (LHS - RHS)/(|LHS| + |RHS| + 1) over trials
  double max_violation = 0.0;
  std::uint64_t worst_instance_seed = 0;

  bool passed() const { return max_violation <= kInequalityTolerance; }
};

// Tr[(F + C)^{-1} G] <= Tr[(F_diag + C)^{-1} G_diag] for both covariance
// pairs of the model: (Qa Qa^T + eta Qb Qb^T, Qa Qa^T) and
// (Qb (Lambda (x) I) Qb^T, Qb (Lambda^2 (x) I) Qb^T), random C > 0 diagonal.
InequalityTrialReport check_reverse_majorization(std::uint64_t seed,
                                                 std::int64_t trials,
                                                 std::ostream* verbose = nullptr);

// Tr f(A) >= Tr f(A_diag) for convex f: f = 1/t on random SPD A, the
// block-diagonal restriction variant, and f(t) = 1/(1 + k/eta - k^2/(eta t))
// on A >= k I.
InequalityTrialReport check_majorization_trace(std::uint64_t seed,
                                               std::int64_t trials,
                                               std::ostream* verbose = nullptr);

// Weighted harmonic mean of SPD matrices is dominated by the arithmetic mean:
// min-eig(sum w_i B_i - (sum w_i B_i^{-1})^{-1}) >= 0.
InequalityTrialReport check_am_hm(std::uint64_t seed, std::int64_t trials,
                                  std::ostream* verbose = nullptr);

// Commutation-matrix identity B (x) A = P(m,n)^T (A (x) B) P(m,n), checked
// exactly (entries are permuted, not recomputed), plus P P^T = I and
// P(m,n) = P(n,m)^T.
bool check_kron_permutation(int m, int n);
InequalityTrialReport check_kron_permutation_suite(std::uint64_t seed,
                                                   std::int64_t trials,
                                                   std::ostream* verbose = nullptr);

// 2 Tr(((B1+B2)/2)^{-1}) <= Tr(B1^{-1}) + Tr(B2^{-1}) on random SPD pairs.
InequalityTrialReport check_trace_inverse_convexity(std::uint64_t seed,
                                                    std::int64_t trials,
                                                    std::ostream* verbose = nullptr);

// det of the matrix with diagonal a_i and off-diagonal -b equals
// prod(a_i + b) - b sum_i prod_{j != i}(a_j + b), against LU determinants.
InequalityTrialReport check_det_formula(std::uint64_t seed, std::int64_t trials,
                                        std::ostream* verbose = nullptr);

// All six suites with per-suite sub-seeds.
std::vector<InequalityTrialReport> run_inequality_suites(
    std::uint64_t seed, std::int64_t trials, std::ostream* verbose = nullptr);

// Re-runs one instance of the named suite with exactly `instance_seed`,
// printing the quantities compared; returns the normalized violation.
double replay_inequality_trial(const std::string& name,
                               std::uint64_t instance_seed, std::ostream& out);

}  // namespace remsamp
