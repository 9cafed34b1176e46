// Release gate: the binding numerical criteria for this library, one line of
// output per criterion. Each check pins its tolerance and wall-clock budget in
// code; the process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "remsamp/bounds.hpp"
#include "remsamp/estimator.hpp"
#include "remsamp/strategies.hpp"
#include "remsamp/verify.hpp"
#include "support/test_util.hpp"

using namespace remsamp;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

int g_failures = 0;
int g_index = 0;

void run_criterion(const std::string& label, double budget_seconds,
                   const std::function<Outcome()>& fn) {
  ++g_index;
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.ok = false;
    out.note = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_budget = seconds <= budget_seconds;
  const bool pass = out.ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] %d. %s (%.2f s, budget %.0f s)%s%s\n",
              pass ? "PASS" : "FAIL", g_index, label.c_str(), seconds,
              budget_seconds, out.note.empty() ? "" : " :: ",
              out.note.c_str());
  if (!in_budget && out.ok)
    std::printf("       time budget exceeded\n");
  std::fflush(stdout);
}

ModelConfig two_signal_config() {
  ModelConfig cfg;
  cfg.T = 1.0;
  cfg.N1 = 1;
  cfg.N2 = 20;
  cfg.k = 2;
  cfg.eta = 0.5;
  cfg.sigma2 = {1.0, 100.0};
  cfg.m = {0, 0};
  return cfg;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  run_criterion(
      "budget of 100 samples splits 41/59 (20 harmonics) and 32/68 "
      "(10 harmonics)",
      1.0, [] {
        Outcome out;
        ModelConfig cfg = two_signal_config();
        const AllocationResult wide =
            allocate_high_rate(cfg, 100, Target::corrupted);
        cfg.N2 = 10;
        const AllocationResult narrow =
            allocate_high_rate(cfg, 100, Target::corrupted);
        out.ok = wide.m_alloc == std::vector<std::int64_t>{41, 59} &&
                 narrow.m_alloc == std::vector<std::int64_t>{32, 68};
        out.note = "wide " + std::to_string(wide.m_alloc[0]) + "/" +
                   std::to_string(wide.m_alloc[1]) + ", narrow " +
                   std::to_string(narrow.m_alloc[0]) + "/" +
                   std::to_string(narrow.m_alloc[1]);
        return out;
      });

  run_criterion(
      "uniform plans attain both bounds for every m in 39..60 (rel 1e-9)",
      10.0, [] {
        Outcome out;
        double worst = 0.0;
        for (std::int64_t m = 39; m <= 60; ++m) {
          ModelConfig cfg = testutil::reference_config();
          cfg.m = {m, m, m};
          const DistortionReport rep = distortion(cfg, uniform_plan(cfg));
          const BoundReport ba = bound_remote(cfg);
          const BoundReport bb = bound_corrupted(cfg);
          worst = std::max(worst,
                           std::abs(rep.Da - ba.high_branch) / ba.high_branch);
          worst = std::max(worst,
                           std::abs(rep.Db - bb.high_branch) / bb.high_branch);
        }
        out.ok = worst <= 1e-9;
        out.note = "max rel gap " + fmt(worst);
        return out;
      });

  run_criterion(
      "grid plans attain both low branches on 50 random sparse configs "
      "(rel 1e-9)",
      30.0, [] {
        Outcome out;
        Rng rng(6001u);
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
          const ModelConfig cfg = testutil::random_grid_config(rng);
          const DistortionReport r = distortion(cfg, grid_plan(cfg));
          const BoundReport ba = bound_remote(cfg);
          const BoundReport bb = bound_corrupted(cfg);
          worst = std::max(worst,
                           std::abs(r.Da - ba.low_branch) / ba.low_branch);
          worst = std::max(worst,
                           std::abs(r.Db - bb.low_branch) / bb.low_branch);
        }
        out.ok = worst <= 1e-9;
        out.note = "max rel gap " + fmt(worst);
        return out;
      });

  run_criterion(
      "bounds hold on 500 random config/plan pairs (rel slack 1e-9)", 120.0,
      [] {
        Outcome out;
        Rng rng(6002u);
        double worst = 0.0;  // most positive normalized bound excess
        for (int rep = 0; rep < 500; ++rep) {
          const ModelConfig cfg = testutil::random_config(rng);
          Rng plan_rng(mix_seed(6002u, static_cast<std::uint64_t>(rep) + 1));
          const SamplingPlan plan = testutil::random_times(cfg, plan_rng);
          const DistortionReport r = distortion(cfg, plan);
          const double ba = bound_remote(cfg).bound;
          const double bb = bound_corrupted(cfg).bound;
          worst = std::max(worst, (ba - r.Da) / ba);
          worst = std::max(worst, (bb - r.Db) / bb);
        }
        out.ok = worst <= 1e-9;
        out.note = "max relative shortfall " + fmt(worst);
        return out;
      });

  run_criterion(
      "a budget of N samples cannot halve the remote distortion "
      "(100 random configs, slack 1e-12)",
      30.0, [] {
        Outcome out;
        Rng rng(6003u);
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
          ModelConfig cfg = testutil::random_config(rng);
          testutil::assign_total_samples(cfg, rng, cfg.N());
          const BoundReport b = bound_remote(cfg);
          worst = std::max(worst, 0.5 * cfg.N() - b.bound);
        }
        out.ok = worst <= 1e-12;
        out.note = "max shortfall " + fmt(worst);
        return out;
      });

  run_criterion(
      "a million samples per signal reaches the asymptotic remote floor "
      "(abs 1e-3)",
      10.0, [] {
        Outcome out;
        ModelConfig cfg = testutil::reference_config();
        cfg.m = {1000000, 1000000, 1000000};
        const DistortionReport rep = distortion(cfg, uniform_plan(cfg));
        const double gap = std::abs(rep.Da - 15.0 / 31.0);
        out.ok = gap < 1e-3;
        out.note = "|Da - 15/31| = " + fmt(gap);
        return out;
      });

  run_criterion(
      "gain and information forms agree on 200 random instances (rel 1e-8)",
      60.0, [] {
        Outcome out;
        Rng rng(6004u);
        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
          const ModelConfig cfg = testutil::random_config(rng);
          Rng plan_rng(mix_seed(6004u, static_cast<std::uint64_t>(rep) + 1));
          const SamplingPlan plan = testutil::random_times(cfg, plan_rng);
          worst = std::max(worst, distortion(cfg, plan).form_discrepancy);
        }
        out.ok = worst <= 1e-8;
        out.note = "max form discrepancy " + fmt(worst);
        return out;
      });

  run_criterion(
      "20000-trial Monte Carlo matches the analytic distortions within "
      "3 standard errors",
      120.0, [] {
        Outcome out;
        ModelConfig cfg = testutil::reference_config();
        const MonteCarloReport rep =
            monte_carlo(cfg, uniform_plan(cfg), 20000, 1802u);
        out.ok = rep.within(3.0);
        const double za =
            std::abs(rep.empirical_Da - rep.analytic_Da) / rep.stderr_Da;
        const double zb =
            std::abs(rep.empirical_Db - rep.analytic_Db) / rep.stderr_Db;
        out.note = "z_a " + fmt(za) + ", z_b " + fmt(zb);
        return out;
      });

  run_criterion(
      "all six matrix-inequality suites pass 1000 trials "
      "(normalized violation 1e-10)",
      120.0, [] {
        Outcome out;
        double worst = -1.0;
        for (const InequalityTrialReport& rep :
             run_inequality_suites(424242u, 1000)) {
          worst = std::max(worst, rep.max_violation);
          if (!rep.passed()) {
            out.ok = false;
            out.note += rep.name + " violated; ";
          }
        }
        out.note += "max violation " + fmt(worst);
        return out;
      });

  std::printf("%d/%d criteria passed\n", g_index - g_failures, g_index);
  return g_failures;
}
