#pragma once
// Closed-form lower bounds on the minimal distortions over all sampling plans
// with given per-signal sample counts. Each bound is the max of two branches:
// a low-rate branch, attained by distinct-grid plans when sum m_i <= N, and a
// high-rate branch, attained by uniform plans when every m_i > 2 N2.

#include "remsamp/model.hpp"

namespace remsamp {

enum class Target { remote, corrupted };

// phi_i = m_i/(2 sigma_i^2) + 1/eta and its power sums.
struct PhiFunctionals {
  std::vector<double> phi;
  double Phi1 = 0.0;        // sum phi_i
  double PhiMinus1 = 0.0;   // sum 1/phi_i
  double PhiMinus2 = 0.0;   // sum 1/phi_i^2
};

struct BoundReport {
  double low_branch = 0.0;
  double high_branch = 0.0;
  double bound = 0.0;       // max of the branches
  bool tight_low = false;   // structural: sum m_i <= N
  bool tight_high = false;  // structural: every m_i > 2 N2
  Target target = Target::remote;
};

PhiFunctionals phi_functionals(const ModelConfig& cfg);

// low branch: N - N sum_i m_i / (2(1+eta)N + 2 sigma_i^2)
// high branch: N / ((1 + k/eta) - (k^2/eta^2)/Phi_1)
BoundReport bound_remote(const ModelConfig& cfg);

// low branch: N k (1+eta) - N ((1+eta)^2 + k - 1) sum_i m_i / (2(1+eta)N + 2 sigma_i^2)
// high branch: N Phi_{-1} + N Phi_{-2} / (eta(eta+k) - Phi_{-1})
BoundReport bound_corrupted(const ModelConfig& cfg);

BoundReport bound_for(const ModelConfig& cfg, Target target);

// Remote distortion limit as every m_i -> infinity: N / (1 + k/eta).
double asymptotic_remote_floor(const ModelConfig& cfg);

// N Tr((Diag(m_i/(2 sigma_i^2)) + Gamma)^{-1}); algebraically equal to the
// corrupted high branch for every m, and equal to the exact uniform-plan
// distortion once every m_i > 2 N2.
double closed_form_high_rate_corrupted(const ModelConfig& cfg);

}  // namespace remsamp
