#include "remsamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include <Eigen/Dense>

#include "remsamp/errors.hpp"
#include "remsamp/estimator.hpp"
#include "remsamp/harmonics.hpp"
#include "remsamp/linalg.hpp"

namespace remsamp {

bool MonteCarloReport::within(double n_sigma) const {
  return std::abs(empirical_Da - analytic_Da) <= n_sigma * stderr_Da &&
         std::abs(empirical_Db - analytic_Db) <= n_sigma * stderr_Db;
}

MonteCarloReport monte_carlo(const ModelConfig& cfg, const SamplingPlan& plan,
                             std::int64_t trials, std::uint64_t seed) {
  if (trials < 100) throw PreconditionViolated("trials must be >= 100");
  validate_config(cfg);
  validate_plan(cfg, plan);

  const LmmseFilter filter(cfg, plan);
  const HarmonicSystem& sys = filter.system();
  const DistortionReport analytic = distortion(cfg, plan);
  const int twoN = 2 * cfg.N();
  const std::int64_t m = cfg.total_samples();

  Eigen::VectorXd y(m);
  double sum_a = 0.0, sumsq_a = 0.0, sum_b = 0.0, sumsq_b = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    const Realization real = draw_realization(cfg, rng);
    std::int64_t off = 0;
    for (int i = 0; i < cfg.k; ++i) {
      const std::int64_t mi = cfg.m[i];
      if (mi > 0) y.segment(off, mi) = sys.Qi[i] * real.xi[i];
      const double sd = std::sqrt(cfg.sigma2[i]);
      for (std::int64_t j = 0; j < mi; ++j) y[off + j] += sd * rng.gaussian();
      off += mi;
    }
    const Estimates est = filter.apply(y);
    const double da = 0.5 * (real.x - est.xhat).squaredNorm();
    double db = 0.0;
    for (int i = 0; i < cfg.k; ++i)
      db += 0.5 * (real.xi[i] -
                   est.xihat.segment(static_cast<Eigen::Index>(twoN) * i, twoN))
                      .squaredNorm();
    sum_a += da;
    sumsq_a += da * da;
    sum_b += db;
    sumsq_b += db * db;
  }

  MonteCarloReport rep;
  rep.trials = trials;
  rep.analytic_Da = analytic.Da;
  rep.analytic_Db = analytic.Db;
  const double n = static_cast<double>(trials);
  rep.empirical_Da = sum_a / n;
  rep.empirical_Db = sum_b / n;
  const double var_a =
      std::max(0.0, (sumsq_a - n * rep.empirical_Da * rep.empirical_Da) /
                        (n - 1.0));
  const double var_b =
      std::max(0.0, (sumsq_b - n * rep.empirical_Db * rep.empirical_Db) /
                        (n - 1.0));
  rep.stderr_Da = std::sqrt(var_a / n);
  rep.stderr_Db = std::sqrt(var_b / n);
  return rep;
}

namespace {

double norm_viol(double lhs, double rhs) {
  return (lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

Eigen::MatrixXd random_spd(Rng& rng, int n, double shift) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::MatrixXd S = G.transpose() * G;
  S.diagonal().array() += shift;
  return 0.5 * (S + S.transpose());
}

double spd_inv_trace(const Eigen::MatrixXd& A) {
  return spd_inverse(A, "randomized check operand").trace();
}

// Random small sampling instance with at least one sample.
struct TrialInstance {
  ModelConfig cfg;
  SamplingPlan plan;
};

TrialInstance random_instance(Rng& rng) {
  TrialInstance t;
  t.cfg.T = 1.0;
  t.cfg.N1 = rng.uniform_int(1, 4);
  t.cfg.N2 = t.cfg.N1 + rng.uniform_int(0, 3);
  t.cfg.k = rng.uniform_int(1, 4);
  t.cfg.eta = rng.uniform(0.05, 2.0);
  t.cfg.sigma2.assign(t.cfg.k, 1.0);
  t.cfg.m.resize(t.cfg.k);
  std::int64_t total = 0;
  for (int i = 0; i < t.cfg.k; ++i) total += t.cfg.m[i] = rng.uniform_int(0, 5);
  if (total == 0) t.cfg.m[0] = 1;
  t.plan.times.resize(t.cfg.k);
  for (int i = 0; i < t.cfg.k; ++i)
    for (std::int64_t j = 0; j < t.cfg.m[i]; ++j)
      t.plan.times[i].push_back(rng.uniform() * t.cfg.T);
  return t;
}

double trace_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return spd_solve(A, B, "randomized check operand").trace();
}

// Tr[(F + C)^{-1} G] vs the same expression restricted to the diagonals.
double reverse_majorization_pair(const Eigen::MatrixXd& F,
                                 const Eigen::MatrixXd& G,
                                 const Eigen::VectorXd& C, std::ostream* vb,
                                 const char* label) {
  Eigen::MatrixXd FC = F;
  FC.diagonal() += C;
  const double lhs = trace_solve(FC, G);
  double rhs = 0.0;
  for (Eigen::Index r = 0; r < F.rows(); ++r)
    rhs += G(r, r) / (F(r, r) + C(r));
  if (vb)
    *vb << "  " << label << ": m=" << F.rows() << " lhs=" << lhs
        << " rhs=" << rhs << " normalized=" << norm_viol(lhs, rhs) << "\n";
  return norm_viol(lhs, rhs);
}

double reverse_majorization_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const TrialInstance t = random_instance(rng);
  const HarmonicSystem sys = assemble(t.cfg, t.plan);
  const std::int64_t m = sys.m();
  const int twoN = 2 * t.cfg.N();

  Eigen::VectorXd C(m);
  for (std::int64_t r = 0; r < m; ++r) C[r] = rng.uniform(0.1, 3.0);

  const Eigen::MatrixXd Ga = sys.Qa * sys.Qa.transpose();
  Eigen::MatrixXd Gb = Eigen::MatrixXd::Zero(m, m);
  std::int64_t off = 0;
  for (int i = 0; i < t.cfg.k; ++i) {
    const std::int64_t mi = t.cfg.m[i];
    if (mi > 0) Gb.block(off, off, mi, mi) = sys.Qi[i] * sys.Qi[i].transpose();
    off += mi;
  }

  // remote pair: F = Qa Qa^T + eta Qb Qb^T, G = Qa Qa^T
  double v = reverse_majorization_pair(Ga + t.cfg.eta * Gb, Ga, C, vb,
                                       "remote pair");
  // corrupted pair: F = Qb (Lambda (x) I) Qb^T, G = Qb (Lambda^2 (x) I) Qb^T
  const Eigen::MatrixXd I2N = Eigen::MatrixXd::Identity(twoN, twoN);
  const Eigen::MatrixXd F2 =
      sys.Qb * kron(sys.Lambda, I2N) * sys.Qb.transpose();
  const Eigen::MatrixXd G2 =
      sys.Qb * kron(sys.LambdaSq, I2N) * sys.Qb.transpose();
  v = std::max(v, reverse_majorization_pair(F2, G2, C, vb, "corrupted pair"));
  return v;
}

double trace_f(const Eigen::MatrixXd& A,
               const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) acc += f(es.eigenvalues()[i]);
  return acc;
}

double majorization_trace_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const int n = rng.uniform_int(2, 8);
  const Eigen::MatrixXd A = random_spd(rng, n, rng.uniform(0.2, 1.2));
  const auto inv = [](double x) { return 1.0 / x; };

  // diagonal restriction, f = 1/t
  double diag_sum = 0.0;
  for (int i = 0; i < n; ++i) diag_sum += 1.0 / A(i, i);
  const double full = trace_f(A, inv);
  double v = norm_viol(diag_sum, full);
  if (vb) *vb << "  f=1/t diag: lhs=" << diag_sum << " rhs=" << full << "\n";

  // block-diagonal restriction, f = 1/t
  double block_sum = 0.0;
  int pos = 0;
  while (pos < n) {
    const int len = std::min(n - pos, rng.uniform_int(1, 3));
    block_sum += spd_inv_trace(A.block(pos, pos, len, len));
    pos += len;
  }
  v = std::max(v, norm_viol(block_sum, full));
  if (vb) *vb << "  f=1/t block: lhs=" << block_sum << " rhs=" << full << "\n";

  // f(t) = 1/(1 + k/eta - k^2/(eta t)) on A >= k I; convex there
  const int kk = rng.uniform_int(1, 4);
  const double eta = rng.uniform(0.05, 2.0);
  Eigen::MatrixXd A2 = random_spd(rng, n, 0.05);
  A2.diagonal().array() += kk;
  const auto f = [kk, eta](double x) {
    return 1.0 / (1.0 + kk / eta - kk * kk / (eta * x));
  };
  double diag2 = 0.0;
  for (int i = 0; i < n; ++i) diag2 += f(A2(i, i));
  const double full2 = trace_f(A2, f);
  v = std::max(v, norm_viol(diag2, full2));
  if (vb)
    *vb << "  f=model diag: lhs=" << diag2 << " rhs=" << full2
        << " (k=" << kk << ", eta=" << eta << ")\n";
  return v;
}

double am_hm_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const int n = rng.uniform_int(2, 6);
  const int count = rng.uniform_int(2, 5);
  std::vector<double> w(count);
  double wsum = 0.0;
  for (double& wi : w) wsum += wi = rng.uniform(0.05, 1.0);
  for (double& wi : w) wi /= wsum;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < count; ++i) {
    const Eigen::MatrixXd B = random_spd(rng, n, rng.uniform(0.1, 1.0));
    A += w[i] * B;
    Hinv += w[i] * spd_inverse(B, "harmonic-mean operand");
  }
  const Eigen::MatrixXd H = spd_inverse(Hinv, "harmonic mean");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * ((A - H) + (A - H).transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double scale = A.norm() + H.norm() + 1.0;
  if (vb)
    *vb << "  am-hm: n=" << n << " count=" << count << " min-eig=" << lmin
        << " scale=" << scale << "\n";
  return -lmin / scale;
}

// P(m, n) = sum_{i<m, j<n} E_ij (x) E_ij^T with E_ij the m x n unit matrix;
// entry (i n + j, j m + i) is the only 1 per row.
Eigen::MatrixXd commutation(int m, int n) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      P(static_cast<Eigen::Index>(i) * n + j,
        static_cast<Eigen::Index>(j) * m + i) = 1.0;
  return P;
}

double kron_permutation_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const int m = rng.uniform_int(1, 6);
  const int n = rng.uniform_int(1, 6);
  Eigen::MatrixXd A(m, m), B(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = rng.uniform(-2.0, 2.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = rng.uniform(-2.0, 2.0);

  const Eigen::MatrixXd P = commutation(m, n);
  const double sim =
      (kron(B, A) - P.transpose() * kron(A, B) * P).cwiseAbs().maxCoeff();
  const double orth =
      (P * P.transpose() -
       Eigen::MatrixXd::Identity(P.rows(), P.cols()))
          .cwiseAbs()
          .maxCoeff();
  const double swap = (P - commutation(n, m).transpose()).cwiseAbs().maxCoeff();
  if (vb)
    *vb << "  kron: m=" << m << " n=" << n << " similarity=" << sim
        << " orthogonality=" << orth << " transpose-swap=" << swap << "\n";
  // permutation conjugation moves entries without arithmetic; exact zeros
  return std::max({sim, orth, swap});
}

double trace_inverse_convexity_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const int n = rng.uniform_int(1, 6);
  const Eigen::MatrixXd B1 = random_spd(rng, n, rng.uniform(0.1, 1.0));
  const Eigen::MatrixXd B2 = random_spd(rng, n, rng.uniform(0.1, 1.0));
  const double lhs = 2.0 * spd_inv_trace(0.5 * (B1 + B2));
  const double rhs = spd_inv_trace(B1) + spd_inv_trace(B2);
  if (vb) *vb << "  trace-inverse: n=" << n << " lhs=" << lhs << " rhs=" << rhs << "\n";
  return norm_viol(lhs, rhs);
}

double det_formula_trial(std::uint64_t s, std::ostream* vb) {
  Rng rng(s);
  const int k = rng.uniform_int(1, 6);
  std::vector<double> a(k);
  for (double& ai : a) ai = rng.uniform(0.0, 5.0);
  const double b = rng.uniform(0.05, 3.0);

  Eigen::MatrixXd M = Eigen::MatrixXd::Constant(k, k, -b);
  for (int i = 0; i < k; ++i) M(i, i) = a[i];

  double prod = 1.0;
  for (int i = 0; i < k; ++i) prod *= a[i] + b;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    double partial = 1.0;
    for (int j = 0; j < k; ++j)
      if (j != i) partial *= a[j] + b;
    sum += partial;
  }
  const double closed = prod - b * sum;
  const double generic = M.fullPivLu().determinant();
  if (vb)
    *vb << "  det: k=" << k << " closed=" << closed << " generic=" << generic
        << "\n";
  return std::abs(closed - generic) /
         (std::abs(closed) + std::abs(generic) + 1.0);
}

using TrialFn = double (*)(std::uint64_t, std::ostream*);

InequalityTrialReport run_suite(const char* name, TrialFn fn,
                                std::uint64_t seed, std::int64_t trials,
                                std::ostream* vb) {
  if (trials < 1) throw PreconditionViolated("trials must be >= 1");
  InequalityTrialReport rep;
  rep.name = name;
  rep.trials = trials;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = mix_seed(seed, static_cast<std::uint64_t>(t));
    if (vb) *vb << name << " trial " << t << " (instance seed " << ts << ")\n";
    const double v = fn(ts, vb);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_instance_seed = ts;
    }
  }
  return rep;
}

struct SuiteEntry {
  const char* name;
  TrialFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"reverse_majorization", reverse_majorization_trial},
    {"majorization_trace", majorization_trace_trial},
    {"am_hm", am_hm_trial},
    {"kron_permutation", kron_permutation_trial},
    {"trace_inverse_convexity", trace_inverse_convexity_trial},
    {"det_formula", det_formula_trial},
};

}  // namespace

InequalityTrialReport check_reverse_majorization(std::uint64_t seed,
                                                 std::int64_t trials,
                                                 std::ostream* verbose) {
  return run_suite("reverse_majorization", reverse_majorization_trial, seed,
                   trials, verbose);
}

InequalityTrialReport check_majorization_trace(std::uint64_t seed,
                                               std::int64_t trials,
                                               std::ostream* verbose) {
  return run_suite("majorization_trace", majorization_trace_trial, seed,
                   trials, verbose);
}

InequalityTrialReport check_am_hm(std::uint64_t seed, std::int64_t trials,
                                  std::ostream* verbose) {
  return run_suite("am_hm", am_hm_trial, seed, trials, verbose);
}

bool check_kron_permutation(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionViolated("sizes must be >= 1");
  Rng rng(mix_seed(0x6b726f6eull, static_cast<std::uint64_t>(m) * 64 + n));
  Eigen::MatrixXd A(m, m), B(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = rng.uniform(-2.0, 2.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = rng.uniform(-2.0, 2.0);
  const Eigen::MatrixXd P = commutation(m, n);
  return (kron(B, A) - P.transpose() * kron(A, B) * P).cwiseAbs().maxCoeff() ==
             0.0 &&
         (P * P.transpose() -
          Eigen::MatrixXd::Identity(P.rows(), P.cols()))
                 .cwiseAbs()
                 .maxCoeff() == 0.0 &&
         (P - commutation(n, m).transpose()).cwiseAbs().maxCoeff() == 0.0;
}

InequalityTrialReport check_kron_permutation_suite(std::uint64_t seed,
                                                   std::int64_t trials,
                                                   std::ostream* verbose) {
  return run_suite("kron_permutation", kron_permutation_trial, seed, trials,
                   verbose);
}

InequalityTrialReport check_trace_inverse_convexity(std::uint64_t seed,
                                                    std::int64_t trials,
                                                    std::ostream* verbose) {
  return run_suite("trace_inverse_convexity", trace_inverse_convexity_trial,
                   seed, trials, verbose);
}

InequalityTrialReport check_det_formula(std::uint64_t seed,
                                        std::int64_t trials,
                                        std::ostream* verbose) {
  return run_suite("det_formula", det_formula_trial, seed, trials, verbose);
}

std::vector<InequalityTrialReport> run_inequality_suites(std::uint64_t seed,
                                                         std::int64_t trials,
                                                         std::ostream* verbose) {
  std::vector<InequalityTrialReport> out;
  std::uint64_t salt = 101;
  for (const SuiteEntry& s : kSuites)
    out.push_back(
        run_suite(s.name, s.fn, mix_seed(seed, salt++), trials, verbose));
  return out;
}

double replay_inequality_trial(const std::string& name,
                               std::uint64_t instance_seed, std::ostream& out) {
  for (const SuiteEntry& s : kSuites) {
    if (name == s.name) {
      out << name << " replay (instance seed " << instance_seed << ")\n";
      const double v = s.fn(instance_seed, &out);
      out << "  normalized violation: " << v << "\n";
      return v;
    }
  }
  throw InvalidConfig("unknown inequality suite: " + name);
}

}  // namespace remsamp
