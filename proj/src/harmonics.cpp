#include "remsamp/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "remsamp/errors.hpp"

namespace remsamp {

namespace {

// One trig row per time instant into `out`, starting at row `row0`.
void fill_rows(const ModelConfig& cfg, const double* times, Eigen::Index count,
               Eigen::MatrixXd& out, Eigen::Index row0) {
  const int N = cfg.N();
  const double w = cfg.omega();
  for (Eigen::Index j = 0; j < count; ++j) {
    const double t = times[j];
    for (int l = 0; l < N; ++l) {
      const double arg = (cfg.N1 + l) * w * t;
      out(row0 + j, l) = std::cos(arg);
      out(row0 + j, N + l) = std::sin(arg);
    }
  }
}

void require_times_in_range(const ModelConfig& cfg,
                            const std::vector<double>& times) {
  for (double t : times)
    if (!(t >= 0.0 && t < cfg.T))
      throw OutOfRangeTime("sampling time outside [0, T)");
}

}  // namespace

Eigen::MatrixXd build_Qi(const ModelConfig& cfg,
                         const std::vector<double>& times_i) {
  validate_config(cfg);
  require_times_in_range(cfg, times_i);
  Eigen::MatrixXd Q(static_cast<Eigen::Index>(times_i.size()), 2 * cfg.N());
  fill_rows(cfg, times_i.data(), Q.rows(), Q, 0);
  return Q;
}

Eigen::MatrixXd lambda_matrix(int k, double eta) {
  if (k < 1) throw InvalidConfig("k must be >= 1");
  if (!(eta > 0.0)) throw InvalidConfig("eta must be > 0");
  Eigen::MatrixXd L = Eigen::MatrixXd::Ones(k, k);
  L.diagonal().setConstant(1.0 + eta);
  return L;
}

Eigen::MatrixXd gamma_matrix(int k, double eta) {
  if (k < 1) throw InvalidConfig("k must be >= 1");
  if (!(eta > 0.0)) throw InvalidConfig("eta must be > 0");
  const double den = eta * (eta + k);
  Eigen::MatrixXd G = Eigen::MatrixXd::Constant(k, k, -1.0 / den);
  G.diagonal().setConstant((eta + k - 1.0) / den);
  return G;
}

Eigen::MatrixXd lambda_sq_matrix(int k, double eta) {
  if (k < 1) throw InvalidConfig("k must be >= 1");
  if (!(eta > 0.0)) throw InvalidConfig("eta must be > 0");
  Eigen::MatrixXd S =
      Eigen::MatrixXd::Constant(k, k, 2.0 * (1.0 + eta) + (k - 2.0));
  S.diagonal().setConstant((1.0 + eta) * (1.0 + eta) + (k - 1.0));
  return S;
}

HarmonicSystem assemble(const ModelConfig& cfg, const SamplingPlan& plan) {
  validate_config(cfg);
  validate_plan(cfg, plan);
  HarmonicSystem sys;
  sys.cfg = cfg;
  const int twoN = 2 * cfg.N();
  const std::int64_t m = cfg.total_samples();

  sys.Qi.reserve(cfg.k);
  for (int i = 0; i < cfg.k; ++i) sys.Qi.push_back(build_Qi(cfg, plan.times[i]));

  sys.Qa.resize(m, twoN);
  sys.Qb = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(twoN) * cfg.k);
  sys.Cz_diag.resize(m);
  sys.CzTilde = Eigen::MatrixXd::Zero(m, m);
  std::int64_t off = 0;
  for (int i = 0; i < cfg.k; ++i) {
    const std::int64_t mi = cfg.m[i];
    if (mi > 0) {
      sys.Qa.middleRows(off, mi) = sys.Qi[i];
      sys.Qb.block(off, static_cast<Eigen::Index>(twoN) * i, mi, twoN) =
          sys.Qi[i];
      sys.Cz_diag.segment(off, mi).setConstant(cfg.sigma2[i]);
      // Qb Qb^T is block diagonal, so CzTilde only has per-signal blocks
      sys.CzTilde.block(off, off, mi, mi) =
          cfg.eta * (sys.Qi[i] * sys.Qi[i].transpose());
    }
    off += mi;
  }
  sys.CzTilde.diagonal() += sys.Cz_diag;

  sys.Lambda = lambda_matrix(cfg.k, cfg.eta);
  sys.Gamma = gamma_matrix(cfg.k, cfg.eta);
  sys.LambdaSq = lambda_sq_matrix(cfg.k, cfg.eta);
  return sys;
}

bool check_fact_grid(const ModelConfig& cfg, const SamplingPlan& plan) {
  validate_config(cfg);
  validate_plan(cfg, plan);
  const int N = cfg.N();
  const double tol = 1e-9 * cfg.T;
  std::vector<char> used(N, 0);
  for (int i = 0; i < cfg.k; ++i) {
    for (double t : plan.times[i]) {
      const long idx = std::lround(t * N / cfg.T);
      if (idx < 0 || idx >= N || std::abs(t - idx * cfg.T / N) > tol)
        throw PreconditionViolated("sampling time off the N-point grid");
      if (used[idx])
        throw PreconditionViolated("grid times must be globally distinct");
      used[idx] = 1;
    }
  }

  HarmonicSystem sys = assemble(cfg, plan);
  const std::int64_t m = sys.m();
  if (m == 0) return true;
  const Eigen::MatrixXd Ga = sys.Qa * sys.Qa.transpose();
  double dev =
      (Ga - double(N) * Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  // Qb Qb^T shares Qa Qa^T's diagonal blocks and is exactly zero elsewhere
  for (int i = 0; i < cfg.k; ++i) {
    if (cfg.m[i] == 0) continue;
    const Eigen::MatrixXd Gi = sys.Qi[i] * sys.Qi[i].transpose();
    dev = std::max(dev, (Gi - double(N) * Eigen::MatrixXd::Identity(
                                              cfg.m[i], cfg.m[i]))
                            .cwiseAbs()
                            .maxCoeff());
  }
  return dev < 1e-10 * N;
}

bool check_fact_uniform(const ModelConfig& cfg, const SamplingPlan& plan) {
  validate_config(cfg);
  validate_plan(cfg, plan);
  const double tol = 1e-9 * cfg.T;
  for (int i = 0; i < cfg.k; ++i) {
    if (cfg.m[i] <= 2 * static_cast<std::int64_t>(cfg.N2))
      throw PreconditionViolated("m[" + std::to_string(i) +
                                 "] must exceed 2*N2 for uniform sampling");
    std::vector<double> sorted = plan.times[i];
    std::sort(sorted.begin(), sorted.end());
    for (std::int64_t j = 0; j < cfg.m[i]; ++j)
      if (std::abs(sorted[j] - j * cfg.T / cfg.m[i]) > tol)
        throw PreconditionViolated("times are not the uniform m_i-point grid");
  }

  bool ok = true;
  for (int i = 0; i < cfg.k && ok; ++i) {
    const Eigen::MatrixXd Q = build_Qi(cfg, plan.times[i]);
    const Eigen::MatrixXd G = Q.transpose() * Q;
    const double half = 0.5 * static_cast<double>(cfg.m[i]);
    const double dev =
        (G - half * Eigen::MatrixXd::Identity(G.rows(), G.cols()))
            .cwiseAbs()
            .maxCoeff();
    ok = dev < 1e-10 * static_cast<double>(cfg.m[i]);
  }
  return ok;
}

Eigen::MatrixXd gram_matrix(const ModelConfig& cfg,
                            const std::vector<double>& times_i) {
  validate_config(cfg);
  require_times_in_range(cfg, times_i);
  const int twoN = 2 * cfg.N();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(twoN, twoN);
  constexpr Eigen::Index kChunk = 8192;
  Eigen::MatrixXd rows(kChunk, twoN);
  const Eigen::Index total = static_cast<Eigen::Index>(times_i.size());
  for (Eigen::Index start = 0; start < total; start += kChunk) {
    const Eigen::Index count = std::min(kChunk, total - start);
    fill_rows(cfg, times_i.data() + start, count, rows, 0);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(
        rows.topRows(count).transpose());
  }
  return gram.selfadjointView<Eigen::Lower>();
}

}  // namespace remsamp
