// Estimator tests: prior limits with no samples, agreement of the gain and
// information routes, the Gram fast path against the dense path, monotonicity
// under extra samples, exchangeability, and the filter itself.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "remsamp/bounds.hpp"
#include "remsamp/errors.hpp"
#include "remsamp/estimator.hpp"
#include "remsamp/linalg.hpp"
#include "remsamp/strategies.hpp"
#include "support/test_util.hpp"

using namespace remsamp;

TEST_CASE("no samples leaves the prior covariances") {
  ModelConfig cfg = testutil::reference_config();
  cfg.m = {0, 0, 0};
  SamplingPlan plan;
  plan.times = {{}, {}, {}};
  HarmonicSystem sys = assemble(cfg, plan);
  const int twoN = 2 * cfg.N();

  for (CovForm form : {CovForm::gain, CovForm::information}) {
    Eigen::MatrixXd Ca = error_cov_remote(sys, form);
    CHECK((Ca - Eigen::MatrixXd::Identity(twoN, twoN)).cwiseAbs().maxCoeff() <
          1e-12);
    Eigen::MatrixXd Cb = error_cov_corrupted(sys, form);
    Eigen::MatrixXd prior =
        kron(sys.Lambda, Eigen::MatrixXd::Identity(twoN, twoN));
    CHECK((Cb - prior).cwiseAbs().maxCoeff() < 1e-12);
  }

  DistortionReport rep = distortion(cfg, plan);
  CHECK(rep.Da == doctest::Approx(double(cfg.N())).epsilon(1e-13));
  CHECK(rep.Db ==
        doctest::Approx(cfg.N() * cfg.k * (1.0 + cfg.eta)).epsilon(1e-13));
}

TEST_CASE("gain and information forms agree on random instances") {
  Rng rng(301u);
  for (int rep = 0; rep < 40; ++rep) {
    ModelConfig cfg = testutil::random_config(rng);
    SamplingPlan plan = testutil::random_times(cfg, rng);
    HarmonicSystem sys = assemble(cfg, plan);
    CHECK(rel_gap_max(error_cov_remote(sys, CovForm::gain),
                      error_cov_remote(sys, CovForm::information)) < 1e-8);
    CHECK(rel_gap_max(error_cov_corrupted(sys, CovForm::gain),
                      error_cov_corrupted(sys, CovForm::information)) < 1e-8);
    DistortionReport r = distortion(cfg, plan);
    CHECK(r.form_discrepancy < 1e-8);
    CHECK(r.Da == doctest::Approx(0.5 * r.trace_Ce_a).epsilon(1e-14));
    CHECK(r.Db == doctest::Approx(0.5 * r.trace_Ce_b).epsilon(1e-14));
  }
}

TEST_CASE("gram fast path equals the dense dual path") {
  Rng rng(302u);
  for (int rep = 0; rep < 10; ++rep) {
    ModelConfig cfg = testutil::random_config(rng);
    SamplingPlan plan = testutil::random_times(cfg, rng);
    DistortionOptions dense_opts;  // default keeps the dual path
    DistortionOptions gram_opts;
    gram_opts.max_dual_form_m = 0;  // force the Gram path at any size
    DistortionReport dense = distortion(cfg, plan, dense_opts);
    DistortionReport gram = distortion(cfg, plan, gram_opts);
    CHECK(gram.Da == doctest::Approx(dense.Da).epsilon(1e-12));
    CHECK(gram.Db == doctest::Approx(dense.Db).epsilon(1e-12));
    CHECK(gram.form_discrepancy == 0.0);
  }
}

TEST_CASE("uniform sampling attains the high-rate values") {
  ModelConfig cfg = testutil::reference_config();
  for (std::int64_t m : {39, 45, 60}) {
    cfg.m = {m, m, m};
    DistortionReport rep = distortion(cfg, uniform_plan(cfg));
    BoundReport ba = bound_remote(cfg);
    BoundReport bb = bound_corrupted(cfg);
    CHECK(rep.Da == doctest::Approx(ba.bound).epsilon(1e-9));
    CHECK(rep.Db == doctest::Approx(bb.bound).epsilon(1e-9));
    CHECK(ba.tight_high);
  }

  // heterogeneous noise: the corrupted target still matches its closed form
  cfg.sigma2 = {1.0, 100.0, 9.0};
  cfg.m = {41, 59, 44};
  DistortionReport rep = distortion(cfg, uniform_plan(cfg));
  CHECK(rep.Db ==
        doctest::Approx(closed_form_high_rate_corrupted(cfg)).epsilon(1e-9));
}

TEST_CASE("distinct grid sampling attains the low-rate values") {
  Rng rng(303u);
  for (int rep = 0; rep < 20; ++rep) {
    ModelConfig cfg = testutil::random_grid_config(rng);
    SamplingPlan plan = grid_plan(cfg);
    DistortionReport r = distortion(cfg, plan);
    BoundReport ba = bound_remote(cfg);
    BoundReport bb = bound_corrupted(cfg);
    CHECK(ba.tight_low);
    CHECK(r.Da == doctest::Approx(ba.low_branch).epsilon(1e-9));
    CHECK(r.Db == doctest::Approx(bb.low_branch).epsilon(1e-9));
  }
}

TEST_CASE("appending a sample never increases distortion") {
  Rng rng(304u);
  for (int rep = 0; rep < 100; ++rep) {
    ModelConfig cfg = testutil::random_config(rng);
    SamplingPlan plan = testutil::random_times(cfg, rng);
    DistortionReport before = distortion(cfg, plan);
    const int i = rng.uniform_int(0, cfg.k - 1);
    cfg.m[i] += 1;
    plan.times[i].push_back(rng.uniform() * cfg.T * 0.999999);
    DistortionReport after = distortion(cfg, plan);
    CHECK(after.Da <= before.Da + 1e-10);
    CHECK(after.Db <= before.Db + 1e-10);
  }
}

TEST_CASE("distortions respect the model floors and ceilings") {
  Rng rng(305u);
  for (int rep = 0; rep < 50; ++rep) {
    ModelConfig cfg = testutil::random_config(rng);
    SamplingPlan plan = testutil::random_times(cfg, rng);
    DistortionReport r = distortion(cfg, plan);
    CHECK(r.Da >= asymptotic_remote_floor(cfg) - 1e-10);
    CHECK(r.Da <= cfg.N() + 1e-10);
    CHECK(r.Db >= 0.0);
    CHECK(r.Db <= cfg.N() * cfg.k * (1.0 + cfg.eta) + 1e-10);
  }
}

TEST_CASE("identical signals are exchangeable") {
  Rng rng(306u);
  ModelConfig cfg = testutil::reference_config();
  cfg.m = {7, 7, 4};
  SamplingPlan plan = testutil::random_times(cfg, rng);
  DistortionReport base = distortion(cfg, plan);
  std::swap(plan.times[0], plan.times[1]);
  DistortionReport swapped = distortion(cfg, plan);
  CHECK(swapped.Da == doctest::Approx(base.Da).epsilon(1e-12));
  CHECK(swapped.Db == doctest::Approx(base.Db).epsilon(1e-12));
}

TEST_CASE("near-noiseless dense sampling recovers the remote signal") {
  ModelConfig cfg;
  cfg.T = 1.0;
  cfg.N1 = 1;
  cfg.N2 = 4;
  cfg.k = 2;
  cfg.eta = 0.01;
  cfg.sigma2 = {1e-4, 1e-4};
  cfg.m = {2 * cfg.N2 + 1, 2 * cfg.N2 + 1};
  DistortionReport r = distortion(cfg, uniform_plan(cfg));
  CHECK(r.Da < 0.05 * cfg.N());
}

TEST_CASE("filter reproduces the long-hand gains") {
  Rng rng(307u);
  ModelConfig cfg = testutil::reference_config();
  cfg.m = {6, 2, 5};
  SamplingPlan plan = testutil::random_times(cfg, rng);
  LmmseFilter filter(cfg, plan);
  const HarmonicSystem& sys = filter.system();
  const int twoN = 2 * cfg.N();

  Eigen::MatrixXd M = sys.Qa * sys.Qa.transpose() + sys.CzTilde;
  Eigen::MatrixXd Minv = spd_inverse(
      Eigen::MatrixXd(0.5 * (M + M.transpose())), "filter oracle");
  Eigen::MatrixXd Wa = sys.Qa.transpose() * Minv;
  Eigen::MatrixXd CxQbT =
      kron(sys.Lambda, Eigen::MatrixXd::Identity(twoN, twoN)) *
      sys.Qb.transpose();
  Eigen::MatrixXd Wb = CxQbT * Minv;
  CHECK(rel_gap_max(filter.remote_gain(), Wa) < 1e-10);
  CHECK(rel_gap_max(filter.corrupted_gain(), Wb) < 1e-10);

  Eigen::VectorXd y(sys.m());
  for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = rng.gaussian();
  Estimates est = filter.apply(y);
  CHECK((est.xhat - Wa * y).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((est.xihat - Wb * y).cwiseAbs().maxCoeff() < 1e-10);

  // gains and error covariances are consistent: Ce = Cx - W A Cx
  Eigen::MatrixXd Ca = error_cov_remote(sys, CovForm::gain);
  Eigen::MatrixXd gain_identity =
      Eigen::MatrixXd::Identity(twoN, twoN) - Wa * sys.Qa;
  CHECK(rel_gap_max(Ca, gain_identity) < 1e-9);

  Eigen::VectorXd wrong(sys.m() + 1);
  wrong.setZero();
  CHECK_THROWS_AS(filter.apply(wrong), DimensionMismatch);
}

TEST_CASE("reconstruction handles the empty plan") {
  ModelConfig cfg = testutil::reference_config();
  cfg.m = {0, 0, 0};
  SamplingPlan plan;
  plan.times = {{}, {}, {}};
  Estimates est = reconstruct(cfg, plan, Eigen::VectorXd());
  CHECK(est.xhat.size() == 2 * cfg.N());
  CHECK(est.xhat.cwiseAbs().maxCoeff() == 0.0);
  CHECK(est.xihat.size() == 2 * cfg.N() * cfg.k);
  CHECK(est.xihat.cwiseAbs().maxCoeff() == 0.0);
}
