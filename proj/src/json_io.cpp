#include "remsamp/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "remsamp/errors.hpp"

namespace remsamp {

void to_json(nlohmann::json& j, const ModelConfig& cfg) {
  j = nlohmann::json{{"T", cfg.T},         {"N1", cfg.N1}, {"N2", cfg.N2},
                     {"k", cfg.k},         {"eta", cfg.eta},
                     {"sigma2", cfg.sigma2}, {"m", cfg.m}};
}

void from_json(const nlohmann::json& j, ModelConfig& cfg) {
  j.at("T").get_to(cfg.T);
  j.at("N1").get_to(cfg.N1);
  j.at("N2").get_to(cfg.N2);
  j.at("k").get_to(cfg.k);
  j.at("eta").get_to(cfg.eta);
  j.at("sigma2").get_to(cfg.sigma2);
  // m may be omitted when a command supplies its own allocation
  cfg.m.assign(cfg.k > 0 ? cfg.k : 0, 0);
  if (j.contains("m")) j.at("m").get_to(cfg.m);
}

void to_json(nlohmann::json& j, const SamplingPlan& plan) {
  j = nlohmann::json{{"times", plan.times}};
}

void from_json(const nlohmann::json& j, SamplingPlan& plan) {
  j.at("times").get_to(plan.times);
}

void to_json(nlohmann::json& j, const DistortionReport& rep) {
  j = nlohmann::json{{"Da", rep.Da},
                     {"Db", rep.Db},
                     {"trace_Ce_a", rep.trace_Ce_a},
                     {"trace_Ce_b", rep.trace_Ce_b},
                     {"form_discrepancy", rep.form_discrepancy},
                     {"condition_estimate", rep.condition_estimate}};
}

void from_json(const nlohmann::json& j, DistortionReport& rep) {
  j.at("Da").get_to(rep.Da);
  j.at("Db").get_to(rep.Db);
  j.at("trace_Ce_a").get_to(rep.trace_Ce_a);
  j.at("trace_Ce_b").get_to(rep.trace_Ce_b);
  j.at("form_discrepancy").get_to(rep.form_discrepancy);
  j.at("condition_estimate").get_to(rep.condition_estimate);
}

void to_json(nlohmann::json& j, const BoundReport& rep) {
  j = nlohmann::json{{"low_branch", rep.low_branch},
                     {"high_branch", rep.high_branch},
                     {"bound", rep.bound},
                     {"tight_low", rep.tight_low},
                     {"tight_high", rep.tight_high},
                     {"target", target_name(rep.target)}};
}

void from_json(const nlohmann::json& j, BoundReport& rep) {
  j.at("low_branch").get_to(rep.low_branch);
  j.at("high_branch").get_to(rep.high_branch);
  j.at("bound").get_to(rep.bound);
  j.at("tight_low").get_to(rep.tight_low);
  j.at("tight_high").get_to(rep.tight_high);
  rep.target = target_from_name(j.at("target").get<std::string>());
}

void to_json(nlohmann::json& j, const AllocationResult& res) {
  j = nlohmann::json{{"m_alloc", res.m_alloc},
                     {"objective", res.objective},
                     {"target", target_name(res.target)},
                     {"regime", regime_name(res.regime)}};
}

void from_json(const nlohmann::json& j, AllocationResult& res) {
  j.at("m_alloc").get_to(res.m_alloc);
  j.at("objective").get_to(res.objective);
  res.target = target_from_name(j.at("target").get<std::string>());
  res.regime = regime_from_name(j.at("regime").get<std::string>());
}

void to_json(nlohmann::json& j, const MonteCarloReport& rep) {
  j = nlohmann::json{{"trials", rep.trials},
                     {"empirical_Da", rep.empirical_Da},
                     {"empirical_Db", rep.empirical_Db},
                     {"analytic_Da", rep.analytic_Da},
                     {"analytic_Db", rep.analytic_Db},
                     {"stderr_Da", rep.stderr_Da},
                     {"stderr_Db", rep.stderr_Db}};
}

void from_json(const nlohmann::json& j, MonteCarloReport& rep) {
  j.at("trials").get_to(rep.trials);
  j.at("empirical_Da").get_to(rep.empirical_Da);
  j.at("empirical_Db").get_to(rep.empirical_Db);
  j.at("analytic_Da").get_to(rep.analytic_Da);
  j.at("analytic_Db").get_to(rep.analytic_Db);
  j.at("stderr_Da").get_to(rep.stderr_Da);
  j.at("stderr_Db").get_to(rep.stderr_Db);
}

void to_json(nlohmann::json& j, const InequalityTrialReport& rep) {
  j = nlohmann::json{{"name", rep.name},
                     {"trials", rep.trials},
                     {"max_violation", rep.max_violation},
                     {"worst_instance_seed", rep.worst_instance_seed},
                     {"passed", rep.passed()}};
}

void from_json(const nlohmann::json& j, InequalityTrialReport& rep) {
  j.at("name").get_to(rep.name);
  j.at("trials").get_to(rep.trials);
  j.at("max_violation").get_to(rep.max_violation);
  j.at("worst_instance_seed").get_to(rep.worst_instance_seed);
}

std::string target_name(Target t) {
  return t == Target::remote ? "remote" : "corrupted";
}

Target target_from_name(const std::string& s) {
  if (s == "remote") return Target::remote;
  if (s == "corrupted") return Target::corrupted;
  throw InvalidConfig("unknown target: " + s);
}

std::string regime_name(Regime r) {
  return r == Regime::low_rate ? "low_rate" : "high_rate";
}

Regime regime_from_name(const std::string& s) {
  if (s == "low_rate") return Regime::low_rate;
  if (s == "high_rate") return Regime::high_rate;
  throw InvalidConfig("unknown regime: " + s);
}

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

ModelConfig load_config(const std::string& path) {
  try {
    return parse_file(path).get<ModelConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("bad config " + path + ": " + e.what());
  }
}

SamplingPlan load_plan(const std::string& path) {
  try {
    return parse_file(path).get<SamplingPlan>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("bad plan " + path + ": " + e.what());
  }
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) os << ',';
      os << format_g17(M(i, j));
    }
    os << '\n';
  }
}

}  // namespace remsamp
