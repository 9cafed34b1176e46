#pragma once
// JSON (de)serialization for every externally visible type, plus the CSV
// helpers the CLI uses. All numeric CSV text is written with %.17g, '.'
// decimal point and LF line endings, so outputs are byte-stable.

#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "remsamp/bounds.hpp"
#include "remsamp/estimator.hpp"
#include "remsamp/model.hpp"
#include "remsamp/strategies.hpp"
#include "remsamp/verify.hpp"

namespace remsamp {

void to_json(nlohmann::json& j, const ModelConfig& cfg);
void from_json(const nlohmann::json& j, ModelConfig& cfg);

void to_json(nlohmann::json& j, const SamplingPlan& plan);
void from_json(const nlohmann::json& j, SamplingPlan& plan);

void to_json(nlohmann::json& j, const DistortionReport& rep);
void from_json(const nlohmann::json& j, DistortionReport& rep);

void to_json(nlohmann::json& j, const BoundReport& rep);
void from_json(const nlohmann::json& j, BoundReport& rep);

void to_json(nlohmann::json& j, const AllocationResult& res);
void from_json(const nlohmann::json& j, AllocationResult& res);

void to_json(nlohmann::json& j, const MonteCarloReport& rep);
void from_json(const nlohmann::json& j, MonteCarloReport& rep);

void to_json(nlohmann::json& j, const InequalityTrialReport& rep);
void from_json(const nlohmann::json& j, InequalityTrialReport& rep);

std::string target_name(Target t);
Target target_from_name(const std::string& s);
std::string regime_name(Regime r);
Regime regime_from_name(const std::string& s);

// Throws InvalidConfig on unreadable or malformed files.
ModelConfig load_config(const std::string& path);
SamplingPlan load_plan(const std::string& path);

std::string format_g17(double v);
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& M);

}  // namespace remsamp
