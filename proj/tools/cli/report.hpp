#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bcsvm/analysis.hpp"
#include "bcsvm/cascade.hpp"
#include "bcsvm/dataset.hpp"
#include "bcsvm/solver.hpp"

namespace bcsvm::cli {

using nlohmann::json;

json dataset_json(const Dataset& ds, const std::string& path);
json solver_json(const SolverConfig& cfg);
json plan_json(const CascadePlan& plan);
json layer_json(const LayerReport& layer);
json model_summary_json(const SvmModel& model);
json census_json(const RetentionCensus& c);
/// {"fraction": "a/b", "decimal": "0.xxxxxxxxxxxx"}
json rational_json(const BigRational& q);
json counts_json(const RetentionCounts& counts);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for fewer than two values
};
Summary summarize(const std::vector<double>& values);
json summary_json(const std::vector<double>& values);

/// Shortest round-trip decimal form, used in the CSV table.
std::string format_double(double v);

}  // namespace bcsvm::cli
