#include "bcsvm/cascade.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "bcsvm/error.hpp"
#include "bcsvm/parallel.hpp"
#include "bcsvm/random.hpp"

namespace bcsvm {

std::string to_string(PartitionStrategy p) { return p == PartitionStrategy::random ? "random" : "balanced"; }

std::string to_string(MergeStrategy m) { return m == MergeStrategy::pooled ? "pooled" : "pairwise"; }

PartitionStrategy partition_from_string(const std::string& name) {
  if (name == "random") {
    return PartitionStrategy::random;
  }
  if (name == "balanced") {
    return PartitionStrategy::balanced;
  }
  throw ConfigError("unknown partition strategy '" + name + "' (expected random or balanced)");
}

MergeStrategy merge_from_string(const std::string& name) {
  if (name == "pooled") {
    return MergeStrategy::pooled;
  }
  if (name == "pairwise") {
    return MergeStrategy::pairwise;
  }
  throw ConfigError("unknown merge strategy '" + name + "' (expected pooled or pairwise)");
}

std::vector<std::string> plan_violations(const CascadePlan& plan) {
  std::vector<std::string> out;
  const auto& layers = plan.layers;
  if (layers.empty()) {
    out.emplace_back("the plan needs at least one layer");
    return out;
  }
  if (std::find(layers.begin(), layers.end(), std::size_t{0}) != layers.end()) {
    out.emplace_back("every layer needs at least one group");
  }
  if (layers.back() != 1) {
    out.emplace_back("the last layer must have exactly 1 group to yield a single model (got " +
                     std::to_string(layers.back()) + ")");
  }
  if (plan.merge == MergeStrategy::pairwise) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto g = layers[l];
      if (g == 0 || (g & (g - 1)) != 0) {
        out.push_back("pairwise merge needs power-of-two group counts (layer " + std::to_string(l) + " has " +
                      std::to_string(g) + ")");
      }
      if (l + 1 < layers.size() && layers[l + 1] * 2 != g) {
        out.push_back("pairwise merge halves the group count each layer (layer " + std::to_string(l) + " has " +
                      std::to_string(g) + ", layer " + std::to_string(l + 1) + " has " +
                      std::to_string(layers[l + 1]) + ")");
      }
    }
  }
  return out;
}

void validate_plan(const CascadePlan& plan) {
  const auto violations = plan_violations(plan);
  if (violations.empty()) {
    return;
  }
  std::string msg = "invalid cascade plan:";
  for (const auto& v : violations) {
    msg += "\n  - " + v;
  }
  throw ConfigError(msg);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Dataset> partition_layer(const Dataset& working, std::size_t groups, PartitionStrategy strategy,
                                     std::uint64_t seed, std::size_t layer) {
  if (groups == 1) {
    return {working};
  }
  try {
    return strategy == PartitionStrategy::random ? partition_random(working, groups, seed)
                                                 : partition_balanced(working, groups, seed);
  } catch (const PartitionError& e) {
    throw PartitionError("layer " + std::to_string(layer) + ": " + e.what());
  }
}

void require_both_classes(const std::vector<Dataset>& groups, std::size_t layer) {
  for (std::size_t s = 0; s < groups.size(); ++s) {
    const auto& g = groups[s];
    if (g.positive_count() == 0 || g.negative_count() == 0) {
      throw TrainingError("layer " + std::to_string(layer) + ", group " + std::to_string(s) + " holds only " +
                          (g.positive_count() == 0 ? "negative" : "positive") + " samples (" +
                          std::to_string(g.size()) + " total); use fewer, larger groups or balanced partitioning");
    }
  }
}

void require_disjoint(std::vector<std::size_t> ids, std::size_t layer) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::logic_error("layer " + std::to_string(layer) + " merged a sample twice; groups are not disjoint");
  }
}

}  // namespace

CascadeResult run_cascade(const Dataset& ds, const CascadePlan& plan, const SolverConfig& cfg, std::uint64_t seed,
                          const CascadeOptions& options) {
  validate_plan(plan);
  cfg.validate();
  const auto run_start = Clock::now();

  CascadeResult result;
  Dataset working = ds;
  std::vector<Dataset> groups;
  bool groups_ready = false;

  for (std::size_t layer = 0; layer < plan.layers.size(); ++layer) {
    const auto layer_start = Clock::now();
    const std::size_t group_count = plan.layers[layer];
    if (!groups_ready) {
      groups = partition_layer(working, group_count, plan.partition, stream_seed(seed, layer), layer);
    }
    require_both_classes(groups, layer);

    std::vector<SmoSolution> solutions(groups.size());
    std::vector<double> seconds(groups.size());
    parallel_for(groups.size(), options.workers, [&](std::size_t s) {
      const auto start = Clock::now();
      solutions[s] = solve_smo(groups[s], cfg);
      seconds[s] = seconds_since(start);
    });

    LayerReport report;
    report.layer_index = layer;
    report.group_count = groups.size();
    report.subset_seconds = seconds;
    std::vector<Dataset> sv_sets;
    sv_sets.reserve(groups.size());
    for (std::size_t s = 0; s < groups.size(); ++s) {
      const auto& sol = solutions[s];
      if (!sol.converged && !options.allow_nonconverged) {
        throw TrainingError("layer " + std::to_string(layer) + ", group " + std::to_string(s) +
                            " did not converge within " + std::to_string(cfg.max_iter) + " iterations");
      }
      report.subset_sizes.push_back(groups[s].size());
      report.sv_counts_per_subset.push_back(sol.model.sv_count());
      report.iterations_per_subset.push_back(sol.iterations);
      const auto svs = sol.model.support_vectors();
      sv_sets.emplace_back(std::vector<Sample>(svs.begin(), svs.end()), ds.dim());
      for (const auto& sv : svs) {
        report.merged_ids.push_back(sv.id);
      }
    }
    report.merged_size = report.merged_ids.size();
    require_disjoint(report.merged_ids, layer);

    const bool last = layer + 1 == plan.layers.size();
    if (last) {
      result.final_solution = std::move(solutions.front());
      result.model = result.final_solution.model;
    } else if (plan.merge == MergeStrategy::pooled) {
      working = concatenate(sv_sets);
      groups.clear();
      groups_ready = false;
    } else {
      std::vector<Dataset> pairs;
      pairs.reserve(sv_sets.size() / 2);
      for (std::size_t s = 0; s + 1 < sv_sets.size(); s += 2) {
        pairs.push_back(concatenate(std::span<const Dataset>(&sv_sets[s], 2)));
      }
      groups = std::move(pairs);
      groups_ready = true;
    }
    report.total_seconds = seconds_since(layer_start);
    result.layers.push_back(std::move(report));
  }
  result.total_seconds = seconds_since(run_start);
  return result;
}

CascadeResult train_csvm(const Dataset& ds, const std::vector<std::size_t>& layers, const SolverConfig& cfg,
                   std::uint64_t seed, const CascadeOptions& options) {
  return run_cascade(ds, {layers, PartitionStrategy::random, MergeStrategy::pooled}, cfg, seed, options);
}

CascadeResult train_bcsvm(const Dataset& ds, const std::vector<std::size_t>& layers, const SolverConfig& cfg,
                    std::uint64_t seed, const CascadeOptions& options) {
  return run_cascade(ds, {layers, PartitionStrategy::balanced, MergeStrategy::pooled}, cfg, seed, options);
}

}  // namespace bcsvm
