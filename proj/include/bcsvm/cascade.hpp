#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bcsvm/dataset.hpp"
#include "bcsvm/solver.hpp"

namespace bcsvm {

enum class PartitionStrategy { random, balanced };
enum class MergeStrategy { pooled, pairwise };

[[nodiscard]] std::string to_string(PartitionStrategy p);
[[nodiscard]] std::string to_string(MergeStrategy m);
[[nodiscard]] PartitionStrategy partition_from_string(const std::string& name);
[[nodiscard]] MergeStrategy merge_from_string(const std::string& name);

/// Group count per layer, e.g. {8, 1}: eight parallel subsets, then one final training.
struct CascadePlan {
  std::vector<std::size_t> layers;
  PartitionStrategy partition = PartitionStrategy::balanced;
  MergeStrategy merge = MergeStrategy::pooled;
};

/// Human-readable violations; empty when the plan is usable.
[[nodiscard]] std::vector<std::string> plan_violations(const CascadePlan& plan);
/// Throws ConfigError listing every violation.
void validate_plan(const CascadePlan& plan);

struct LayerReport {
  std::size_t layer_index = 0;
  std::size_t group_count = 0;
  std::vector<std::size_t> subset_sizes;
  std::vector<std::size_t> sv_counts_per_subset;
  std::vector<std::size_t> iterations_per_subset;
  std::vector<double> subset_seconds;
  /// Size of the support vector pool handed to the next layer (the final model's SVs on the last layer).
  std::size_t merged_size = 0;
  double total_seconds = 0.0;
  /// Sample ids of that pool, in merge order.
  std::vector<std::size_t> merged_ids;
};

struct CascadeOptions {
  /// Concurrent subset trainers; 0 = hardware concurrency. Results do not depend on it.
  std::size_t workers = 0;
  /// Keep going when a subset hits max_iter instead of failing the run.
  bool allow_nonconverged = false;
};

struct CascadeResult {
  SvmModel model;
  std::vector<LayerReport> layers;
  /// Solver output of the last layer, indexed like its training set.
  SmoSolution final_solution;
  double total_seconds = 0.0;
};

/**
 * Layered grouped training.
 *
 * Layer l partitions the working set into layers[l] groups (seeded with stream l of `seed`), trains
 * them in parallel and keeps only each group's support vectors. Pooled merge concatenates all SV
 * sets into the next working set; pairwise merge joins SV sets two by two and uses the pairs
 * directly as the next layer's groups. A single-group layer trains its working set as-is, so
 * layers {1} is plain smo_train. Subset results are combined in group order, so the outcome does
 * not depend on the worker count.
 */
[[nodiscard]] CascadeResult run_cascade(const Dataset& ds, const CascadePlan& plan, const SolverConfig& cfg,
                                        std::uint64_t seed, const CascadeOptions& options = {});

/// Random grouping, pooled merge.
[[nodiscard]] CascadeResult train_csvm(const Dataset& ds, const std::vector<std::size_t>& layers, const SolverConfig& cfg,
                                 std::uint64_t seed, const CascadeOptions& options = {});

/// Class-balanced grouping, pooled merge.
[[nodiscard]] CascadeResult train_bcsvm(const Dataset& ds, const std::vector<std::size_t>& layers, const SolverConfig& cfg,
                                  std::uint64_t seed, const CascadeOptions& options = {});

}  // namespace bcsvm
