#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bcsvm/dataset.hpp"
#include "bcsvm/kernel.hpp"

namespace bcsvm {

struct SolverConfig {
  double C = 1.0;
  /// Stop when the maximal violating pair's gap m(alpha) - M(alpha) is at most tol.
  double tol = 1e-3;
  std::size_t max_iter = 100'000'000;
  /// Kernel row cache budget; KernelCache::unbounded (as megabytes) lifts the limit.
  std::size_t cache_mb = 100;
  KernelSpec kernel;

  /// Throws ConfigError on C <= 0, tol <= 0, max_iter == 0 or an invalid kernel.
  void validate() const;
};

/// Dual variables at or below this value are treated as zero when extracting support vectors.
inline constexpr double kSupportThreshold = 1e-12;

/**
 * Trained binary classifier: f(x) = sum_i coef_i * K(sv_i, x) + bias, coef_i = y_i * alpha_i.
 */
class SvmModel {
 public:
  SvmModel() = default;
  SvmModel(std::vector<Sample> svs, std::vector<double> coef, double bias, KernelSpec kernel, double C = 0.0);

  [[nodiscard]] std::span<const Sample> support_vectors() const noexcept { return svs_; }
  [[nodiscard]] std::span<const double> coefficients() const noexcept { return coef_; }
  [[nodiscard]] double bias() const noexcept { return bias_; }
  [[nodiscard]] const KernelSpec& kernel() const noexcept { return kernel_; }
  /// Box constraint of the training run (0 when unknown, e.g. hand-built models).
  [[nodiscard]] double cost() const noexcept { return C_; }
  [[nodiscard]] std::size_t sv_count() const noexcept { return svs_.size(); }

  /// Sample ids of the support vectors, in model order.
  [[nodiscard]] std::vector<std::size_t> sv_ids() const;

  [[nodiscard]] double decision_value(const SparseVector& x) const;

 private:
  std::vector<Sample> svs_;
  std::vector<double> coef_;
  std::vector<double> sv_sq_norms_;
  double bias_ = 0.0;
  KernelSpec kernel_;
  double C_ = 0.0;
};

/// Everything smo produces beyond the model, indexed like the training set.
struct SmoSolution {
  SvmModel model;
  std::vector<double> alpha;
  /// f(x_i) for every training sample under the final model.
  std::vector<double> decision;
  std::size_t iterations = 0;
  bool converged = false;
  /// Maximal violating pair gap at exit.
  double kkt_gap = 0.0;
  /// Dual objective sum(alpha) - 1/2 alpha' Q alpha.
  double objective = 0.0;
  CacheStats cache_stats;
};

/**
 * Soft-margin C-SVM via SMO with first-order maximal violating pair selection, no shrinking.
 *
 * Starts from alpha = 0 and updates two multipliers analytically per step with box clipping.
 * The bias is the mean of y_i - sum_j coef_j K(x_j, x_i) over free multipliers, or the midpoint
 * of the feasible interval when none are free. Throws TrainingError on a single-class dataset.
 * Hitting max_iter returns a solution with converged == false.
 */
[[nodiscard]] SmoSolution solve_smo(const Dataset& ds, const SolverConfig& cfg);

/// solve_smo(ds, cfg).model
[[nodiscard]] SvmModel smo_train(const Dataset& ds, const SolverConfig& cfg);

[[nodiscard]] inline double decision_value(const SvmModel& m, const SparseVector& x) { return m.decision_value(x); }

/// sign(f(x)) with f(x) == 0 mapped to +1.
[[nodiscard]] Label predict(const SvmModel& m, const SparseVector& x);

/// Fraction of correctly predicted samples. Throws ConfigError on an empty test set.
[[nodiscard]] double accuracy(const SvmModel& m, const Dataset& test);

}  // namespace bcsvm
