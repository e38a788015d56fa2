#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bcsvm/cascade.hpp"
#include "bcsvm/dataset.hpp"
#include "bcsvm/solver.hpp"

namespace bcsvm {

using BigInt = boost::multiprecision::cpp_int;
/// Always kept in lowest terms with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

/// C(n, k); 0 when k < 0 or k > n.
[[nodiscard]] BigInt binomial(std::int64_t n, std::int64_t k);

[[nodiscard]] std::string to_fraction_string(const BigRational& q);
/// Rounded to `digits` places after the decimal point.
[[nodiscard]] std::string to_decimal_string(const BigRational& q, int digits = 12);
[[nodiscard]] double to_double(const BigRational& q);

/**
 * Per-class counts of support vectors, noise points and common samples, plus the group count m.
 *
 * Subset sizes use floor division: t = T/m, p = pT/m, n = nT/m.
 */
struct RetentionCensus {
  std::uint64_t psv = 0;
  std::uint64_t nsv = 0;
  std::uint64_t pn = 0;
  std::uint64_t nn = 0;
  std::uint64_t pds = 0;
  std::uint64_t nds = 0;
  std::uint64_t m = 1;

  [[nodiscard]] std::uint64_t pt() const noexcept { return psv + pds + pn; }
  [[nodiscard]] std::uint64_t nt() const noexcept { return nsv + nds + nn; }
  [[nodiscard]] std::uint64_t total() const noexcept { return pt() + nt(); }
  [[nodiscard]] std::uint64_t subset_size() const noexcept { return m == 0 ? 0 : total() / m; }
  [[nodiscard]] std::uint64_t positive_quota() const noexcept { return m == 0 ? 0 : pt() / m; }
  [[nodiscard]] std::uint64_t negative_quota() const noexcept { return m == 0 ? 0 : nt() / m; }

  friend bool operator==(const RetentionCensus&, const RetentionCensus&) = default;
};

enum class SampleCategory { support_vector, noise, common };

[[nodiscard]] std::string to_string(SampleCategory c);

/// Noise if y*f(x) < 0, otherwise support vector if alpha > kSupportThreshold, otherwise common.
[[nodiscard]] SampleCategory categorize(Label y, double alpha, double decision) noexcept;

/// Classifies every sample of `ds` from the full-data training outputs (alpha and f(x_i), indexed
/// like ds). Throws ConfigError if the spans do not match ds in length or m == 0.
[[nodiscard]] RetentionCensus census(const Dataset& ds, std::span<const double> alpha, std::span<const double> decision,
                                     std::uint64_t m);
[[nodiscard]] std::vector<SampleCategory> categorize_all(const Dataset& ds, std::span<const double> alpha,
                                                         std::span<const double> decision);

/**
 * Probability that one uniformly drawn t-subset (t = T/m) lands in a configuration that keeps the
 * global positive support vectors: (case 1) at least one positive SV and no noise of either sign,
 * or (case 2) at least one positive SV, one positive noise and one negative noise point. Negative
 * SVs and common negatives form a single pool. The tuple sums collapse by Vandermonde's identity
 * into inclusion-exclusion over binomials, evaluated exactly.
 * Throws ConfigError when m == 0, t == 0 or t > T.
 */
[[nodiscard]] BigRational retention_prob_random(const RetentionCensus& c);

/// Same events when the subset is drawn as p = pT/m positives and n = nT/m negatives independently.
/// Throws ConfigError when p == 0 or n == 0.
[[nodiscard]] BigRational retention_prob_balanced(const RetentionCensus& c);

/// Numerator counts behind the two probabilities (for reports and cross-checks).
struct RetentionCounts {
  BigInt case1;
  BigInt case2;
  BigInt denominator;
};
[[nodiscard]] RetentionCounts retention_counts_random(const RetentionCensus& c);
[[nodiscard]] RetentionCounts retention_counts_balanced(const RetentionCensus& c);

struct DenominatorComparison {
  BigInt lhs;  // C(T, t)
  BigInt rhs;  // C(pT, p) * C(nT, n)
  bool holds = false;  // lhs > rhs
};

/// Requires 1 <= p <= pT, 1 <= n <= nT and p + n == t; throws ConfigError otherwise.
[[nodiscard]] DenominatorComparison denominator_inequality(const RetentionCensus& c);

struct RetentionSample {
  std::uint64_t seed = 0;
  /// Share of global SVs present in the first layer's merged pool.
  double layer1_fraction = 0.0;
  /// Share of global SVs present in the final model.
  double final_fraction = 0.0;
};

struct RetentionMeasurement {
  std::vector<std::size_t> global_sv_ids;
  SmoSolution direct;
  std::vector<RetentionSample> samples;
};

/**
 * Trains once on the full dataset to get the global SV set, then runs one cascade per seed and
 * reports which global SVs (by sample id) survive the first layer and the whole cascade.
 * Seeds run concurrently on `options.workers` threads; each cascade itself runs single-threaded.
 */
[[nodiscard]] RetentionMeasurement measure_retention(const Dataset& ds, const CascadePlan& plan,
                                                     const SolverConfig& cfg, std::span<const std::uint64_t> seeds,
                                                     const CascadeOptions& options = {});

}  // namespace bcsvm
