#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bcsvm {

struct FeatureEntry {
  std::uint32_t index;  // 1-based
  double value;

  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

/// Sparse feature vector with strictly increasing 1-based indices and no stored zeros.
class SparseVector {
 public:
  SparseVector() = default;

  /// Zero values are dropped. Throws std::invalid_argument on an index of 0 or non-increasing indices.
  explicit SparseVector(std::vector<FeatureEntry> entries);

  [[nodiscard]] std::span<const FeatureEntry> entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::uint32_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().index; }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<FeatureEntry> entries_;
};

enum class Label : std::int8_t { negative = -1, positive = 1 };

[[nodiscard]] constexpr double sign_of(Label y) noexcept { return y == Label::positive ? 1.0 : -1.0; }
[[nodiscard]] constexpr int to_int(Label y) noexcept { return static_cast<int>(y); }

/// One labelled point. `id` is the sample's identity in the dataset it was first read from
/// (its 0-based line order); partitioning and merging carry it along unchanged.
struct Sample {
  SparseVector features;
  Label label = Label::positive;
  std::size_t id = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Ordered collection of samples. Immutable once built; all operations return new datasets.
class Dataset {
 public:
  Dataset() = default;

  /// `dim` defaults to the largest feature index present. An explicit `dim` smaller than that
  /// throws std::invalid_argument.
  explicit Dataset(std::vector<Sample> samples, std::optional<std::size_t> dim = std::nullopt);

  [[nodiscard]] std::span<const Sample> samples() const noexcept { return samples_; }
  [[nodiscard]] const Sample& operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] bool empty() const noexcept { return samples_.empty(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t positive_count() const noexcept { return positives_; }
  [[nodiscard]] std::size_t negative_count() const noexcept { return samples_.size() - positives_; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Sample> samples_;
  std::size_t dim_ = 0;
  std::size_t positives_ = 0;
};

struct ParseOptions {
  /// Accept label 0 as -1 (for {0,1}-labelled files).
  bool remap_zero_label = false;
  /// Minimum dimensionality to report; the data's own maximum index wins when larger.
  std::optional<std::size_t> dim;
};

/// Parses LIBSVM sparse text: `<label> <index>:<value> ...` per line. Blank lines are skipped and
/// sample ids follow the order of the non-blank lines. Throws ParseError / LabelError.
[[nodiscard]] Dataset parse_libsvm(std::string_view text, const ParseOptions& options = {});
[[nodiscard]] Dataset parse_libsvm(std::istream& in, const ParseOptions& options = {});
[[nodiscard]] Dataset load_libsvm(const std::string& path, const ParseOptions& options = {});

/// Labels are written as +1/-1 and values in shortest round-trip decimal form.
[[nodiscard]] std::string write_libsvm(const Dataset& ds);
void write_libsvm(std::ostream& out, const Dataset& ds);
void save_libsvm(const std::string& path, const Dataset& ds);

/// Seeded Fisher-Yates permutation (xoshiro256**), reproducible across platforms.
[[nodiscard]] Dataset shuffle(const Dataset& ds, std::uint64_t seed);

/// Order-stable split into (positives, negatives). Both keep the parent's dim.
[[nodiscard]] std::pair<Dataset, Dataset> split_by_class(const Dataset& ds);

/// Shuffles with `seed`, then cuts into k contiguous parts. Part sizes differ by at most one and
/// the larger parts come first. Throws PartitionError when k == 0 or k > |ds|.
[[nodiscard]] std::vector<Dataset> partition_random(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// Shuffles each class separately and deals it into k parts (larger shares to the lowest-indexed
/// parts), so every part keeps the dataset's class ratio up to integer rounding. Within a part,
/// positives precede negatives. Throws PartitionError when k == 0 or a class has fewer than k samples.
[[nodiscard]] std::vector<Dataset> partition_balanced(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// Keeps n samples with the class ratio preserved (positive share rounded to nearest, at least one
/// of each class when both exist), chosen by a seeded per-class shuffle. Survivors stay in their
/// original order with their ids. Throws PartitionError when n == 0 or n > |ds|.
[[nodiscard]] Dataset stratified_subsample(const Dataset& ds, std::size_t n, std::uint64_t seed);

/// Concatenates datasets in order; the result's dim is the largest input dim.
[[nodiscard]] Dataset concatenate(std::span<const Dataset> parts);

/// Sizes of k near-equal contiguous chunks of n items, remainder going to the first chunks.
[[nodiscard]] std::vector<std::size_t> chunk_sizes(std::size_t n, std::size_t k);

}  // namespace bcsvm
