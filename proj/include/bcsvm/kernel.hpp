#pragma once

#include <cstddef>
#include <limits>
#include <list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcsvm/dataset.hpp"

namespace bcsvm {

enum class KernelKind { linear, rbf, polynomial };

/// linear: <a,b>; rbf: exp(-gamma*|a-b|^2); polynomial: (gamma*<a,b> + coef0)^degree.
struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;

  static KernelSpec linear() { return {KernelKind::linear, 1.0, 1, 0.0}; }
  static KernelSpec rbf(double gamma) { return {KernelKind::rbf, gamma, 3, 0.0}; }
  static KernelSpec polynomial(double gamma, int degree, double coef0) {
    return {KernelKind::polynomial, gamma, degree, coef0};
  }

  /// Throws ConfigError if gamma <= 0 (rbf, polynomial) or degree < 1 (polynomial).
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

[[nodiscard]] std::string to_string(KernelKind kind);
/// Accepts "linear", "rbf" (alias "gaussian") and "polynomial" (alias "poly").
[[nodiscard]] KernelKind kernel_kind_from_string(const std::string& name);

[[nodiscard]] double dot(const SparseVector& a, const SparseVector& b) noexcept;
[[nodiscard]] inline double squared_norm(const SparseVector& a) noexcept { return dot(a, a); }

/// Kernel value given the precomputed squared norms of both arguments (only rbf reads them).
[[nodiscard]] double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b, double a_sq_norm,
                                 double b_sq_norm) noexcept;

/// Symmetric in (a, b) bit-for-bit; rbf(a, a) is exactly 1.
[[nodiscard]] inline double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b) noexcept {
  return kernel_eval(spec, a, b, squared_norm(a), squared_norm(b));
}

using KernelRow = std::shared_ptr<const std::vector<double>>;

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t evictions = 0;
};

/**
 * LRU store of kernel rows bounded by a byte budget.
 *
 * Rows are handed out as shared pointers, so a row evicted while a caller still holds it stays
 * valid for that caller; only rows resident in the cache count against the budget. A row larger
 * than the whole budget is never stored (capacity 0 disables caching).
 */
class KernelCache {
 public:
  static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  explicit KernelCache(std::size_t capacity_bytes) : capacity_(capacity_bytes) {}

  /// Returns the cached row and marks it most recently used, or nullptr on a miss.
  KernelRow find(std::size_t index);
  /// Stores a row as most recently used, evicting least recently used rows to stay in budget.
  void insert(std::size_t index, KernelRow row);
  void clear();

  [[nodiscard]] std::size_t capacity_bytes() const noexcept { return capacity_; }
  [[nodiscard]] std::size_t used_bytes() const noexcept { return used_; }
  [[nodiscard]] std::size_t resident_rows() const noexcept { return index_.size(); }
  [[nodiscard]] const CacheStats& stats() const noexcept { return stats_; }

 private:
  struct Entry {
    std::size_t index;
    KernelRow row;
  };

  static std::size_t bytes_of(const KernelRow& row) { return row->size() * sizeof(double); }

  std::size_t capacity_;
  std::size_t used_ = 0;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
  CacheStats stats_;
};

/**
 * Kernel matrix of one dataset, served row by row through a KernelCache.
 *
 * Rows cover the current active index set (initially all samples, in order). Changing the active
 * set drops every cached row. Squared norms are computed once up front.
 */
class KernelMatrix {
 public:
  KernelMatrix(const Dataset& ds, KernelSpec spec, std::size_t cache_bytes);

  /// Row i restricted to the active set: element k is K(x_i, x_active[k]).
  [[nodiscard]] KernelRow row(std::size_t i);
  [[nodiscard]] double diagonal(std::size_t i) const noexcept { return diagonal_[i]; }
  [[nodiscard]] double eval(std::size_t i, std::size_t j) const noexcept;

  void set_active(std::vector<std::size_t> active);
  [[nodiscard]] std::span<const std::size_t> active() const noexcept { return active_; }

  [[nodiscard]] const KernelCache& cache() const noexcept { return cache_; }
  [[nodiscard]] std::size_t size() const noexcept { return ds_->size(); }

 private:
  const Dataset* ds_;
  KernelSpec spec_;
  std::vector<double> sq_norms_;
  std::vector<double> diagonal_;
  std::vector<std::size_t> active_;
  KernelCache cache_;
};

/// Megabytes to bytes, saturating; KernelCache::unbounded passes through.
[[nodiscard]] std::size_t cache_bytes_from_mb(std::size_t mb) noexcept;

}  // namespace bcsvm
