#include "bcsvm/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "bcsvm/error.hpp"

namespace bcsvm {

void KernelSpec::validate() const {
  if (kind == KernelKind::linear) {
    return;
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("kernel gamma must be positive, got " + std::to_string(gamma));
  }
  if (kind == KernelKind::polynomial && degree < 1) {
    throw ConfigError("polynomial degree must be at least 1, got " + std::to_string(degree));
  }
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear:
      return "linear";
    case KernelKind::rbf:
      return "rbf";
    case KernelKind::polynomial:
      return "polynomial";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "linear") {
    return KernelKind::linear;
  }
  if (name == "rbf" || name == "gaussian") {
    return KernelKind::rbf;
  }
  if (name == "polynomial" || name == "poly") {
    return KernelKind::polynomial;
  }
  throw ConfigError("unknown kernel '" + name + "'");
}

double dot(const SparseVector& a, const SparseVector& b) noexcept {
  const auto ea = a.entries();
  const auto eb = b.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  double sum = 0.0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].index == eb[j].index) {
      sum += ea[i].value * eb[j].value;
      ++i;
      ++j;
    } else if (ea[i].index < eb[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b, double a_sq_norm,
                   double b_sq_norm) noexcept {
  switch (spec.kind) {
    case KernelKind::linear:
      return dot(a, b);
    case KernelKind::rbf: {
      const double dist = std::max(0.0, a_sq_norm + b_sq_norm - 2.0 * dot(a, b));
      return std::exp(-spec.gamma * dist);
    }
    case KernelKind::polynomial:
      return std::pow(spec.gamma * dot(a, b) + spec.coef0, spec.degree);
  }
  return 0.0;
}

KernelRow KernelCache::find(std::size_t index) {
  const auto it = index_.find(index);
  if (it == index_.end()) {
    ++stats_.misses;
    return nullptr;
  }
  ++stats_.hits;
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->row;
}

void KernelCache::insert(std::size_t index, KernelRow row) {
  if (const auto it = index_.find(index); it != index_.end()) {
    used_ -= bytes_of(it->second->row);
    lru_.erase(it->second);
    index_.erase(it);
  }
  const std::size_t bytes = bytes_of(row);
  if (bytes > capacity_) {
    return;
  }
  while (used_ + bytes > capacity_ && !lru_.empty()) {
    used_ -= bytes_of(lru_.back().row);
    index_.erase(lru_.back().index);
    lru_.pop_back();
    ++stats_.evictions;
  }
  lru_.push_front({index, std::move(row)});
  index_[index] = lru_.begin();
  used_ += bytes;
}

void KernelCache::clear() {
  lru_.clear();
  index_.clear();
  used_ = 0;
}

KernelMatrix::KernelMatrix(const Dataset& ds, KernelSpec spec, std::size_t cache_bytes)
    : ds_(&ds), spec_(spec), cache_(cache_bytes) {
  const std::size_t n = ds.size();
  sq_norms_.resize(n);
  diagonal_.resize(n);
  active_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq_norms_[i] = squared_norm(ds[i].features);
    active_[i] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    diagonal_[i] = eval(i, i);
  }
}

double KernelMatrix::eval(std::size_t i, std::size_t j) const noexcept {
  const auto& samples = ds_->samples();
  return kernel_eval(spec_, samples[i].features, samples[j].features, sq_norms_[i], sq_norms_[j]);
}

KernelRow KernelMatrix::row(std::size_t i) {
  if (auto hit = cache_.find(i)) {
    return hit;
  }
  auto values = std::make_shared<std::vector<double>>(active_.size());
  for (std::size_t k = 0; k < active_.size(); ++k) {
    (*values)[k] = eval(i, active_[k]);
  }
  KernelRow row = std::move(values);
  cache_.insert(i, row);
  return row;
}

void KernelMatrix::set_active(std::vector<std::size_t> active) {
  active_ = std::move(active);
  cache_.clear();
}

std::size_t cache_bytes_from_mb(std::size_t mb) noexcept {
  constexpr std::size_t mib = std::size_t{1} << 20;
  if (mb >= KernelCache::unbounded / mib) {
    return KernelCache::unbounded;
  }
  return mb * mib;
}

}  // namespace bcsvm
