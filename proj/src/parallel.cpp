#include "bcsvm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace bcsvm {

std::size_t resolve_workers(std::size_t requested) noexcept {
  if (requested > 0) {
    return requested;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t width = std::min(resolve_workers(workers), count);
  if (width <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(width);
    for (std::size_t w = 0; w < width; ++w) {
      pool.emplace_back(drain);
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace bcsvm
