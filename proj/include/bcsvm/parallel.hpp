#pragma once

#include <cstddef>
#include <functional>

namespace bcsvm {

/// Number of workers to use for a requested width; 0 means the hardware concurrency.
[[nodiscard]] std::size_t resolve_workers(std::size_t requested) noexcept;

/// Runs task(0..count-1) on up to `workers` threads. Tasks must not share mutable state.
/// If any tasks throw, the exception of the lowest-indexed failing task is rethrown after all finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

}  // namespace bcsvm
