#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace psipoint {

/// Worker cap for independent evaluations (kernel grids, partition sums).
/// 0 selects the hardware concurrency.
void set_parallelism(unsigned workers);
unsigned parallelism();

/// Evaluates f(0), ..., f(count - 1) on up to parallelism() threads and
/// returns the results in index order. The first exception thrown by any
/// task is rethrown after all workers have stopped.
template <typename F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  const std::size_t workers = std::min<std::size_t>(parallelism(), count);
  if (workers <= 1) {
    std::vector<R> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace psipoint
