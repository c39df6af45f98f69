#include "fssc/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fssc {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& work) {
  if (n == 0) return;
  const unsigned workers =
      std::min<std::size_t>(resolve_threads(threads), n);
  constexpr std::size_t kMinChunk = 64;
  if (workers <= 1 || n < 2 * kMinChunk) {
    work(0, n);
    return;
  }

  const std::size_t chunk = (n + workers - 1) / workers;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto guarded = [&](std::size_t begin, std::size_t end) {
    try {
      work(begin, end);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    pool.emplace_back(guarded, begin, std::min(begin + chunk, n));
  }
  guarded(0, std::min(chunk, n));
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fssc
