#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace mwqi::cli {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 2;
  bool log = false;

  std::vector<double> values() const;
};

/// Parses "min:max:count" or "min:max:count:log". Throws std::invalid_argument.
Axis parse_axis(std::string_view name, std::string_view spec);

/// Worker count: requested > 0 wins, then MWQI_THREADS, then hardware.
unsigned resolve_threads(unsigned requested);

/// results[i] = f(i), evaluated on `threads` workers. Output order depends
/// only on the index, never on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F f) {
  std::vector<T> results(n);
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, n)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace mwqi::cli
