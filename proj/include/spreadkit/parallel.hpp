#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spreadkit {

/// Runs fn(worker) for worker in [0, workers) on separate threads and rethrows
/// the first exception. workers <= 1 runs inline.
template <class F>
void run_workers(std::size_t workers, F&& fn) {
  workers = std::max<std::size_t>(workers, 1);
  if (workers == 1) {
    fn(std::size_t{0});
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

/// Lock-free running minimum, used to pick the canonical-first hit of a
/// partitioned scan independently of the worker count.
class AtomicMin {
 public:
  explicit AtomicMin(std::uint64_t init = ~std::uint64_t{0}) : value_(init) {}
  void offer(std::uint64_t v) {
    std::uint64_t cur = value_.load(std::memory_order_relaxed);
    while (v < cur && !value_.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }
  std::uint64_t get() const { return value_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> value_;
};

}  // namespace spreadkit
