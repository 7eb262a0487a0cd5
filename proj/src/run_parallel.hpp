#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace heights {
namespace detail {

// Runs work(0..count-1) across at most `threads` workers, pulling chunk
// indices from a shared counter. The first exception wins and is rethrown
// on the calling thread after all workers stop.
inline void run_parallel(unsigned threads, std::uint64_t count,
                         const std::function<void(std::uint64_t)>& work) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t c = 0; c < count; ++c) work(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex err_mutex;
  auto body = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= count) return;
      try {
        work(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first) first = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  unsigned nt = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace detail
}  // namespace heights
