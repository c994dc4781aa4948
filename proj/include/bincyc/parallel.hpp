#pragma once

// Deterministic work distribution: fn(i) runs once per chunk on a pool of
// workers, results come back in chunk order. Chunk geometry never depends on
// the worker count, so reductions are bit-identical for any worker count.

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bincyc {

template <class T, class Fn>
std::vector<T> parallel_map_chunks(std::size_t n_chunks, unsigned workers, Fn&& fn) {
  std::vector<T> out(n_chunks);
  if (n_chunks == 0) return out;
  unsigned w = workers == 0 ? 1 : workers;
  if (static_cast<std::size_t>(w) > n_chunks) w = static_cast<unsigned>(n_chunks);
  if (w == 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mx;
  auto body = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_chunks) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mx);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace bincyc
