#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "modpl/primes.hpp"

namespace modpl {

/// Default worker count: logical CPUs, at least 1.
inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Runs `fn(p)` for every prime in `range`, splitting the range into fixed-width chunks
/// that workers claim in any order. Chunk boundaries depend only on the range, and
/// results are concatenated in chunk order, so the output is the same for any worker count.
/// `fn` returns std::optional<T>; empty results are dropped.
template <class T, class Fn>
std::vector<T> ordered_prime_scan(PrimeRange range, unsigned workers, Fn&& fn, u64 chunk_width = u64{1} << 18) {
  if (range.empty()) return {};
  const u64 width = range.hi - range.lo + 1;
  const u64 n_chunks = (width + chunk_width - 1) / chunk_width;
  std::vector<std::vector<T>> parts(n_chunks);
  const std::size_t seg = static_cast<std::size_t>(std::min<u64>(SegmentedSieve::kDefaultSegment, (chunk_width + 1) / 2));

  auto run_chunk = [&](u64 c) {
    PrimeRange sub;
    sub.lo = range.lo + c * chunk_width;
    sub.hi = std::min(range.hi, sub.lo + chunk_width - 1);
    auto& out = parts[c];
    SegmentedSieve(sub, seg).for_each([&](u64 p) {
      if (std::optional<T> v = fn(p)) out.push_back(std::move(*v));
    });
  };

  workers = std::max(1U, workers);
  if (workers == 1 || n_chunks == 1) {
    for (u64 c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<u64> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    const unsigned n_threads = static_cast<unsigned>(std::min<u64>(workers, n_chunks));
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (u64 c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(n_chunks);
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<T> merged;
  for (auto& part : parts) {
    merged.insert(merged.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return merged;
}

}  // namespace modpl
