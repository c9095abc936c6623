#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "modpl/int128.hpp"

namespace modpl {

inline constexpr u64 kMaxSieveBound = 1'000'000'000;

/// Closed interval [lo, hi] of candidate primes.
struct PrimeRange {
  u64 lo = 2;
  u64 hi = 2;

  PrimeRange() = default;
  PrimeRange(u64 lo_, u64 hi_);

  bool empty() const { return lo > hi; }
  bool operator==(const PrimeRange&) const = default;
};

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Segmented sieve of Eratosthenes over odd numbers. `segment_odds` is the number of
/// odd integers covered by one segment (default 2^20).
class SegmentedSieve {
 public:
  static constexpr std::size_t kDefaultSegment = std::size_t{1} << 20;

  explicit SegmentedSieve(PrimeRange range, std::size_t segment_odds = kDefaultSegment);

  /// Calls `fn(p)` for every prime in the range, ascending.
  void for_each(const std::function<void(u64)>& fn) const;

 private:
  PrimeRange range_;
  std::size_t segment_odds_;
};

/// All primes in the range, ascending. Throws std::length_error if the result would
/// exceed `max_bytes` of storage.
std::vector<u64> primes_in(PrimeRange range,
                           std::size_t segment_odds = SegmentedSieve::kDefaultSegment,
                           std::size_t max_bytes = std::size_t{1} << 30);

/// Splits a range into `parts` contiguous, disjoint sub-ranges covering it (some may be empty).
std::vector<PrimeRange> partition(PrimeRange range, std::size_t parts);

/// Distinct prime factors by trial division (fine for n < 2^64 with small factors or n <= 10^18).
std::vector<u64> prime_factors(u64 n);

}  // namespace modpl
