#include "modpl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace modpl {

PrimeRange::PrimeRange(u64 lo_, u64 hi_) : lo(lo_), hi(hi_) {
  if (lo < 2) throw std::invalid_argument("prime range must start at 2 or above");
  if (hi > kMaxSieveBound) throw std::invalid_argument("prime range upper bound exceeds 10^9");
  if (lo > hi) throw std::invalid_argument("prime range has lo > hi");
}

namespace {

bool miller_rabin_witness(u64 n, u64 d, int s, u64 a) {
  a %= n;
  if (a == 0) return false;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<u64> small_primes_upto(u64 n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<u64> out;
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Jim Sinclair's witness set, deterministic below 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (miller_rabin_witness(n, d, s, a)) return false;
  }
  return true;
}

SegmentedSieve::SegmentedSieve(PrimeRange range, std::size_t segment_odds)
    : range_(range), segment_odds_(segment_odds) {
  if (segment_odds_ == 0) throw std::invalid_argument("segment size must be positive");
}

void SegmentedSieve::for_each(const std::function<void(u64)>& fn) const {
  if (range_.empty()) return;
  const u64 lo = range_.lo;
  const u64 hi = range_.hi;
  if (lo <= 2 && 2 <= hi) fn(2);

  // Odd candidates only: index i in a segment stands for first + 2i.
  u64 first = std::max<u64>(lo, 3) | 1;
  if (first > hi) return;
  const std::vector<u64> base = small_primes_upto(isqrt(hi));
  std::vector<char> seg(segment_odds_);

  for (u64 start = first; start <= hi; start += 2 * segment_odds_) {
    const u64 span_odds = std::min<u64>(segment_odds_, (hi - start) / 2 + 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(span_odds), 1);
    const u64 last = start + 2 * (span_odds - 1);
    for (u64 q : base) {
      if (q == 2) continue;
      if (q * q > last) break;
      u64 m = std::max(q * q, (start + q - 1) / q * q);
      if ((m & 1) == 0) m += q;
      for (u64 j = (m - start) / 2; j < span_odds; j += q) seg[j] = 0;
    }
    for (u64 i = 0; i < span_odds; ++i) {
      if (seg[i]) {
        const u64 n = start + 2 * i;
        if (n >= 3) fn(n);
      }
    }
  }
}

std::vector<u64> primes_in(PrimeRange range, std::size_t segment_odds, std::size_t max_bytes) {
  std::vector<u64> out;
  if (range.empty()) return out;
  // Rosser-Schoenfeld style upper bound on pi(hi).
  const double x = static_cast<double>(range.hi);
  const double bound = x < 17 ? 7.0 : 1.25506 * x / std::log(x);
  if (bound * sizeof(u64) > static_cast<double>(max_bytes)) {
    throw std::length_error("prime range too large for memory budget of " + std::to_string(max_bytes) +
                            " bytes; stream with SegmentedSieve::for_each instead");
  }
  out.reserve(static_cast<std::size_t>(bound));
  SegmentedSieve(range, segment_odds).for_each([&](u64 p) { out.push_back(p); });
  return out;
}

std::vector<PrimeRange> partition(PrimeRange range, std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("partition into zero parts");
  std::vector<PrimeRange> out;
  const u64 width = range.hi - range.lo + 1;
  u64 lo = range.lo;
  for (std::size_t i = 0; i < parts; ++i) {
    const u64 len = width / parts + (i < width % parts ? 1 : 0);
    PrimeRange r;
    r.lo = lo;
    r.hi = lo + len - 1;  // len == 0 yields an empty range (hi < lo)
    out.push_back(r);
    lo += len;
  }
  return out;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace modpl
