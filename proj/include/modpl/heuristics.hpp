#pragma once

/**
 * @file heuristics.hpp
 * @brief Closed-form probabilities and densities for Wieferich-style events, a seeded
 * Monte-Carlo check for random linear maps over F_p, and the Wieferich scanner.
 */

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "modpl/int128.hpp"
#include "modpl/primes.hpp"

namespace modpl {

/// Reduced fraction with 128-bit parts. Operations throw std::overflow_error instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(i128 num, i128 den = 1);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  double to_double() const;
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

struct HeuristicValue {
  Rational exact;
  double approx = 0.0;

  static HeuristicValue of(const Rational& r) { return {r, r.to_double()}; }
};

/// Probability that a uniform random linear map F_p^n -> F_p^m is injective:
/// prod_{i=0}^{n-1} (1 - p^-(m-i)). Requires 1 <= n <= m.
HeuristicValue injective_probability(u64 p, unsigned n, unsigned m);

struct MonteCarloResult {
  u64 trials = 0;
  u64 successes = 0;
  double frequency = 0.0;
  double std_error = 0.0;
  u64 seed = 0;

  bool operator==(const MonteCarloResult&) const = default;
};

/// Draws `trials` uniform n x m matrices over F_p and counts rank-n ones. Entry streams are
/// derived from (seed, trial index), so the result does not depend on `workers`.
MonteCarloResult monte_carlo_injective(u64 p, unsigned n, unsigned m, u64 trials, u64 seed, unsigned workers = 1);

/// Rank of a row-major rows x cols matrix over F_p (Gaussian elimination).
unsigned rank_mod_p(std::vector<u64> a, unsigned rows, unsigned cols, u64 p);

struct MertensSum {
  double sum = 0.0;     // sum_{p <= X} 1/p, compensated
  double loglog = 0.0;  // log log X
};

MertensSum mertens_count(u64 X);

/// Primes p in range with p !| base and base^(p-1) == 1 mod p^2.
std::vector<u64> wieferich_scan(u64 base, PrimeRange range, unsigned workers = 1,
                                std::size_t segment_odds = SegmentedSieve::kDefaultSegment);

/// Densities of the four level-raising cases i, ii, iii, iv for p >= 3.
std::array<HeuristicValue, 4> level_raising_densities(u64 p);

bool is_prime_power(u64 q);

/// Density of multiplicity exactly i: q^(1-i) (1 - 1/q), with q = #k0 a prime power.
HeuristicValue multiplicity_distribution(u64 k0_size, unsigned i);

/// Complement of the multiplicity-one density, 1/q.
HeuristicValue multiplicity_above_one(u64 k0_size);

enum class ExceptionalModel { one_over_p, one_over_p_power };

/// sum_{p <= X} 1/p (model one_over_p) or sum_{p <= X} 1/p^d.
double expected_exceptional_count(u64 X, ExceptionalModel model, unsigned d = 2);

}  // namespace modpl
