#include "modpl/heuristics.hpp"

#include <cmath>
#include <stdexcept>

#include "modpl/parallel.hpp"

namespace modpl {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational arithmetic overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational arithmetic overflow");
  return r;
}

i128 checked_pow(i128 base, unsigned e) {
  i128 r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

double Rational::to_double() const {
  // long double keeps the quotient correctly rounded for 64-bit-sized parts and close otherwise
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const { return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_); }

Rational Rational::operator+(const Rational& o) const {
  const i128 g = gcd128(den_, o.den_);
  const i128 l = den_ / g;
  return Rational(checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, l)), checked_mul(l, o.den_));
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }

Rational Rational::operator*(const Rational& o) const {
  const i128 g1 = gcd128(num_, o.den_), g2 = gcd128(o.num_, den_);
  const i128 a = g1 ? num_ / g1 : 0, d = g1 ? o.den_ / g1 : o.den_;
  const i128 b = g2 ? o.num_ / g2 : 0, c = g2 ? den_ / g2 : den_;
  return Rational(checked_mul(a, b), checked_mul(c, d));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

HeuristicValue injective_probability(u64 p, unsigned n, unsigned m) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > m) throw std::invalid_argument("injective maps need n <= m");
  Rational prod(1);
  for (unsigned i = 0; i < n; ++i) {
    const i128 q = checked_pow(static_cast<i128>(p), m - i);
    prod = prod * Rational(q - 1, q);
  }
  return HeuristicValue::of(prod);
}

unsigned rank_mod_p(std::vector<u64> a, unsigned rows, unsigned cols, u64 p) {
  unsigned rank = 0;
  for (unsigned c = 0; c < cols && rank < rows; ++c) {
    unsigned piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (unsigned k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[rank * cols + k]);
    }
    const u64 inv = powmod(a[rank * cols + c], p - 2, p);
    for (unsigned r = rank + 1; r < rows; ++r) {
      const u64 f = mulmod(a[r * cols + c], inv, p);
      if (f == 0) continue;
      for (unsigned k = c; k < cols; ++k) {
        a[r * cols + k] = (a[r * cols + k] + p - mulmod(f, a[rank * cols + k], p)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Lemire's unbiased bounded draw.
u64 uniform_below(u64& state, u64 bound) {
  u64 x = splitmix64(state);
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<u64>(m);
  if (low < bound) {
    const u64 threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = splitmix64(state);
      m = static_cast<u128>(x) * bound;
      low = static_cast<u64>(m);
    }
  }
  return static_cast<u64>(m >> 64);
}

}  // namespace

MonteCarloResult monte_carlo_injective(u64 p, unsigned n, unsigned m, u64 trials, u64 seed, unsigned workers) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1 || n > m) throw std::invalid_argument("need 1 <= n <= m");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  workers = std::max(1U, workers);

  auto count_range = [&](u64 begin, u64 end) {
    u64 hits = 0;
    std::vector<u64> mat(static_cast<std::size_t>(n) * m);
    for (u64 t = begin; t < end; ++t) {
      u64 state = seed;
      u64 mix = t;
      state ^= splitmix64(mix);  // per-trial stream
      for (auto& x : mat) x = uniform_below(state, p);
      if (rank_mod_p(mat, n, m, p) == n) ++hits;
    }
    return hits;
  };

  u64 successes = 0;
  if (workers == 1) {
    successes = count_range(0, trials);
  } else {
    std::vector<u64> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const u64 begin = trials * w / workers, end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = count_range(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (u64 c : partial) successes += c;
  }

  MonteCarloResult r;
  r.trials = trials;
  r.successes = successes;
  r.frequency = static_cast<double>(successes) / static_cast<double>(trials);
  r.std_error = std::sqrt(r.frequency * (1 - r.frequency) / static_cast<double>(trials));
  r.seed = seed;
  return r;
}

namespace {

// Neumaier summation over 1/p^d in ascending prime order.
double prime_power_sum(u64 X, unsigned d) {
  double sum = 0.0, comp = 0.0;
  SegmentedSieve(PrimeRange(2, X)).for_each([&](u64 p) {
    const double term = 1.0 / std::pow(static_cast<double>(p), static_cast<double>(d));
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  });
  return sum + comp;
}

}  // namespace

MertensSum mertens_count(u64 X) {
  if (X < 2) throw std::invalid_argument("X must be at least 2");
  return {prime_power_sum(X, 1), std::log(std::log(static_cast<double>(X)))};
}

std::vector<u64> wieferich_scan(u64 base, PrimeRange range, unsigned workers, std::size_t segment_odds) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  auto test = [base](u64 p) -> std::optional<u64> {
    if (base % p == 0) return std::nullopt;
    const u64 m = p * p;
    return powmod(base % m, p - 1, m) == 1 ? std::optional<u64>(p) : std::nullopt;
  };
  if (segment_odds == 0) throw std::invalid_argument("segment size must be positive");
  // one chunk per sieve segment
  return ordered_prime_scan<u64>(range, workers, test, 2 * static_cast<u64>(segment_odds));
}

std::array<HeuristicValue, 4> level_raising_densities(u64 p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("need a prime p >= 3");
  const i128 q = static_cast<i128>(p);
  const Rational i(2 * (q - 3), (q - 1) * (q - 1));
  const Rational ii(1, (q - 1) * (q - 1));
  const Rational iii(2, q * q + q);
  const Rational iv(2, checked_mul((q * q - 1), (q * q - q)));
  return {HeuristicValue::of(i), HeuristicValue::of(ii), HeuristicValue::of(iii), HeuristicValue::of(iv)};
}

bool is_prime_power(u64 q) {
  if (q < 2) return false;
  const auto factors = prime_factors(q);
  return factors.size() == 1;
}

HeuristicValue multiplicity_distribution(u64 k0_size, unsigned i) {
  if (!is_prime_power(k0_size)) throw std::invalid_argument("#k0 must be a prime power");
  if (i < 1) throw std::invalid_argument("multiplicity starts at 1");
  const i128 q = static_cast<i128>(k0_size);
  return HeuristicValue::of(Rational(q - 1, checked_pow(q, i)));
}

HeuristicValue multiplicity_above_one(u64 k0_size) {
  return HeuristicValue::of(Rational(1) - multiplicity_distribution(k0_size, 1).exact);
}

double expected_exceptional_count(u64 X, ExceptionalModel model, unsigned d) {
  if (X < 2) throw std::invalid_argument("X must be at least 2");
  if (model == ExceptionalModel::one_over_p) return prime_power_sum(X, 1);
  if (d < 2) throw std::invalid_argument("power model needs d >= 2");
  return prime_power_sum(X, d);
}

}  // namespace modpl
