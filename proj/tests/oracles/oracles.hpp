#pragma once

// Slow, independent reference implementations used only by the tests.
// Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline bool is_prime_td(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 mod(i128 v, u64 m) {
  i128 r = v % static_cast<i128>(m);
  return static_cast<u64>(r < 0 ? r + m : r);
}

// Polynomials mod m, low-to-high, reduced by schoolbook long division by monic f.
using Poly = std::vector<u64>;

inline Poly poly_mulmod(const Poly& a, const Poly& b, const std::vector<i64>& f, u64 m) {
  const std::size_t n = f.size() - 1;
  std::vector<u128> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + static_cast<u128>(a[i]) * b[j]) % m;
  for (std::size_t d = prod.size(); d-- > n;) {
    const u128 lead = prod[d] % m;
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) {
      const u128 t = lead * mod(f[i], m) % m;
      prod[d - n + i] = (prod[d - n + i] + m - t) % m;
    }
  }
  Poly out(n, 0);
  for (std::size_t i = 0; i < n && i < prod.size(); ++i) out[i] = static_cast<u64>(prod[i] % m);
  return out;
}

inline Poly poly_powmod(Poly a, u128 e, const std::vector<i64>& f, u64 m) {
  Poly r(f.size() - 1, 0);
  r[0] = 1 % m;
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, m);
    a = poly_mulmod(a, a, f, m);
    e >>= 1;
  }
  return r;
}

inline int brute_root_count(const std::vector<i64>& f, u64 p) {
  int n = 0;
  for (u64 x = 0; x < p; ++x) {
    i128 v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % static_cast<i128>(p);
    if (v == 0) ++n;
  }
  return n;
}

// disc of x^3 + a x^2 + b x + c by the textbook formula
inline i128 cubic_disc(i64 a, i64 b, i64 c) {
  const i128 A = a, B = b, C = c;
  return A * A * B * B - 4 * B * B * B - 4 * A * A * A * C - 27 * C * C + 18 * A * B * C;
}

inline bool has_integer_root(const std::vector<i64>& f) {
  const i64 c0 = f[0];
  if (c0 == 0) return true;
  const i64 bound = c0 < 0 ? -c0 : c0;
  for (i64 x = -bound; x <= bound; ++x) {
    i128 v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    if (v == 0) return true;
  }
  return false;
}

// Norm of a + b theta + c theta^2 as a 3x3 determinant of the multiplication map, built
// with long division over Z.
inline i128 cubic_norm(const std::vector<i64>& f, i64 a, i64 b, i64 c) {
  auto times_theta = [&](std::vector<i128> v) {
    // v * theta, reduce theta^3 = -(f0 + f1 theta + f2 theta^2)
    const i128 top = v[2];
    return std::vector<i128>{-top * f[0], v[0] - top * f[1], v[1] - top * f[2]};
  };
  std::vector<i128> col0{a, b, c};
  const auto col1 = times_theta(col0);
  const auto col2 = times_theta(col1);
  const i128 M[3][3] = {{col0[0], col1[0], col2[0]}, {col0[1], col1[1], col2[1]}, {col0[2], col1[2], col2[2]}};
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

// Smallest unit > 1 in Z[(1+sqrt D)/2] or Z[sqrt D] by trying y = 1, 2, ... in x + y sqrt(D)
// with x^2 - D y^2 = +-4 (half basis, doubled) or +-1. Returns (x, y, norm) for the doubled
// or plain representation.
struct PellSolution {
  i64 x, y;
  int norm;
};

inline std::optional<PellSolution> smallest_pell(i64 D, bool half, i64 ymax) {
  const i64 k = half ? 4 : 1;
  for (i64 y = 1; y <= ymax; ++y) {
    for (int s : {-1, 1}) {
      const i128 x2 = static_cast<i128>(D) * y * y + s * k;
      if (x2 <= 0) continue;
      i64 x = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(x2))));
      while (static_cast<i128>(x) * x > x2) --x;
      while (static_cast<i128>(x + 1) * (x + 1) <= x2) ++x;
      if (static_cast<i128>(x) * x == x2) return PellSolution{x, y, s};
    }
  }
  return std::nullopt;
}

inline i64 isqrt_floor(i64 n) {
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Class number of the imaginary quadratic order of discriminant d < 0: reduced forms
// |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline int class_number_imag(i64 d) {
  int h = 0;
  for (i64 a = 1; 3 * a * a <= -d; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - d;
      if (num % (4 * a)) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      ++h;
    }
  }
  return h;
}

// Narrow class number of the real quadratic order of discriminant d > 0 by counting cycles of
// reduced indefinite forms (a, b, c): 0 < b < sqrt d, sqrt d - b < 2|a| < sqrt d + b.
inline int narrow_class_number_real(i64 d) {
  const long double sd = std::sqrt(static_cast<long double>(d));
  using Form = std::tuple<i64, i64, i64>;
  std::set<Form> reduced;
  for (i64 b = 1; b < sd; ++b) {
    if ((b * b - d) % 2 != 0) continue;
    const i64 ac = (b * b - d) / 4;
    if ((b * b - d) % 4 != 0) continue;
    for (i64 a = 1; a <= -ac; ++a) {
      if (ac % a) continue;
      for (i64 sa : {a, -a}) {
        const long double two_a = 2.0L * a;
        if (!(sd - b < two_a && two_a < sd + b)) continue;
        reduced.insert({sa, b, ac / sa});
      }
    }
  }
  // rho: (a,b,c) -> (c, b', a') with b' = -b mod 2c in the reduced window
  auto rho = [&](const Form& f) {
    const i64 b = std::get<1>(f), c = std::get<2>(f);
    const i64 m = 2 * (c < 0 ? -c : c);
    // b' = -b mod 2|c|, largest such value below sqrt d
    const i64 b0 = ((-b % m) + m) % m;
    const i64 bp = b0 + static_cast<i64>(std::floor((sd - b0) / m)) * m;
    const i64 cp = (bp * bp - d) / (4 * c);
    return Form{c, bp, cp};
  };
  std::set<Form> seen;
  int cycles = 0;
  for (const auto& f : reduced) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    for (int guard = 0; guard < 100000 && !seen.count(g); ++guard) {
      seen.insert(g);
      g = rho(g);
    }
  }
  return cycles;
}

// Fundamental discriminant of Q(sqrt n), n any nonzero integer.
inline i64 fundamental_disc(i64 n) {
  i64 s = n < 0 ? -1 : 1;
  i64 m = n < 0 ? -n : n;
  for (i64 q = 2; q * q <= m; ++q)
    while (m % (q * q) == 0) m /= q * q;
  const i64 sq = s * m;
  return ((sq % 4) + 4) % 4 == 1 ? sq : 4 * sq;
}

// Exact rank of a matrix over F_p by elimination on a private copy.
inline unsigned rank_fp(std::vector<std::vector<u64>> a, u64 p) {
  unsigned r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    u64 inv = 1;
    for (u64 t = 1; t < p; ++t)
      if (a[r][c] * t % p == 1) inv = t;
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const u64 f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] + p * p - f * a[r][j]) % p;
    }
    ++r;
  }
  return r;
}

// Injective maps F_p^n -> F_p^m counted over every m x n matrix (columns independent).
// Returns (injective, total).
inline std::pair<u64, u64> enumerate_injective(u64 p, unsigned n, unsigned m) {
  const unsigned cells = n * m;
  u64 total = 1;
  for (unsigned i = 0; i < cells; ++i) total *= p;
  u64 good = 0;
  for (u64 code = 0; code < total; ++code) {
    std::vector<std::vector<u64>> a(m, std::vector<u64>(n));
    u64 c = code;
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < n; ++j) {
        a[i][j] = c % p;
        c /= p;
      }
    if (rank_fp(a, p) == n) ++good;
  }
  return {good, total};
}

// Every prime of degree one above q <= (4/pi)(2/9) sqrt|disc| is principal, checked by finding
// alpha with |N(alpha)| = q and alpha = 0 mod (q, theta - r) for each root r of f mod q.
// Assumes Z[theta] is the maximal order. Degree-2 primes have norm q^2 above the bound here.
inline bool minkowski_primes_principal(const std::vector<i64>& f, i64 disc, i64 box) {
  const long double bound = 4.0L / 3.14159265358979323846L * 2.0L / 9.0L * std::sqrt(std::fabs(static_cast<long double>(disc)));
  for (u64 q = 2; q <= bound; ++q) {
    if (!is_prime_td(q)) continue;
    for (u64 r = 0; r < q; ++r) {
      i128 v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = v * static_cast<i128>(r) + f[i];
      if (mod(v, q) != 0) continue;
      bool found = false;
      for (i64 a = -box; a <= box && !found; ++a)
        for (i64 b = -box; b <= box && !found; ++b)
          for (i64 c = -box; c <= box && !found; ++c) {
            if (mod(static_cast<i128>(a) + static_cast<i128>(b) * r + static_cast<i128>(c) * r * r, q) != 0) continue;
            const i128 n = cubic_norm(f, a, b, c);
            found = n == static_cast<i128>(q) || n == -static_cast<i128>(q);
          }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace oracle
