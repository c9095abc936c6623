#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modpl {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

inline std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

inline u128 parse_u128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  u128 v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("not an unsigned integer: " + std::string(s));
    u128 next = v * 10 + static_cast<unsigned>(ch - '0');
    if (next / 10 != v) throw std::out_of_range("integer exceeds 128 bits: " + std::string(s));
    v = next;
  }
  return v;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u128 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Reduce a signed value into [0, m).
inline u64 reduce_signed(i128 v, u64 m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

}  // namespace modpl
