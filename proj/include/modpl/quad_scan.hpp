#pragma once

/**
 * @file quad_scan.hpp
 * @brief Real quadratic fields Q(sqrt D): fundamental units and the mod p^2 unit test.
 *
 * For p odd, unramified and prime to the class number, H^2(G_{F,p}, Z/p) is nonzero
 * exactly when eps^(p^2 - 1) == 1 mod p^2 O_F. A scan reports those primes as hits.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "modpl/order_arith.hpp"
#include "modpl/primes.hpp"
#include "modpl/report.hpp"

namespace modpl {

using BigInt = boost::multiprecision::cpp_int;

enum class QuadBasis {
  sqrt,  // omega = sqrt(D), D = 2,3 mod 4
  half,  // omega = (1 + sqrt(D))/2, D = 1 mod 4
};

/// eps = a + b*omega.
struct QuadUnit {
  BigInt a;
  BigInt b;
  int norm_sign = 1;

  bool operator==(const QuadUnit&) const = default;
};

bool is_squarefree(u64 n);

/// Norm of a + b*omega in the ring of integers of Q(sqrt D).
BigInt quad_norm(u64 D, const BigInt& a, const BigInt& b);

/// Fundamental unit of the maximal order via the continued fraction of -conj(omega).
/// Throws std::invalid_argument unless D >= 2 is squarefree.
QuadUnit fundamental_unit_quadratic(u64 D);

struct QuadFieldRecord {
  u64 D = 0;
  QuadBasis basis = QuadBasis::sqrt;
  u64 field_disc = 0;
  u64 class_number = 1;
  QuadUnit unit;

  /// Z[omega] as a monic order: x^2 - D or x^2 - x - (D-1)/4.
  OrderSpec spec() const;
  std::string field_id() const { return "D=" + std::to_string(D); }
};

/// Validates D and h, computes the unit unless an override is given (the override must be a unit).
QuadFieldRecord make_quad_record(u64 D, u64 class_number, std::optional<QuadUnit> unit_override = std::nullopt);

inline constexpr u64 kQuadMinPrime = 3;

/// Classifies p: excluded (below_min_p, ramified, divides_class_number), hit or clear.
ScanVerdict quad_verdict(const QuadFieldRecord& rec, u64 p);

/// True iff eps^(p^2-1) == 1 mod p^2. Throws std::domain_error when p is excluded.
bool quad_unit_test(const QuadFieldRecord& rec, u64 p);

struct ScanOptions {
  bool full_verdicts = false;
  unsigned workers = 1;
};

ScanReport scan_quadratic(const QuadFieldRecord& rec, PrimeRange range, const ScanOptions& opts = {});

}  // namespace modpl
