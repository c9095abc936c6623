#pragma once

/**
 * @file order_arith.hpp
 * @brief Arithmetic in O/p^k O for monogenic orders O = Z[theta] of degree 2 or 3.
 *
 * An order is described by the monic defining polynomial f of theta. Elements of
 * the quotient ring are coefficient vectors in the power basis 1, theta, theta^2
 * with every entry reduced into [0, p^k). Products are computed with 128-bit
 * intermediates, so the modulus only has to stay below 2^63.
 *
 * Quadratic fields use the same machinery: Z[sqrt(D)] is x^2 - D and the
 * half-integral ring Z[(1+sqrt(D))/2] is x^2 - x - (D-1)/4.
 */

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "modpl/int128.hpp"

namespace modpl {

/// Monic polynomial of degree 2 or 3 defining theta. Immutable once built.
class OrderSpec {
 public:
  /// `poly` is low-to-high and includes the leading 1, e.g. x^3 - x - 1 is {-1, -1, 0, 1}.
  explicit OrderSpec(std::vector<i64> poly);
  /// Same, but also checks a claimed discriminant.
  OrderSpec(std::vector<i64> poly, i64 claimed_discriminant);

  int degree() const { return degree_; }
  i64 discriminant() const { return discriminant_; }
  /// Coefficient of x^i (0 <= i <= degree).
  i64 coeff(int i) const { return poly_[static_cast<std::size_t>(i)]; }
  std::span<const i64> poly() const { return poly_; }

  bool operator==(const OrderSpec&) const = default;

 private:
  std::vector<i64> poly_;
  int degree_ = 0;
  i64 discriminant_ = 0;
};

/// Discriminant of a monic quadratic or cubic given low-to-high with leading 1.
i128 poly_discriminant(std::span<const i64> poly);

/// p prime, k in {1,2}, m = p^k < 2^63.
class Modulus {
 public:
  Modulus(u64 p, int k);

  u64 p() const { return p_; }
  int k() const { return k_; }
  u64 m() const { return m_; }

  bool operator==(const Modulus&) const = default;

 private:
  u64 p_ = 0;
  int k_ = 0;
  u64 m_ = 0;
};

/// Residue vector in (Z/m)[x]/(f). Entries past the degree stay zero.
struct OrderElem {
  std::array<u64, 3> coeffs{};
  int degree = 0;

  bool operator==(const OrderElem&) const = default;
  bool is_zero() const { return coeffs[0] == 0 && coeffs[1] == 0 && coeffs[2] == 0; }
};

/// Precomputed reduction data for one (spec, modulus) pair. Cheap to copy, safe to share.
class QuotientRing {
 public:
  QuotientRing(const OrderSpec& spec, const Modulus& mod);

  u64 m() const { return m_; }
  int degree() const { return degree_; }

  OrderElem zero() const;
  OrderElem one() const;
  OrderElem theta() const;
  /// Reduces signed integer coefficients (up to `degree` of them).
  OrderElem from_ints(std::span<const i64> coeffs) const;
  /// Checks length and range against this ring.
  bool valid(const OrderElem& a) const;

  OrderElem add(const OrderElem& a, const OrderElem& b) const;
  OrderElem sub(const OrderElem& a, const OrderElem& b) const;
  OrderElem mul(const OrderElem& a, const OrderElem& b) const;
  OrderElem pow(OrderElem a, u128 e) const;

 private:
  int degree_;
  u64 m_;
  // x^deg and (for cubics) x^4 expressed in the power basis, reduced mod m.
  std::array<u64, 3> xn_{};
  std::array<u64, 3> xn1_{};
};

OrderElem elem_mul(const OrderElem& a, const OrderElem& b, const OrderSpec& spec, const Modulus& mod);
OrderElem elem_pow(const OrderElem& a, u128 e, const OrderSpec& spec, const Modulus& mod);

/// Number of distinct roots of f mod p, as deg gcd(x^p - x, f) over F_p. Throws if p | disc(f).
int root_count_mod_p(const OrderSpec& spec, u64 p);

/// Order of Frobenius at p for a cubic order: 3 roots -> 1, 1 root -> 2, none -> 3.
int frobenius_order(const OrderSpec& spec, u64 p);

/// Exact norm of a + b*theta + c*theta^2 (the resultant Res(f, g)), as a determinant over Z.
i128 exact_norm(const OrderSpec& spec, std::span<const i64> coeffs);

/// Exact integer product in Z[theta]; throws std::overflow_error if a coefficient leaves 64 bits.
std::vector<i64> exact_mul(const OrderSpec& spec, std::span<const i64> a, std::span<const i64> b);

}  // namespace modpl
