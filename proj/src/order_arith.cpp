#include "modpl/order_arith.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "modpl/primes.hpp"

namespace modpl {

i128 poly_discriminant(std::span<const i64> poly) {
  if (poly.size() == 3) {
    const i128 b = poly[1], c = poly[0];
    return b * b - 4 * c;
  }
  if (poly.size() == 4) {
    const i128 a = poly[2], b = poly[1], c = poly[0];
    return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
  }
  throw std::invalid_argument("discriminant only implemented for degree 2 and 3");
}

OrderSpec::OrderSpec(std::vector<i64> poly) : poly_(std::move(poly)) {
  if (poly_.size() != 3 && poly_.size() != 4) {
    throw std::invalid_argument("defining polynomial must have degree 2 or 3");
  }
  if (poly_.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
  for (i64 c : poly_) {
    // keeps every closed-form discriminant and reduction term inside 128 bits
    if (c > (i64{1} << 30) || c < -(i64{1} << 30)) {
      throw std::invalid_argument("defining polynomial coefficient out of range");
    }
  }
  degree_ = static_cast<int>(poly_.size()) - 1;
  const i128 d = poly_discriminant(poly_);
  if (d == 0) throw std::invalid_argument("defining polynomial is not squarefree");
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min()) {
    throw std::invalid_argument("discriminant does not fit in 64 bits");
  }
  discriminant_ = static_cast<i64>(d);
}

OrderSpec::OrderSpec(std::vector<i64> poly, i64 claimed_discriminant) : OrderSpec(std::move(poly)) {
  if (discriminant_ != claimed_discriminant) {
    throw std::invalid_argument("polynomial discriminant " + std::to_string(discriminant_) +
                                " does not match claimed " + std::to_string(claimed_discriminant));
  }
}

Modulus::Modulus(u64 p, int k) : p_(p), k_(k) {
  if (k != 1 && k != 2) throw std::invalid_argument("modulus exponent must be 1 or 2");
  if (!is_prime(p)) throw std::invalid_argument("modulus base " + std::to_string(p) + " is not prime");
  if (p >= (u64{1} << 32)) throw std::invalid_argument("modulus prime must be below 2^32");
  m_ = k == 1 ? p : p * p;
  if (m_ >= (u64{1} << 63)) throw std::invalid_argument("modulus exceeds 2^63");
}

QuotientRing::QuotientRing(const OrderSpec& spec, const Modulus& mod)
    : degree_(spec.degree()), m_(mod.m()) {
  for (int i = 0; i < degree_; ++i) {
    xn_[static_cast<std::size_t>(i)] = reduce_signed(-static_cast<i128>(spec.coeff(i)), m_);
  }
  if (degree_ == 3) {
    // x * (n0 + n1 x + n2 x^2) with the x^3 term folded back in
    const u64 n0 = xn_[0], n1 = xn_[1], n2 = xn_[2];
    xn1_[0] = mulmod(n2, n0, m_);
    xn1_[1] = static_cast<u64>((static_cast<u128>(n0) + static_cast<u128>(n2) * n1) % m_);
    xn1_[2] = static_cast<u64>((static_cast<u128>(n1) + static_cast<u128>(n2) * n2) % m_);
  }
}

OrderElem QuotientRing::zero() const { return OrderElem{{0, 0, 0}, degree_}; }

OrderElem QuotientRing::one() const {
  OrderElem r = zero();
  r.coeffs[0] = 1 % m_;
  return r;
}

OrderElem QuotientRing::theta() const {
  OrderElem r = zero();
  r.coeffs[1] = 1 % m_;
  return r;
}

OrderElem QuotientRing::from_ints(std::span<const i64> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(degree_)) {
    throw std::invalid_argument("too many coefficients for order degree");
  }
  OrderElem r = zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = reduce_signed(coeffs[i], m_);
  return r;
}

bool QuotientRing::valid(const OrderElem& a) const {
  if (a.degree != degree_) return false;
  for (int i = 0; i < 3; ++i) {
    const u64 c = a.coeffs[static_cast<std::size_t>(i)];
    if (i < degree_ ? c >= m_ : c != 0) return false;
  }
  return true;
}

OrderElem QuotientRing::add(const OrderElem& a, const OrderElem& b) const {
  OrderElem r = zero();
  for (int i = 0; i < degree_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const u64 s = a.coeffs[k] + b.coeffs[k];  // both < 2^63
    r.coeffs[k] = s >= m_ ? s - m_ : s;
  }
  return r;
}

OrderElem QuotientRing::sub(const OrderElem& a, const OrderElem& b) const {
  OrderElem r = zero();
  for (int i = 0; i < degree_; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.coeffs[k] = a.coeffs[k] >= b.coeffs[k] ? a.coeffs[k] - b.coeffs[k] : a.coeffs[k] + (m_ - b.coeffs[k]);
  }
  return r;
}

OrderElem QuotientRing::mul(const OrderElem& a, const OrderElem& b) const {
  OrderElem r = zero();
  const auto& x = a.coeffs;
  const auto& y = b.coeffs;
  if (degree_ == 2) {
    const u64 c0 = static_cast<u64>(static_cast<u128>(x[0]) * y[0] % m_);
    const u64 c1 = static_cast<u64>((static_cast<u128>(x[0]) * y[1] + static_cast<u128>(x[1]) * y[0]) % m_);
    const u64 c2 = static_cast<u64>(static_cast<u128>(x[1]) * y[1] % m_);
    r.coeffs[0] = static_cast<u64>((c0 + static_cast<u128>(c2) * xn_[0]) % m_);
    r.coeffs[1] = static_cast<u64>((c1 + static_cast<u128>(c2) * xn_[1]) % m_);
    return r;
  }
  // three products below 2^126 each still fit in an unsigned 128-bit sum
  const u64 c0 = static_cast<u64>(static_cast<u128>(x[0]) * y[0] % m_);
  const u64 c1 = static_cast<u64>((static_cast<u128>(x[0]) * y[1] + static_cast<u128>(x[1]) * y[0]) % m_);
  const u64 c2 = static_cast<u64>((static_cast<u128>(x[0]) * y[2] + static_cast<u128>(x[1]) * y[1] +
                                   static_cast<u128>(x[2]) * y[0]) %
                                  m_);
  const u64 c3 = static_cast<u64>((static_cast<u128>(x[1]) * y[2] + static_cast<u128>(x[2]) * y[1]) % m_);
  const u64 c4 = static_cast<u64>(static_cast<u128>(x[2]) * y[2] % m_);
  const u64 low[3] = {c0, c1, c2};
  for (std::size_t j = 0; j < 3; ++j) {
    r.coeffs[j] = static_cast<u64>(
        (low[j] + static_cast<u128>(c3) * xn_[j] + static_cast<u128>(c4) * xn1_[j]) % m_);
  }
  return r;
}

OrderElem QuotientRing::pow(OrderElem a, u128 e) const {
  OrderElem r = one();
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e != 0) a = mul(a, a);
  }
  return r;
}

OrderElem elem_mul(const OrderElem& a, const OrderElem& b, const OrderSpec& spec, const Modulus& mod) {
  const QuotientRing ring(spec, mod);
  if (!ring.valid(a) || !ring.valid(b)) throw std::invalid_argument("element not reduced for this ring");
  return ring.mul(a, b);
}

OrderElem elem_pow(const OrderElem& a, u128 e, const OrderSpec& spec, const Modulus& mod) {
  const QuotientRing ring(spec, mod);
  if (!ring.valid(a)) throw std::invalid_argument("element not reduced for this ring");
  return ring.pow(a, e);
}

namespace {

// Dense polynomials over F_p, low-to-high, no trailing zeros.
using FpPoly = std::vector<u64>;

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

u64 inverse_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void make_monic(FpPoly& f, u64 p) {
  if (f.empty() || f.back() == 1) return;
  const u64 inv = inverse_mod(f.back(), p);
  for (u64& c : f) c = mulmod(c, inv, p);
}

// f mod g with g monic and nonzero.
FpPoly poly_rem(FpPoly f, const FpPoly& g, u64 p) {
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const u64 lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - mulmod(lead, g[i], p)) % p;
    }
    trim(f);
  }
  return f;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  make_monic(a, p);
  make_monic(b, p);
  while (!b.empty()) {
    FpPoly r = poly_rem(a, b, p);
    make_monic(r, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

int root_count_mod_p(const OrderSpec& spec, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("root_count_mod_p needs a prime");
  if (reduce_signed(spec.discriminant(), p) == 0) {
    throw std::domain_error("prime " + std::to_string(p) + " divides the discriminant");
  }
  const Modulus mod(p, 1);
  const QuotientRing ring(spec, mod);
  const OrderElem xp = ring.pow(ring.theta(), p);
  const OrderElem g = ring.sub(xp, ring.theta());

  FpPoly f;
  for (int i = 0; i <= spec.degree(); ++i) f.push_back(reduce_signed(spec.coeff(i), p));
  FpPoly gp(g.coeffs.begin(), g.coeffs.begin() + spec.degree());
  trim(gp);
  if (gp.empty()) return spec.degree();  // x^p = x mod f: f splits completely
  const FpPoly d = poly_gcd(f, gp, p);
  return static_cast<int>(d.size()) - 1;
}

int frobenius_order(const OrderSpec& spec, u64 p) {
  if (spec.degree() != 3) throw std::invalid_argument("frobenius_order needs a cubic order");
  switch (root_count_mod_p(spec, p)) {
    case 3:
      return 1;
    case 1:
      return 2;
    case 0:
      return 3;
    default:
      throw std::logic_error("squarefree cubic with exactly two roots mod p");
  }
}

namespace {

// theta * v in Z[theta], exact.
std::array<i128, 3> times_theta(const OrderSpec& spec, const std::array<i128, 3>& v) {
  const int n = spec.degree();
  std::array<i128, 3> out{};
  const i128 top = v[static_cast<std::size_t>(n - 1)];
  for (int i = n - 1; i >= 1; --i) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i - 1)];
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] -= top * spec.coeff(i);
  return out;
}

}  // namespace

i128 exact_norm(const OrderSpec& spec, std::span<const i64> coeffs) {
  const int n = spec.degree();
  if (coeffs.size() > static_cast<std::size_t>(n)) throw std::invalid_argument("too many coefficients");
  for (i64 c : coeffs) {
    if (c > (i64{1} << 20) || c < -(i64{1} << 20)) throw std::overflow_error("exact_norm coefficient too large");
  }
  std::array<std::array<i128, 3>, 3> col{};
  std::array<i128, 3> v{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = coeffs[i];
  for (int j = 0; j < n; ++j) {
    col[static_cast<std::size_t>(j)] = v;
    v = times_theta(spec, v);
  }
  if (n == 2) return col[0][0] * col[1][1] - col[1][0] * col[0][1];
  const auto& a = col;  // a[j][i]: column j, row i; det is transpose-invariant
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::vector<i64> exact_mul(const OrderSpec& spec, std::span<const i64> a, std::span<const i64> b) {
  const int n = spec.degree();
  std::array<i128, 3> acc{};
  std::array<i128, 3> shifted{};
  for (std::size_t i = 0; i < a.size(); ++i) shifted[i] = a[i];
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] += shifted[static_cast<std::size_t>(i)] * b[j];
    shifted = times_theta(spec, shifted);
  }
  std::vector<i64> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const i128 c = acc[static_cast<std::size_t>(i)];
    if (c > std::numeric_limits<i64>::max() || c < std::numeric_limits<i64>::min()) {
      throw std::overflow_error("exact_mul coefficient exceeds 64 bits");
    }
    out[static_cast<std::size_t>(i)] = static_cast<i64>(c);
  }
  return out;
}

}  // namespace modpl
