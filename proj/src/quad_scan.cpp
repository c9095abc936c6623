#include "modpl/quad_scan.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "modpl/parallel.hpp"

namespace modpl {

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % (q * q) == 0) return false;
  }
  return true;
}

BigInt quad_norm(u64 D, const BigInt& a, const BigInt& b) {
  if (D % 4 == 1) return a * a + a * b - BigInt((D - 1) / 4) * b * b;
  return a * a - BigInt(D) * b * b;
}

QuadUnit fundamental_unit_quadratic(u64 D) {
  if (D < 2) throw std::invalid_argument("D must be at least 2");
  if (!is_squarefree(D)) throw std::invalid_argument("D = " + std::to_string(D) + " is not squarefree");
  const bool half = D % 4 == 1;
  auto s = static_cast<i64>(std::sqrt(static_cast<double>(D)));
  while (s * s > static_cast<i64>(D)) --s;
  while ((s + 1) * (s + 1) <= static_cast<i64>(D)) ++s;

  // alpha_k = (P + sqrt D)/Q; start at -conj(omega), so units x + y*omega have x/y as convergents.
  i64 P = half ? -1 : 0;
  i64 Q = half ? 2 : 1;
  // convergent seeds h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0
  BigInt h_prev = 0, h = 1;
  BigInt k_prev = 1, k = 0;

  constexpr int kMaxSteps = 1'000'000;
  for (int step = 0; step < kMaxSteps; ++step) {
    const i64 a = (P + s) / Q;  // Q > 0 throughout for this start
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
    const BigInt n = quad_norm(D, h, k);
    if (n == 1 || n == -1) return QuadUnit{h, k, n == 1 ? 1 : -1};
    const i64 P_next = a * Q - P;
    const i64 Q_next = (static_cast<i64>(D) - P_next * P_next) / Q;
    if (Q_next <= 0) throw std::logic_error("continued fraction left the reduced cycle");
    P = P_next;
    Q = Q_next;
  }
  throw std::runtime_error("continued fraction period not reached for D = " + std::to_string(D));
}

OrderSpec QuadFieldRecord::spec() const {
  if (basis == QuadBasis::half) return OrderSpec({-static_cast<i64>((D - 1) / 4), -1, 1});
  return OrderSpec({-static_cast<i64>(D), 0, 1});
}

QuadFieldRecord make_quad_record(u64 D, u64 class_number, std::optional<QuadUnit> unit_override) {
  if (D < 2 || !is_squarefree(D)) throw std::invalid_argument("D must be squarefree and >= 2");
  if (D > 1'000'000'000) throw std::invalid_argument("D too large");
  if (class_number == 0) throw std::invalid_argument("class number must be positive");
  QuadFieldRecord rec;
  rec.D = D;
  rec.basis = D % 4 == 1 ? QuadBasis::half : QuadBasis::sqrt;
  rec.field_disc = D % 4 == 1 ? D : 4 * D;
  rec.class_number = class_number;
  if (unit_override) {
    const BigInt n = quad_norm(D, unit_override->a, unit_override->b);
    if (n != 1 && n != -1) throw std::invalid_argument("unit override does not have norm +-1");
    if (unit_override->b == 0) throw std::invalid_argument("unit override is +-1");
    unit_override->norm_sign = n == 1 ? 1 : -1;
    rec.unit = *unit_override;
  } else {
    rec.unit = fundamental_unit_quadratic(D);
  }
  return rec;
}

namespace {

u64 big_mod(const BigInt& v, u64 m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<u64>();
}

// u = eps^(p^2-1) mod p^2, with the mod-p Fermat step asserted.
OrderElem unit_power(const QuadFieldRecord& rec, u64 p) {
  const Modulus mod(p, 2);
  const QuotientRing ring(rec.spec(), mod);
  OrderElem eps = ring.zero();
  eps.coeffs[0] = big_mod(rec.unit.a, mod.m());
  eps.coeffs[1] = big_mod(rec.unit.b, mod.m());
  const OrderElem u = ring.pow(eps, static_cast<u128>(p) * p - 1);
  if (u.coeffs[0] % p != 1 || u.coeffs[1] % p != 0) {
    throw std::logic_error("eps^(p^2-1) != 1 mod p for D=" + std::to_string(rec.D) + ", p=" + std::to_string(p));
  }
  return u;
}

std::optional<ExclusionReason> quad_exclusion(const QuadFieldRecord& rec, u64 p) {
  if (p < kQuadMinPrime) return ExclusionReason::below_min_p;
  if (rec.field_disc % p == 0) return ExclusionReason::ramified;
  if (rec.class_number % p == 0) return ExclusionReason::divides_class_number;
  return std::nullopt;
}

}  // namespace

ScanVerdict quad_verdict(const QuadFieldRecord& rec, u64 p) {
  if (auto why = quad_exclusion(rec, p)) return ScanVerdict::excluded(p, *why);
  const OrderElem u = unit_power(rec, p);
  const bool hit = u.coeffs[0] == 1 && u.coeffs[1] == 0;
  return hit ? ScanVerdict::hit(p) : ScanVerdict::clear(p);
}

bool quad_unit_test(const QuadFieldRecord& rec, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (auto why = quad_exclusion(rec, p)) {
    throw std::domain_error("p=" + std::to_string(p) + " excluded: " + std::string(to_string(*why)));
  }
  const OrderElem u = unit_power(rec, p);
  return u.coeffs[0] == 1 && u.coeffs[1] == 0;
}

ScanReport scan_quadratic(const QuadFieldRecord& rec, PrimeRange range, const ScanOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanReport report;
  report.meta.field_id = rec.field_id();
  report.meta.mode = "quad_unit";
  report.meta.range = range;
  report.meta.workers = std::max(1U, opts.workers);

  auto verdicts = ordered_prime_scan<ScanVerdict>(range, opts.workers, [&](u64 p) -> std::optional<ScanVerdict> {
    ScanVerdict v = quad_verdict(rec, p);
    if (!opts.full_verdicts && v.status != VerdictStatus::hit) return std::nullopt;
    return v;
  });
  if (opts.full_verdicts) report.others.emplace();
  for (auto& v : verdicts) {
    if (v.status == VerdictStatus::hit) {
      report.hits.push_back(std::move(v));
    } else {
      report.others->push_back(std::move(v));
    }
  }
  report.meta.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace modpl
