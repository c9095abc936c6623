#include "modpl/cubic_scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <set>

#include "modpl/parallel.hpp"

namespace modpl {

std::string_view to_string(UnitCertificate c) { return c == UnitCertificate::artin ? "artin" : "exhaustive"; }

std::string_view to_string(CubicMode m) { return m == CubicMode::h2 ? "h2" : "ordinary"; }

CubicMode parse_cubic_mode(std::string_view s) {
  if (s == "h2") return CubicMode::h2;
  if (s == "ordinary") return CubicMode::ordinary;
  throw std::invalid_argument("unknown cubic mode: " + std::string(s));
}

CubicEmbeddings cubic_embeddings(const OrderSpec& spec) {
  if (spec.degree() != 3 || spec.discriminant() >= 0) {
    throw std::invalid_argument("need a cubic with negative discriminant");
  }
  const long double a2 = spec.coeff(2), a1 = spec.coeff(1), a0 = spec.coeff(0);
  auto f = [&](long double x) { return ((x + a2) * x + a1) * x + a0; };
  auto df = [&](long double x) { return (3 * x + 2 * a2) * x + a1; };
  const long double bound = 1 + std::max({std::fabs(a2), std::fabs(a1), std::fabs(a0)});
  long double lo = -bound, hi = bound;  // f(lo) < 0 < f(hi)
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  long double r = (lo + hi) / 2;
  for (int i = 0; i < 3; ++i) {
    const long double d = df(r);
    if (d != 0) r -= f(r) / d;
  }
  // f = (x - r)(x^2 + s x + t)
  const long double s = a2 + r;
  const long double t = a1 + r * s;
  const long double disc = 4 * t - s * s;
  return {r, -s / 2, std::sqrt(std::max<long double>(disc, 0)) / 2};
}

namespace {

using cld = std::complex<long double>;

struct UnitCandidate {
  std::array<i64, 3> coeffs;
  long double value;  // real embedding
};

long double real_value(const CubicEmbeddings& e, const std::array<i64, 3>& c) {
  return c[0] + c[1] * e.real_root + c[2] * e.real_root * e.real_root;
}

cld complex_value(const CubicEmbeddings& e, const std::array<i64, 3>& c) {
  const cld z(e.complex_re, e.complex_im);
  return cld(static_cast<long double>(c[0])) + static_cast<long double>(c[1]) * z + static_cast<long double>(c[2]) * z * z;
}

bool is_unit(const OrderSpec& spec, const CubicEmbeddings& e, const std::array<i64, 3>& c) {
  const long double v = real_value(e, c);
  const long double approx_norm = v * std::norm(complex_value(e, c));
  if (std::fabs(std::fabs(approx_norm) - 1) > 0.25) return false;
  const i128 n = exact_norm(spec, c);
  return n == 1 || n == -1;
}

// Smallest |log|u|| > 0 among units in the box |a|,|b|,|c| <= bound (per-coordinate).
std::optional<UnitCandidate> smallest_unit_in_box(const OrderSpec& spec, const CubicEmbeddings& e,
                                                  const std::array<i64, 3>& bound) {
  std::optional<UnitCandidate> best;
  long double best_log = 0;
  std::array<i64, 3> c{};
  for (c[0] = -bound[0]; c[0] <= bound[0]; ++c[0]) {
    for (c[1] = -bound[1]; c[1] <= bound[1]; ++c[1]) {
      for (c[2] = -bound[2]; c[2] <= bound[2]; ++c[2]) {
        const long double v = real_value(e, c);
        if (std::fabs(v) < 1e-12L) continue;
        const long double lg = std::fabs(std::log(std::fabs(v)));
        if (lg < 1e-9L) continue;  // +-1
        if (best && lg >= best_log - 1e-12L) continue;
        if (!is_unit(spec, e, c)) continue;
        best = UnitCandidate{c, v};
        best_log = lg;
      }
    }
  }
  return best;
}

// Representative with real embedding > 1: invert via eps^-1 = N (eps^2 - t eps + s), then fix sign.
std::array<i64, 3> normalize_unit(const OrderSpec& spec, const CubicEmbeddings& e, std::array<i64, 3> c) {
  if (std::fabs(real_value(e, c)) < 1) {
    // trace t and second symmetric function s from the multiplication matrix
    std::array<std::array<i64, 3>, 3> col{};
    for (int j = 0; j < 3; ++j) {
      std::array<i64, 3> basis{};
      basis[static_cast<std::size_t>(j)] = 1;
      const auto v = exact_mul(spec, c, basis);
      for (int i = 0; i < 3; ++i) col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    }
    auto m = [&](int i, int j) { return static_cast<i128>(col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]); };
    const i128 t = m(0, 0) + m(1, 1) + m(2, 2);
    const i128 s = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                   m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const i128 n = exact_norm(spec, c);
    const auto sq = exact_mul(spec, c, c);
    std::array<i64, 3> inv{};
    for (std::size_t i = 0; i < 3; ++i) {
      i128 v = sq[i] - t * c[i] + (i == 0 ? s : 0);
      v *= n;
      inv[i] = static_cast<i64>(v);
    }
    c = inv;
  }
  if (real_value(e, c) < 0) {
    for (auto& x : c) x = -x;
  }
  return c;
}

// Coordinate bounds covering every element with |real| <= u and |complex| <= 1.
std::array<i64, 3> box_for_units_below(const CubicEmbeddings& e, long double u) {
  const cld r(e.real_root), z(e.complex_re, e.complex_im), zb = std::conj(z);
  const cld V[3][3] = {{1, r, r * r}, {1, z, z * z}, {1, zb, zb * zb}};
  // inverse by cofactors
  auto cof = [&](int i, int j) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return V[i1][j1] * V[i2][j2] - V[i1][j2] * V[i2][j1];
  };
  const cld det = V[0][0] * cof(0, 0) + V[0][1] * cof(0, 1) + V[0][2] * cof(0, 2);
  std::array<i64, 3> box{};
  for (int j = 0; j < 3; ++j) {
    // coefficient j = sum_i W[j][i] sigma_i, W = V^-1, W[j][i] = cof(i, j)/det
    const long double b = std::abs(cof(0, j) / det) * u + std::abs(cof(1, j) / det) + std::abs(cof(2, j) / det);
    box[static_cast<std::size_t>(j)] = static_cast<i64>(std::floor(b + 1e-6L)) + 1;
  }
  return box;
}

}  // namespace

CertifiedUnit find_fundamental_unit(const OrderSpec& spec, i64 coeff_bound) {
  if (coeff_bound < 1) throw std::invalid_argument("unit search bound must be positive");
  const CubicEmbeddings e = cubic_embeddings(spec);
  auto found = smallest_unit_in_box(spec, e, {coeff_bound, coeff_bound, coeff_bound});
  if (!found) {
    throw std::runtime_error("no unit with coefficients bounded by " + std::to_string(coeff_bound) +
                             "; retry with a larger bound");
  }
  std::array<i64, 3> c = normalize_unit(spec, e, found->coeffs);
  long double u = real_value(e, c);

  CertifiedUnit out;
  out.searched_bound = coeff_bound;
  const long double abs_disc = std::fabs(static_cast<long double>(spec.discriminant()));
  const bool artin_applies = abs_disc > 28;
  const long double lower = artin_applies ? std::cbrt((abs_disc - 24) / 4) : 0;
  if (artin_applies && u < lower * lower * (1 - 1e-12L)) {
    out.certificate = UnitCertificate::artin;
  } else {
    // Any unit in (1, u) has |conjugate| < 1; enumerate the box that contains all of them.
    for (;;) {
      const auto box = box_for_units_below(e, u);
      auto smaller = smallest_unit_in_box(spec, e, box);
      if (!smaller) break;
      const auto cand = normalize_unit(spec, e, smaller->coeffs);
      const long double v = real_value(e, cand);
      if (v >= u * (1 - 1e-12L)) break;
      c = cand;
      u = v;
    }
    out.certificate = UnitCertificate::exhaustive;
  }
  out.coeffs = c;
  out.norm = static_cast<int>(exact_norm(spec, c));
  out.real_value = static_cast<double>(u);
  return out;
}

H5Set h5_set(const std::vector<u64>& S) {
  if (S.empty()) throw std::invalid_argument("ramified set must be nonempty");
  std::set<u64> raw;
  for (u64 l : S) {
    if (!is_prime(l)) throw std::invalid_argument(std::to_string(l) + " in S is not prime");
    if (l > 3'000'000'000ULL) throw std::invalid_argument("ramified prime too large");
    for (u64 q : prime_factors(l - 1)) raw.insert(q);
    for (u64 q : prime_factors(l + 1)) raw.insert(q);
  }
  H5Set out;
  out.raw.assign(raw.begin(), raw.end());
  for (u64 q : out.raw) {
    if (q != 2 && q != 3) out.reported.push_back(q);
  }
  return out;
}

CubicFieldRecord make_cubic_record(i64 delta, std::vector<i64> poly, std::optional<std::vector<u64>> S,
                                   std::optional<u64> class_number_E, std::optional<std::array<i64, 3>> unit_override,
                                   i64 unit_search_bound) {
  if (delta >= 0) throw std::invalid_argument("complex cubic fields have negative discriminant");
  OrderSpec spec(std::move(poly), delta);
  if (spec.degree() != 3) throw std::invalid_argument("cubic record needs a cubic polynomial");
  // a monic cubic is reducible over Q iff it has an integer root, which divides f(0)
  const i64 c0 = spec.coeff(0);
  if (c0 == 0) throw std::invalid_argument("defining polynomial is reducible over Q");
  const i64 abs_c0 = c0 < 0 ? -c0 : c0;
  auto is_root = [&](i64 x) {
    const i128 v = x;
    return ((v + spec.coeff(2)) * v + spec.coeff(1)) * v + c0 == 0;
  };
  for (i64 r = 1; r * r <= abs_c0; ++r) {
    if (abs_c0 % r != 0) continue;
    for (i64 cand : {r, -r, abs_c0 / r, -(abs_c0 / r)}) {
      if (is_root(cand)) throw std::invalid_argument("defining polynomial is reducible over Q");
    }
  }
  const std::vector<u64> divisors = prime_factors(static_cast<u64>(-delta));
  if (S) {
    std::vector<u64> sorted = *S;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != divisors) throw std::invalid_argument("ramified set does not match primes dividing delta");
  }
  if (class_number_E && *class_number_E == 0) throw std::invalid_argument("class number must be positive");

  CertifiedUnit unit;
  if (unit_override) {
    const CubicEmbeddings e = cubic_embeddings(spec);
    if (!is_unit(spec, e, *unit_override)) throw std::invalid_argument("unit override does not have norm +-1");
    // the override has to agree with the certified unit up to sign and inversion
    const CertifiedUnit certified = find_fundamental_unit(spec, unit_search_bound);
    const long double v = std::fabs(real_value(e, *unit_override));
    const long double lv = std::fabs(std::log(v));
    if (std::fabs(lv - std::log(static_cast<long double>(certified.real_value))) > 1e-9L) {
      throw std::invalid_argument("unit override is not a fundamental unit");
    }
    unit = certified;
    unit.coeffs = *unit_override;
    unit.norm = static_cast<int>(exact_norm(spec, *unit_override));
    unit.real_value = static_cast<double>(real_value(e, *unit_override));
  } else {
    unit = find_fundamental_unit(spec, unit_search_bound);
  }
  return CubicFieldRecord{delta, spec, divisors, class_number_E, unit, h5_set(divisors)};
}

std::optional<ExclusionReason> hyp_filter(const CubicFieldRecord& rec, u64 p) {
  if (p % 2 == 0 || p % 3 == 0) return ExclusionReason::hyp1_divides_6;  // |S_3| = 6
  if (static_cast<u64>(-rec.delta) % p == 0) return ExclusionReason::hyp2_ramified;
  if (rec.class_number_E && *rec.class_number_E % p == 0) return ExclusionReason::hyp3_class_number;
  if (p % 2 == 0) return ExclusionReason::hyp4_even;
  if (std::binary_search(rec.h5.raw.begin(), rec.h5.raw.end(), p)) return ExclusionReason::hyp5_in_H5;
  return std::nullopt;
}

ZValue z_from_unit(const OrderSpec& spec, u64 p, std::span<const i64> unit_coeffs) {
  const Modulus mod2(p, 2);
  const QuotientRing ring(spec, mod2);
  const OrderElem eps = ring.from_ints(unit_coeffs);
  const u128 e = static_cast<u128>(p) * p * p - 1;
  const OrderElem u = ring.pow(eps, e);
  ZValue z;
  z.p = p;
  for (std::size_t i = 0; i < 3; ++i) {
    const u64 expect = i == 0 ? 1 : 0;
    if (u.coeffs[i] % p != expect) {
      throw std::logic_error("eps^(p^3-1) != 1 mod p at p=" + std::to_string(p) + "; p is not inert");
    }
    z.coeffs[i] = ((u.coeffs[i] - expect) / p) % p;
  }
  return z;
}

namespace {

void require_applicable(const CubicFieldRecord& rec, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (auto why = hyp_filter(rec, p)) {
    throw PreconditionError(*why, "p=" + std::to_string(p) + " fails " + std::string(to_string(*why)));
  }
  if (frobenius_order(rec.spec, p) != 3) {
    throw PreconditionError(ExclusionReason::frobenius_order_not_3,
                            "p=" + std::to_string(p) + " is not inert (Frobenius order != 3)");
  }
}

}  // namespace

ZValue z_value(const CubicFieldRecord& rec, u64 p) {
  require_applicable(rec, p);
  return z_from_unit(rec.spec, p, rec.unit.coeffs);
}

bool h2_vanishes(const ZValue& z) { return !z.is_zero(); }

bool h2_vanishing_test(const CubicFieldRecord& rec, u64 p) { return h2_vanishes(z_value(rec, p)); }

bool is_ordinary(const OrderSpec& spec, const ZValue& z) {
  if (z.p % 3 != 1) {
    throw PreconditionError(ExclusionReason::residue_2_mod_3, "ordinary test needs p = 1 mod 3");
  }
  if (z.is_zero()) throw PreconditionError(ExclusionReason::z_zero, "ordinary test needs z != 0");
  const Modulus mod(z.p, 1);
  const QuotientRing ring(spec, mod);
  OrderElem ze = ring.zero();
  ze.coeffs = z.coeffs;
  return ring.pow(ze, static_cast<u128>(3) * (z.p - 1)) == ring.one();
}

bool ordinary_test(const CubicFieldRecord& rec, u64 p) {
  require_applicable(rec, p);
  if (p % 3 != 1) throw PreconditionError(ExclusionReason::residue_2_mod_3, "ordinary test needs p = 1 mod 3");
  return is_ordinary(rec.spec, z_from_unit(rec.spec, p, rec.unit.coeffs));
}

ScanVerdict cubic_verdict(const CubicFieldRecord& rec, u64 p, CubicMode mode) {
  if (auto why = hyp_filter(rec, p)) return ScanVerdict::excluded(p, *why);
  if (frobenius_order(rec.spec, p) != 3) return ScanVerdict::excluded(p, ExclusionReason::frobenius_order_not_3);
  if (mode == CubicMode::ordinary && p % 3 != 1) return ScanVerdict::excluded(p, ExclusionReason::residue_2_mod_3);
  const ZValue z = z_from_unit(rec.spec, p, rec.unit.coeffs);
  std::vector<u64> aux(z.coeffs.begin(), z.coeffs.end());
  if (mode == CubicMode::h2) {
    return z.is_zero() ? ScanVerdict::hit(p, std::move(aux)) : ScanVerdict::clear(p, std::move(aux));
  }
  if (z.is_zero()) return ScanVerdict::excluded(p, ExclusionReason::z_zero);
  return is_ordinary(rec.spec, z) ? ScanVerdict::hit(p, std::move(aux)) : ScanVerdict::clear(p, std::move(aux));
}

ScanReport scan_cubic(const CubicFieldRecord& rec, PrimeRange range, CubicMode mode, const ScanOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanReport report;
  report.meta.field_id = rec.field_id();
  report.meta.mode = std::string(to_string(mode));
  report.meta.range = range;
  report.meta.workers = std::max(1U, opts.workers);
  if (!rec.class_number_E) {
    report.meta.warnings.push_back("class_number_E absent: Hyp 3 not applied");
  }

  auto verdicts = ordered_prime_scan<ScanVerdict>(range, opts.workers, [&](u64 p) -> std::optional<ScanVerdict> {
    ScanVerdict v = cubic_verdict(rec, p, mode);
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
