#pragma once

/**
 * @file cubic_scan.hpp
 * @brief Complex cubic fields: H5 sets, the hypothesis filter, certified fundamental
 * units, the z-invariant and the ordinarity test.
 *
 * For p inert in K (Frobenius of order 3) and eps_K a fundamental unit,
 *
 *     eps_K^(p^3 - 1) = 1 + z p   mod p^2 O_K,   z in O_K/p = F_{p^3}.
 *
 * z != 0 is the H^2-vanishing criterion; for p = 1 mod 3 and z != 0 the
 * ordinarity test is z^(3(p-1)) = 1 in O_K/p.
 */

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modpl/order_arith.hpp"
#include "modpl/primes.hpp"
#include "modpl/quad_scan.hpp"
#include "modpl/report.hpp"

namespace modpl {

/// Thrown when an operation's applicability conditions fail; carries the verdict reason.
class PreconditionError : public std::domain_error {
 public:
  PreconditionError(ExclusionReason reason, const std::string& what)
      : std::domain_error(what), reason_(reason) {}
  ExclusionReason reason() const { return reason_; }

 private:
  ExclusionReason reason_;
};

enum class UnitCertificate {
  artin,       // u < ((|disc|-24)/4)^(2/3), so u is not a proper power
  exhaustive,  // no smaller unit in a box provably containing all units in (1, u)
};

std::string_view to_string(UnitCertificate c);

/// eps = a + b theta + c theta^2 with real embedding > 1.
struct CertifiedUnit {
  std::array<i64, 3> coeffs{};
  int norm = 1;
  double real_value = 0.0;
  UnitCertificate certificate = UnitCertificate::exhaustive;
  i64 searched_bound = 0;
};

/// Real root and one complex root of a cubic with negative discriminant.
struct CubicEmbeddings {
  long double real_root;
  long double complex_re;
  long double complex_im;
};
CubicEmbeddings cubic_embeddings(const OrderSpec& spec);

/// Box search for the smallest unit > 1, then certification. Throws std::runtime_error if
/// no unit lies in the box; rerun with a larger bound.
CertifiedUnit find_fundamental_unit(const OrderSpec& spec, i64 coeff_bound = 20);

struct H5Set {
  std::vector<u64> raw;       // all p with p | l^2 - 1 for some l in S
  std::vector<u64> reported;  // raw without 2 and 3
};

H5Set h5_set(const std::vector<u64>& S);

struct CubicFieldRecord {
  i64 delta = 0;
  OrderSpec spec;
  std::vector<u64> ramified;               // S: primes dividing delta
  std::optional<u64> class_number_E;       // only its prime-to-6 part matters (Hyp 1 runs first)
  CertifiedUnit unit;
  H5Set h5;

  std::string field_id() const { return "delta=" + std::to_string(delta); }
};

/// Validates delta < 0, disc(f) = delta, irreducibility, S; finds or checks the unit.
CubicFieldRecord make_cubic_record(i64 delta, std::vector<i64> poly,
                                   std::optional<std::vector<u64>> S = std::nullopt,
                                   std::optional<u64> class_number_E = std::nullopt,
                                   std::optional<std::array<i64, 3>> unit_override = std::nullopt,
                                   i64 unit_search_bound = 20);

/// First failing hypothesis in order hyp1..hyp5, or nullopt when p passes.
/// Hyp 3 is skipped when class_number_E is absent.
std::optional<ExclusionReason> hyp_filter(const CubicFieldRecord& rec, u64 p);

struct ZValue {
  u64 p = 0;
  std::array<u64, 3> coeffs{};

  bool is_zero() const { return coeffs[0] == 0 && coeffs[1] == 0 && coeffs[2] == 0; }
  bool operator==(const ZValue&) const = default;
};

/// z from an arbitrary unit representative (coefficients taken mod p^2) and exponent p^3 - 1.
/// No applicability checks; throws std::logic_error if the Fermat step fails.
ZValue z_from_unit(const OrderSpec& spec, u64 p, std::span<const i64> unit_coeffs);

/// Checked version: requires hyp_filter pass and Frobenius order 3.
ZValue z_value(const CubicFieldRecord& rec, u64 p);

/// h^2 = 0 iff z != 0.
bool h2_vanishes(const ZValue& z);
bool h2_vanishing_test(const CubicFieldRecord& rec, u64 p);

/// z^(3(p-1)) == 1 in O_K/p; requires p = 1 mod 3 and z != 0.
bool is_ordinary(const OrderSpec& spec, const ZValue& z);
bool ordinary_test(const CubicFieldRecord& rec, u64 p);

enum class CubicMode { h2, ordinary };
std::string_view to_string(CubicMode m);
CubicMode parse_cubic_mode(std::string_view s);

/// Per-prime verdict. Hits carry z coefficients in aux.
/// h2 mode: hit iff z = 0. ordinary mode: hit iff the ordinarity test holds.
ScanVerdict cubic_verdict(const CubicFieldRecord& rec, u64 p, CubicMode mode);

ScanReport scan_cubic(const CubicFieldRecord& rec, PrimeRange range, CubicMode mode, const ScanOptions& opts = {});

}  // namespace modpl
