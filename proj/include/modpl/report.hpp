#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modpl/int128.hpp"
#include "modpl/primes.hpp"

namespace modpl {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class VerdictStatus { hit, clear, excluded };

enum class ExclusionReason {
  none,
  // quadratic scanner
  ramified,
  divides_class_number,
  below_min_p,
  // cubic hypothesis filter, in evaluation order
  hyp1_divides_6,
  hyp2_ramified,
  hyp3_class_number,
  hyp4_even,
  hyp5_in_H5,
  // cubic applicability
  frobenius_order_not_3,
  residue_2_mod_3,
  z_zero,
};

std::string_view to_string(VerdictStatus s);
std::string_view to_string(ExclusionReason r);
VerdictStatus parse_status(std::string_view s);
ExclusionReason parse_reason(std::string_view s);

/// Outcome for one prime. `aux` carries mode-specific residues (z coefficients mod p for cubic scans).
struct ScanVerdict {
  u64 p = 0;
  VerdictStatus status = VerdictStatus::clear;
  ExclusionReason reason = ExclusionReason::none;
  std::vector<u64> aux;

  static ScanVerdict hit(u64 p, std::vector<u64> aux = {}) { return {p, VerdictStatus::hit, ExclusionReason::none, std::move(aux)}; }
  static ScanVerdict clear(u64 p, std::vector<u64> aux = {}) { return {p, VerdictStatus::clear, ExclusionReason::none, std::move(aux)}; }
  static ScanVerdict excluded(u64 p, ExclusionReason r) { return {p, VerdictStatus::excluded, r, {}}; }

  bool operator==(const ScanVerdict&) const = default;
};

struct ReportMetadata {
  std::string tool_version{kToolVersion};
  std::string field_id;  // e.g. "D=2" or "delta=-23"
  std::string mode;      // quad_unit | h2 | ordinary | wieferich
  PrimeRange range;
  double wall_time_s = 0.0;
  unsigned workers = 1;
  std::vector<std::string> warnings;

  bool operator==(const ReportMetadata&) const = default;
};

/// Ordered scan result. `others` (clear and excluded verdicts) is filled only for full-verdict scans.
struct ScanReport {
  ReportMetadata meta;
  std::vector<ScanVerdict> hits;
  std::optional<std::vector<ScanVerdict>> others;

  std::vector<u64> hit_primes() const;
  /// FNV-1a 64 over the canonical serialization without wall time and worker count.
  u64 checksum() const;

  bool operator==(const ScanReport&) const = default;
};

/// Canonical JSON (sorted keys, compact). `with_timing` controls wall time and worker count.
std::string to_json(const ScanReport& r, bool with_timing = true);
ScanReport report_from_json(std::string_view text);

/// Fixed columns: field,p,mode,status,reason,aux (aux is space-separated residues).
inline constexpr std::string_view kCsvHeader = "field,p,mode,status,reason,aux";
std::string to_csv(const ScanReport& r, bool header = true);

std::string checksum_hex(u64 checksum);

}  // namespace modpl
