#pragma once

#include <string>
#include <vector>

#include "modpl/field_data.hpp"

namespace modpl {

enum class DiffKind {
  missing,                 // expected, not found, not excluded
  extra,                   // found, not expected
  excluded_by_design,      // expected, but outside the scanner's domain (p below the minimum prime)
  excluded_by_hypothesis,  // expected, but a hypothesis filter rejects the prime
};

std::string_view to_string(DiffKind k);

struct DiffEntry {
  i64 key = 0;
  u64 p = 0;
  DiffKind kind = DiffKind::missing;
  std::string note;
};

struct TableDiff {
  std::string table_id;
  u64 pmax = 0;
  std::vector<ReferenceRow> computed;
  std::vector<DiffEntry> entries;

  /// Only by-design exclusions are tolerated.
  bool pass() const;
  std::string render() const;
};

/// Quadratic scan over [3, pmax); p = 2 rows are reported as excluded_by_design.
TableDiff verify_quad_table(const std::vector<QuadFieldRecord>& fields, const ReferenceTable& table, u64 pmax,
                            unsigned workers = 1);

TableDiff verify_h5_table(const std::vector<CubicFieldRecord>& fields, const ReferenceTable& table);

/// Ordinary-mode cubic scan over p <= pmax. Expected primes rejected by the hypothesis
/// filter are reported with the outcome of the unfiltered ordinarity test in the note.
TableDiff verify_cubic_table(const std::vector<CubicFieldRecord>& fields, const ReferenceTable& table, u64 pmax,
                             unsigned workers = 1);

}  // namespace modpl
