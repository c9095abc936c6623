#include "modpl/verify_tables.hpp"

#include <algorithm>
#include <sstream>

namespace modpl {

std::string_view to_string(DiffKind k) {
  switch (k) {
    case DiffKind::missing:
      return "missing";
    case DiffKind::extra:
      return "extra";
    case DiffKind::excluded_by_design:
      return "excluded-by-design";
    case DiffKind::excluded_by_hypothesis:
      return "excluded-by-hypothesis";
  }
  return "?";
}

bool TableDiff::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const DiffEntry& e) { return e.kind == DiffKind::excluded_by_design; });
}

std::string TableDiff::render() const {
  std::ostringstream out;
  out << "table " << table_id;
  if (pmax != 0) out << " (pmax " << pmax << ")";
  out << ": " << (pass() ? "PASS" : "FAIL") << '\n';
  for (const auto& row : computed) {
    out << "  " << row.key << ":";
    for (u64 p : row.primes) out << ' ' << p;
    out << '\n';
  }
  for (const auto& e : entries) {
    out << "  diff key=" << e.key << " p=" << e.p << " " << to_string(e.kind);
    if (!e.note.empty()) out << " (" << e.note << ")";
    out << '\n';
  }
  return out.str();
}

namespace {

// Entries for expected-vs-found, with a classifier for expected primes that were not found.
template <class Classify>
void diff_row(TableDiff& diff, i64 key, const std::vector<u64>& expected, const std::vector<u64>& found,
              Classify&& classify_missing) {
  for (u64 p : expected) {
    if (!std::binary_search(found.begin(), found.end(), p)) diff.entries.push_back(classify_missing(p));
  }
  for (u64 p : found) {
    if (!std::binary_search(expected.begin(), expected.end(), p)) {
      diff.entries.push_back({key, p, DiffKind::extra, ""});
    }
  }
}

}  // namespace

TableDiff verify_quad_table(const std::vector<QuadFieldRecord>& fields, const ReferenceTable& table, u64 pmax,
                            unsigned workers) {
  TableDiff diff;
  diff.table_id = table.id;
  diff.pmax = pmax;
  for (const auto& row : table.rows) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return static_cast<i64>(f.D) == row.key; });
    if (!known) {
      for (u64 p : row.primes) diff.entries.push_back({row.key, p, DiffKind::missing, "no field record"});
    }
  }
  for (const auto& rec : fields) {
    const auto key = static_cast<i64>(rec.D);
    ScanOptions opts;
    opts.workers = workers;
    const auto found = pmax > kQuadMinPrime ? scan_quadratic(rec, PrimeRange(kQuadMinPrime, pmax - 1), opts).hit_primes()
                                            : std::vector<u64>{};
    diff.computed.push_back({key, found});
    const ReferenceRow* row = table.find(key);
    const std::vector<u64> expected = row ? row->primes : std::vector<u64>{};
    diff_row(diff, key, expected, found, [&](u64 p) {
      const ScanVerdict v = quad_verdict(rec, p);
      if (v.status == VerdictStatus::excluded && v.reason == ExclusionReason::below_min_p) {
        return DiffEntry{key, p, DiffKind::excluded_by_design, "scanner starts at p = 3"};
      }
      std::string note = p >= pmax ? "beyond pmax" : "verdict " + std::string(to_string(v.status));
      if (v.status == VerdictStatus::excluded) note += " " + std::string(to_string(v.reason));
      return DiffEntry{key, p, DiffKind::missing, note};
    });
  }
  return diff;
}

TableDiff verify_h5_table(const std::vector<CubicFieldRecord>& fields, const ReferenceTable& table) {
  TableDiff diff;
  diff.table_id = table.id;
  for (const auto& row : table.rows) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.delta == row.key; });
    if (!known) {
      for (u64 p : row.primes) diff.entries.push_back({row.key, p, DiffKind::missing, "no field record"});
    }
  }
  for (const auto& rec : fields) {
    const auto& found = rec.h5.reported;
    diff.computed.push_back({rec.delta, found});
    const ReferenceRow* row = table.find(rec.delta);
    const std::vector<u64> expected = row ? row->primes : std::vector<u64>{};
    diff_row(diff, rec.delta, expected, found, [&](u64 p) { return DiffEntry{rec.delta, p, DiffKind::missing, ""}; });
  }
  return diff;
}

TableDiff verify_cubic_table(const std::vector<CubicFieldRecord>& fields, const ReferenceTable& table, u64 pmax,
                             unsigned workers) {
  TableDiff diff;
  diff.table_id = table.id;
  diff.pmax = pmax;
  for (const auto& row : table.rows) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.delta == row.key; });
    if (!known) {
      for (u64 p : row.primes) diff.entries.push_back({row.key, p, DiffKind::missing, "no field record"});
    }
  }
  for (const auto& rec : fields) {
    ScanOptions opts;
    opts.workers = workers;
    const auto found = scan_cubic(rec, PrimeRange(2, pmax), CubicMode::ordinary, opts).hit_primes();
    diff.computed.push_back({rec.delta, found});
    const ReferenceRow* row = table.find(rec.delta);
    const std::vector<u64> expected = row ? row->primes : std::vector<u64>{};
    diff_row(diff, rec.delta, expected, found, [&](u64 p) {
      if (p > pmax) return DiffEntry{rec.delta, p, DiffKind::missing, "beyond pmax"};
      const ScanVerdict v = cubic_verdict(rec, p, CubicMode::ordinary);
      if (v.status != VerdictStatus::excluded) {
        return DiffEntry{rec.delta, p, DiffKind::missing, "verdict " + std::string(to_string(v.status))};
      }
      std::string note = std::string(to_string(v.reason));
      const bool filter_only = v.reason == ExclusionReason::hyp3_class_number || v.reason == ExclusionReason::hyp5_in_H5;
      if (!filter_only) return DiffEntry{rec.delta, p, DiffKind::missing, note};
      // report what the test says with the filter lifted
      if (frobenius_order(rec.spec, p) == 3 && p % 3 == 1) {
        const ZValue z = z_from_unit(rec.spec, p, rec.unit.coeffs);
        note += z.is_zero() ? "; unfiltered: z = 0"
                            : (is_ordinary(rec.spec, z) ? "; unfiltered ordinary test holds"
                                                        : "; unfiltered ordinary test fails");
      }
      return DiffEntry{rec.delta, p, DiffKind::excluded_by_hypothesis, note};
    });
  }
  return diff;
}

}  // namespace modpl
