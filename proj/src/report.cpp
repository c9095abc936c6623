#include "modpl/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace modpl {

namespace {

constexpr std::array<std::pair<VerdictStatus, std::string_view>, 3> kStatusNames{{
    {VerdictStatus::hit, "hit"},
    {VerdictStatus::clear, "clear"},
    {VerdictStatus::excluded, "excluded"},
}};

constexpr std::array<std::pair<ExclusionReason, std::string_view>, 12> kReasonNames{{
    {ExclusionReason::none, ""},
    {ExclusionReason::ramified, "ramified"},
    {ExclusionReason::divides_class_number, "divides_class_number"},
    {ExclusionReason::below_min_p, "below_min_p"},
    {ExclusionReason::hyp1_divides_6, "hyp1_divides_6"},
    {ExclusionReason::hyp2_ramified, "hyp2_ramified"},
    {ExclusionReason::hyp3_class_number, "hyp3_class_number"},
    {ExclusionReason::hyp4_even, "hyp4_even"},
    {ExclusionReason::hyp5_in_H5, "hyp5_in_H5"},
    {ExclusionReason::frobenius_order_not_3, "frobenius_order_not_3"},
    {ExclusionReason::residue_2_mod_3, "residue_2_mod_3"},
    {ExclusionReason::z_zero, "z_zero"},
}};

nlohmann::json verdict_json(const ScanVerdict& v) {
  nlohmann::json j;
  j["p"] = v.p;
  j["status"] = to_string(v.status);
  if (v.status == VerdictStatus::excluded) j["reason"] = to_string(v.reason);
  if (!v.aux.empty()) j["aux"] = v.aux;
  return j;
}

ScanVerdict verdict_from_json(const nlohmann::json& j) {
  ScanVerdict v;
  v.p = j.at("p").get<u64>();
  v.status = parse_status(j.at("status").get<std::string>());
  if (j.contains("reason")) v.reason = parse_reason(j.at("reason").get<std::string>());
  if (j.contains("aux")) v.aux = j.at("aux").get<std::vector<u64>>();
  if ((v.status == VerdictStatus::excluded) != (v.reason != ExclusionReason::none)) {
    throw std::invalid_argument("verdict reason inconsistent with status");
  }
  return v;
}

nlohmann::json report_json(const ScanReport& r, bool with_timing) {
  nlohmann::json meta;
  meta["tool_version"] = r.meta.tool_version;
  meta["field"] = r.meta.field_id;
  meta["mode"] = r.meta.mode;
  meta["range"] = {r.meta.range.lo, r.meta.range.hi};
  meta["warnings"] = r.meta.warnings;
  if (with_timing) {
    meta["wall_time_s"] = r.meta.wall_time_s;
    meta["workers"] = r.meta.workers;
  }
  nlohmann::json j;
  j["meta"] = std::move(meta);
  j["hits"] = nlohmann::json::array();
  for (const auto& v : r.hits) j["hits"].push_back(verdict_json(v));
  if (r.others) {
    j["others"] = nlohmann::json::array();
    for (const auto& v : *r.others) j["others"].push_back(verdict_json(v));
  }
  if (with_timing) j["checksum"] = checksum_hex(r.checksum());
  return j;
}

}  // namespace

std::string_view to_string(VerdictStatus s) {
  for (const auto& [k, name] : kStatusNames)
    if (k == s) return name;
  return "?";
}

std::string_view to_string(ExclusionReason r) {
  for (const auto& [k, name] : kReasonNames)
    if (k == r) return name;
  return "?";
}

VerdictStatus parse_status(std::string_view s) {
  for (const auto& [k, name] : kStatusNames)
    if (name == s) return k;
  throw std::invalid_argument("unknown verdict status: " + std::string(s));
}

ExclusionReason parse_reason(std::string_view s) {
  for (const auto& [k, name] : kReasonNames)
    if (name == s) return k;
  throw std::invalid_argument("unknown exclusion reason: " + std::string(s));
}

std::vector<u64> ScanReport::hit_primes() const {
  std::vector<u64> out;
  out.reserve(hits.size());
  for (const auto& v : hits) out.push_back(v.p);
  return out;
}

u64 ScanReport::checksum() const {
  const std::string canon = to_json(*this, false);
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_json(const ScanReport& r, bool with_timing) { return report_json(r, with_timing).dump(); }

ScanReport report_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  ScanReport r;
  const auto& meta = j.at("meta");
  r.meta.tool_version = meta.at("tool_version").get<std::string>();
  r.meta.field_id = meta.at("field").get<std::string>();
  r.meta.mode = meta.at("mode").get<std::string>();
  const auto range = meta.at("range").get<std::vector<u64>>();
  if (range.size() != 2) throw std::invalid_argument("range must have two entries");
  r.meta.range.lo = range[0];
  r.meta.range.hi = range[1];
  r.meta.warnings = meta.at("warnings").get<std::vector<std::string>>();
  if (meta.contains("wall_time_s")) r.meta.wall_time_s = meta.at("wall_time_s").get<double>();
  if (meta.contains("workers")) r.meta.workers = meta.at("workers").get<unsigned>();
  for (const auto& v : j.at("hits")) r.hits.push_back(verdict_from_json(v));
  if (j.contains("others")) {
    r.others.emplace();
    for (const auto& v : j.at("others")) r.others->push_back(verdict_from_json(v));
  }
  for (std::size_t i = 1; i < r.hits.size(); ++i) {
    if (r.hits[i - 1].p >= r.hits[i].p) throw std::invalid_argument("hits not strictly ascending");
  }
  if (j.contains("checksum") && j.at("checksum").get<std::string>() != checksum_hex(r.checksum())) {
    throw std::invalid_argument("report checksum mismatch");
  }
  return r;
}

std::string to_csv(const ScanReport& r, bool header) {
  std::ostringstream out;
  if (header) out << kCsvHeader << '\n';
  auto row = [&](const ScanVerdict& v) {
    out << r.meta.field_id << ',' << v.p << ',' << r.meta.mode << ',' << to_string(v.status) << ','
        << to_string(v.reason) << ',';
    for (std::size_t i = 0; i < v.aux.size(); ++i) out << (i ? " " : "") << v.aux[i];
    out << '\n';
  };
  if (!r.others) {
    for (const auto& v : r.hits) row(v);
    return out.str();
  }
  // full verdicts: merge hits and the rest back into one ascending list
  std::vector<const ScanVerdict*> all;
  for (const auto& v : r.hits) all.push_back(&v);
  for (const auto& v : *r.others) all.push_back(&v);
  std::stable_sort(all.begin(), all.end(), [](const auto* a, const auto* b) { return a->p < b->p; });
  for (const auto* v : all) row(*v);
  return out.str();
}

std::string checksum_hex(u64 checksum) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

}  // namespace modpl
