#include "modpl/field_data.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace modpl {

#ifndef MODPL_DATA_DIR
#define MODPL_DATA_DIR "data"
#endif

std::filesystem::path data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return env;
  return MODPL_DATA_DIR;
}

std::filesystem::path quad_fields_file() { return data_dir() / "quadratic_fields.dat"; }
std::filesystem::path cubic_fields_file() { return data_dir() / "cubic_fields.dat"; }
std::filesystem::path reference_table_file(const std::string& id) { return data_dir() / "tables" / (id + ".dat"); }

const std::string* DataLine::find(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

const std::string& DataLine::at(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  throw DataError("line " + std::to_string(line_no) + ": missing field '" + std::string(key) + "'");
}

std::vector<DataLine> read_data_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open data file " + file.string());
  std::vector<DataLine> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    DataLine dl;
    dl.line_no = no;
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw DataError(file.filename().string() + ":" + std::to_string(no) + ": expected key=value, got '" + tok + "'");
      }
      const std::string key = tok.substr(0, eq);
      if (dl.find(key)) throw DataError(file.filename().string() + ":" + std::to_string(no) + ": duplicate key " + key);
      dl.fields.emplace_back(key, tok.substr(eq + 1));
    }
    if (!dl.fields.empty()) out.push_back(std::move(dl));
  }
  return out;
}

namespace {

template <class Int>
Int parse_int(const std::string& s, const DataLine& dl, std::string_view what) {
  Int v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DataError("line " + std::to_string(dl.line_no) + ": bad integer for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

template <class Int>
std::vector<Int> parse_list(const std::string& s, const DataLine& dl, std::string_view what) {
  std::vector<Int> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(parse_int<Int>(s.substr(start, comma - start), dl, what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void rethrow_as_data_error(const DataLine& dl, const std::exception& e) {
  throw DataError("line " + std::to_string(dl.line_no) + ": " + e.what());
}

}  // namespace

std::vector<QuadFieldRecord> load_quad_fields(const std::filesystem::path& file) {
  std::vector<QuadFieldRecord> out;
  std::set<u64> seen;
  for (const auto& dl : read_data_lines(file)) {
    const auto D = parse_int<u64>(dl.at("D"), dl, "D");
    const auto h = parse_int<u64>(dl.at("h"), dl, "h");
    std::optional<QuadUnit> unit;
    if (const auto* u = dl.find("unit")) {
      const auto ab = parse_list<i64>(*u, dl, "unit");
      if (ab.size() != 2) throw DataError("line " + std::to_string(dl.line_no) + ": quadratic unit needs a,b");
      unit = QuadUnit{ab[0], ab[1], 1};
    }
    if (!seen.insert(D).second) throw DataError("line " + std::to_string(dl.line_no) + ": duplicate D");
    try {
      out.push_back(make_quad_record(D, h, unit));
    } catch (const std::exception& e) {
      rethrow_as_data_error(dl, e);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.D < b.D; });
  return out;
}

std::vector<CubicFieldRecord> load_cubic_fields(const std::filesystem::path& file) {
  std::vector<CubicFieldRecord> out;
  std::set<i64> seen;
  for (const auto& dl : read_data_lines(file)) {
    const auto delta = parse_int<i64>(dl.at("delta"), dl, "delta");
    auto poly = parse_list<i64>(dl.at("poly"), dl, "poly");
    auto S = parse_list<u64>(dl.at("S"), dl, "S");
    std::optional<u64> hE;
    if (const auto* v = dl.find("hE")) hE = parse_int<u64>(*v, dl, "hE");
    std::optional<std::array<i64, 3>> unit;
    if (const auto* v = dl.find("unit")) {
      const auto abc = parse_list<i64>(*v, dl, "unit");
      if (abc.size() != 3) throw DataError("line " + std::to_string(dl.line_no) + ": cubic unit needs a,b,c");
      unit = std::array<i64, 3>{abc[0], abc[1], abc[2]};
    }
    if (!seen.insert(delta).second) throw DataError("line " + std::to_string(dl.line_no) + ": duplicate delta");
    try {
      out.push_back(make_cubic_record(delta, std::move(poly), std::move(S), hE, unit));
    } catch (const std::exception& e) {
      rethrow_as_data_error(dl, e);
    }
  }
  // Tables list discriminants by decreasing value: -23, -31, ...
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.delta > b.delta; });
  return out;
}

const ReferenceRow* ReferenceTable::find(i64 key) const {
  for (const auto& r : rows)
    if (r.key == key) return &r;
  return nullptr;
}

ReferenceTable load_reference_table(const std::filesystem::path& file, const std::string& id) {
  ReferenceTable t;
  t.id = id;
  for (const auto& dl : read_data_lines(file)) {
    ReferenceRow row;
    row.key = parse_int<i64>(dl.at("key"), dl, "key");
    row.primes = parse_list<u64>(dl.at("primes"), dl, "primes");
    if (!std::is_sorted(row.primes.begin(), row.primes.end())) {
      throw DataError("line " + std::to_string(dl.line_no) + ": primes must be ascending");
    }
    if (t.find(row.key)) throw DataError("line " + std::to_string(dl.line_no) + ": duplicate key");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace modpl
