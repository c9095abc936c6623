#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "modpl/cubic_scan.hpp"
#include "modpl/quad_scan.hpp"

namespace modpl {

/// Malformed or inconsistent data file. The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kDataDirEnv = "MODPL_DATA_DIR";

/// $MODPL_DATA_DIR if set, else the directory baked in at build time.
std::filesystem::path data_dir();

/// One `key=value` line; `#` starts a comment.
struct DataLine {
  std::size_t line_no = 0;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string* find(std::string_view key) const;
  const std::string& at(std::string_view key) const;
};

std::vector<DataLine> read_data_lines(const std::filesystem::path& file);

/// Lines `D=<int> h=<int> [unit=a,b]`.
std::vector<QuadFieldRecord> load_quad_fields(const std::filesystem::path& file);

/// Lines `delta=<int> poly=c0,c1,c2,1 S=l1,l2 [hE=<int>] [unit=a,b,c]`.
std::vector<CubicFieldRecord> load_cubic_fields(const std::filesystem::path& file);

struct ReferenceRow {
  i64 key = 0;  // D or delta
  std::vector<u64> primes;
};

struct ReferenceTable {
  std::string id;  // quad_table | h5_table | cubic_ordinary_table
  std::vector<ReferenceRow> rows;

  const ReferenceRow* find(i64 key) const;
};

/// Lines `key=<int> primes=p1,p2,...` (primes may be empty).
ReferenceTable load_reference_table(const std::filesystem::path& file, const std::string& id);

std::filesystem::path quad_fields_file();
std::filesystem::path cubic_fields_file();
std::filesystem::path reference_table_file(const std::string& id);

}  // namespace modpl
