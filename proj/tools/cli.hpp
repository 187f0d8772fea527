#pragma once

#include "staircase/measure.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace staircase::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (args excludes the program name). Exit codes:
/// 0 success, 1 a check failed, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string csv() const;
  /// Column index by name; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
};

/// Throws std::invalid_argument on malformed CSV.
Table parse_csv(std::string_view text);

struct Range {
  int lo = 1;
  int hi = 1;
};

/// "LO..HI" or "N".
Range parse_range(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// "default" or "a:b;a:b;...".
std::vector<Params> parse_grid(std::string_view text);

std::string sha256_hex(std::string_view data);
std::string bool_text(bool b);

/// Where a command's output goes: stdout, or <out_dir>/<name> plus a
/// <name-stem>.manifest.json sidecar.
struct Sink {
  std::vector<std::string> argv;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<Params> grid;
  std::map<std::string, std::string> ranges;
  std::ostream* out = nullptr;

  void emit(const std::string& command, const std::string& extension,
            const std::string& payload) const;
};

/// Bundle generation and the acceptance summary over a bundle.
int run_bundle(const std::string& dir, std::uint64_t seed, std::ostream& out, std::ostream& err);
int run_report(const std::string& dir, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace staircase::cli
