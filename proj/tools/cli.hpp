#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ricker/bifurcate.hpp"

namespace ricker::cli {

enum class Subcommand { simulate, eigenseq, analyze, bifurcate, extinct };
enum class Format { csv, json };

/// Bad flags, missing flags, malformed values. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulateArgs {
  double x0 = 1.0;
  double y0 = 1.0;
  std::size_t steps = 100;
  std::string form = "planar";  // planar | second | reduced
};

struct EigenArgs {
  std::vector<double> a;
  std::vector<double> b;
  double tol = 1e-9;
};

struct AnalyzeArgs {
  std::string mode;  // factorize | cycle | twocycle | period3 | embed | fixed
  std::optional<double> d;
  std::optional<double> r_m1;
  std::optional<double> r_0;
  std::optional<double> t0;
  std::optional<double> c0;
  std::optional<double> c1;
  std::optional<std::size_t> steps;  ///< default 1000, or 100000 for twocycle
  std::size_t transient = 2000;
  std::size_t max_period = 64;
  std::size_t grid = 10000;
  std::optional<double> tol;  ///< default 1e-8, or 1e-6 for twocycle
};

struct RunConfig {
  Subcommand subcommand = Subcommand::simulate;
  std::optional<std::filesystem::path> system_file;
  std::optional<std::filesystem::path> out_path;
  Format format = Format::json;
  SimulateArgs simulate;
  EigenArgs eigen;
  AnalyzeArgs analyze;
  ScanSpec scan;
};

/// args excludes the program name. Throws UsageError, HelpRequested, or IoError
/// when a named input file cannot be read.
[[nodiscard]] RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a validated config. Errors are reported as one JSON object on `err`;
/// the return value is the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with the same error reporting; what main() calls.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int overflow = 4;
inline constexpr int io = 5;
}  // namespace exit_code

}  // namespace ricker::cli
