#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "chaoscalc/json_io.hpp"
#include "chaoscalc/partitions.hpp"

namespace chaoscalc {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 1;
inline constexpr int violated = 2;
inline constexpr int numerical_failure = 3;
}  // namespace exit_code

struct CommandRequest {
  std::string subcommand;
  Json input;
  int max_order = 8;
  /// Unset means kDefaultSeed, except that `optimize` then falls back to the problem's own seed.
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100000;
  int matrix_size = 256;
  int replicas = 16;
  double tolerance = kDefaultRelativeTolerance;
  OutputFormat format = OutputFormat::json;
  bool strict = false;
  /// moments subcommand only: "recursive" or "enumeration".
  std::string method = "recursive";
  unsigned threads = 0;

  /// Throws InvalidInput.
  void validate() const;
};

/// Caps from CHAOSCALC_SET_PARTITION_CAP / CHAOSCALC_NONCROSSING_CAP, defaults otherwise.
EnumerationCaps caps_from_environment();

/// Runs one validated request. Errors are reported on `err` and mapped to exit codes.
int dispatch(const CommandRequest& req, std::ostream& out, std::ostream& err);

/// Argument parsing plus dispatch; input JSON comes from the positional file or `in`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace chaoscalc
