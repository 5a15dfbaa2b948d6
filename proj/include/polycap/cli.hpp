#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycap/rational.hpp"

namespace polycap::cli {

enum class Command { capacity, permanent, mixed_disc, bound, approx, check_hyperbolic, scale, suite };
enum class OutputFormat { json, text };

std::string to_string(Command command);
Command parse_command(const std::string& name);

/// One CLI invocation. `threads` only sizes the worker pool and is not part
/// of the report, so reports are identical for every worker count.
struct RunConfig {
  Command command = Command::capacity;
  std::string input_path;
  ScalarMode mode = ScalarMode::exact;
  double tol = 1e-10;
  std::optional<int> max_iter;  // default: 500 for capacity, 10000 for Sinkhorn
  std::uint64_t seed = 0;
  std::optional<int> k;
  std::string ordering = "as-given";  // as-given | greedy | comma-separated 0-based permutation
  OutputFormat output = OutputFormat::json;
  int trials = 20;      // check-hyperbolic: real-rootedness points
  int samples = 2000;   // check-hyperbolic: half-plane samples
  std::string suite_name = "acceptance";
  bool no_meta = false;
  int threads = 0;      // 0: POLYCAP_THREADS or 1

  bool operator==(const RunConfig&) const = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Inverse of to_json; throws InputError on unknown values.
RunConfig run_config_from_json(const nlohmann::ordered_json& inputs);

/// Throws InputError when a field violates its invariant (tol > 0, ...).
void validate(const RunConfig& config);

/// Parses argv (argv[0] is the program name). Returns nullopt after
/// --help/--version output, with `exit_code` set.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code);

/// Executes a command, writing the report to `out` and diagnostics to `err`.
/// Exit codes: 0 success, 1 failed suite or violated guaranteed inequality,
/// 2 invalid input, 3 refused by a resource cap.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polycap::cli
