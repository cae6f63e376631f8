#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oddcycle/io.hpp"
#include "oddcycle/measure.hpp"

namespace oddcycle {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvariant = 1,
  kExitBadInput = 2,
  kExitBudget = 3,
};

/// Everything a single invocation needs, with defaults for every knob.
struct RunConfig {
  std::string command;

  std::string graph;
  std::string out;
  std::string report;
  std::string audit_out;
  std::string measure;

  std::string pattern = "C3";
  int m = 3;
  int t = 1;
  std::string variant = "a";
  std::string tumor_shape = "path";
  /// Explicit B; when empty the graph file's "B" is used.
  std::vector<VertexId> B;
  /// test, fast or auto (by size).
  std::string mode = "auto";
  /// auto, degree or given.
  std::string partition = "auto";

  int clique = 0;
  int starts = 64;
  int max_iters = 20000;
  std::uint64_t seed = 0;
  std::optional<double> O;

  std::size_t n = 10;
  double p = 0.0;

  unsigned threads = 1;
  std::optional<std::uint64_t> budget;
  Tolerances tolerances;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

Json config_to_json(const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const Json& j);

struct ParseOutcome {
  std::optional<RunConfig> config;
  /// Set when parsing ended the run (help, error, or --print-config).
  std::optional<int> exit_code;
};

/// Parses argv. Help text and parse errors go to out and err.
ParseOutcome parse_command_line(int argc, const char* const* argv,
                                std::ostream& out, std::ostream& err);

/// Executes one command, mapping errors to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line followed by run.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace oddcycle
