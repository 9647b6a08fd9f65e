#pragma once

#include "biharm/analysis.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace biharm {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitUsage = 2,
  kExitNoConvergence = 3,
};

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;  // solve | verify | kernels | bench
  std::string suite;    // verify only
  std::string problem = "counterexample";
  QuadConfig quad;
  int grid_radial = 16;
  int grid_angular = 64;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 42;
  std::optional<double> q;
  NormOverrides norms;
  // kernels command
  cplx z{0.5, 0.0};
  cplx w{0.0, 0.0};
  double t = 0.0;
};

// Built-in case name or path to a JSON file {"name", "f_star", "phi", "g"}.
// Throws std::runtime_error on IO problems and ParseError on bad expressions.
ProblemSpec resolve_problem(const std::string& problem);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_kernels(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biharm
