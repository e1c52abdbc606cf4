#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "solvric/lie_algebra.hpp"

namespace solvric {

/// Stable exit codes.
namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kFailure = 1;  ///< self-test mismatch, internal error
inline constexpr int kNotExists = 2;
inline constexpr int kUnknown = 3;
inline constexpr int kInputError = 4;
}  // namespace exit_code

struct CommandOptions {
  double tol = -1.0;  ///< definiteness tolerance; < 0 selects 1e-9 (1 + ||Ric||)
  std::uint32_t seed = 0;
  int budget = 20000;
  int restarts = 16;
  bool structured = false;
  double smax = 40.0;
  std::string out_path;  ///< construct/optimize: certificate destination
};

struct CommandResult {
  int exit_code = exit_code::kSuccess;
  std::string output;
};

/// A path to an algebra file, or a catalog name when no such file exists.
LieAlgebra resolve_algebra(const std::string& arg);

CommandResult cmd_check(const std::string& alg, const CommandOptions& opt);
/// `metric` empty or "identity" selects the identity Gram matrix.
CommandResult cmd_ricci(const std::string& alg, const std::string& metric, const CommandOptions& opt);
CommandResult cmd_decide(const std::string& alg, const CommandOptions& opt);
CommandResult cmd_construct(const std::string& alg, const CommandOptions& opt);
CommandResult cmd_optimize(const std::string& alg, const CommandOptions& opt);
CommandResult cmd_catalog(const CommandOptions& opt);
/// Runs every catalog entry through classify, decide and construct and
/// compares with the recorded expectations.
CommandResult cmd_selftest(const CommandOptions& opt);

/// Wraps a command: library errors become reports with exit code 4 (input
/// errors) or 3 (numerical failures).
CommandResult run_guarded(const std::function<CommandResult()>& fn, const CommandOptions& opt);

}  // namespace solvric
