#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace embolic {

// Process exit codes shared by the pipeline and the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // internal/unexpected error
  kExitValidation = 2,  // bad input data or parameters
  kExitCheck = 3,       // a mandatory numeric check failed
  kExitResource = 4,    // resolution or combinatorial cap exceeded
};

/// Bad input data or parameters (malformed files, metric-axiom violations,
/// out-of-domain arguments).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sampling resolution or combinatorial caps exceeded (e.g. the nerve
/// multiplicity cap, or a radius cap below the resolvable scale).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An invariant that only a bug can break (e.g. coverage failure of a
/// maximal packing).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Error tagged with the pipeline stage it occurred in, plus the process
/// exit code the stage maps to.
struct StageError : std::runtime_error {
  std::string stage;
  int exit_code;

  StageError(std::string stage_, const std::string& what_, int exit_code_)
      : std::runtime_error(what_), stage(std::move(stage_)), exit_code(exit_code_) {}
};

}  // namespace embolic
