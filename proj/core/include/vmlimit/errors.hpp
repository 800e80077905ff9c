#pragma once

#include <stdexcept>
#include <string>

namespace vmlimit {

// Configuration or initial-data problems. CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NeutralityError : ConfigError {
  explicit NeutralityError(const std::string& what) : ConfigError(what) {}
};

// Runtime aborts during stepping. CLI maps these to exit code 3.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct CflError : SolverError {
  explicit CflError(const std::string& what) : SolverError(what) {}
};

struct SupportOverflowError : SolverError {
  explicit SupportOverflowError(const std::string& what) : SolverError(what) {}
};

struct SnapshotError : std::runtime_error {
  explicit SnapshotError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vmlimit
