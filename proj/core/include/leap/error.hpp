#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leap {

// Process exit codes used by the CLI.  Library errors carry one of these so
// the tool can translate an exception into the documented exit status.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  config_error = 2,
  data_error = 3,
  protocol_violation = 4,
  metric_undefined = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ExitCode::config_error, message) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ExitCode::data_error, message) {}
};

class MetricUndefinedError : public Error {
 public:
  explicit MetricUndefinedError(const std::string& message)
      : Error(ExitCode::metric_undefined, message) {}
};

// One ledger entry that broke the availability constraint.
struct LeakViolation {
  std::string module;
  std::string presentation;
  long long student = 0;
  std::string group;
  int max_day = 0;
};

// Raised when the guard detects post-cutoff access under the strict policy.
// The run must stop; the CLI maps this to exit code 4.
class ProtocolViolation : public Error {
 public:
  ProtocolViolation(const std::string& message, std::vector<LeakViolation> violations = {},
                    int cutoff = 0)
      : Error(ExitCode::protocol_violation, message),
        violations_(std::move(violations)),
        cutoff_(cutoff) {}

  const std::vector<LeakViolation>& violations() const noexcept { return violations_; }
  int cutoff() const noexcept { return cutoff_; }

 private:
  std::vector<LeakViolation> violations_;
  int cutoff_ = 0;
};

}  // namespace leap
