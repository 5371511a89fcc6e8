#pragma once

#include <stdexcept>
#include <string>

namespace mggm {

// Exit codes used by the CLI: 2 = config error, 3 = data error,
// 4 = numerical degeneracy.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when coordinate descent fails to certify optimality within the sweep
// budget; carries the last KKT residual seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double kkt_residual)
      : std::runtime_error(what), kkt_residual_(kkt_residual) {}
  double kkt_residual() const { return kkt_residual_; }

 private:
  double kkt_residual_;
};

}  // namespace mggm
