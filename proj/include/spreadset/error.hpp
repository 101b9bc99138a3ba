#ifndef SPREADSET_ERROR_HPP_
#define SPREADSET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace spreadset {

enum class ErrorKind {
  InvalidInput,      // malformed graph text, bad arguments, sets outside V
  Disconnected,
  EmptyTarget,       // F or h(i, A) requested for A = {}
  SolverFailure,
  BudgetExceeded,    // enumeration larger than the configured cap
  Degenerate,        // F_max == F_min
  NotVertexCover,
  Infeasible,        // set is not in the feasible family
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Disconnected: return "disconnected graph";
    case ErrorKind::EmptyTarget: return "empty target set";
    case ErrorKind::SolverFailure: return "solver failure";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::Degenerate: return "degenerate instance";
    case ErrorKind::NotVertexCover: return "not a vertex cover";
    case ErrorKind::Infeasible: return "infeasible set";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spreadset

#endif  // SPREADSET_ERROR_HPP_
