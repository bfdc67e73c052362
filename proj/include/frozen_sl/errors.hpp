#pragma once

#include <stdexcept>
#include <string>

namespace frozen_sl {

/// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  InvalidInput,   ///< malformed data, violated precondition, wrong case
  Numerical,      ///< root finder or linear solve failed
  NotRealizable,  ///< spectrum (or W) violates a necessary condition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidInput, what);
}

}  // namespace frozen_sl
