#pragma once

#include <stdexcept>
#include <string>

namespace ppn {

enum class ErrorCode {
  InvalidArgument,   // malformed input (bad grid, bad mode, ...)
  DomainViolation,   // physics guard violated (weak field, superluminal, singular point)
  NoConvergence,     // iterative solver failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail_invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}
[[noreturn]] inline void fail_domain(const std::string& what) {
  throw Error(ErrorCode::DomainViolation, what);
}
[[noreturn]] inline void fail_convergence(const std::string& what) {
  throw Error(ErrorCode::NoConvergence, what);
}

}  // namespace ppn
