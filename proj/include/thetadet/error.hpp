#pragma once

#include <stdexcept>
#include <string>

namespace thetadet {

enum class ErrorKind {
  Domain,         // arithmetic domain violation (zero argument, bad substitution)
  Usage,          // caller passed parameters outside the documented range
  Constraint,     // parameter constraint (norm, product) not satisfied
  Invert,         // series inversion of a non-unit
  Normalization,  // Pochhammer argument that must be reduced first
  UnknownId,      // registry lookup miss
  Degenerate,     // sampler could not find a generic binding
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace thetadet
