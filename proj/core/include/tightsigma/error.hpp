#pragma once

#include <stdexcept>
#include <string>

namespace tightsigma {

enum class ErrorKind {
  arity_mismatch,
  foreign_element,
  ambient_mismatch,
  precondition,
  size_bound,
  parse,
};

/* All contract violations raised by the library. Verification results that
 * are part of an operation's output (push-out checks, filtration checks)
 * are returned as reports instead. */
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace tightsigma
