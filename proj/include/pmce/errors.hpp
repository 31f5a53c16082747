#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmce {

/// Raised when an input graph cannot be parsed. Carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A candidate set does not fit the bitset capacity chosen at run start.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw ContractViolation(what);
}
}  // namespace detail

}  // namespace pmce
