// Error types shared by every module.
#ifndef SYMPARAB_ERRORS_HPP_
#define SYMPARAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symparab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

// Malformed scalar literal or data file.  `position` is a byte offset into
// the offending text.
class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& reason)
      : Error("parse error at position " + std::to_string(position) + ": " + reason),
        position_(position), reason_(reason) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Subspace handed to `restrict` is not invariant under the generators.
class NotInvariant : public Error {
public:
  using Error::Error;
};

// A form that must be nondegenerate turned out not to be.
class DegenerateForm : public Error {
public:
  using Error::Error;
};

// Resource guard tripped (orbit or enumeration cap).
class CapExceeded : public Error {
public:
  enum class Kind { orbit, enumeration, domain };
  CapExceeded(Kind kind, std::size_t cap, const std::string& what)
      : Error(what), kind_(kind), cap_(cap) {}
  Kind kind() const noexcept { return kind_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  Kind kind_;
  std::size_t cap_;
};

} // namespace symparab

#endif // SYMPARAB_ERRORS_HPP_
