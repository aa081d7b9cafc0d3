#ifndef WISHART_ERROR_HPP
#define WISHART_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wishart {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 1 (computation error) unless a subclass says otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments of incompatible sizes (ground sets, matrix dimensions, colors).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (not a bijection, not Hermitian, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured cap.
class EnumerationLimitError : public Error {
 public:
  EnumerationLimitError(const std::string& what, std::uint64_t cap)
      : Error(what + " exceeds enumeration cap " + std::to_string(cap)), cap_(cap) {}
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in one of the text formats; offset is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace wishart

#endif  // WISHART_ERROR_HPP
