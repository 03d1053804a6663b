#pragma once

#include <stdexcept>
#include <string>

namespace conceptua {

/// Invariant or precondition violation on a domain value or input.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file: syntax, missing field, bad column.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numerical procedure failed to produce a usable result.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace conceptua
