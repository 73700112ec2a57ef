#pragma once

#include <stdexcept>
#include <string>

namespace daylit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  enum class Kind { ZeroArea, OffPlane, NonCoplanar, Degenerate, InvalidPolygon };

  GeometryError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Bad argument value handed to a numeric routine (negative irradiance, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed input text: unreadable syntax or schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input parsed but violates a physical or semantic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace daylit
