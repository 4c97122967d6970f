#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace banachgeo {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

// Bad run parameters (dimension caps, sample minima, impossible grids).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed space/operator spec. Carries the offending field path.
class SpecParseError : public Error {
public:
  SpecParseError(std::string field, const std::string& what)
      : Error("bad field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

}  // namespace banachgeo
