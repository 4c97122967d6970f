#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "banachgeo/errors.hpp"

namespace banachgeo {

// Holder exponent p in [1, inf]. Infinity is a first-class value with max
// semantics, never a large float stand-in.
class Exponent {
public:
  Exponent() = default;

  explicit Exponent(double v) : v_(v) {
    if (std::isnan(v) || v < 1.0) {
      throw ConfigError("exponent must lie in [1, inf], got " + std::to_string(v));
    }
  }

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }
  static Exponent one() { return Exponent(1.0); }
  static Exponent two() { return Exponent(2.0); }

  double value() const { return v_; }
  bool is_infinite() const { return std::isinf(v_); }
  bool is_one() const { return v_ == 1.0; }

  // 1/p + 1/p' = 1.
  Exponent conjugate() const {
    if (v_ == 1.0) return infinity();
    if (is_infinite()) return one();
    return Exponent(v_ / (v_ - 1.0));
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    std::ostringstream os;
    os << v_;
    return os.str();
  }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

private:
  double v_ = 2.0;
};

}  // namespace banachgeo
