#pragma once

#include <functional>
#include <string>
#include <vector>

#include "loewner/types.hpp"

namespace loewner {

/// Holomorphic map on the unit disc with its derivative.
struct DiscMap {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> derivative;  // empty => central differences
  std::string name = "map";

  Complex operator()(Complex z) const { return value(z); }
  Complex deriv(Complex z) const;

  static DiscMap identity();
  /// z / (1 - z)^2
  static DiscMap koebe();
  /// z / (1 - z), onto Re w > -1/2
  static DiscMap half_plane();
  /// sum c_k z^k, ascending powers
  static DiscMap polynomial(std::vector<Complex> coeffs);
  /// c f(z)
  static DiscMap scaled(DiscMap f, Complex c);
};

}  // namespace loewner
