#pragma once

// Hand-rolled generators for property tests. They use their own engine so that test
// inputs do not depend on the library's sampling code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "loewner/types.hpp"

namespace loewner::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Complex complex_in_disc(double r) {
    const double rho = r * std::sqrt(real(0.0, 1.0));
    return std::polar(rho, real(0.0, 2.0 * M_PI));
  }

  Complex complex_gaussian() {
    std::normal_distribution<double> n;
    return {n(rng_), n(rng_)};
  }

  ComplexVector gaussian(std::size_t n) {
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (auto& c : v) c = complex_gaussian();
    return v;
  }

  ComplexVector unit(std::size_t n) {
    ComplexVector v = gaussian(n);
    return v / v.norm();
  }

  /// Point of the open ball with norm drawn uniformly in [0, r).
  ComplexVector in_ball(std::size_t n, double r) { return unit(n) * real(0.0, r); }

  ComplexVector in_polydisc(std::size_t n, double r) {
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (auto& c : v) c = complex_in_disc(r);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Second-order central differences along real coordinate directions (test oracle).
inline ComplexMatrix fd_jacobian(const std::function<ComplexVector(const ComplexVector&)>& f, const ComplexVector& z,
                                 double h = 1e-6) {
  const auto n = z.size();
  ComplexMatrix J(f(z).size(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector e = ComplexVector::Zero(n);
    e(k) = h;
    J.col(k) = (f(z + e) - f(z - e)) / (2.0 * h);
  }
  return J;
}

inline double max_abs(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace loewner::testing
