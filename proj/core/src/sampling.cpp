#include "loewner/sampling.hpp"

#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"

namespace loewner {

double SampleStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SampleStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

ComplexVector SampleStream::unit_vector(std::size_t n) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  do {
    for (auto& c : v) c = Complex(normal(), normal());
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

ComplexVector SampleStream::in_ball(std::size_t n, double radius) {
  // Radius law r^(2n) uniform on [0,1] for the real dimension 2n.
  const double r = radius * std::pow(uniform(), 1.0 / (2.0 * static_cast<double>(n)));
  return r * unit_vector(n);
}

ComplexVector SampleStream::in_polydisc(std::size_t n, double radius) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (auto& c : v) c = std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2 * std::numbers::pi));
  return v;
}

std::vector<ComplexVector> sample_closed_ball(std::size_t n, double radius, std::size_t count,
                                              std::uint64_t seed) {
  SampleStream stream(seed);
  std::vector<ComplexVector> out;
  out.reserve(count + 4 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const Complex unit : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
      ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
      e(static_cast<Eigen::Index>(j)) = radius * unit;
      out.push_back(std::move(e));
    }
  }
  for (std::size_t k = 0; k < count; ++k) out.push_back(stream.in_ball(n, radius));
  return out;
}

double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

namespace {
constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Inverse of the standard normal CDF (Acklam's rational approximation refined by one
// Halley step); maps Halton points to Gaussian coordinates.
double inverse_normal(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01, -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  const double lo = 0.02425;
  double x;
  if (p < lo) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p > 1 - lo) {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}
}  // namespace

std::vector<ComplexVector> halton_sphere(std::size_t n, double radius, std::size_t count,
                                         std::size_t skip) {
  if (2 * n > std::size(kPrimes)) throw InvalidArgument("halton_sphere supports n <= 6");
  std::vector<ComplexVector> out;
  out.reserve(count);
  const auto dim = static_cast<Eigen::Index>(n);
  if (n == 1) {
    // Equally spaced nodes on the circle, offset so the real axis (theta = 0) is included.
    for (std::size_t k = 0; k < count; ++k) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.push_back(ComplexVector::Constant(1, std::polar(radius, theta)));
    }
    return out;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t index = k + skip + 1;
    ComplexVector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = inverse_normal(radical_inverse(index, kPrimes[2 * j]));
      const double im = inverse_normal(radical_inverse(index, kPrimes[2 * j + 1]));
      v(j) = Complex(re, im);
    }
    out.push_back(radius * v / v.norm());
  }
  return out;
}

std::vector<ComplexVector> sphere_probes(std::size_t n, std::size_t per_sphere,
                                         const std::vector<double>& radii) {
  std::vector<double> rs = radii;
  if (rs.empty()) rs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  std::vector<ComplexVector> out;
  out.reserve(rs.size() * per_sphere);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    auto shell = halton_sphere(n, rs[i], per_sphere, i * per_sphere);
    for (auto& p : shell) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace loewner
