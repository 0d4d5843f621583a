#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "loewner/types.hpp"

namespace loewner {

/// Single deterministic stream from which every random probe is drawn.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  /// Uniform unit vector in C^n.
  ComplexVector unit_vector(std::size_t n);
  /// Uniform point of the closed ball of given radius in C^n.
  ComplexVector in_ball(std::size_t n, double radius);
  /// Each coordinate uniform in the closed disc of given radius.
  ComplexVector in_polydisc(std::size_t n, double radius);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Compact sample set: `count` random points of the closed ball of `radius` plus the
/// 4n extreme points +-radius e_j, +-i radius e_j.
std::vector<ComplexVector> sample_closed_ball(std::size_t n, double radius, std::size_t count,
                                              std::uint64_t seed);

/// Points on the sphere ||z|| = radius from a Halton sequence (deterministic).
std::vector<ComplexVector> halton_sphere(std::size_t n, double radius, std::size_t count,
                                         std::size_t skip = 0);

/// Concentric spheres (default radii 0.1..0.9, 0.99) with `per_sphere` Halton points each.
std::vector<ComplexVector> sphere_probes(std::size_t n, std::size_t per_sphere,
                                         const std::vector<double>& radii = {});

/// Radical inverse of `index` in the given prime base.
double radical_inverse(std::size_t index, unsigned base);

}  // namespace loewner
