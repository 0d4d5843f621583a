#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "loewner/types.hpp"

namespace loewner {

enum class DomainKind { UnitDisc, UnitBall, Polydisc, FullSpace };

const char* to_string(DomainKind kind);

/// Default strict-interior margin used by every containment check.
inline constexpr double kDefaultBoundaryMargin = 1e-9;

/// One of the model domains D, B^n, polydisc D^n or C^n.
class DomainSpec {
 public:
  static DomainSpec unit_disc() { return DomainSpec(DomainKind::UnitDisc, 1); }
  static DomainSpec unit_ball(std::size_t n) { return DomainSpec(DomainKind::UnitBall, n); }
  static DomainSpec polydisc(std::size_t n) { return DomainSpec(DomainKind::Polydisc, n); }
  static DomainSpec full_space(std::size_t n) { return DomainSpec(DomainKind::FullSpace, n); }

  /// Throws InvalidArgument on dimension 0 or a disc of dimension != 1.
  DomainSpec(DomainKind kind, std::size_t dimension);

  DomainKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }

  /// Disc and ball both carry the Euclidean-ball geometry.
  bool is_ball_like() const noexcept {
    return kind_ == DomainKind::UnitDisc || kind_ == DomainKind::UnitBall;
  }
  bool is_hyperbolic() const noexcept { return kind_ != DomainKind::FullSpace; }

  /// Strict interior test: ||z|| < 1 - margin (ball), max |z_j| < 1 - margin (polydisc).
  bool contains(const ComplexVector& z, double margin = kDefaultBoundaryMargin) const;

  /// Signed gap to the boundary (1 - ||z|| or 1 - max|z_j|); +inf for C^n.
  double boundary_gap(const ComplexVector& z) const;

  std::string describe() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  DomainKind kind_;
  std::size_t dimension_;
};

/// Throws PointOutsideDomain (or InvalidArgument on a dimension mismatch).
void require_interior(const DomainSpec& domain, const ComplexVector& z,
                      double margin = kDefaultBoundaryMargin, const char* what = "point");

/// Parameters of the ball automorphism phi_a, with s_a = sqrt(1 - ||a||^2) cached.
class MobiusParams {
 public:
  explicit MobiusParams(ComplexVector a);

  const ComplexVector& a() const noexcept { return a_; }
  double s_a() const noexcept { return s_a_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(a_.size()); }

  /// Orthogonal projection onto span{a}; zero when a = 0.
  ComplexVector project(const ComplexVector& z) const;

 private:
  ComplexVector a_;
  double a_norm2_;
  double s_a_;
};

/// phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>).
ComplexVector mobius_map(const MobiusParams& params, const ComplexVector& z);

/// Complex Jacobian of phi_a at z.
ComplexMatrix mobius_jacobian(const MobiusParams& params, const ComplexVector& z);

double kobayashi_metric(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& v);
double kobayashi_distance(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& w);

/// Kobayashi distance on hyperbolic domains, Euclidean distance on C^n.
double intrinsic_distance(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& w);

struct ConsistencyEntry {
  ComplexVector z;
  ComplexVector w;
  double distance = 0.0;
  double segment_length = 0.0;
  double violation = 0.0;  // distance - segment_length
};

struct ConsistencyReport {
  std::vector<ConsistencyEntry> entries;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Checks k(z, w) <= Kobayashi length of the straight segment [z, w] (Simpson rule).
ConsistencyReport metric_distance_consistency(
    const DomainSpec& domain, const std::vector<std::pair<ComplexVector, ComplexVector>>& samples,
    std::size_t nodes = 10000, double tolerance = 1e-6);

}  // namespace loewner
