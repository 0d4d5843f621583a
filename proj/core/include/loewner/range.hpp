#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loewner/fields.hpp"
#include "loewner/flow.hpp"
#include "loewner/types.hpp"

namespace loewner {

struct BetaOptions {
  double t_max = 40.0;
  std::size_t levels = 12;  // grid t_k = s + (t_max - s)(2^k - 1)/(2^K - 1), k = 0..K
  double tol_beta = 1e-4;
  double monotone_slack = 1e-8;
};

struct BetaSample {
  double t;
  double kappa;  // kappa_M(phi_{s,t}(z); J(t) v)
};

/// Samples of the pushed-forward Kobayashi metric converging to beta^s_v(z).
struct BetaProbe {
  ComplexVector z;
  ComplexVector v;  // unit vector
  double s = 0.0;
  std::vector<BetaSample> values;
  double beta_estimate = 0.0;  // last value; an upper bound for the limit
  bool converged = false;
  bool monotone = true;
};

std::vector<double> beta_time_grid(double s, double t_max, std::size_t levels);

/// phi_{s,t_k}(z) and J(t_k) on the beta grid, shared by every direction at (z, s).
struct PushforwardTrajectory {
  ComplexVector z;
  double s = 0.0;
  std::vector<double> times;
  std::vector<ComplexVector> points;
  std::vector<ComplexMatrix> jacobians;
};

PushforwardTrajectory pushforward_trajectory(const HerglotzFieldSpec& spec, const ComplexVector& z,
                                             double s, const IntegratorConfig& cfg = {},
                                             const BetaOptions& options = {});

BetaProbe beta_from_trajectory(const DomainSpec& domain, const PushforwardTrajectory& trajectory,
                               const ComplexVector& v, const BetaOptions& options = {});

BetaProbe compute_beta(const HerglotzFieldSpec& spec, const ComplexVector& z, const ComplexVector& v,
                       double s, const IntegratorConfig& cfg = {}, const BetaOptions& options = {});

struct CorankOptions {
  double zero_threshold = 1e-3;
  /// Singular values within tie_band * zero_threshold of the threshold are ties.
  double tie_band = 0.1;
  std::uint64_t seed = 0;
  BetaOptions beta;
};

struct CorankResult {
  std::size_t corank = 0;
  std::vector<double> singular_values;  // sqrt of the eigenvalues of the limiting beta^2 form
  std::vector<BetaProbe> probes;
};

/// dim{v : beta^s_v(z) = 0}; throws Inconclusive on ties, unconverged probes, or when
/// random probes inside the candidate zero subspace do not stay below the threshold.
CorankResult beta_zero_corank(const HerglotzFieldSpec& spec, const ComplexVector& z, double s,
                              const std::vector<ComplexVector>& basis_probes,
                              const IntegratorConfig& cfg = {}, const CorankOptions& options = {});

enum class RangeClass { Disc, Plane, BallBiholomorphic, CylinderBundle, Inconclusive };

const char* to_string(RangeClass c);

struct RangeReport {
  DomainSpec domain = DomainSpec::unit_disc();
  std::vector<BetaProbe> probes;
  std::optional<std::size_t> zero_corank;
  std::vector<std::size_t> coranks;  // one per (base point, s), input order
  bool consistent = true;
  RangeClass classification = RangeClass::Inconclusive;
  std::string note;
  CorankOptions thresholds;
};

/// Loewner range class from the beta zero-set corank at every (base point, s).
RangeReport classify_range(const HerglotzFieldSpec& spec, const std::vector<double>& s_values,
                           const std::vector<ComplexVector>& base_points,
                           const IntegratorConfig& cfg = {}, const CorankOptions& options = {});

}  // namespace loewner
