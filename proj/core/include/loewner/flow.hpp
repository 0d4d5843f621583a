#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "loewner/fields.hpp"
#include "loewner/geometry.hpp"
#include "loewner/types.hpp"

namespace loewner {

enum class IntegratorMethod { RK4Fixed, RK45Adaptive };

const char* to_string(IntegratorMethod method);

struct IntegratorConfig {
  double step_h = 1e-3;  // fixed step (RK4) or initial step (RK45)
  IntegratorMethod method = IntegratorMethod::RK45Adaptive;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double boundary_margin = kDefaultBoundaryMargin;
  std::size_t max_steps = 50'000'000;

  /// Throws InvalidArgument on non-positive step or tolerances.
  void validate() const;
};

struct TrajectoryPoint {
  double t;
  ComplexVector z;
};

/// phi_{s,t}(z) and its differential, with integration diagnostics.
struct FlowResult {
  ComplexVector endpoint;
  ComplexMatrix jacobian;
  double s = 0.0;
  double t = 0.0;
  std::size_t steps_taken = 0;
  double max_local_error_estimate = 0.0;  // 0 for fixed-step RK4
  std::vector<TrajectoryPoint> trajectory;
};

struct FlowOptions {
  bool with_jacobian = true;
  bool record_trajectory = false;
};

/// Integrates d/dt phi = G(phi, t), phi(s) = z, together with dJ/dt = (d_z G) J, J(s) = I.
/// No step crosses a field breakpoint; throws TrajectoryEscaped when the solution comes
/// within cfg.boundary_margin of the boundary.
FlowResult integrate_flow(const HerglotzFieldSpec& spec, const ComplexVector& z, double s, double t,
                          const IntegratorConfig& cfg = {}, const FlowOptions& options = {});

/// One integration from s through the sorted `stops` (each >= s); returns the state at each.
std::vector<FlowResult> integrate_flow_stops(const HerglotzFieldSpec& spec, const ComplexVector& z,
                                             double s, const std::vector<double>& stops,
                                             const IntegratorConfig& cfg = {},
                                             const FlowOptions& options = {});

/// CSV: t, Re z_1..Re z_n, Im z_1..Im z_n.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory);

/// (s, t, z) -> phi_{s,t}(z) for any two-parameter family of maps.
using FamilyEvaluator = std::function<ComplexVector(double, double, const ComplexVector&)>;

FamilyEvaluator flow_family(HerglotzFieldSpec spec, IntegratorConfig cfg = {});

struct TimeTriple {
  double s;
  double u;
  double t;
};

struct EvolutionReport {
  double max_residual = 0.0;
  ComplexVector worst_z;
  TimeTriple worst_triple{0, 0, 0};
  std::size_t samples = 0;
  double tolerance = 0.0;
  bool pass = true;
};

/// max ||phi_{u,t}(phi_{s,u}(z)) - phi_{s,t}(z)|| over z_set x triples.
EvolutionReport check_evolution_property(const FamilyEvaluator& family,
                                         const std::vector<ComplexVector>& z_set,
                                         const std::vector<TimeTriple>& triples, double tol = 1e-7);
EvolutionReport check_evolution_property(const HerglotzFieldSpec& spec,
                                         const std::vector<ComplexVector>& z_set,
                                         const std::vector<TimeTriple>& triples,
                                         const IntegratorConfig& cfg = {}, double tol = 1e-7);

struct UnivalenceViolation {
  ComplexVector z;
  ComplexVector w;
  double image_gap;
};

struct UnivalenceReport {
  std::vector<UnivalenceViolation> violations;
  double min_image_gap = 0.0;
  double min_abs_det = 0.0;
  double collision_tol = 0.0;
  bool pass = true;
};

UnivalenceReport check_univalence(const HerglotzFieldSpec& spec, double s, double t,
                                  const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs,
                                  const IntegratorConfig& cfg = {}, double collision_tol = 1e-9);

struct RegularityCell {
  double u;
  double t;
  double density;  // sup over z in K, grid s <= u of d(phi_{s,t}(z), phi_{s,u}(z)) / (t - u)
};

struct RegularityTable {
  std::vector<RegularityCell> cells;
  double linf = 0.0;
};

/// Empirical density of the L^d bound on the cells of `time_grid` (sorted, spanning [0, T]).
RegularityTable estimate_regularity(const HerglotzFieldSpec& spec, const std::vector<ComplexVector>& K,
                                    double T, const std::vector<double>& time_grid,
                                    const IntegratorConfig& cfg = {});

}  // namespace loewner
