#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "loewner/fields.hpp"
#include "loewner/flow.hpp"
#include "loewner/maps.hpp"
#include "loewner/types.hpp"

namespace loewner {

/// Finite-horizon Loewner chain f_s := phi_{s,T} on [0, T]; f_s = f_t o phi_{s,t} holds exactly.
class ChainHandle {
 public:
  ChainHandle(HerglotzFieldSpec spec, double horizon, IntegratorConfig cfg = {});

  const HerglotzFieldSpec& spec() const noexcept { return spec_; }
  double horizon() const noexcept { return horizon_; }
  const IntegratorConfig& config() const noexcept { return cfg_; }

  /// f_s(z); throws HorizonExceeded for s > T.
  ComplexVector eval(double s, const ComplexVector& z) const;
  /// f_s(z) together with (df_s)_z.
  FlowResult eval_with_jacobian(double s, const ComplexVector& z) const;
  /// phi_{s,t}(z) of the underlying evolution family.
  ComplexVector transition(double s, double t, const ComplexVector& z) const;

  /// f_s as a disc map (one-dimensional chains only).
  DiscMap disc_map(double s) const;

  /// Delegates to check_univalence on phi_{s,T}.
  UnivalenceReport check_univalence(double s,
                                    const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs) const;

 private:
  void require_time(double s) const;

  HerglotzFieldSpec spec_;
  double horizon_;
  IntegratorConfig cfg_;
};

ComplexVector chain_eval(const ChainHandle& chain, double s, const ComplexVector& z);

struct ResidualReport {
  double max_residual = 0.0;
  ComplexVector worst_z;
  double worst_s = 0.0;
  double worst_t = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  bool pass = true;
};

/// max ||f_s(z) - f_t(phi_{s,t}(z))|| over pairs (s, t) with s <= t <= T and z in z_set.
ResidualReport check_association(const ChainHandle& chain,
                                 const std::vector<std::pair<double, double>>& pairs,
                                 const std::vector<ComplexVector>& z_set, double tol = 1e-7);

/// max ||d f_s/ds (z) + (df_s)_z G(z, s)||, d/ds by central differences with step h_s.
/// Throws BreakpointTooClose when an s is within h_s of a field breakpoint.
ResidualReport check_lk_pde(const ChainHandle& chain, const std::vector<double>& s_grid,
                            const std::vector<ComplexVector>& z_set, double h_s = 1e-4,
                            double tol = 1e-5);

/// Samples of f and f' on the circle |z - center| = radius (nodes equally spaced).
struct BoundaryTrace {
  Complex center;
  double radius = 0.0;
  std::vector<Complex> values;
  std::vector<Complex> derivatives;
};

BoundaryTrace sample_boundary_trace(const DiscMap& f, Complex center, double radius,
                                    std::size_t nodes = 512);

struct WindingResult {
  int count = 0;              // zeros of f - u0 inside the circle, with multiplicity
  double integral = 0.0;      // real part of the trapezoid value
  double imag_residue = 0.0;  // imaginary part (should vanish)
  double min_distance = 0.0;  // min |f - u0| on the trace
};

/// Argument-principle count (1/2 pi i) \oint f'/(f - u0) dz by the trapezoid rule.
/// Throws CurveTooClose or NonIntegerWinding (further than 0.2 from an integer).
WindingResult rouche_membership(const BoundaryTrace& trace, Complex u0);
WindingResult rouche_membership(const DiscMap& f, Complex center, double radius, Complex u0,
                                std::size_t nodes = 512);

/// Doubles the node count from min_nodes until two successive counts agree.
int count_preimages(const DiscMap& f, Complex center, double radius, Complex u0,
                    std::size_t min_nodes = 512, std::size_t max_nodes = std::size_t{1} << 17);

struct NewtonOptions {
  std::size_t max_iterations = 100;
  double step_tol = 1e-14;
  /// Residual accepted when damping can no longer reduce it (noisy, flow-backed maps).
  double noise_floor = 1e-10;
};

/// Damped Newton solve of f(z) = w inside the disc; throws NewtonDivergence.
Complex newton_invert(const DiscMap& f, Complex w, Complex seed, const NewtonOptions& options = {},
                      std::size_t sequence_index = 0);

struct InverseConvergenceReport {
  std::vector<double> sup_errors;  // sup_K |f_k^{-1}(w) - f^{-1}(w)|, one per map in the sequence
  bool decayed = false;            // last < first / 10
};

InverseConvergenceReport check_inverse_convergence(const std::vector<DiscMap>& sequence,
                                                   const DiscMap& limit,
                                                   const std::vector<Complex>& K,
                                                   const NewtonOptions& options = {});

}  // namespace loewner
