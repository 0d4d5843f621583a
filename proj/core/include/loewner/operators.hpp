#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "loewner/chains.hpp"
#include "loewner/fields.hpp"
#include "loewner/flow.hpp"
#include "loewner/maps.hpp"
#include "loewner/types.hpp"

namespace loewner {

/// Roper-Suffridge lift of a disc chain (f_t) to the ball B^n.
class LiftedChainSpec {
 public:
  LiftedChainSpec(ChainHandle disc_chain, std::size_t target_dimension);

  const ChainHandle& disc_chain() const noexcept { return chain_; }
  std::size_t target_dimension() const noexcept { return n_; }
  double horizon() const noexcept { return chain_.horizon(); }

  /// Principal sqrt(f_t'(0)); the continuation in roper_suffridge_eval starts here.
  Complex sqrt_branch_anchor(double t) const;

 private:
  ChainHandle chain_;
  std::size_t n_;
};

/// sqrt(d(z1)) continued along the segment [0, z1] starting from `anchor` (a root of d(0)).
/// Refines from 4 up to 256 steps; throws BranchContinuationFailure when |d| < 1e-12 on the path
/// or the branch cannot be resolved.
Complex continue_sqrt(const std::function<Complex(Complex)>& d, Complex z1, Complex anchor);

/// F_t(z) = (f_t(z1), z~ e^{t/2} sqrt(f_t'(z1))).
ComplexVector roper_suffridge_eval(const LiftedChainSpec& lift, double t, const ComplexVector& z);

/// Phi_n(f)(z) = (f(z1), z~ sqrt(f'(z1))), principal branch at z1 = 0.
ComplexVector roper_suffridge_extend(const DiscMap& f, const ComplexVector& z);

/// d Phi_n(f) at z (analytic in f, f', f'').
ComplexMatrix roper_suffridge_jacobian(const DiscMap& f, const ComplexVector& z);

/// Phi_{s,t}(z) = (phi_{s,t}(z1), z~ e^{(s-t)/2} sqrt(phi_{s,t}'(z1))). The root at z1 = 0 follows
/// phi_{s,u}'(0) continuously in u from 1 at u = s. Throws SchwarzPickViolation if the result
/// leaves the closed ball by more than 1e-9.
ComplexVector lifted_evolution_eval(const LiftedChainSpec& lift, double s, double t,
                                    const ComplexVector& z);

/// G(z, t) = (g(z1, t), z~/2 (-1 + g'(z1, t))).
ComplexVector lifted_herglotz_eval(const HerglotzFieldSpec& g, const ComplexVector& z, double t);

/// The lifted field as a Custom spec on B^n with an analytic jacobian in z~.
HerglotzFieldSpec lifted_herglotz_spec(const HerglotzFieldSpec& g, std::size_t n);

struct ArgHypothesisReport {
  std::size_t samples = 0;
  double max_anchor_arg = 0.0;  // max |arg f_t'(0)|
  double max_ratio_arg = 0.0;   // max |arg(f_s'(0) / f_t'(phi_{s,t}(0)))|
  bool holds = true;
  std::vector<std::string> warnings;
};

/// Samples both argument hypotheses on `t_grid` (and all pairs s < t from it). Never throws on
/// violation; the result only carries warnings.
ArgHypothesisReport check_arg_hypotheses(const LiftedChainSpec& lift, const std::vector<double>& t_grid);

/// phi_{s,t} = phi_{a(t)} o psi_{s,t} o phi_{a(s)} with a(t) = psi_{0,t}(0), so phi_{s,t}(0) = 0.
struct NormalizedFamily {
  FamilyEvaluator family;
  std::function<ComplexVector(double)> center;  // a(t)
  double horizon = 0.0;
};

NormalizedFamily normalize_to_origin(const HerglotzFieldSpec& spec, double horizon,
                                     const IntegratorConfig& cfg = {});

}  // namespace loewner
