#include "loewner/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "loewner/errors.hpp"

namespace loewner {

Complex DiscMap::deriv(Complex z) const {
  if (derivative) return derivative(z);
  const double h = 1e-5;
  return (-value(z + 2.0 * h) + 8.0 * value(z + h) - 8.0 * value(z - h) + value(z - 2.0 * h)) / (12.0 * h);
}

DiscMap DiscMap::identity() {
  return {[](Complex z) { return z; }, [](Complex) { return Complex(1.0); }, "identity"};
}

DiscMap DiscMap::koebe() {
  return {[](Complex z) { return z / ((1.0 - z) * (1.0 - z)); },
          [](Complex z) { return (1.0 + z) / ((1.0 - z) * (1.0 - z) * (1.0 - z)); }, "koebe"};
}

DiscMap DiscMap::half_plane() {
  return {[](Complex z) { return z / (1.0 - z); },
          [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); }, "half_plane"};
}

DiscMap DiscMap::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("polynomial needs coefficients");
  auto value = [c = coeffs](Complex z) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  auto derivative = [c = coeffs](Complex z) {
    Complex acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
  };
  return {value, derivative, "polynomial"};
}

DiscMap DiscMap::scaled(DiscMap f, Complex c) {
  DiscMap out;
  out.name = "scaled_" + f.name;
  out.value = [f, c](Complex z) { return c * f.value(z); };
  out.derivative = [f, c](Complex z) { return c * f.deriv(z); };
  return out;
}

ChainHandle::ChainHandle(HerglotzFieldSpec spec, double horizon, IntegratorConfig cfg)
    : spec_(std::move(spec)), horizon_(horizon), cfg_(cfg) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw InvalidArgument("chain horizon must be positive");
  cfg_.validate();
}

void ChainHandle::require_time(double s) const {
  if (!(s >= 0.0)) throw InvalidArgument("chain parameter must be >= 0");
  if (s > horizon_) throw HorizonExceeded("chain parameter exceeds the horizon T");
}

ComplexVector ChainHandle::eval(double s, const ComplexVector& z) const {
  require_time(s);
  return integrate_flow(spec_, z, s, horizon_, cfg_, FlowOptions{false, false}).endpoint;
}

FlowResult ChainHandle::eval_with_jacobian(double s, const ComplexVector& z) const {
  require_time(s);
  return integrate_flow(spec_, z, s, horizon_, cfg_);
}

ComplexVector ChainHandle::transition(double s, double t, const ComplexVector& z) const {
  require_time(t);
  return integrate_flow(spec_, z, s, t, cfg_, FlowOptions{false, false}).endpoint;
}

DiscMap ChainHandle::disc_map(double s) const {
  if (spec_.dimension() != 1) throw UnsupportedDomain("disc_map needs a one-dimensional chain");
  require_time(s);
  DiscMap f;
  f.name = "chain";
  f.value = [chain = *this, s](Complex z) { return chain.eval(s, ComplexVector::Constant(1, z))(0); };
  f.derivative = [chain = *this, s](Complex z) {
    return chain.eval_with_jacobian(s, ComplexVector::Constant(1, z)).jacobian(0, 0);
  };
  return f;
}

UnivalenceReport ChainHandle::check_univalence(
    double s, const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs) const {
  require_time(s);
  return loewner::check_univalence(spec_, s, horizon_, pairs, cfg_);
}

ComplexVector chain_eval(const ChainHandle& chain, double s, const ComplexVector& z) {
  return chain.eval(s, z);
}

ResidualReport check_association(const ChainHandle& chain,
                                 const std::vector<std::pair<double, double>>& pairs,
                                 const std::vector<ComplexVector>& z_set, double tol) {
  ResidualReport report;
  report.tolerance = tol;
  for (const auto& [s, t] : pairs) {
    if (!(s <= t)) throw InvalidArgument("association pairs need s <= t");
    for (const auto& z : z_set) {
      const double r = (chain.eval(s, z) - chain.eval(t, chain.transition(s, t, z))).norm();
      ++report.samples;
      if (r >= report.max_residual) {
        report.max_residual = r;
        report.worst_z = z;
        report.worst_s = s;
        report.worst_t = t;
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

ResidualReport check_lk_pde(const ChainHandle& chain, const std::vector<double>& s_grid,
                            const std::vector<ComplexVector>& z_set, double h_s, double tol) {
  if (!(h_s > 0.0)) throw InvalidArgument("h_s must be positive");
  for (const double s : s_grid) {
    if (s - h_s < 0.0 || s + h_s > chain.horizon()) {
      throw InvalidArgument("PDE grid points must satisfy h_s <= s <= T - h_s");
    }
    for (const double b : chain.spec().breakpoints()) {
      if (std::abs(s - b) < h_s) throw BreakpointTooClose("PDE grid point within h_s of a field breakpoint");
    }
  }
  ResidualReport report;
  report.tolerance = tol;
  for (const double s : s_grid) {
    for (const auto& z : z_set) {
      const ComplexVector ds = (chain.eval(s + h_s, z) - chain.eval(s - h_s, z)) / (2.0 * h_s);
      const FlowResult fs = chain.eval_with_jacobian(s, z);
      const ComplexVector rhs = fs.jacobian * evaluate_field(chain.spec(), z, s);
      const double r = (ds + rhs).norm();
      ++report.samples;
      if (r >= report.max_residual) {
        report.max_residual = r;
        report.worst_z = z;
        report.worst_s = s;
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

BoundaryTrace sample_boundary_trace(const DiscMap& f, Complex center, double radius, std::size_t nodes) {
  if (!(radius > 0.0) || !(std::abs(center) + radius < 1.0)) {
    throw InvalidArgument("trace circle must lie inside the unit disc");
  }
  if (nodes < 512) throw InvalidArgument("boundary trace needs at least 512 nodes");
  BoundaryTrace trace{center, radius, {}, {}};
  trace.values.reserve(nodes);
  trace.derivatives.reserve(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
    const Complex z = center + std::polar(radius, theta);
    trace.values.push_back(f(z));
    trace.derivatives.push_back(f.deriv(z));
  }
  return trace;
}

WindingResult rouche_membership(const BoundaryTrace& trace, Complex u0) {
  const std::size_t nodes = trace.values.size();
  if (nodes < 512 || trace.derivatives.size() != nodes) {
    throw InvalidArgument("boundary trace needs at least 512 value/derivative samples");
  }
  WindingResult out;
  out.min_distance = std::numeric_limits<double>::infinity();
  Complex acc = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
    const Complex gap = trace.values[k] - u0;
    out.min_distance = std::min(out.min_distance, std::abs(gap));
    acc += trace.derivatives[k] / gap * std::polar(trace.radius, theta);
  }
  if (out.min_distance < 1e-9) throw CurveTooClose("target lies on the traced curve");
  acc /= static_cast<double>(nodes);
  out.integral = acc.real();
  out.imag_residue = acc.imag();
  const double nearest = std::round(acc.real());
  if (std::abs(acc - Complex(nearest, 0.0)) > 0.2) {
    throw NonIntegerWinding(acc.real(), "winding integral is not near an integer; refine the trace");
  }
  out.count = static_cast<int>(nearest);
  return out;
}

WindingResult rouche_membership(const DiscMap& f, Complex center, double radius, Complex u0,
                                std::size_t nodes) {
  return rouche_membership(sample_boundary_trace(f, center, radius, nodes), u0);
}

int count_preimages(const DiscMap& f, Complex center, double radius, Complex u0, std::size_t min_nodes,
                    std::size_t max_nodes) {
  std::optional<int> previous;
  for (std::size_t nodes = std::max<std::size_t>(min_nodes, 512); nodes <= max_nodes; nodes *= 2) {
    try {
      const auto r = rouche_membership(f, center, radius, u0, nodes);
      if (previous && *previous == r.count) return r.count;
      previous = r.count;
    } catch (const NonIntegerWinding&) {
      previous.reset();
    }
  }
  throw NonIntegerWinding(std::numeric_limits<double>::quiet_NaN(),
                          "winding count did not stabilise up to max_nodes");
}

Complex newton_invert(const DiscMap& f, Complex w, Complex seed, const NewtonOptions& options,
                      std::size_t sequence_index) {
  Complex z = seed;
  if (!(std::abs(z) < 1.0)) throw InvalidArgument("Newton seed must lie in the unit disc");
  double residual = std::abs(f(z) - w);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    if (residual == 0.0) return z;
    const Complex d = f.deriv(z);
    if (d == Complex(0.0)) break;
    const Complex step = (f(z) - w) / d;
    if (std::abs(step) <= options.step_tol * (1.0 + std::abs(z))) return z;
    bool improved = false;
    for (double damping = 1.0; damping > 1e-6; damping *= 0.5) {
      const Complex candidate = z - damping * step;
      if (!(std::abs(candidate) < 1.0)) continue;
      const double r = std::abs(f(candidate) - w);
      if (r < residual) {
        z = candidate;
        residual = r;
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (residual <= options.noise_floor * (1.0 + std::abs(w))) return z;
      break;
    }
  }
  if (residual <= options.noise_floor * (1.0 + std::abs(w))) return z;
  throw NewtonDivergence(w, sequence_index, "Newton inversion failed to converge");
}

InverseConvergenceReport check_inverse_convergence(const std::vector<DiscMap>& sequence,
                                                   const DiscMap& limit,
                                                   const std::vector<Complex>& K,
                                                   const NewtonOptions& options) {
  std::vector<Complex> limit_inverse;
  limit_inverse.reserve(K.size());
  for (const Complex w : K) limit_inverse.push_back(newton_invert(limit, w, 0.0, options, 0));
  InverseConvergenceReport report;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    double sup = 0.0;
    for (std::size_t i = 0; i < K.size(); ++i) {
      const Complex z = newton_invert(sequence[k], K[i], limit_inverse[i], options, k);
      sup = std::max(sup, std::abs(z - limit_inverse[i]));
    }
    report.sup_errors.push_back(sup);
  }
  report.decayed = !report.sup_errors.empty() && report.sup_errors.back() < report.sup_errors.front() / 10.0;
  return report;
}

}  // namespace loewner
