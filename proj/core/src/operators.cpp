#include "loewner/operators.hpp"

#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"
#include "loewner/geometry.hpp"

namespace loewner {

namespace {

constexpr double kMinDerivative = 1e-12;
constexpr double kBallSlack = 1e-9;

void require_lift_point(std::size_t n, const ComplexVector& z) {
  if (static_cast<std::size_t>(z.size()) != n) throw InvalidArgument("point dimension does not match the lift");
  require_interior(DomainSpec::unit_ball(n), z);
}

ComplexVector assemble(Complex first, const ComplexVector& z, Complex factor) {
  ComplexVector out(z.size());
  out(0) = first;
  out.tail(z.size() - 1) = z.tail(z.size() - 1) * factor;
  return out;
}

Complex disc_derivative(const HerglotzFieldSpec& g, Complex z, double t) {
  return field_jacobian(g, make_vector({z}), t)(0, 0);
}

}  // namespace

LiftedChainSpec::LiftedChainSpec(ChainHandle disc_chain, std::size_t target_dimension)
    : chain_(std::move(disc_chain)), n_(target_dimension) {
  if (chain_.spec().domain().kind() != DomainKind::UnitDisc) {
    throw UnsupportedDomain("Roper-Suffridge lift needs a chain on the unit disc");
  }
  if (n_ < 2) throw InvalidArgument("target dimension must be at least 2");
}

Complex LiftedChainSpec::sqrt_branch_anchor(double t) const {
  const Complex d = chain_.eval_with_jacobian(t, make_vector({0.0})).jacobian(0, 0);
  if (std::abs(d) < kMinDerivative) throw BranchContinuationFailure("f_t'(0) vanishes");
  return std::sqrt(d);
}

Complex continue_sqrt(const std::function<Complex(Complex)>& d, Complex z1, Complex anchor) {
  if (z1 == Complex(0.0)) return anchor;
  for (int steps = 4; steps <= 256; steps *= 2) {
    Complex prev = anchor;
    bool resolved = true;
    for (int k = 1; k <= steps; ++k) {
      const Complex dk = d(z1 * (static_cast<double>(k) / steps));
      if (!std::isfinite(dk.real()) || !std::isfinite(dk.imag()) || std::abs(dk) < kMinDerivative) {
        throw BranchContinuationFailure("derivative vanishes on the continuation path");
      }
      Complex root = std::sqrt(dk);
      if (std::abs(root - prev) > std::abs(root + prev)) root = -root;
      // Consecutive roots must be close in angle for the choice to be unambiguous.
      if (std::abs(std::arg(root / prev)) > std::numbers::pi / 8) {
        resolved = false;
        break;
      }
      prev = root;
    }
    if (resolved) return prev;
  }
  throw BranchContinuationFailure("square-root branch not resolved with 256 continuation steps");
}

ComplexVector roper_suffridge_eval(const LiftedChainSpec& lift, double t, const ComplexVector& z) {
  require_lift_point(lift.target_dimension(), z);
  const ChainHandle& chain = lift.disc_chain();
  const Complex z1 = z(0);
  const FlowResult at_z1 = chain.eval_with_jacobian(t, make_vector({z1}));
  const Complex anchor = lift.sqrt_branch_anchor(t);
  auto d = [&](Complex w) {
    if (w == z1) return at_z1.jacobian(0, 0);
    return chain.eval_with_jacobian(t, make_vector({w})).jacobian(0, 0);
  };
  const Complex root = continue_sqrt(d, z1, anchor);
  return assemble(at_z1.endpoint(0), z, std::exp(t / 2.0) * root);
}

ComplexVector roper_suffridge_extend(const DiscMap& f, const ComplexVector& z) {
  if (z.size() < 2) throw InvalidArgument("Roper-Suffridge extension needs n >= 2");
  require_interior(DomainSpec::unit_ball(static_cast<std::size_t>(z.size())), z);
  const Complex d0 = f.deriv(0.0);
  if (std::abs(d0) < kMinDerivative) throw BranchContinuationFailure("f'(0) vanishes");
  const Complex root = continue_sqrt([&](Complex w) { return f.deriv(w); }, z(0), std::sqrt(d0));
  return assemble(f(z(0)), z, root);
}

ComplexMatrix roper_suffridge_jacobian(const DiscMap& f, const ComplexVector& z) {
  const ComplexVector fz = roper_suffridge_extend(f, z);
  const auto n = z.size();
  const Complex z1 = z(0);
  const Complex d1 = f.deriv(z1);
  const double h = 1e-5;
  const Complex d2 = (-f.deriv(z1 + 2.0 * h) + 8.0 * f.deriv(z1 + h) - 8.0 * f.deriv(z1 - h) +
                      f.deriv(z1 - 2.0 * h)) / (12.0 * h);
  // Recover the continued root from the assembled value when z~ != 0.
  Complex root = std::sqrt(d1);
  for (Eigen::Index k = 1; k < n; ++k) {
    if (std::abs(z(k)) > 1e-12) {
      root = fz(k) / z(k);
      break;
    }
  }
  if (z.tail(n - 1).norm() <= 1e-12) {
    root = continue_sqrt([&](Complex w) { return f.deriv(w); }, z1, std::sqrt(f.deriv(0.0)));
  }
  ComplexMatrix J = ComplexMatrix::Zero(n, n);
  J(0, 0) = d1;
  for (Eigen::Index k = 1; k < n; ++k) {
    J(k, 0) = z(k) * d2 / (2.0 * root);
    J(k, k) = root;
  }
  return J;
}

ComplexVector lifted_evolution_eval(const LiftedChainSpec& lift, double s, double t, const ComplexVector& z) {
  require_lift_point(lift.target_dimension(), z);
  const double T = lift.horizon();
  if (!(s >= 0.0) || !(s <= t)) throw InvalidArgument("lifted evolution needs 0 <= s <= t");
  if (t > T) throw HorizonExceeded("lifted evolution time exceeds the horizon");
  if (s == t) return z;
  const HerglotzFieldSpec& g = lift.disc_chain().spec();
  const IntegratorConfig& cfg = lift.disc_chain().config();

  // Root of phi_{s,u}'(0) followed in u by unwrapping its argument on a refined grid.
  Complex anchor;
  for (std::size_t stops = 16;; stops *= 2) {
    std::vector<double> grid;
    for (std::size_t k = 1; k <= stops; ++k) grid.push_back(s + (t - s) * static_cast<double>(k) / stops);
    grid.back() = t;
    const auto path = integrate_flow_stops(g, make_vector({0.0}), s, grid, cfg);
    Complex prev = 1.0;
    double theta = 0.0;
    bool resolved = true;
    for (const auto& r : path) {
      const Complex d = r.jacobian(0, 0);
      if (std::abs(d) < kMinDerivative) throw BranchContinuationFailure("phi_{s,t}'(0) vanishes");
      const double step = std::arg(d / prev);
      if (std::abs(step) > std::numbers::pi / 4) {
        resolved = false;
        break;
      }
      theta += step;
      prev = d;
    }
    if (resolved) {
      anchor = std::sqrt(std::abs(prev)) * std::polar(1.0, theta / 2.0);
      break;
    }
    if (stops >= 4096) throw BranchContinuationFailure("argument of phi_{s,t}'(0) not resolved in time");
  }

  const Complex z1 = z(0);
  const FlowResult at_z1 = integrate_flow(g, make_vector({z1}), s, t, cfg);
  auto d = [&](Complex w) {
    if (w == z1) return at_z1.jacobian(0, 0);
    return integrate_flow(g, make_vector({w}), s, t, cfg).jacobian(0, 0);
  };
  const Complex root = continue_sqrt(d, z1, anchor);
  ComplexVector out = assemble(at_z1.endpoint(0), z, std::exp((s - t) / 2.0) * root);
  if (!(out.norm() < 1.0 + kBallSlack)) {
    throw SchwarzPickViolation("lifted evolution left the ball: norm " + std::to_string(out.norm()));
  }
  return out;
}

ComplexVector lifted_herglotz_eval(const HerglotzFieldSpec& g, const ComplexVector& z, double t) {
  if (g.domain().kind() != DomainKind::UnitDisc) throw UnsupportedDomain("lifted field needs a disc field");
  if (z.size() < 2) throw InvalidArgument("lifted field needs n >= 2");
  require_interior(DomainSpec::unit_ball(static_cast<std::size_t>(z.size())), z);
  const ComplexVector z1 = make_vector({z(0)});
  const Complex gz = evaluate_field(g, z1, t)(0);
  const Complex dg = field_jacobian(g, z1, t)(0, 0);
  return assemble(gz, z, 0.5 * (-1.0 + dg));
}

HerglotzFieldSpec lifted_herglotz_spec(const HerglotzFieldSpec& g, std::size_t n) {
  if (g.domain().kind() != DomainKind::UnitDisc) throw UnsupportedDomain("lifted field needs a disc field");
  if (n < 2) throw InvalidArgument("lifted field needs n >= 2");
  auto field = [g](const ComplexVector& z, double t) { return lifted_herglotz_eval(g, z, t); };
  auto jacobian = [g](const ComplexVector& z, double t) {
    const auto m = z.size();
    const Complex z1 = z(0);
    const Complex dg = disc_derivative(g, z1, t);
    const double h = 1e-5;
    const Complex d2g = (-disc_derivative(g, z1 + 2.0 * h, t) + 8.0 * disc_derivative(g, z1 + h, t) -
                         8.0 * disc_derivative(g, z1 - h, t) + disc_derivative(g, z1 - 2.0 * h, t)) /
                        (12.0 * h);
    ComplexMatrix J = ComplexMatrix::Zero(m, m);
    J(0, 0) = dg;
    for (Eigen::Index k = 1; k < m; ++k) {
      J(k, 0) = 0.5 * z(k) * d2g;
      J(k, k) = 0.5 * (-1.0 + dg);
    }
    return J;
  };
  return HerglotzFieldSpec::custom(DomainSpec::unit_ball(n), field, jacobian, g.breakpoints(),
                                   "lifted_" + std::string(to_string(g.kind())));
}

ArgHypothesisReport check_arg_hypotheses(const LiftedChainSpec& lift, const std::vector<double>& t_grid) {
  ArgHypothesisReport report;
  const ChainHandle& chain = lift.disc_chain();
  const double limit = std::numbers::pi / 2;
  std::vector<Complex> d0;
  for (const double t : t_grid) {
    const Complex d = chain.eval_with_jacobian(t, make_vector({0.0})).jacobian(0, 0);
    d0.push_back(d);
    const double a = std::abs(std::arg(d));
    report.max_anchor_arg = std::max(report.max_anchor_arg, a);
    ++report.samples;
    if (!(a < limit)) {
      report.holds = false;
      report.warnings.push_back("|arg f_t'(0)| >= pi/2 at t = " + std::to_string(t));
    }
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      const double s = t_grid[i];
      const double t = t_grid[j];
      if (!(s < t)) continue;
      // f_t^{-1} o f_s = phi_{s,t} for a chain.
      const ComplexVector w = chain.transition(s, t, make_vector({0.0}));
      const Complex dt = chain.eval_with_jacobian(t, w).jacobian(0, 0);
      const double a = std::abs(std::arg(d0[i] / dt));
      report.max_ratio_arg = std::max(report.max_ratio_arg, a);
      ++report.samples;
      if (!(a < limit)) {
        report.holds = false;
        report.warnings.push_back("|arg(f_s'(0) / f_t'(phi_{s,t}(0)))| >= pi/2 at s = " + std::to_string(s) +
                                  ", t = " + std::to_string(t));
      }
    }
  }
  return report;
}

NormalizedFamily normalize_to_origin(const HerglotzFieldSpec& spec, double horizon, const IntegratorConfig& cfg) {
  if (!spec.domain().is_ball_like()) throw UnsupportedDomain("normalization needs the disc or the ball");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be positive");
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(spec.dimension());
  NormalizedFamily out;
  out.horizon = horizon;
  out.center = [spec, cfg, n, horizon](double t) -> ComplexVector {
    if (t > horizon) throw HorizonExceeded("normalization time exceeds the horizon");
    return integrate_flow(spec, ComplexVector::Zero(n), 0.0, t, cfg, FlowOptions{false, false}).endpoint;
  };
  out.family = [spec, cfg, horizon, center = out.center](double s, double t, const ComplexVector& z) {
    if (!(s >= 0.0) || !(s <= t)) throw InvalidArgument("normalized family needs 0 <= s <= t");
    if (t > horizon) throw HorizonExceeded("normalization time exceeds the horizon");
    if (s == t) return ComplexVector(z);
    const MobiusParams as(center(s));
    const MobiusParams at(center(t));
    const ComplexVector w = mobius_map(as, z);
    if ((mobius_map(as, w) - z).norm() > 1e-10 * (1.0 + z.norm())) {
      throw InvalidArgument("Mobius involution check failed");
    }
    const ComplexVector psi = integrate_flow(spec, w, s, t, cfg, FlowOptions{false, false}).endpoint;
    return mobius_map(at, psi);
  };
  return out;
}

}  // namespace loewner
