#include "loewner/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"

namespace loewner {

LinearOperator::LinearOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw InvalidArgument("linear operator must be a non-empty square matrix");
  }
  require_finite(matrix_, "linear operator");
}

LinearOperator LinearOperator::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return LinearOperator(ComplexMatrix::Identity(k, k));
}

LinearOperator LinearOperator::scalar(std::size_t n, Complex c) {
  const auto k = static_cast<Eigen::Index>(n);
  return LinearOperator(c * ComplexMatrix::Identity(k, k));
}

double min_real_quadratic(const LinearOperator& A) {
  const ComplexMatrix herm = 0.5 * (A.matrix() + A.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> breaks, std::vector<Complex> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (values_.size() != breaks_.size() + 1) {
    throw InvalidArgument("piecewise constant needs one more value than breaks");
  }
  for (std::size_t k = 0; k < breaks_.size(); ++k) {
    if (!(breaks_[k] >= 0.0) || (k > 0 && !(breaks_[k] > breaks_[k - 1]))) {
      throw InvalidArgument("piecewise constant breaks must be nonnegative and increasing");
    }
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("piecewise constant values must be finite");
    }
  }
}

Complex PiecewiseConstant::at(double t) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

Complex PiecewiseConstant::integral(double s, double t) const {
  Complex acc = 0.0;
  double lo = s;
  for (std::size_t k = 0; k <= breaks_.size() && lo < t; ++k) {
    const double hi = k < breaks_.size() ? std::min(breaks_[k], t) : t;
    if (hi > lo) {
      acc += values_[k] * (hi - lo);
      lo = hi;
    }
  }
  return acc;
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

}  // namespace

RationalFunction::RationalFunction(std::vector<Complex> numerator, std::vector<Complex> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.empty() || den_.empty()) throw InvalidArgument("rational function needs coefficients");
  for (const auto* c : {&num_, &den_}) {
    for (const auto& v : *c) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw InvalidArgument("rational function coefficients must be finite");
      }
    }
  }
  if (std::all_of(den_.begin(), den_.end(), [](Complex c) { return c == Complex(0.0); })) {
    throw InvalidArgument("rational function denominator is identically zero");
  }
}

Complex RationalFunction::value(Complex z) const { return horner(num_, z) / horner(den_, z); }

Complex RationalFunction::derivative(Complex z) const {
  const Complex n = horner(num_, z), d = horner(den_, z);
  return (horner_derivative(num_, z) * d - n * horner_derivative(den_, z)) / (d * d);
}

std::optional<double> sampled_min_real_part(const RationalFunction& p, std::size_t per_circle) {
  double m = std::numeric_limits<double>::infinity();
  for (const double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    const std::size_t count = r == 0.0 ? 1 : per_circle;
    for (std::size_t k = 0; k < count; ++k) {
      const Complex z = std::polar(r, 2 * std::numbers::pi * static_cast<double>(k) / count);
      const Complex v = p.value(z);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
      m = std::min(m, v.real());
    }
  }
  return m;
}

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Radial: return "Radial";
    case FieldKind::DiscBerksonPorta: return "DiscBerksonPorta";
    case FieldKind::BallDiagonal: return "BallDiagonal";
    case FieldKind::Custom: return "Custom";
  }
  return "?";
}

namespace {

std::vector<double> normalized_breakpoints(std::vector<double> bps) {
  for (const double b : bps) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("breakpoints must be finite and >= 0");
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

}  // namespace

HerglotzFieldSpec::HerglotzFieldSpec(DomainSpec domain, Params params, std::vector<double> breakpoints)
    : domain_(domain), params_(std::move(params)), breakpoints_(normalized_breakpoints(std::move(breakpoints))) {}

HerglotzFieldSpec HerglotzFieldSpec::radial(DomainSpec domain, LinearOperator A,
                                            std::optional<ComplexVector> center) {
  if (A.dimension() != domain.dimension()) throw InvalidArgument("operator/domain dimension mismatch");
  if (center) {
    if (!domain.is_ball_like()) throw UnsupportedDomain("centered radial fields need a disc or ball");
    if (static_cast<std::size_t>(center->size()) != domain.dimension()) {
      throw InvalidArgument("center/domain dimension mismatch");
    }
    MobiusParams check(*center);  // throws unless ||a|| < 1
    if (center->squaredNorm() == 0.0) center.reset();
  }
  return HerglotzFieldSpec(domain, RadialParams{std::move(A), std::move(center)}, {});
}

HerglotzFieldSpec HerglotzFieldSpec::rotation(DomainSpec domain, double speed) {
  return radial(domain, LinearOperator::scalar(domain.dimension(), Complex(0.0, speed)));
}

HerglotzFieldSpec HerglotzFieldSpec::zero(DomainSpec domain) {
  return radial(domain, LinearOperator::scalar(domain.dimension(), 0.0));
}

HerglotzFieldSpec HerglotzFieldSpec::berkson_porta(Complex tau, RationalFunction p) {
  if (!(std::abs(tau) <= 1.0)) throw InvalidArgument("Berkson-Porta point must satisfy |tau| <= 1");
  const auto min_re = sampled_min_real_part(p);
  if (!min_re) throw InvalidArgument("Berkson-Porta function p has a pole in the disc");
  if (*min_re < -1e-12) throw InvalidArgument("Berkson-Porta function p must have Re p >= 0");
  return HerglotzFieldSpec(DomainSpec::unit_disc(), BerksonPortaParams{tau, std::move(p)}, {});
}

HerglotzFieldSpec HerglotzFieldSpec::ball_diagonal(std::vector<PiecewiseConstant> lambdas) {
  const std::size_t n = lambdas.size();
  if (n == 0) throw InvalidArgument("ball diagonal field needs at least one eigenvalue");
  return ball_diagonal(DomainSpec::unit_ball(n), std::move(lambdas));
}

HerglotzFieldSpec HerglotzFieldSpec::ball_diagonal(DomainSpec domain,
                                                   std::vector<PiecewiseConstant> lambdas) {
  if (lambdas.size() != domain.dimension()) throw InvalidArgument("eigenvalue count/domain mismatch");
  std::vector<double> bps;
  for (const auto& l : lambdas) bps.insert(bps.end(), l.breaks().begin(), l.breaks().end());
  return HerglotzFieldSpec(domain, BallDiagonalParams{std::move(lambdas)}, std::move(bps));
}

HerglotzFieldSpec HerglotzFieldSpec::custom(DomainSpec domain, FieldCallback field,
                                            JacobianCallback jacobian, std::vector<double> breakpoints,
                                            std::string name, bool reentrant) {
  if (!field) throw InvalidArgument("custom field needs a callback");
  return HerglotzFieldSpec(
      domain, CustomParams{std::move(field), std::move(jacobian), reentrant, std::move(name)},
      std::move(breakpoints));
}

HerglotzFieldSpec HerglotzFieldSpec::with_breakpoints(std::vector<double> extra) const {
  HerglotzFieldSpec copy = *this;
  extra.insert(extra.end(), breakpoints_.begin(), breakpoints_.end());
  copy.breakpoints_ = normalized_breakpoints(std::move(extra));
  return copy;
}

HerglotzFieldSpec HerglotzFieldSpec::with_order(RegularityOrder order) const {
  if (!(order.d >= 1.0)) throw InvalidArgument("regularity order must be >= 1");
  HerglotzFieldSpec copy = *this;
  copy.order_ = order;
  return copy;
}

namespace {

// phi_a without the interior check; the formula is analytic on a neighbourhood of the ball.
ComplexVector mobius_raw(const MobiusParams& m, const ComplexVector& z) {
  const ComplexVector p = m.project(z);
  return (m.a() - p - m.s_a() * (z - p)) / (1.0 - inner(z, m.a()));
}

ComplexVector radial_value(const RadialParams& r, const ComplexVector& z) {
  if (!r.center) return r.A.apply(z);
  const MobiusParams m(*r.center);
  const ComplexVector w = mobius_raw(m, z);
  return mobius_jacobian(m, w) * r.A.apply(w);
}

}  // namespace

ComplexVector HerglotzFieldSpec::value(const ComplexVector& z, double t) const {
  return std::visit(
      [&](const auto& p) -> ComplexVector {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RadialParams>) {
          return radial_value(p, z);
        } else if constexpr (std::is_same_v<P, BerksonPortaParams>) {
          const Complex x = z(0);
          return ComplexVector::Constant(1, (x - p.tau) * (std::conj(p.tau) * x - 1.0) * p.p.value(x));
        } else if constexpr (std::is_same_v<P, BallDiagonalParams>) {
          ComplexVector out(z.size());
          for (Eigen::Index j = 0; j < z.size(); ++j) {
            out(j) = p.lambdas[static_cast<std::size_t>(j)].at(t) * z(j);
          }
          return out;
        } else {
          ComplexVector out = p.field(z, t);
          if (out.size() != z.size()) throw CallbackFailure("custom field returned wrong dimension");
          return out;
        }
      },
      params_);
}

ComplexMatrix HerglotzFieldSpec::jacobian(const ComplexVector& z, double t) const {
  const auto n = z.size();
  return std::visit(
      [&](const auto& p) -> ComplexMatrix {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RadialParams>) {
          if (!p.center) return p.A.matrix();
          return finite_difference_jacobian([&](const ComplexVector& x) { return radial_value(p, x); }, z);
        } else if constexpr (std::is_same_v<P, BerksonPortaParams>) {
          const Complex x = z(0), tb = std::conj(p.tau);
          const Complex q = (x - p.tau) * (tb * x - 1.0);
          const Complex dq = 2.0 * tb * x - 1.0 - std::norm(p.tau);
          return ComplexMatrix::Constant(1, 1, dq * p.p.value(x) + q * p.p.derivative(x));
        } else if constexpr (std::is_same_v<P, BallDiagonalParams>) {
          ComplexMatrix out = ComplexMatrix::Zero(n, n);
          for (Eigen::Index j = 0; j < n; ++j) out(j, j) = p.lambdas[static_cast<std::size_t>(j)].at(t);
          return out;
        } else {
          if (p.jacobian) {
            ComplexMatrix out = p.jacobian(z, t);
            if (out.rows() != n || out.cols() != n) {
              throw CallbackFailure("custom jacobian returned wrong shape");
            }
            return out;
          }
          return finite_difference_jacobian([&](const ComplexVector& x) { return p.field(x, t); }, z);
        }
      },
      params_);
}

namespace {

template <typename F>
auto guarded(const HerglotzFieldSpec& spec, F&& f) {
  if (spec.kind() != FieldKind::Custom) return f();
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw CallbackFailure(std::string("custom field callback failed: ") + e.what());
  } catch (...) {
    throw CallbackFailure("custom field callback failed");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("field time must be finite and >= 0");
}

}  // namespace

ComplexVector evaluate_field(const HerglotzFieldSpec& spec, const ComplexVector& z, double t) {
  require_interior(spec.domain(), z);
  require_time(t);
  ComplexVector out = guarded(spec, [&] { return spec.value(z, t); });
  if (!is_finite(out)) throw CallbackFailure("field returned non-finite value");
  return out;
}

ComplexMatrix field_jacobian(const HerglotzFieldSpec& spec, const ComplexVector& z, double t) {
  require_interior(spec.domain(), z);
  require_time(t);
  return guarded(spec, [&] { return spec.jacobian(z, t); });
}

ComplexMatrix finite_difference_jacobian(const std::function<ComplexVector(const ComplexVector&)>& f,
                                         const ComplexVector& z, double h) {
  const auto n = z.size();
  ComplexMatrix out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector e = ComplexVector::Zero(n);
    e(k) = h;
    out.col(k) = (-f(z + 2.0 * e) + 8.0 * f(z + e) - 8.0 * f(z - e) + f(z - 2.0 * e)) / (12.0 * h);
  }
  return out;
}

double cauchy_riemann_residual(const HerglotzFieldSpec& spec, const ComplexVector& z, double t,
                               double h) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    ComplexVector ex = ComplexVector::Zero(z.size()), ey = ex;
    ex(k) = h;
    ey(k) = Complex(0.0, h);
    const ComplexVector dx = (evaluate_field(spec, z + ex, t) - evaluate_field(spec, z - ex, t)) / (2 * h);
    const ComplexVector dy = (evaluate_field(spec, z + ey, t) - evaluate_field(spec, z - ey, t)) / (2 * h);
    worst = std::max(worst, (dy - Complex(0.0, 1.0) * dx).norm());
  }
  return worst;
}

WeakBoundReport check_weak_bound(const HerglotzFieldSpec& spec, const std::vector<ComplexVector>& K,
                                 double T, const WeakBoundOptions& options) {
  if (!(T > 0.0)) throw InvalidArgument("horizon must be positive");
  if (options.time_cells == 0) throw InvalidArgument("need at least one time cell");
  std::vector<double> edges;
  for (std::size_t k = 0; k <= options.time_cells; ++k) {
    edges.push_back(T * static_cast<double>(k) / static_cast<double>(options.time_cells));
  }
  for (const double b : spec.breakpoints()) {
    if (b > 0.0 && b < T) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto sup_at = [&](double t) {
    double m = 0.0;
    for (const auto& z : K) m = std::max(m, evaluate_field(spec, z, t).norm());
    return m;
  };

  WeakBoundReport report;
  for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
    const double lo = edges[c], hi = edges[c + 1], mid = 0.5 * (lo + hi);
    const double s_lo = sup_at(lo), s_mid = sup_at(mid);
    report.times.push_back(lo);
    report.sup.push_back(s_lo);
    report.times.push_back(mid);
    report.sup.push_back(s_mid);
    report.l1 += s_mid * (hi - lo);
    report.linf = std::max({report.linf, s_lo, s_mid});
  }
  report.unbounded = !(report.linf <= options.cap);
  return report;
}

namespace {

// True when the largest two coordinate distances of a polydisc pair are nearly tied.
bool near_switching_locus(const ComplexVector& z, const ComplexVector& w, double gap) {
  if (z.size() < 2) return false;
  const DomainSpec disc = DomainSpec::unit_disc();
  std::vector<double> d;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    d.push_back(kobayashi_distance(disc, z.segment(j, 1), w.segment(j, 1)));
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d[0] - d[1] < gap;
}

}  // namespace

DissipativityReport check_dissipativity(
    const HerglotzFieldSpec& spec, const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs,
    const std::vector<double>& times, const DissipativityOptions& options) {
  const DomainSpec& domain = spec.domain();
  DissipativityReport report;
  report.tolerance = options.tol;
  const double h = options.h_fd;
  for (const auto& [z, w] : pairs) {
    require_interior(domain, z);
    require_interior(domain, w);
    if (domain.is_hyperbolic() && kobayashi_distance(domain, z, w) < 1e-9) {
      throw DegeneratePair("dissipativity pair is degenerate (k_M(z, w) < 1e-9)");
    }
    if (domain.kind() == DomainKind::Polydisc && near_switching_locus(z, w, options.switching_gap)) {
      report.skipped += times.size();
      continue;
    }
    for (const double t : times) {
      const ComplexVector gz = evaluate_field(spec, z, t), gw = evaluate_field(spec, w, t);
      const double forward = kobayashi_distance(domain, z + h * gz, w + h * gw);
      const double backward = kobayashi_distance(domain, z - h * gz, w - h * gw);
      const double derivative = (forward - backward) / (2 * h);
      ++report.samples;
      if (derivative > report.max_derivative) {
        report.max_derivative = derivative;
        report.worst_z = z;
        report.worst_w = w;
        report.worst_t = t;
      }
    }
  }
  if (report.samples == 0) report.max_derivative = 0.0;
  report.pass = report.max_derivative <= options.tol;
  return report;
}

}  // namespace loewner
