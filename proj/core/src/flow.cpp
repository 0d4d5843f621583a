#include "loewner/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "loewner/errors.hpp"

namespace loewner {

const char* to_string(IntegratorMethod method) {
  return method == IntegratorMethod::RK4Fixed ? "RK4Fixed" : "RK45Adaptive";
}

void IntegratorConfig::validate() const {
  if (!(step_h > 0.0) || !(abs_tol > 0.0) || !(rel_tol > 0.0) || !(boundary_margin >= 0.0)) {
    throw InvalidArgument("integrator step and tolerances must be positive");
  }
  if (max_steps == 0) throw InvalidArgument("integrator max_steps must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kBStar[7] = {5179.0 / 57600, 0.0,          7571.0 / 16695, 393.0 / 640,
                              -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

enum class StageStatus { Ok, OutsideDomain };

// Packs z (n entries) and, optionally, the Jacobian (n*n entries, column-major) into one
// complex state; RK arithmetic on it is the same as on the real 2n(+2n^2) system.
class FlowSystem {
 public:
  FlowSystem(const HerglotzFieldSpec& spec, const IntegratorConfig& cfg, bool with_jacobian)
      : spec_(spec), cfg_(cfg), n_(static_cast<Eigen::Index>(spec.dimension())), jac_(with_jacobian) {}

  Eigen::Index size() const { return jac_ ? n_ + n_ * n_ : n_; }
  Eigen::Index n() const { return n_; }
  bool with_jacobian() const { return jac_; }

  bool inside(const Eigen::VectorXcd& y) const {
    return spec_.domain().contains(y.head(n_), cfg_.boundary_margin);
  }

  // Time is clamped into [lo, hi) so the stage at the end of a segment sees the left limit.
  StageStatus rhs(double t, double lo, double hi, const Eigen::VectorXcd& y, Eigen::VectorXcd& out) const {
    if (!inside(y)) return StageStatus::OutsideDomain;
    const double te = std::clamp(t, lo, hi > lo ? std::nextafter(hi, lo) : lo);
    const ComplexVector z = y.head(n_);
    out.resize(size());
    try {
      out.head(n_) = spec_.value(z, te);
      if (jac_) {
        const ComplexMatrix dg = spec_.jacobian(z, te);
        const Eigen::Map<const ComplexMatrix> J(y.data() + n_, n_, n_);
        Eigen::Map<ComplexMatrix>(out.data() + n_, n_, n_) = dg * J;
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw CallbackFailure(std::string("field callback failed: ") + e.what());
    }
    if (!is_finite(out)) throw CallbackFailure("field returned non-finite value during integration");
    return StageStatus::Ok;
  }

 private:
  const HerglotzFieldSpec& spec_;
  const IntegratorConfig& cfg_;
  Eigen::Index n_;
  bool jac_;
};

double error_norm(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0, const Eigen::VectorXcd& y1,
                  double abs_tol, double rel_tol) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sre = abs_tol + rel_tol * std::max(std::abs(y0(i).real()), std::abs(y1(i).real()));
    const double sim = abs_tol + rel_tol * std::max(std::abs(y0(i).imag()), std::abs(y1(i).imag()));
    m = std::max({m, std::abs(err(i).real()) / sre, std::abs(err(i).imag()) / sim});
  }
  return m;
}

struct Integration {
  Eigen::VectorXcd y;
  double t;
  std::size_t steps = 0;
  double max_err = 0.0;
  std::vector<TrajectoryPoint>* trajectory = nullptr;
  double h_adaptive;
};

void record(Integration& st, const FlowSystem& sys) {
  if (st.trajectory) st.trajectory->push_back({st.t, st.y.head(sys.n())});
}

// One classical RK4 step; false when a stage leaves the domain.
bool rk4_step(const FlowSystem& sys, double t, double h, double lo, double hi, const Eigen::VectorXcd& y,
              Eigen::VectorXcd& out) {
  Eigen::VectorXcd k1, k2, k3, k4;
  if (sys.rhs(t, lo, hi, y, k1) != StageStatus::Ok) return false;
  if (sys.rhs(t + 0.5 * h, lo, hi, y + 0.5 * h * k1, k2) != StageStatus::Ok) return false;
  if (sys.rhs(t + 0.5 * h, lo, hi, y + 0.5 * h * k2, k3) != StageStatus::Ok) return false;
  if (sys.rhs(t + h, lo, hi, y + h * k3, k4) != StageStatus::Ok) return false;
  out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return sys.inside(out);
}

void rk4_substep(const FlowSystem& sys, Integration& st, double h, double lo, double hi, int depth,
                 const IntegratorConfig& cfg) {
  Eigen::VectorXcd next;
  if (rk4_step(sys, st.t, h, lo, hi, st.y, next)) {
    st.y = std::move(next);
    st.t += h;
    if (++st.steps > cfg.max_steps) throw StepFailure("RK4 exceeded max_steps");
    record(st, sys);
    return;
  }
  if (depth >= 40) {
    throw TrajectoryEscaped(st.t, "trajectory left the domain near t = " + std::to_string(st.t));
  }
  rk4_substep(sys, st, 0.5 * h, lo, hi, depth + 1, cfg);
  rk4_substep(sys, st, 0.5 * h, lo, hi, depth + 1, cfg);
}

void rk4_segment(const FlowSystem& sys, Integration& st, double hi, const IntegratorConfig& cfg) {
  const double lo = st.t, len = hi - lo;
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(len / cfg.step_h - 1e-9)));
  const double h = len / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double end = k + 1 == m ? hi : lo + static_cast<double>(k + 1) * h;
    rk4_substep(sys, st, end - st.t, lo, hi, 0, cfg);
    st.t = end;
  }
}

void rk45_segment(const FlowSystem& sys, Integration& st, double hi, const IntegratorConfig& cfg) {
  const double lo = st.t;
  std::array<Eigen::VectorXcd, 7> k;
  Eigen::VectorXcd stage, y5, err;
  while (st.t < hi) {
    const double remaining = hi - st.t;
    double h = std::min(st.h_adaptive, remaining);
    const bool last = h >= remaining * (1.0 - 1e-12);
    if (last) h = remaining;
    const double h_min = 1e-14 * std::max(1.0, std::abs(st.t));

    bool outside = false;
    for (int i = 0; i < 7 && !outside; ++i) {
      stage = st.y;
      for (int j = 0; j < i; ++j) {
        if (kA[i][j] != 0.0) stage += (h * kA[i][j]) * k[static_cast<std::size_t>(j)];
      }
      if (i == 6) y5 = stage;
      outside = sys.rhs(st.t + kC[i] * h, lo, hi, stage, k[static_cast<std::size_t>(i)]) !=
                StageStatus::Ok;
    }
    if (!outside && !sys.inside(y5)) outside = true;
    if (outside) {
      if (h <= h_min) {
        throw TrajectoryEscaped(st.t, "trajectory reached the boundary margin near t = " + std::to_string(st.t));
      }
      st.h_adaptive = 0.5 * h;
      continue;
    }
    err.setZero(st.y.size());
    for (int i = 0; i < 7; ++i) err += (h * (kB[i] - kBStar[i])) * k[static_cast<std::size_t>(i)];
    const double e = error_norm(err, st.y, y5, cfg.abs_tol, cfg.rel_tol);
    if (e <= 1.0) {
      st.y = y5;
      st.t = last ? hi : st.t + h;
      st.max_err = std::max(st.max_err, err.cwiseAbs().maxCoeff());
      if (++st.steps > cfg.max_steps) throw StepFailure("RK45 exceeded max_steps");
      record(st, sys);
      const double grow = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
      // A step shortened only to land on the segment end does not shrink the controller.
      st.h_adaptive = last ? std::max(st.h_adaptive, h * grow) : h * grow;
    } else {
      if (h <= h_min) throw StepFailure("adaptive step fell below minimum near t = " + std::to_string(st.t));
      st.h_adaptive = h * std::clamp(0.9 * std::pow(e, -0.2), 0.1, 0.9);
    }
  }
}

void check_spec_integrable(const HerglotzFieldSpec& spec) {
  if (const auto* bp = std::get_if<BerksonPortaParams>(&spec.params())) {
    if (!(std::abs(bp->tau) < 1.0)) {
      throw InvalidArgument("Berkson-Porta fields with |tau| = 1 are not integrated");
    }
  }
}

FlowResult make_result(const FlowSystem& sys, const Integration& st, double s) {
  FlowResult r;
  const auto n = sys.n();
  r.endpoint = st.y.head(n);
  if (sys.with_jacobian()) {
    r.jacobian = Eigen::Map<const ComplexMatrix>(st.y.data() + n, n, n);
  }
  r.s = s;
  r.t = st.t;
  r.steps_taken = st.steps;
  r.max_local_error_estimate = st.max_err;
  return r;
}

}  // namespace

std::vector<FlowResult> integrate_flow_stops(const HerglotzFieldSpec& spec, const ComplexVector& z,
                                             double s, const std::vector<double>& stops,
                                             const IntegratorConfig& cfg, const FlowOptions& options) {
  cfg.validate();
  check_spec_integrable(spec);
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("initial time must be finite and >= 0");
  for (std::size_t i = 0; i < stops.size(); ++i) {
    if (!std::isfinite(stops[i]) || stops[i] < s || (i > 0 && stops[i] < stops[i - 1])) {
      throw InvalidArgument("stop times must be finite, sorted and >= s (no backward integration)");
    }
  }
  require_interior(spec.domain(), z, cfg.boundary_margin, "initial point");

  const FlowSystem sys(spec, cfg, options.with_jacobian);
  const auto n = sys.n();
  Integration st;
  st.y.resize(sys.size());
  st.y.head(n) = z;
  if (options.with_jacobian) {
    Eigen::Map<ComplexMatrix>(st.y.data() + n, n, n).setIdentity();
  }
  st.t = s;
  st.h_adaptive = cfg.step_h;
  std::vector<TrajectoryPoint> trajectory;
  if (options.record_trajectory) st.trajectory = &trajectory;
  record(st, sys);

  std::vector<FlowResult> results;
  results.reserve(stops.size());
  auto bp = std::upper_bound(spec.breakpoints().begin(), spec.breakpoints().end(), s);
  for (const double stop : stops) {
    while (st.t < stop) {
      double seg_end = stop;
      while (bp != spec.breakpoints().end() && *bp <= st.t) ++bp;
      if (bp != spec.breakpoints().end() && *bp < stop) seg_end = *bp;
      if (cfg.method == IntegratorMethod::RK4Fixed) {
        rk4_segment(sys, st, seg_end, cfg);
      } else {
        rk45_segment(sys, st, seg_end, cfg);
      }
      st.t = seg_end;
    }
    results.push_back(make_result(sys, st, s));
  }
  if (options.record_trajectory && !results.empty()) results.back().trajectory = std::move(trajectory);
  return results;
}

FlowResult integrate_flow(const HerglotzFieldSpec& spec, const ComplexVector& z, double s, double t,
                          const IntegratorConfig& cfg, const FlowOptions& options) {
  if (t < s) throw InvalidArgument("integrate_flow requires s <= t");
  auto results = integrate_flow_stops(spec, z, s, {t}, cfg, options);
  return std::move(results.front());
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory) {
  const auto n = trajectory.empty() ? 0 : trajectory.front().z.size();
  os << "t";
  for (Eigen::Index j = 0; j < n; ++j) os << ",re_z" << j + 1;
  for (Eigen::Index j = 0; j < n; ++j) os << ",im_z" << j + 1;
  os << "\n";
  const auto old_precision = os.precision(17);
  for (const auto& p : trajectory) {
    os << p.t;
    for (Eigen::Index j = 0; j < n; ++j) os << "," << p.z(j).real();
    for (Eigen::Index j = 0; j < n; ++j) os << "," << p.z(j).imag();
    os << "\n";
  }
  os.precision(old_precision);
}

FamilyEvaluator flow_family(HerglotzFieldSpec spec, IntegratorConfig cfg) {
  return [spec = std::move(spec), cfg](double s, double t, const ComplexVector& z) {
    return integrate_flow(spec, z, s, t, cfg, FlowOptions{false, false}).endpoint;
  };
}

EvolutionReport check_evolution_property(const FamilyEvaluator& family,
                                         const std::vector<ComplexVector>& z_set,
                                         const std::vector<TimeTriple>& triples, double tol) {
  EvolutionReport report;
  report.tolerance = tol;
  for (const auto& tr : triples) {
    if (!(0.0 <= tr.s && tr.s <= tr.u && tr.u <= tr.t)) {
      throw InvalidArgument("evolution triples need 0 <= s <= u <= t");
    }
    for (const auto& z : z_set) {
      const ComplexVector direct = family(tr.s, tr.t, z);
      const ComplexVector composed = family(tr.u, tr.t, family(tr.s, tr.u, z));
      const double r = (composed - direct).norm();
      ++report.samples;
      if (r > report.max_residual || report.worst_z.size() == 0) {
        report.max_residual = std::max(report.max_residual, r);
        report.worst_z = z;
        report.worst_triple = tr;
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

EvolutionReport check_evolution_property(const HerglotzFieldSpec& spec,
                                         const std::vector<ComplexVector>& z_set,
                                         const std::vector<TimeTriple>& triples,
                                         const IntegratorConfig& cfg, double tol) {
  return check_evolution_property(flow_family(spec, cfg), z_set, triples, tol);
}

UnivalenceReport check_univalence(const HerglotzFieldSpec& spec, double s, double t,
                                  const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs,
                                  const IntegratorConfig& cfg, double collision_tol) {
  UnivalenceReport report;
  report.collision_tol = collision_tol;
  report.min_image_gap = std::numeric_limits<double>::infinity();
  report.min_abs_det = std::numeric_limits<double>::infinity();
  for (const auto& [z, w] : pairs) {
    if ((z - w).norm() == 0.0) throw InvalidArgument("univalence probes must be distinct");
    const FlowResult fz = integrate_flow(spec, z, s, t, cfg);
    const FlowResult fw = integrate_flow(spec, w, s, t, cfg);
    const double gap = (fz.endpoint - fw.endpoint).norm();
    report.min_image_gap = std::min(report.min_image_gap, gap);
    report.min_abs_det = std::min({report.min_abs_det, std::abs(fz.jacobian.determinant()),
                                   std::abs(fw.jacobian.determinant())});
    if (gap < collision_tol) report.violations.push_back({z, w, gap});
  }
  if (pairs.empty()) report.min_image_gap = report.min_abs_det = 0.0;
  report.pass = report.violations.empty();
  return report;
}

RegularityTable estimate_regularity(const HerglotzFieldSpec& spec, const std::vector<ComplexVector>& K,
                                    double T, const std::vector<double>& time_grid,
                                    const IntegratorConfig& cfg) {
  if (!(T > 0.0)) throw InvalidArgument("horizon must be positive");
  if (time_grid.size() < 2 || !std::is_sorted(time_grid.begin(), time_grid.end()) ||
      time_grid.front() < 0.0 || time_grid.back() > T) {
    throw InvalidArgument("time grid must be sorted, inside [0, T], with at least two nodes");
  }
  RegularityTable table;
  const std::size_t cells = time_grid.size() - 1;
  for (std::size_t c = 0; c < cells; ++c) table.cells.push_back({time_grid[c], time_grid[c + 1], 0.0});

  const FlowOptions no_jac{false, false};
  for (const auto& z : K) {
    for (std::size_t si = 0; si < cells; ++si) {
      const double s = time_grid[si];
      const std::vector<double> stops(time_grid.begin() + static_cast<std::ptrdiff_t>(si), time_grid.end());
      const auto states = integrate_flow_stops(spec, z, s, stops, cfg, no_jac);
      for (std::size_t k = 0; k + 1 < states.size(); ++k) {
        auto& cell = table.cells[si + k];
        const double dt = cell.t - cell.u;
        if (dt <= 0.0) continue;
        const double d = intrinsic_distance(spec.domain(), states[k + 1].endpoint, states[k].endpoint);
        cell.density = std::max(cell.density, d / dt);
      }
    }
  }
  for (const auto& c : table.cells) table.linf = std::max(table.linf, c.density);
  return table;
}

}  // namespace loewner
