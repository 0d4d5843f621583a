#include "loewner/range.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/geometry.hpp"
#include "loewner/sampling.hpp"

namespace loewner {

const char* to_string(RangeClass c) {
  switch (c) {
    case RangeClass::Disc: return "Disc";
    case RangeClass::Plane: return "Plane";
    case RangeClass::BallBiholomorphic: return "BallBiholomorphic";
    case RangeClass::CylinderBundle: return "CylinderBundle";
    case RangeClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<double> beta_time_grid(double s, double t_max, std::size_t levels) {
  if (!(t_max > s)) throw InvalidArgument("beta grid needs t_max > s");
  if (levels < 2 || levels > 60) throw InvalidArgument("beta grid levels must be in [2, 60]");
  const double denom = std::ldexp(1.0, static_cast<int>(levels)) - 1.0;
  std::vector<double> grid;
  for (std::size_t k = 0; k <= levels; ++k) {
    grid.push_back(s + (t_max - s) * (std::ldexp(1.0, static_cast<int>(k)) - 1.0) / denom);
  }
  grid.back() = t_max;
  return grid;
}

PushforwardTrajectory pushforward_trajectory(const HerglotzFieldSpec& spec, const ComplexVector& z,
                                             double s, const IntegratorConfig& cfg,
                                             const BetaOptions& options) {
  PushforwardTrajectory tr;
  tr.z = z;
  tr.s = s;
  tr.times = beta_time_grid(s, options.t_max, options.levels);
  for (auto& r : integrate_flow_stops(spec, z, s, tr.times, cfg)) {
    tr.points.push_back(std::move(r.endpoint));
    tr.jacobians.push_back(std::move(r.jacobian));
  }
  return tr;
}

BetaProbe beta_from_trajectory(const DomainSpec& domain, const PushforwardTrajectory& trajectory,
                               const ComplexVector& v, const BetaOptions& options) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw InvalidArgument("beta direction must be nonzero");
  BetaProbe probe;
  probe.z = trajectory.z;
  probe.v = v / norm;
  probe.s = trajectory.s;
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    const double kappa = kobayashi_metric(domain, trajectory.points[k], trajectory.jacobians[k] * probe.v);
    if (!probe.values.empty() && kappa > probe.values.back().kappa + options.monotone_slack) {
      probe.monotone = false;
    }
    probe.values.push_back({trajectory.times[k], kappa});
  }
  const std::size_t m = probe.values.size();
  probe.beta_estimate = probe.values.back().kappa;
  const double prev = probe.values[m - 2].kappa;
  probe.converged = std::abs(prev - probe.beta_estimate) < options.tol_beta * (1.0 + probe.beta_estimate);
  return probe;
}

BetaProbe compute_beta(const HerglotzFieldSpec& spec, const ComplexVector& z, const ComplexVector& v,
                       double s, const IntegratorConfig& cfg, const BetaOptions& options) {
  require_interior(spec.domain(), z);
  if (v.size() != z.size()) throw InvalidArgument("beta direction dimension mismatch");
  return beta_from_trajectory(spec.domain(), pushforward_trajectory(spec, z, s, cfg, options), v, options);
}

namespace {

std::vector<ComplexVector> orthonormalize(const std::vector<ComplexVector>& probes, Eigen::Index n) {
  std::vector<ComplexVector> basis;
  for (const auto& p : probes) {
    if (p.size() != n) throw InvalidArgument("basis probe dimension mismatch");
    ComplexVector v = p;
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : basis) v -= b.dot(v) * b;  // second pass for stability
    const double norm = v.norm();
    if (norm > 1e-10 * std::max(1.0, p.norm())) basis.push_back(v / norm);
    if (static_cast<Eigen::Index>(basis.size()) == n) break;
  }
  if (static_cast<Eigen::Index>(basis.size()) != n) throw InvalidArgument("basis probes do not span C^n");
  return basis;
}

}  // namespace

CorankResult beta_zero_corank(const HerglotzFieldSpec& spec, const ComplexVector& z, double s,
                              const std::vector<ComplexVector>& basis_probes,
                              const IntegratorConfig& cfg, const CorankOptions& options) {
  const DomainSpec& domain = spec.domain();
  if (!domain.is_ball_like()) throw UnsupportedDomain("beta corank is implemented for the disc and the ball");
  require_interior(domain, z);
  const auto n = static_cast<Eigen::Index>(domain.dimension());
  const auto basis = orthonormalize(basis_probes, n);
  const auto trajectory = pushforward_trajectory(spec, z, s, cfg, options.beta);

  CorankResult result;
  auto probe = [&](const ComplexVector& v) -> double {
    BetaProbe p = beta_from_trajectory(domain, trajectory, v, options.beta);
    if (!p.converged) {
      result.probes.push_back(p);
      throw Inconclusive("beta probe did not converge by t_max");
    }
    const double b = p.beta_estimate * v.norm();
    result.probes.push_back(std::move(p));
    return b;
  };

  // Gram matrix of the limiting Hermitian form Q(v) = beta_v^2 in the basis, by polarization.
  ComplexMatrix gram(n, n);
  std::vector<double> diag;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b = probe(basis[static_cast<std::size_t>(i)]);
    diag.push_back(b * b);
    gram(i, i) = b * b;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& ei = basis[static_cast<std::size_t>(i)];
      const auto& ej = basis[static_cast<std::size_t>(j)];
      const double q_re = std::pow(probe(ei + ej), 2);
      const double q_im = std::pow(probe(ei + Complex(0, 1) * ej), 2);
      const Complex bij(0.5 * (q_re - diag[i] - diag[j]), -0.5 * (q_im - diag[i] - diag[j]));
      gram(i, j) = bij;
      gram(j, i) = std::conj(bij);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  const double thr = options.zero_threshold;
  std::vector<ComplexVector> zero_dirs;
  ComplexMatrix to_ambient(n, n);
  for (Eigen::Index i = 0; i < n; ++i) to_ambient.col(i) = basis[static_cast<std::size_t>(i)];
  for (Eigen::Index k = 0; k < n; ++k) {
    const double sigma = std::sqrt(std::max(0.0, eig.eigenvalues()(k)));
    result.singular_values.push_back(sigma);
    if (std::abs(sigma - thr) <= options.tie_band * thr) {
      throw Inconclusive("beta singular value ties with the zero threshold");
    }
    if (sigma < thr) zero_dirs.push_back(to_ambient * eig.eigenvectors().col(k));
  }
  result.corank = zero_dirs.size();

  SampleStream stream(options.seed);
  for (Eigen::Index r = 0; r < 2 * n; ++r) {
    const ComplexVector u = stream.unit_vector(static_cast<std::size_t>(n));
    // Predicted beta from the reduced form versus the directly measured value.
    const ComplexVector coords = to_ambient.adjoint() * u;
    const double predicted = std::sqrt(std::max(0.0, (coords.adjoint() * gram * coords)(0).real()));
    const double measured = probe(u);
    if (std::abs(predicted - measured) > 1e-6 + 1e-3 * measured) {
      throw Inconclusive("beta is not consistent with a Hermitian quadratic form");
    }
    if (!zero_dirs.empty()) {
      ComplexVector w = ComplexVector::Zero(n);
      for (const auto& d : zero_dirs) w += Complex(stream.normal(), stream.normal()) * d;
      if (w.norm() > 0.0 && probe(w / w.norm()) >= thr) {
        throw Inconclusive("perturbed probe inside the candidate zero subspace exceeds the threshold");
      }
    }
  }
  return result;
}

RangeReport classify_range(const HerglotzFieldSpec& spec, const std::vector<double>& s_values,
                           const std::vector<ComplexVector>& base_points, const IntegratorConfig& cfg,
                           const CorankOptions& options) {
  const DomainSpec& domain = spec.domain();
  if (!domain.is_ball_like()) throw UnsupportedDomain("range classification needs the disc or the ball");
  if (s_values.empty() || base_points.empty()) throw InvalidArgument("need base points and s values");
  RangeReport report;
  report.domain = domain;
  report.thresholds = options;

  const auto n = static_cast<Eigen::Index>(domain.dimension());
  std::vector<ComplexVector> basis;
  for (Eigen::Index i = 0; i < n; ++i) basis.push_back(ComplexVector::Unit(n, i));

  std::optional<std::size_t> agreed;
  for (const auto& z : base_points) {
    for (const double s : s_values) {
      try {
        auto r = beta_zero_corank(spec, z, s, basis, cfg, options);
        for (auto& p : r.probes) report.probes.push_back(std::move(p));
        report.coranks.push_back(r.corank);
        if (agreed && *agreed != r.corank) report.consistent = false;
        agreed = r.corank;
      } catch (const Inconclusive& e) {
        report.note = e.what();
        report.classification = RangeClass::Inconclusive;
        return report;
      }
    }
  }
  if (!report.consistent) {
    report.note = "zero-set corank differs across base points / s values";
    report.classification = RangeClass::Inconclusive;
    return report;
  }
  report.zero_corank = agreed;
  const std::size_t c = *agreed;
  if (domain.kind() == DomainKind::UnitDisc) {
    report.classification = c == 0 ? RangeClass::Disc : RangeClass::Plane;
  } else if (c == 0) {
    report.classification = RangeClass::BallBiholomorphic;
  } else if (c == 1) {
    report.classification = RangeClass::CylinderBundle;
    report.note = "biholomorphic to B^{n-1} x C";
  } else {
    report.classification = RangeClass::Inconclusive;
    report.note = "corank >= 2: range structure not determined by the corank";
  }
  return report;
}

}  // namespace loewner
