#include "loewner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

ComplexVector make_vector(std::initializer_list<Complex> entries) {
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  require_finite(v, "vector");
  return v;
}

bool is_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

void require_finite(const ComplexVector& v, const char* what) {
  if (!is_finite(v)) throw InvalidArgument(std::string(what) + " has non-finite entries");
}

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex c = m.data()[i];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument(std::string(what) + " has non-finite entries");
    }
  }
}

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::UnitDisc: return "UnitDisc";
    case DomainKind::UnitBall: return "UnitBall";
    case DomainKind::Polydisc: return "Polydisc";
    case DomainKind::FullSpace: return "FullSpace";
  }
  return "?";
}

DomainSpec::DomainSpec(DomainKind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {
  if (dimension == 0) throw InvalidArgument("domain dimension must be positive");
  if (kind == DomainKind::UnitDisc && dimension != 1) {
    throw InvalidArgument("UnitDisc has dimension 1");
  }
}

double DomainSpec::boundary_gap(const ComplexVector& z) const {
  switch (kind_) {
    case DomainKind::UnitDisc:
    case DomainKind::UnitBall: return 1.0 - z.norm();
    case DomainKind::Polydisc: return 1.0 - z.cwiseAbs().maxCoeff();
    case DomainKind::FullSpace: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

bool DomainSpec::contains(const ComplexVector& z, double margin) const {
  if (static_cast<std::size_t>(z.size()) != dimension_ || !is_finite(z)) return false;
  return boundary_gap(z) > margin;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(" << dimension_ << ")";
  return os.str();
}

void require_interior(const DomainSpec& domain, const ComplexVector& z, double margin,
                      const char* what) {
  if (static_cast<std::size_t>(z.size()) != domain.dimension()) {
    throw InvalidArgument(std::string(what) + " has dimension " + std::to_string(z.size()) +
                          ", domain " + domain.describe());
  }
  if (!domain.contains(z, margin)) {
    throw PointOutsideDomain(std::string(what) + " is not interior to " + domain.describe());
  }
}

MobiusParams::MobiusParams(ComplexVector a) : a_(std::move(a)) {
  require_finite(a_, "Mobius parameter");
  if (a_.size() == 0) throw InvalidArgument("Mobius parameter must be non-empty");
  a_norm2_ = a_.squaredNorm();
  if (a_norm2_ >= 1.0) throw PointOutsideDomain("Mobius parameter must satisfy ||a|| < 1");
  s_a_ = std::sqrt(1.0 - a_norm2_);
}

ComplexVector MobiusParams::project(const ComplexVector& z) const {
  if (a_norm2_ == 0.0) return ComplexVector::Zero(a_.size());
  return (inner(z, a_) / a_norm2_) * a_;
}

ComplexVector mobius_map(const MobiusParams& params, const ComplexVector& z) {
  require_interior(DomainSpec::unit_ball(params.dimension()), z, 0.0, "Mobius argument");
  const ComplexVector p = params.project(z);
  const ComplexVector q = z - p;
  const Complex denom = 1.0 - inner(z, params.a());
  return (params.a() - p - params.s_a() * q) / denom;
}

ComplexMatrix mobius_jacobian(const MobiusParams& params, const ComplexVector& z) {
  // phi_a(z) = (a - L z) / (1 - a^* z) with L = P_a + s_a (I - P_a).
  const auto n = static_cast<Eigen::Index>(params.dimension());
  const ComplexVector& a = params.a();
  ComplexMatrix proj = ComplexMatrix::Zero(n, n);
  const double a2 = a.squaredNorm();
  if (a2 > 0.0) proj = (a * a.adjoint()) / a2;
  const ComplexMatrix lin = proj + params.s_a() * (ComplexMatrix::Identity(n, n) - proj);
  const Complex denom = 1.0 - inner(z, a);
  const ComplexVector numer = a - lin * z;
  return -lin / denom + (numer * a.adjoint()) / (denom * denom);
}

namespace {

double disc_metric(Complex z, Complex v) { return std::abs(v) / (1.0 - std::norm(z)); }

// atanh(x) evaluated from x and 1 - x^2 separately, which keeps accuracy near the boundary.
double atanh_from(double x, double one_minus_x2) {
  return 0.5 * std::log((1.0 + x) * (1.0 + x) / one_minus_x2);
}

double disc_distance(Complex z, Complex w) {
  const Complex denom = 1.0 - std::conj(z) * w;
  const double x = std::abs(z - w) / std::abs(denom);
  const double gap = (1.0 - std::norm(z)) * (1.0 - std::norm(w)) / std::norm(denom);
  return atanh_from(x, gap);
}

}  // namespace

double kobayashi_metric(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& v) {
  require_interior(domain, z);
  if (v.size() != z.size()) throw InvalidArgument("tangent dimension mismatch");
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return disc_metric(z(0), v(0));
    case DomainKind::UnitBall: {
      const double gap = 1.0 - z.squaredNorm();
      const double q = gap * v.squaredNorm() + std::norm(inner(v, z));
      return std::sqrt(q) / gap;
    }
    case DomainKind::Polydisc: {
      double m = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) m = std::max(m, disc_metric(z(j), v(j)));
      return m;
    }
    case DomainKind::FullSpace:
      return 0.0;
  }
  return 0.0;
}

double kobayashi_distance(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& w) {
  require_interior(domain, z);
  require_interior(domain, w);
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return disc_distance(z(0), w(0));
    case DomainKind::UnitBall: {
      const double x = mobius_map(MobiusParams(z), w).norm();
      // 1 - ||phi_z(w)||^2 = (1 - ||z||^2)(1 - ||w||^2) / |1 - <w, z>|^2
      const double gap =
          (1.0 - z.squaredNorm()) * (1.0 - w.squaredNorm()) / std::norm(1.0 - inner(w, z));
      return atanh_from(x, gap);
    }
    case DomainKind::Polydisc: {
      double d = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) d = std::max(d, disc_distance(z(j), w(j)));
      return d;
    }
    case DomainKind::FullSpace:
      return 0.0;
  }
  return 0.0;
}

double intrinsic_distance(const DomainSpec& domain, const ComplexVector& z, const ComplexVector& w) {
  if (domain.kind() == DomainKind::FullSpace) return (z - w).norm();
  return kobayashi_distance(domain, z, w);
}

ConsistencyReport metric_distance_consistency(
    const DomainSpec& domain, const std::vector<std::pair<ComplexVector, ComplexVector>>& samples,
    std::size_t nodes, double tolerance) {
  if (nodes < 2) throw InvalidArgument("need at least 2 integration nodes");
  const std::size_t intervals = nodes % 2 == 0 ? nodes : nodes - 1;  // Simpson needs even count
  ConsistencyReport report;
  report.tolerance = tolerance;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& [z, w] : samples) {
    ConsistencyEntry e{z, w, kobayashi_distance(domain, z, w), 0.0, 0.0};
    const ComplexVector dir = w - z;
    const double h = 1.0 / static_cast<double>(intervals);
    double acc = 0.0;
    for (std::size_t k = 0; k <= intervals; ++k) {
      const double tau = static_cast<double>(k) * h;
      const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      acc += weight * kobayashi_metric(domain, z + tau * dir, dir);
    }
    e.segment_length = acc * h / 3.0;
    e.violation = e.distance - e.segment_length;
    report.max_violation = std::max(report.max_violation, e.violation);
    report.entries.push_back(std::move(e));
  }
  if (samples.empty()) report.max_violation = 0.0;
  report.pass = report.max_violation <= tolerance;
  return report;
}

}  // namespace loewner
