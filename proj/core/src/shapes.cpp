#include "loewner/shapes.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "loewner/chains.hpp"
#include "loewner/errors.hpp"
#include "loewner/geometry.hpp"
#include "loewner/operators.hpp"
#include "loewner/sampling.hpp"

namespace loewner {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Marginal: return "MARGINAL";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

ComplexMatrix MapUnderTest::eval_jacobian(const ComplexVector& z) const {
  if (jacobian) return jacobian(z);
  return finite_difference_jacobian(value, z);
}

MapUnderTest MapUnderTest::identity(std::size_t n) {
  MapUnderTest m;
  m.name = "identity";
  m.dimension = n;
  m.value = [](const ComplexVector& z) { return z; };
  m.jacobian = [n](const ComplexVector&) {
    return ComplexMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  };
  m.A = LinearOperator::identity(n);
  if (n == 1) m.disc = DiscMap::identity();
  return m;
}

MapUnderTest MapUnderTest::from_disc(DiscMap f, Complex a) {
  MapUnderTest m;
  m.name = f.name;
  m.dimension = 1;
  m.value = [f](const ComplexVector& z) { return make_vector({f(z(0))}); };
  m.jacobian = [f](const ComplexVector& z) {
    ComplexMatrix J(1, 1);
    J(0, 0) = f.deriv(z(0));
    return J;
  };
  m.A = LinearOperator::scalar(1, a);
  m.disc = std::move(f);
  return m;
}

MapUnderTest MapUnderTest::roper_suffridge(DiscMap f, std::size_t n) {
  MapUnderTest m;
  m.name = "roper_suffridge_" + f.name;
  m.dimension = n;
  m.value = [f](const ComplexVector& z) { return roper_suffridge_extend(f, z); };
  m.jacobian = [f](const ComplexVector& z) { return roper_suffridge_jacobian(f, z); };
  m.A = LinearOperator::identity(n);
  return m;
}

std::vector<ComplexVector> shape_probes(std::size_t n, std::size_t per_sphere) {
  return sphere_probes(n, per_sphere);
}

namespace {

constexpr double kMinDet = 1e-12;

struct Linearized {
  ComplexVector value;
  ComplexVector field;  // (df_z)^{-1} A f(z)
  double abs_det;
};

Linearized linearize(const MapUnderTest& map, const ComplexMatrix& A, const ComplexVector& z) {
  Linearized out;
  out.value = map.value(z);
  const ComplexMatrix J = map.eval_jacobian(z);
  Eigen::PartialPivLU<ComplexMatrix> lu(J);
  out.abs_det = std::abs(lu.determinant());
  if (!(out.abs_det >= kMinDet)) throw SingularJacobian(z, "jacobian is singular at a probe point");
  out.field = lu.solve(A * out.value);
  return out;
}

}  // namespace

CertificationReport spiral_criterion(const MapUnderTest& map, const std::vector<ComplexVector>& probes,
                                     double tol) {
  if (!map.value) throw InvalidArgument("map has no evaluator");
  if (map.A.dimension() != map.dimension) throw InvalidArgument("operator A has the wrong dimension");
  if (!(tol >= 0.0)) throw InvalidArgument("tol_shape must be nonnegative");
  CertificationReport report;
  report.map_name = map.name;
  report.tol_shape = tol;
  report.min_real_quadratic = min_real_quadratic(map.A);
  if (!(report.min_real_quadratic > 0.0)) throw InvalidArgument("spiral criterion needs m(A) > 0");

  const auto n = static_cast<Eigen::Index>(map.dimension);
  const DomainSpec ball = map.dimension == 1 ? DomainSpec::unit_disc() : DomainSpec::unit_ball(map.dimension);
  const ComplexMatrix& A = map.A.matrix();
  const Linearized at0 = linearize(map, A, ComplexVector::Zero(n));
  report.min_abs_det = at0.abs_det;
  report.min_image_norm = at0.value.norm();
  report.min_margin = std::numeric_limits<double>::infinity();

  for (const auto& z : probes) {
    if (z.size() != n) throw InvalidArgument("probe dimension mismatch");
    require_interior(ball, z);
    const Linearized at = linearize(map, A, z);
    report.min_abs_det = std::min(report.min_abs_det, at.abs_det);
    report.min_image_norm = std::min(report.min_image_norm, at.value.norm());
    const double lhs = inner(at.field, z).real();
    const double rhs = (1.0 - z.squaredNorm()) * inner(at0.field, z).real();
    const double margin = lhs - rhs;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.witness = z;
    }
    ++report.probes_used;
  }
  if (report.probes_used == 0) throw InvalidArgument("spiral criterion needs probes");
  if (report.min_margin >= 0.0) {
    report.verdict = Verdict::Pass;
  } else if (report.min_margin >= -tol) {
    report.verdict = Verdict::Marginal;
  } else {
    report.verdict = Verdict::Fail;
  }
  if (report.min_image_norm > 0.05) {
    report.warnings.push_back("min |f| over probes is " + std::to_string(report.min_image_norm) +
                              "; 0 may not lie in the closure of the image");
  }
  if (map.disc) {
    std::vector<Complex> pts;
    for (const auto& z : probes) {
      if (std::abs(z(0)) <= 0.9) pts.push_back(z(0));
      if (pts.size() == 50) break;
    }
    bool injective = true;
    for (const Complex p : pts) {
      try {
        if (count_preimages(*map.disc, 0.0, 0.95, (*map.disc)(p)) != 1) injective = false;
      } catch (const Error&) {
        report.warnings.push_back("injectivity spot check skipped a point");
      }
    }
    report.injective_on_samples = injective;
  }
  return report;
}

CertificationReport star_criterion(const MapUnderTest& map, const std::vector<ComplexVector>& probes, double tol) {
  MapUnderTest star = map;
  star.A = LinearOperator::identity(map.dimension);
  return spiral_criterion(star, probes, tol);
}

MembershipOracleReport star_membership_oracle(const DiscMap& f, const std::vector<Complex>& points,
                                              std::size_t lambda_count, double radius) {
  if (lambda_count == 0) throw InvalidArgument("lambda grid must be nonempty");
  if (!(radius > 0.0 && radius < 1.0)) throw InvalidArgument("oracle radius must lie in (0, 1)");
  MembershipOracleReport report;
  report.radius = radius;
  for (const Complex z : points) {
    if (!(std::abs(z) < radius)) throw InvalidArgument("oracle point outside the oracle circle");
    const Complex w = f(z);
    for (std::size_t k = 1; k <= lambda_count; ++k) {
      const Complex target = (static_cast<double>(k) / static_cast<double>(lambda_count)) * w;
      ++report.queries;
      try {
        if (count_preimages(f, 0.0, radius, target) != 1) {
          if (report.failures == 0) report.witness = target;
          ++report.failures;
        }
      } catch (const CurveTooClose&) {
        ++report.skipped;
      } catch (const NonIntegerWinding&) {
        ++report.skipped;
      }
    }
  }
  report.star_shaped = report.failures == 0;
  return report;
}

SpiralChainReport spiral_chain_residual(const MapUnderTest& map, const std::vector<double>& t_grid,
                                        const std::vector<ComplexVector>& probes,
                                        const std::vector<double>& h_values, double residual_tol) {
  SpiralChainReport report;
  report.residual_tol = residual_tol;
  const ComplexMatrix& A = map.A.matrix();
  for (const auto& z : probes) {
    const Linearized at = linearize(map, A, z);
    const ComplexMatrix J = map.eval_jacobian(z);
    for (const double t : t_grid) {
      const ComplexMatrix E = (t * A).exp();
      // d/dt f_t = A e^{tA} f against -(d f_t) G with G = -(df)^{-1} A f.
      const double r = (A * E * at.value - E * J * at.field).norm();
      report.max_residual = std::max(report.max_residual, r);
      ++report.samples;
    }
    if (map.disc && std::abs(z(0)) < 0.95) {
      for (const double h : h_values) {
        const Complex target = std::exp(-h * A(0, 0)) * at.value(0);
        ++report.membership_queries;
        try {
          if (count_preimages(*map.disc, 0.0, 0.95, target) < 1) ++report.membership_failures;
        } catch (const Error&) {
          ++report.membership_failures;
        }
      }
    }
  }
  report.pass = report.max_residual <= residual_tol && report.membership_failures == 0;
  return report;
}

}  // namespace loewner
