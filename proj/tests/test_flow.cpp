#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "loewner/sampling.hpp"
#include "loewner/errors.hpp"
#include "loewner/flow.hpp"
#include "loewner/geometry.hpp"
#include "support.hpp"

using namespace loewner;
using loewner::testing::Gen;
using loewner::testing::max_abs;

namespace {

const Complex I(0.0, 1.0);

HerglotzFieldSpec radial_disc() {
  return HerglotzFieldSpec::radial(DomainSpec::unit_disc(), LinearOperator::scalar(1, -1.0));
}

HerglotzFieldSpec cayley_bp() {
  return HerglotzFieldSpec::berkson_porta(0.0, RationalFunction({1.0, -1.0}, {1.0, 1.0}));
}

HerglotzFieldSpec stepped_diagonal() {
  return HerglotzFieldSpec::ball_diagonal({PiecewiseConstant({1.0}, {I, Complex(-0.5, 2.0)}),
                                           PiecewiseConstant({1.0}, {-1.0, Complex(-0.2, -1.0)})});
}

IntegratorConfig rk4(double h) {
  IntegratorConfig cfg;
  cfg.method = IntegratorMethod::RK4Fixed;
  cfg.step_h = h;
  return cfg;
}

}  // namespace

TEST(IntegrateFlow, RadialClosedForm) {
  const auto r = integrate_flow(radial_disc(), make_vector({0.5}), 0.0, std::log(2.0));
  EXPECT_NEAR(std::abs(r.endpoint(0) - 0.25), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(r.jacobian(0, 0) - 0.5), 0.0, 1e-9);
  EXPECT_GT(r.steps_taken, 0u);
}

TEST(IntegrateFlow, ZeroLengthIsIdentity) {
  const auto r = integrate_flow(cayley_bp(), make_vector({Complex(0.3, 0.1)}), 3.0, 3.0);
  EXPECT_EQ(r.endpoint(0), Complex(0.3, 0.1));
  EXPECT_EQ(r.jacobian(0, 0), Complex(1.0));
  EXPECT_EQ(r.steps_taken, 0u);
}

TEST(IntegrateFlow, RotationIsIsometry) {
  const auto r = integrate_flow(HerglotzFieldSpec::rotation(DomainSpec::unit_disc()), make_vector({0.5}), 0.0, M_PI);
  EXPECT_NEAR(std::abs(r.endpoint(0) + 0.5), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(r.jacobian(0, 0)), 1.0, 1e-8);
}

TEST(IntegrateFlow, DiagonalClosedForm) {
  const auto g = HerglotzFieldSpec::ball_diagonal({PiecewiseConstant::constant(I), PiecewiseConstant::constant(-1.0)});
  const auto r = integrate_flow(g, make_vector({0.3, 0.4}), 0.0, 1.0);
  EXPECT_LT(max_abs(r.endpoint, make_vector({0.3 * std::exp(I), 0.4 * std::exp(-1.0)})), 1e-9);
  ComplexMatrix J = ComplexMatrix::Zero(2, 2);
  J(0, 0) = std::exp(I);
  J(1, 1) = std::exp(-1.0);
  EXPECT_LT((r.jacobian - J).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(IntegrateFlow, PiecewiseClosedFormAcrossBreakpoint) {
  const auto g = stepped_diagonal();
  const ComplexVector z = make_vector({0.3, Complex(0.1, 0.4)});
  for (const double t : {0.5, 1.0, 1.7, 3.0}) {
    const auto r = integrate_flow(g, z, 0.25, t);
    const auto& p = std::get<BallDiagonalParams>(g.params());
    const ComplexVector expected =
        make_vector({std::exp(p.lambdas[0].integral(0.25, t)) * z(0), std::exp(p.lambdas[1].integral(0.25, t)) * z(1)});
    EXPECT_LT(max_abs(r.endpoint, expected), 1e-9) << t;
  }
}

TEST(IntegrateFlow, CenteredRadialIsConjugatedLinearFlow) {
  const ComplexVector a = make_vector({0.3, Complex(0.0, -0.2)});
  const ComplexMatrix A{{Complex(-1.0, 0.5), 0.3}, {-0.3, -0.7}};
  const auto g = HerglotzFieldSpec::radial(DomainSpec::unit_ball(2), LinearOperator(A), a);
  const MobiusParams pa(a);
  const ComplexVector z = make_vector({0.1, 0.2});
  const double t = 1.3;
  const ComplexMatrix E = (t * A).exp();
  const ComplexVector expected = mobius_map(pa, E * mobius_map(pa, z));
  EXPECT_LT(max_abs(integrate_flow(g, z, 0.0, t).endpoint, expected), 1e-8);
}

TEST(IntegrateFlow, JacobianMatchesFiniteDifferences) {
  Gen gen(31);
  const std::vector<HerglotzFieldSpec> specs{cayley_bp(), stepped_diagonal(),
                                             HerglotzFieldSpec::berkson_porta(Complex(0.2, 0.1),
                                                                              RationalFunction({1.0, Complex(0, 0.3)}, {1.0}))};
  for (int k = 0; k < 20; ++k) {
    const auto& g = specs[static_cast<std::size_t>(k) % specs.size()];
    const ComplexVector z = gen.in_ball(g.dimension(), 0.7);
    const double s = gen.real(0.0, 1.0);
    const double t = s + gen.real(0.1, 1.5);
    IntegratorConfig tight;
    tight.abs_tol = tight.rel_tol = 1e-12;
    const ComplexMatrix fd = loewner::testing::fd_jacobian(
        [&](const ComplexVector& w) { return integrate_flow(g, w, s, t, tight, {false, false}).endpoint; }, z, 1e-5);
    EXPECT_LT((integrate_flow(g, z, s, t).jacobian - fd).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(IntegrateFlow, Rk4FourthOrder) {
  const auto g = radial_disc();
  const ComplexVector z = make_vector({Complex(0.5, 0.3)});
  auto err = [&](double h) {
    return std::abs(integrate_flow(g, z, 0.0, 5.0, rk4(h)).endpoint(0) - std::exp(-5.0) * z(0));
  };
  const double e1 = err(0.2), e2 = err(0.1);
  EXPECT_GE(e1 / e2, 12.0) << e1 << " " << e2;
}

TEST(IntegrateFlow, EscapeIsReported) {
  const auto anti = HerglotzFieldSpec::radial(DomainSpec::unit_disc(), LinearOperator::scalar(1, 1.0));
  try {
    integrate_flow(anti, make_vector({0.5}), 0.0, 2.0);
    FAIL() << "expected TrajectoryEscaped";
  } catch (const TrajectoryEscaped& e) {
    EXPECT_NEAR(e.escape_time(), std::log(2.0), 1e-3);
  }
  EXPECT_THROW(integrate_flow(anti, make_vector({0.5}), 0.0, 2.0, rk4(0.01)), TrajectoryEscaped);
}

TEST(IntegrateFlow, Errors) {
  EXPECT_THROW(integrate_flow(radial_disc(), make_vector({0.5}), 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(integrate_flow(radial_disc(), make_vector({1.5}), 0.0, 0.5), PointOutsideDomain);
  IntegratorConfig bad;
  bad.abs_tol = -1.0;
  EXPECT_THROW(integrate_flow(radial_disc(), make_vector({0.5}), 0.0, 0.5, bad), InvalidArgument);
}

TEST(IntegrateFlow, StopsMatchIndividualIntegrations) {
  const auto g = cayley_bp();
  const ComplexVector z = make_vector({Complex(0.2, -0.3)});
  const std::vector<double> stops{0.5, 1.0, 2.0};
  const auto rs = integrate_flow_stops(g, z, 0.1, stops);
  ASSERT_EQ(rs.size(), 3u);
  for (std::size_t k = 0; k < stops.size(); ++k) {
    EXPECT_LT(max_abs(rs[k].endpoint, integrate_flow(g, z, 0.1, stops[k]).endpoint), 1e-8);
  }
}

TEST(TrajectoryCsv, Format) {
  FlowOptions opts;
  opts.record_trajectory = true;
  const auto r = integrate_flow(stepped_diagonal(), make_vector({0.1, 0.2}), 0.0, 0.5, {}, opts);
  std::ostringstream os;
  write_trajectory_csv(os, r.trajectory);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,re_z1,re_z2,im_z1,im_z2");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, r.trajectory.size());
  EXPECT_GE(rows, 2u);
}

TEST(EvolutionProperty, Examples) {
  const auto r1 = check_evolution_property(radial_disc(), {make_vector({0.5})}, {{0.0, 1.0, 2.0}});
  EXPECT_LT(r1.max_residual, 1e-10);
  const auto r2 = check_evolution_property(cayley_bp(), {make_vector({0.3})}, {{0.0, 0.7, 1.4}});
  EXPECT_TRUE(r2.pass);
  EXPECT_LT(r2.max_residual, 1e-7);
  const auto r3 = check_evolution_property(stepped_diagonal(), {make_vector({0.3, 0.4})}, {{0.0, 1.0, 2.0}});
  EXPECT_LT(r3.max_residual, 1e-7);
}

TEST(EvolutionProperty, ShrinksAtFourthOrder) {
  const auto g = cayley_bp();
  const std::vector<ComplexVector> zs{make_vector({0.3}), make_vector({Complex(-0.2, 0.5)})};
  const std::vector<TimeTriple> triples{{0.0, 0.73, 1.41}, {0.17, 1.13, 2.59}};
  const double e1 = check_evolution_property(g, zs, triples, rk4(0.1)).max_residual;
  const double e2 = check_evolution_property(g, zs, triples, rk4(0.05)).max_residual;
  EXPECT_GE(e1 / e2, 12.0) << e1 << " " << e2;
}

TEST(EvolutionProperty, FamilyOverloadDetectsNonFamilies) {
  // psi_{s,t}(z) = z + (t - s) z^2 / 4 is not an evolution family.
  const FamilyEvaluator fake = [](double s, double t, const ComplexVector& z) {
    return ComplexVector(z + (t - s) * z.cwiseProduct(z) / 4.0);
  };
  EXPECT_FALSE(check_evolution_property(fake, {make_vector({0.5})}, {{0.0, 0.5, 1.0}}).pass);
  EXPECT_THROW(check_evolution_property(fake, {make_vector({0.5})}, {{0.0, 1.5, 1.0}}), InvalidArgument);
}

TEST(Univalence, Examples) {
  Gen gen(32);
  auto pairs = [&](std::size_t n) {
    std::vector<std::pair<ComplexVector, ComplexVector>> out;
    for (std::size_t k = 0; k < n; ++k) out.emplace_back(gen.in_ball(1, 0.95), gen.in_ball(1, 0.95));
    return out;
  };
  const auto r1 = check_univalence(radial_disc(), 0.0, 5.0, pairs(100));
  EXPECT_TRUE(r1.pass);
  EXPECT_TRUE(r1.violations.empty());
  const auto r2 = check_univalence(HerglotzFieldSpec::rotation(DomainSpec::unit_disc()), 0.3, 2.0, pairs(20));
  EXPECT_TRUE(r2.pass);
  EXPECT_NEAR(r2.min_abs_det, 1.0, 1e-8);
  EXPECT_TRUE(check_univalence(cayley_bp(), 0.0, 2.0, pairs(200)).pass);
}

TEST(Regularity, Examples) {
  const auto K = sample_closed_ball(1, 0.5, 20, 9);
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(0.1 * k);
  const auto radial = estimate_regularity(radial_disc(), K, 1.0, grid);
  EXPECT_FALSE(radial.cells.empty());
  EXPECT_LT(radial.linf, 2.0);
  EXPECT_LE(radial.linf, 0.5 * 4.0 / 3.0 + 1e-6);
  const auto rot = estimate_regularity(HerglotzFieldSpec::rotation(DomainSpec::unit_disc()), K, 1.0, grid);
  EXPECT_LE(rot.linf, 0.5 * 4.0 / 3.0 + 1e-6);
  const auto zero = estimate_regularity(HerglotzFieldSpec::zero(DomainSpec::unit_disc()), K, 1.0, grid);
  EXPECT_EQ(zero.linf, 0.0);
}

TEST(KobayashiContraction, AlongFlows) {
  Gen gen(33);
  const std::vector<HerglotzFieldSpec> specs{radial_disc(), cayley_bp(), stepped_diagonal()};
  for (const auto& g : specs) {
    for (int k = 0; k < 5; ++k) {
      const ComplexVector z = gen.in_ball(g.dimension(), 0.8);
      const ComplexVector v = gen.unit(g.dimension());
      const double s = gen.real(0.0, 1.0);
      std::vector<double> stops;
      for (int j = 1; j <= 30; ++j) stops.push_back(s + 0.1 * j);
      double prev = kobayashi_metric(g.domain(), z, v);
      for (const auto& r : integrate_flow_stops(g, z, s, stops)) {
        const double kappa = kobayashi_metric(g.domain(), r.endpoint, r.jacobian * v);
        EXPECT_LE(kappa, prev + 1e-8);
        prev = kappa;
      }
    }
  }
}
