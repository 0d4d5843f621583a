#include <gtest/gtest.h>

#include <cmath>

#include "loewner/sampling.hpp"
#include "loewner/chains.hpp"
#include "loewner/errors.hpp"
#include "support.hpp"

using namespace loewner;
using loewner::testing::Gen;

namespace {

const Complex I(0.0, 1.0);

HerglotzFieldSpec radial_disc() {
  return HerglotzFieldSpec::radial(DomainSpec::unit_disc(), LinearOperator::scalar(1, -1.0));
}

HerglotzFieldSpec cayley_bp() {
  return HerglotzFieldSpec::berkson_porta(0.0, RationalFunction({1.0, -1.0}, {1.0, 1.0}));
}

Complex at(const ComplexVector& v) { return v(0); }

}  // namespace

TEST(ChainEval, Examples) {
  const ChainHandle radial(radial_disc(), 1.0);
  EXPECT_NEAR(std::abs(at(chain_eval(radial, 1.0, make_vector({0.5}))) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(at(chain_eval(radial, 0.0, make_vector({0.5}))) - 0.5 * std::exp(-1.0)), 0.0, 1e-9);
  const ChainHandle rot(HerglotzFieldSpec::rotation(DomainSpec::unit_disc()), M_PI);
  EXPECT_NEAR(std::abs(at(chain_eval(rot, 0.0, make_vector({0.5}))) + 0.5), 0.0, 1e-9);
  EXPECT_THROW(chain_eval(radial, 1.5, make_vector({0.5})), HorizonExceeded);
  EXPECT_THROW(ChainHandle(radial_disc(), 0.0), InvalidArgument);
}

TEST(ChainEval, DiscMapView) {
  const ChainHandle chain(cayley_bp(), 2.0);
  const DiscMap f = chain.disc_map(0.5);
  const Complex z(0.2, 0.1);
  EXPECT_NEAR(std::abs(f(z) - at(chain.eval(0.5, make_vector({z})))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.deriv(z) - chain.eval_with_jacobian(0.5, make_vector({z})).jacobian(0, 0)), 0.0, 1e-15);
}

TEST(Association, Examples) {
  const ChainHandle radial(radial_disc(), 1.0);
  EXPECT_LT(check_association(radial, {{0.0, 0.5}}, {make_vector({0.3})}).max_residual, 1e-9);
  EXPECT_EQ(check_association(ChainHandle(cayley_bp(), 2.0), {{0.7, 0.7}}, {make_vector({0.3})}).max_residual, 0.0);
  Gen gen(41);
  std::vector<std::pair<double, double>> pairs;
  std::vector<ComplexVector> zs;
  for (int k = 0; k < 10; ++k) {
    const double s = gen.real(0.0, 2.0), t = gen.real(0.0, 2.0);
    pairs.emplace_back(std::min(s, t), std::max(s, t));
  }
  for (int k = 0; k < 3; ++k) zs.push_back(gen.in_ball(1, 0.9));
  const auto r = check_association(ChainHandle(cayley_bp(), 2.0), pairs, zs);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_residual, 1e-7);
}

TEST(LkPde, Examples) {
  const auto r1 = check_lk_pde(ChainHandle(radial_disc(), 1.0), {0.5}, {make_vector({0.3})});
  EXPECT_LT(r1.max_residual, 1e-6);
  const auto r2 = check_lk_pde(ChainHandle(HerglotzFieldSpec::rotation(DomainSpec::unit_disc()), 1.0), {0.5},
                               {make_vector({0.4 * I})});
  EXPECT_LT(r2.max_residual, 1e-6);
  const auto r3 = check_lk_pde(ChainHandle(HerglotzFieldSpec::zero(DomainSpec::unit_disc()), 1.0), {0.5},
                               {make_vector({0.4})});
  EXPECT_EQ(r3.max_residual, 0.0);
}

TEST(LkPde, BreakpointGuard) {
  const auto g = HerglotzFieldSpec::ball_diagonal(DomainSpec::unit_ball(1),
                                                  {PiecewiseConstant({1.0}, {Complex(-1.0), Complex(-2.0)})});
  const ChainHandle chain(g, 2.0);
  EXPECT_THROW(check_lk_pde(chain, {1.0 + 5e-5}, {make_vector({0.3})}), BreakpointTooClose);
  EXPECT_TRUE(check_lk_pde(chain, {0.5, 1.5}, {make_vector({0.3})}).pass);
  EXPECT_THROW(check_lk_pde(chain, {2.0}, {make_vector({0.3})}), InvalidArgument);
}

TEST(LkPde, SecondOrderDecay) {
  IntegratorConfig tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  const ChainHandle chain(cayley_bp(), 2.0, tight);
  const std::vector<ComplexVector> zs{make_vector({Complex(0.3, 0.2)})};
  const double e1 = check_lk_pde(chain, {0.8}, zs, 0.1).max_residual;
  const double e2 = check_lk_pde(chain, {0.8}, zs, 0.05).max_residual;
  const double e3 = check_lk_pde(chain, {0.8}, zs, 0.025).max_residual;
  EXPECT_GE(e1 / e2, 3.0);
  EXPECT_GE(e2 / e3, 3.0);
}

TEST(Rouche, Examples) {
  const DiscMap id = DiscMap::identity();
  EXPECT_EQ(rouche_membership(id, 0.0, 0.5, 0.2).count, 1);
  EXPECT_EQ(rouche_membership(id, 0.0, 0.5, 0.7).count, 0);
  EXPECT_EQ(rouche_membership(DiscMap::polynomial({0.0, 0.0, 1.0}), 0.0, 0.5, 0.01).count, 2);
  // Brute-force oracle for z^2 = 0.01: roots +-0.1, both inside |z| < 0.5.
  int inside = 0;
  for (const Complex r : {Complex(0.1), Complex(-0.1)}) inside += std::abs(r) < 0.5;
  EXPECT_EQ(inside, 2);
  EXPECT_THROW(rouche_membership(id, 0.0, 0.5, 0.5), CurveTooClose);
  EXPECT_THROW(sample_boundary_trace(id, 0.0, 0.5, 100), InvalidArgument);
  EXPECT_THROW(sample_boundary_trace(id, 0.6, 0.5), InvalidArgument);
}

TEST(Rouche, OffCenterCircle) {
  const DiscMap koebe = DiscMap::koebe();
  // Preimage of koebe(0.4) is 0.4, inside B(0.3, 0.2) but not inside B(-0.3, 0.2).
  EXPECT_EQ(count_preimages(koebe, 0.3, 0.2, koebe(0.4)), 1);
  EXPECT_EQ(count_preimages(koebe, -0.3, 0.2, koebe(0.4)), 0);
}

TEST(Rouche, ImageMonotonicityOfChains) {
  const ChainHandle chain(cayley_bp(), 2.0);
  const DiscMap f_t = chain.disc_map(1.0);
  Gen gen(42);
  for (int k = 0; k < 5; ++k) {
    const Complex z = gen.complex_in_disc(0.5);
    // f_s(z) = f_t(phi_{s,t}(z)) with |phi_{s,t}(z)| <= |z| since phi fixes 0.
    const Complex w = at(chain.eval(0.3, make_vector({z})));
    EXPECT_GE(count_preimages(f_t, 0.0, 0.9, w), 1);
  }
}

TEST(Newton, InvertsKnownMaps) {
  const DiscMap koebe = DiscMap::koebe();
  const Complex z(0.3, -0.2);
  EXPECT_NEAR(std::abs(newton_invert(koebe, koebe(z), 0.0) - z), 0.0, 1e-12);
  EXPECT_THROW(newton_invert(DiscMap::scaled(DiscMap::identity(), 0.5), 0.9, 0.0), NewtonDivergence);
}

TEST(InverseConvergence, Examples) {
  std::vector<Complex> K;
  for (const auto& p : sample_closed_ball(1, 0.3, 64, 43)) K.push_back(p(0));
  std::vector<DiscMap> seq;
  for (const double k : {10.0, 100.0, 1000.0}) seq.push_back(DiscMap::scaled(DiscMap::identity(), 1.0 - 1.0 / k));
  const auto r = check_inverse_convergence(seq, DiscMap::identity(), K);
  ASSERT_EQ(r.sup_errors.size(), 3u);
  const double ks[] = {10.0, 100.0, 1000.0};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.sup_errors[static_cast<std::size_t>(i)], 0.3 / (ks[i] - 1.0), 1e-9);
  EXPECT_TRUE(r.decayed);

  // The Koebe image omits (-inf, -1/4], so K must stay inside |w| < 1/4.
  std::vector<Complex> K_koebe;
  for (const auto& p : sample_closed_ball(1, 0.2, 64, 45)) K_koebe.push_back(p(0));
  const auto same = check_inverse_convergence({DiscMap::koebe(), DiscMap::koebe()}, DiscMap::koebe(), K_koebe);
  for (const double e : same.sup_errors) EXPECT_LT(e, 1e-12);

  std::vector<Complex> K2;
  for (const auto& p : sample_closed_ball(1, 0.2, 64, 44)) K2.push_back(p(0));
  std::vector<DiscMap> quad;
  const std::vector<double> qk{5.0, 50.0, 500.0};
  for (const double k : qk) quad.push_back(DiscMap::polynomial({0.0, 1.0, 1.0 / k}));
  const auto q = check_inverse_convergence(quad, DiscMap::identity(), K2);
  for (std::size_t i = 0; i < qk.size(); ++i) {
    // Oracle: the root of z^2/k + z - w nearest w.
    double sup = 0.0;
    for (const Complex w : K2) {
      const double k = qk[i];
      const Complex root = (-1.0 + std::sqrt(1.0 + 4.0 * w / k)) * k / 2.0;
      sup = std::max(sup, std::abs(root - w));
    }
    EXPECT_NEAR(q.sup_errors[i], sup, 1e-10);
    EXPECT_LE(q.sup_errors[i], 0.05 / qk[i] + 1e-9);
  }
}
