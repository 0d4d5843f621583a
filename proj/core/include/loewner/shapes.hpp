#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loewner/fields.hpp"
#include "loewner/maps.hpp"
#include "loewner/types.hpp"

namespace loewner {

using MapFunction = std::function<ComplexVector(const ComplexVector&)>;
using MapJacobian = std::function<ComplexMatrix(const ComplexVector&)>;

/// Locally univalent holomorphic map B^n -> C^n paired with the operator A.
struct MapUnderTest {
  std::string name = "map";
  std::size_t dimension = 1;
  MapFunction value;
  MapJacobian jacobian;  // empty => central differences
  LinearOperator A = LinearOperator::identity(1);
  std::optional<DiscMap> disc;  // set for one-dimensional maps; enables the image oracles

  ComplexMatrix eval_jacobian(const ComplexVector& z) const;

  static MapUnderTest identity(std::size_t n);
  static MapUnderTest from_disc(DiscMap f, Complex a = 1.0);
  /// Phi_n(f) with A = I.
  static MapUnderTest roper_suffridge(DiscMap f, std::size_t n);
};

enum class Verdict { Pass, Marginal, Fail };

const char* to_string(Verdict v);

struct CertificationReport {
  std::string map_name;
  Verdict verdict = Verdict::Pass;
  double min_margin = 0.0;
  ComplexVector witness;  // probe attaining min_margin
  std::size_t probes_used = 0;
  double tol_shape = 1e-9;
  double min_abs_det = 0.0;
  double min_image_norm = 0.0;  // over the probes and 0, for the 0 in closure(f(B)) hypothesis
  double min_real_quadratic = 0.0;
  std::optional<bool> injective_on_samples;  // disc maps only; independent of the verdict
  std::vector<std::string> warnings;
};

/// Probes on spheres of radii 0.1, ..., 0.9, 0.99 (per_sphere Halton points each).
std::vector<ComplexVector> shape_probes(std::size_t n, std::size_t per_sphere = 1000);

/// min over probes of Re<(df_z)^{-1} A f(z), z> - (1 - |z|^2) Re<(df_0)^{-1} A f(0), z>.
/// PASS if min >= 0, MARGINAL if it lies in [-tol, 0), FAIL below -tol.
/// Throws InvalidArgument when m(A) <= 0 and SingularJacobian when |det df_z| < 1e-12.
CertificationReport spiral_criterion(const MapUnderTest& map, const std::vector<ComplexVector>& probes,
                                     double tol = 1e-9);
/// spiral_criterion with A replaced by the identity.
CertificationReport star_criterion(const MapUnderTest& map, const std::vector<ComplexVector>& probes,
                                   double tol = 1e-9);

struct MembershipOracleReport {
  std::size_t queries = 0;
  std::size_t failures = 0;  // lambda w with other than exactly one preimage
  std::size_t skipped = 0;   // counts that could not be certified (curve too close, ...)
  bool star_shaped = true;
  Complex witness = 0.0;     // first failing lambda w
  double radius = 0.0;
};

/// Image-membership oracle for star-shapedness of a disc map: for every w = f(z) and lambda on
/// an equispaced grid in (0, 1], lambda w must have exactly one preimage in |z| < radius.
/// Points z must satisfy |z| < radius.
MembershipOracleReport star_membership_oracle(const DiscMap& f, const std::vector<Complex>& points,
                                              std::size_t lambda_count = 20, double radius = 0.95);

struct SpiralChainReport {
  double max_residual = 0.0;  // ||A e^{tA} f - e^{tA} df (df)^{-1} A f||
  double residual_tol = 1e-8;
  std::size_t samples = 0;
  std::size_t membership_queries = 0;
  std::size_t membership_failures = 0;
  bool pass = true;
};

/// Chain f_t = e^{tA} f with field G = -(df)^{-1} A f: residual check of the chain equation and,
/// for disc maps, Rouche membership of e^{-hA} f(z) in f(|z| < 0.95).
SpiralChainReport spiral_chain_residual(const MapUnderTest& map, const std::vector<double>& t_grid,
                                        const std::vector<ComplexVector>& probes,
                                        const std::vector<double>& h_values = {0.1, 0.5, 1.0},
                                        double residual_tol = 1e-8);

}  // namespace loewner
