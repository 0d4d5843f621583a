#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "loewner/geometry.hpp"
#include "loewner/types.hpp"

namespace loewner {

/// Complex n x n matrix acting on C^n.
class LinearOperator {
 public:
  explicit LinearOperator(ComplexMatrix matrix);
  static LinearOperator identity(std::size_t n);
  static LinearOperator scalar(std::size_t n, Complex c);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  ComplexVector apply(const ComplexVector& z) const { return matrix_ * z; }

 private:
  ComplexMatrix matrix_;
};

/// m(A) = min Re<Az, z> over the unit sphere, i.e. the least eigenvalue of (A + A^*)/2.
double min_real_quadratic(const LinearOperator& A);

/// Right-continuous step function: values[k] holds on [breaks[k-1], breaks[k]).
class PiecewiseConstant {
 public:
  PiecewiseConstant(std::vector<double> breaks, std::vector<Complex> values);
  static PiecewiseConstant constant(Complex c) { return PiecewiseConstant({}, {c}); }

  Complex at(double t) const;
  /// Integral over [s, t], s <= t.
  Complex integral(double s, double t) const;

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

 private:
  std::vector<double> breaks_;
  std::vector<Complex> values_;
};

/// p(z) = num(z) / den(z), coefficients in ascending powers.
class RationalFunction {
 public:
  RationalFunction(std::vector<Complex> numerator, std::vector<Complex> denominator);
  static RationalFunction polynomial(std::vector<Complex> coeffs) {
    return RationalFunction(std::move(coeffs), {Complex(1.0)});
  }

  Complex value(Complex z) const;
  Complex derivative(Complex z) const;

  const std::vector<Complex>& numerator() const noexcept { return num_; }
  const std::vector<Complex>& denominator() const noexcept { return den_; }

 private:
  std::vector<Complex> num_;
  std::vector<Complex> den_;
};

using FieldCallback = std::function<ComplexVector(const ComplexVector&, double)>;
using JacobianCallback = std::function<ComplexMatrix(const ComplexVector&, double)>;

enum class FieldKind { Radial, DiscBerksonPorta, BallDiagonal, Custom };

const char* to_string(FieldKind kind);

/// Linear field G(z) = A z, or its conjugate by the automorphism phi_a when a center is set:
/// G(z) = (d phi_a)_{phi_a(z)} A phi_a(z), whose flow is phi_a o exp(tA) o phi_a.
struct RadialParams {
  LinearOperator A;
  std::optional<ComplexVector> center;
};

/// G(z) = (z - tau)(conj(tau) z - 1) p(z) on the disc, Re p >= 0.
struct BerksonPortaParams {
  Complex tau;
  RationalFunction p;
};

/// G(z, t) = diag(lambda_1(t), ..., lambda_n(t)) z.
struct BallDiagonalParams {
  std::vector<PiecewiseConstant> lambdas;
};

struct CustomParams {
  FieldCallback field;
  JacobianCallback jacobian;  // empty => central differences
  bool reentrant = false;
  std::string name;
};

/// Order d of an L^d field; metadata only.
struct RegularityOrder {
  double d = std::numeric_limits<double>::infinity();
  bool is_infinite() const noexcept { return d == std::numeric_limits<double>::infinity(); }
  friend bool operator==(const RegularityOrder&, const RegularityOrder&) = default;
};

/// Immutable description of a time-dependent holomorphic vector field G(z, t).
class HerglotzFieldSpec {
 public:
  using Params = std::variant<RadialParams, BerksonPortaParams, BallDiagonalParams, CustomParams>;

  static HerglotzFieldSpec radial(DomainSpec domain, LinearOperator A,
                                  std::optional<ComplexVector> center = std::nullopt);
  /// Rotation field G(z) = i z.
  static HerglotzFieldSpec rotation(DomainSpec domain, double speed = 1.0);
  static HerglotzFieldSpec zero(DomainSpec domain);
  static HerglotzFieldSpec berkson_porta(Complex tau, RationalFunction p);
  static HerglotzFieldSpec ball_diagonal(std::vector<PiecewiseConstant> lambdas);
  static HerglotzFieldSpec ball_diagonal(DomainSpec domain, std::vector<PiecewiseConstant> lambdas);
  static HerglotzFieldSpec custom(DomainSpec domain, FieldCallback field,
                                  JacobianCallback jacobian = {}, std::vector<double> breakpoints = {},
                                  std::string name = "custom", bool reentrant = false);

  const DomainSpec& domain() const noexcept { return domain_; }
  FieldKind kind() const noexcept { return static_cast<FieldKind>(params_.index()); }
  const Params& params() const noexcept { return params_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  RegularityOrder order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return domain_.dimension(); }

  /// Returns a copy with extra declared breakpoints merged in.
  HerglotzFieldSpec with_breakpoints(std::vector<double> extra) const;
  HerglotzFieldSpec with_order(RegularityOrder order) const;

  /// G(z, t) without domain checks; piecewise data use the right limit at breakpoints.
  ComplexVector value(const ComplexVector& z, double t) const;
  /// d_z G(z, t): analytic for built-ins, central differences for Custom without a jacobian.
  ComplexMatrix jacobian(const ComplexVector& z, double t) const;

 private:
  HerglotzFieldSpec(DomainSpec domain, Params params, std::vector<double> breakpoints);

  DomainSpec domain_;
  Params params_;
  std::vector<double> breakpoints_;
  RegularityOrder order_;
};

/// G(z, t) with interior and t >= 0 checks; Custom callback errors become CallbackFailure.
ComplexVector evaluate_field(const HerglotzFieldSpec& spec, const ComplexVector& z, double t);
ComplexMatrix field_jacobian(const HerglotzFieldSpec& spec, const ComplexVector& z, double t);

/// Fourth-order central-difference Jacobian of a holomorphic map (real-direction steps).
ComplexMatrix finite_difference_jacobian(const std::function<ComplexVector(const ComplexVector&)>& f,
                                         const ComplexVector& z, double h = 1e-4);

/// Largest Cauchy-Riemann defect |dG/dy_k - i dG/dx_k| over coordinates, by central differences.
double cauchy_riemann_residual(const HerglotzFieldSpec& spec, const ComplexVector& z, double t,
                               double h = 1e-6);

/// Minimum of Re p over concentric circles up to radius 0.999; nullopt when p has a pole there.
std::optional<double> sampled_min_real_part(const RationalFunction& p, std::size_t per_circle = 512);

struct WeakBoundOptions {
  std::size_t time_cells = 100;
  double cap = 1e6;
};

struct WeakBoundReport {
  std::vector<double> times;  // sample times (cell starts and midpoints, breakpoints included)
  std::vector<double> sup;    // sup over K of ||G(., t)||
  double linf = 0.0;
  double l1 = 0.0;
  bool unbounded = false;
};

WeakBoundReport check_weak_bound(const HerglotzFieldSpec& spec, const std::vector<ComplexVector>& K,
                                 double T, const WeakBoundOptions& options = {});

struct DissipativityOptions {
  double h_fd = 1e-6;
  double tol = 1e-7;
  /// Polydisc pairs whose two largest coordinate distances are closer than this are skipped.
  double switching_gap = 1e-6;
};

struct DissipativityReport {
  double max_derivative = -std::numeric_limits<double>::infinity();
  ComplexVector worst_z;
  ComplexVector worst_w;
  double worst_t = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Directional derivative of k_M(z, w) along (G(z, t), G(w, t)) over all pairs and times.
DissipativityReport check_dissipativity(
    const HerglotzFieldSpec& spec, const std::vector<std::pair<ComplexVector, ComplexVector>>& pairs,
    const std::vector<double>& times, const DissipativityOptions& options = {});

}  // namespace loewner
