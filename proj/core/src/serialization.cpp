#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/reports.hpp"

namespace loewner {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorKind::CallbackFailure: return "CallbackFailure";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::TrajectoryEscaped: return "TrajectoryEscaped";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::BreakpointTooClose: return "BreakpointTooClose";
    case ErrorKind::CurveTooClose: return "CurveTooClose";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::BranchContinuationFailure: return "BranchContinuationFailure";
    case ErrorKind::SchwarzPickViolation: return "SchwarzPickViolation";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace loewner

namespace loewner::io {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json numbers(const std::vector<double>& vs) {
  Json out = Json::array();
  for (const double v : vs) out.push_back(number(v));
  return out;
}

Json optional_vector(const ComplexVector& v) { return v.size() == 0 ? Json(nullptr) : to_json(v); }

const Json& require(const Json& j, const std::string& key, const std::string& base) {
  const auto path = join_path(base, key);
  if (!j.is_object()) throw SchemaError(base, (base.empty() ? "document" : base) + ": expected an object");
  if (!j.contains(key)) throw SchemaError(path, path + ": missing required member");
  return j.at(key);
}

std::size_t positive_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SchemaError(path, path + ": expected a positive integer");
  return j.get<std::size_t>();
}

}  // namespace

Json to_json(const IntegratorConfig& cfg) {
  return Json{{"method", to_string(cfg.method)},     {"step_h", cfg.step_h},
              {"abs_tol", cfg.abs_tol},              {"rel_tol", cfg.rel_tol},
              {"boundary_margin", cfg.boundary_margin}, {"max_steps", cfg.max_steps}};
}

Json to_json(const FlowResult& r) {
  Json j{{"s", r.s},
         {"t", r.t},
         {"endpoint", to_json(r.endpoint)},
         {"steps_taken", r.steps_taken},
         {"max_local_error_estimate", number(r.max_local_error_estimate)}};
  j["jacobian"] = r.jacobian.size() == 0 ? Json(nullptr) : to_json(r.jacobian);
  return j;
}

Json to_json(const BetaProbe& p) {
  Json curve = Json::array();
  for (const auto& v : p.values) curve.push_back(Json::array({v.t, number(v.kappa)}));
  return Json{{"z", to_json(p.z)},           {"v", to_json(p.v)},
              {"s", p.s},                    {"beta", number(p.beta_estimate)},
              {"converged", p.converged},    {"monotone", p.monotone},
              {"curve", std::move(curve)}};
}

Json to_json(const RangeReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(to_json(p));
  Json j{{"domain", to_json(r.domain)},
         {"classification", to_string(r.classification)},
         {"corank", r.zero_corank ? Json(*r.zero_corank) : Json(nullptr)},
         {"coranks", r.coranks},
         {"consistent", r.consistent},
         {"note", r.note},
         {"probes", std::move(probes)}};
  j["thresholds"] = Json{{"zero_threshold", r.thresholds.zero_threshold},
                         {"tie_band", r.thresholds.tie_band},
                         {"seed", r.thresholds.seed},
                         {"t_max", r.thresholds.beta.t_max},
                         {"levels", r.thresholds.beta.levels},
                         {"tol_beta", r.thresholds.beta.tol_beta},
                         {"monotone_slack", r.thresholds.beta.monotone_slack}};
  return j;
}

Json to_json(const CertificationReport& r) {
  Json j{{"map", r.map_name},
         {"verdict", to_string(r.verdict)},
         {"min_margin", number(r.min_margin)},
         {"witness_point", optional_vector(r.witness)},
         {"probes_used", r.probes_used},
         {"min_abs_det", number(r.min_abs_det)},
         {"min_image_norm", number(r.min_image_norm)},
         {"min_real_quadratic", number(r.min_real_quadratic)},
         {"warnings", r.warnings}};
  j["injective_on_samples"] = r.injective_on_samples ? Json(*r.injective_on_samples) : Json(nullptr);
  j["thresholds"] = Json{{"tol_shape", r.tol_shape}, {"singular_det", 1e-12}, {"image_norm_warning", 0.05}};
  return j;
}

Json to_json(const DissipativityReport& r) {
  return Json{{"max_derivative", number(r.max_derivative)},
              {"worst_z", optional_vector(r.worst_z)},
              {"worst_w", optional_vector(r.worst_w)},
              {"worst_t", r.worst_t},
              {"samples", r.samples},
              {"skipped", r.skipped},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

Json to_json(const WeakBoundReport& r) {
  return Json{{"times", numbers(r.times)}, {"sup", numbers(r.sup)}, {"linf", number(r.linf)},
              {"l1", number(r.l1)},        {"unbounded", r.unbounded}};
}

Json to_json(const EvolutionReport& r) {
  return Json{{"max_residual", number(r.max_residual)},
              {"worst_z", optional_vector(r.worst_z)},
              {"worst_triple", Json::array({r.worst_triple.s, r.worst_triple.u, r.worst_triple.t})},
              {"samples", r.samples},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

Json to_json(const ResidualReport& r) {
  return Json{{"max_residual", number(r.max_residual)}, {"worst_z", optional_vector(r.worst_z)},
              {"worst_s", r.worst_s}, {"worst_t", r.worst_t}, {"samples", r.samples},
              {"tolerance", r.tolerance}, {"pass", r.pass}};
}

Json to_json(const ArgHypothesisReport& r) {
  return Json{{"samples", r.samples}, {"max_anchor_arg", r.max_anchor_arg}, {"max_ratio_arg", r.max_ratio_arg},
              {"holds", r.holds}, {"warnings", r.warnings}};
}

Json to_json(const SpiralChainReport& r) {
  return Json{{"max_residual", number(r.max_residual)}, {"residual_tol", r.residual_tol},
              {"samples", r.samples}, {"membership_queries", r.membership_queries},
              {"membership_failures", r.membership_failures}, {"pass", r.pass}};
}

Json to_json(const MembershipOracleReport& r) {
  return Json{{"queries", r.queries}, {"failures", r.failures}, {"skipped", r.skipped},
              {"star_shaped", r.star_shaped}, {"witness", to_json(r.witness)}, {"radius", r.radius}};
}

Json to_json(const InverseConvergenceReport& r) {
  return Json{{"sup_errors", numbers(r.sup_errors)}, {"decayed", r.decayed}};
}

Json to_json(const LiftedChainSpec& lift) {
  return Json{{"chain", to_json(lift.disc_chain().spec())},
              {"horizon", lift.horizon()},
              {"target_dimension", lift.target_dimension()}};
}

LiftedChainSpec lifted_chain_from_json(const Json& j, const IntegratorConfig& cfg, const std::string& path) {
  const auto chain_path = join_path(path, "chain");
  HerglotzFieldSpec g = field_from_json(require(j, "chain", path), chain_path);
  if (g.domain().kind() != DomainKind::UnitDisc) {
    throw SchemaError(join_path(chain_path, "domain"), join_path(chain_path, "domain") + ": lift needs a UnitDisc chain");
  }
  const auto h_path = join_path(path, "horizon");
  const double T = number_from_json(require(j, "horizon", path), h_path);
  if (!(T > 0.0)) throw SchemaError(h_path, h_path + ": horizon must be positive");
  const auto d_path = join_path(path, "target_dimension");
  const std::size_t n = positive_integer(require(j, "target_dimension", path), d_path);
  if (n < 2) throw SchemaError(d_path, d_path + ": target dimension must be at least 2");
  return LiftedChainSpec(ChainHandle(std::move(g), T, cfg), n);
}

DiscMap disc_map_from_json(const Json& j, const std::string& path) {
  const auto kind_path = join_path(path, "kind");
  const Json& kj = require(j, "kind", path);
  if (!kj.is_string()) throw SchemaError(kind_path, kind_path + ": expected a string");
  const auto kind = kj.get<std::string>();
  DiscMap f;
  if (kind == "identity") {
    f = DiscMap::identity();
  } else if (kind == "koebe") {
    f = DiscMap::koebe();
  } else if (kind == "half_plane") {
    f = DiscMap::half_plane();
  } else if (kind == "polynomial") {
    const auto c_path = join_path(path, "coeffs");
    const ComplexVector c = vector_from_json(require(j, "coeffs", path), c_path);
    f = DiscMap::polynomial(std::vector<Complex>(c.data(), c.data() + c.size()));
  } else {
    throw SchemaError(kind_path, kind_path + ": unknown map kind '" + kind + "'");
  }
  if (j.contains("scale")) {
    const auto s_path = join_path(path, "scale");
    const Complex c = complex_from_json(j.at("scale"), s_path);
    if (c == Complex(0.0)) throw SchemaError(s_path, s_path + ": scale must be nonzero");
    f = DiscMap::scaled(std::move(f), c);
  }
  return f;
}

MapUnderTest map_from_json(const Json& j, const std::string& path) {
  const auto map_path = join_path(path, "map");
  const Json& mj = require(j, "map", path);
  std::size_t n = 1;
  if (mj.is_object() && mj.contains("dimension")) n = positive_integer(mj.at("dimension"), join_path(map_path, "dimension"));
  const DiscMap f = disc_map_from_json(mj, map_path);

  MapUnderTest map;
  if (j.contains("extension")) {
    const auto e_path = join_path(path, "extension");
    const Json& ej = j.at("extension");
    const Json& ek = require(ej, "kind", e_path);
    if (!ek.is_string() || ek.get<std::string>() != "roper_suffridge") {
      throw SchemaError(join_path(e_path, "kind"), join_path(e_path, "kind") + ": only roper_suffridge is supported");
    }
    const auto d_path = join_path(e_path, "dimension");
    n = positive_integer(require(ej, "dimension", e_path), d_path);
    if (n < 2) throw SchemaError(d_path, d_path + ": extension needs dimension >= 2");
    map = MapUnderTest::roper_suffridge(f, n);
  } else if (n > 1) {
    if (mj.at("kind").get<std::string>() != "identity") {
      throw SchemaError(join_path(map_path, "dimension"), join_path(map_path, "dimension") + ": only identity maps take a dimension");
    }
    map = MapUnderTest::identity(n);
  } else {
    map = MapUnderTest::from_disc(f);
  }

  if (j.contains("A")) {
    const auto a_path = join_path(path, "A");
    const Json& aj = j.at("A");
    ComplexMatrix A;
    if (aj.is_number() || (aj.is_array() && aj.size() == 2 && aj[0].is_number())) {
      A = ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) * complex_from_json(aj, a_path);
    } else {
      A = matrix_from_json(aj, a_path);
    }
    if (static_cast<std::size_t>(A.rows()) != n) throw SchemaError(a_path, a_path + ": operator dimension does not match the map");
    map.A = LinearOperator(std::move(A));
  }
  return map;
}

}  // namespace loewner::io
