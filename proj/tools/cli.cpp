#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "loewner/chains.hpp"
#include "loewner/errors.hpp"
#include "loewner/operators.hpp"
#include "loewner/range.hpp"
#include "loewner/reports.hpp"
#include "loewner/sampling.hpp"
#include "loewner/shapes.hpp"

namespace loewner::cli {

namespace {

using io::to_json;

struct ParseFailure {
  std::string message;
  std::size_t line;
  std::size_t column;
};

struct Context {
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;
  IntegratorConfig cfg;
  Json config = Json::object();
  int exit_code = kOk;
  bool want_csv = false;
  std::string csv;  // table written to --dump-csv
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_document(const std::string& bytes) {
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, bytes.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t k = 0; k < offset; ++k) {
      if (bytes[k] == '\n') {
        ++line;
        line_start = k + 1;
      }
    }
    throw ParseFailure{e.what(), line, offset - line_start + 1};
  }
}

std::optional<double> override_of(const Context& ctx, const std::string& key) {
  const auto it = ctx.overrides.find(key);
  if (it == ctx.overrides.end()) return std::nullopt;
  return it->second;
}

/// Flag value, else document member, else fallback.
double knob(const Context& ctx, const Json& doc, const std::string& flag, const std::string& member, double fallback) {
  if (auto v = override_of(ctx, flag)) return *v;
  if (doc.is_object() && doc.contains(member)) return io::number_from_json(doc.at(member), member);
  return fallback;
}

const Json& require(const Json& doc, const std::string& key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(key, key + ": missing required member");
  return doc.at(key);
}

IntegratorConfig integrator_from(const Json& doc, const Context& ctx) {
  IntegratorConfig cfg;
  if (doc.is_object() && doc.contains("integrator")) {
    const Json& ij = doc.at("integrator");
    if (!ij.is_object()) throw SchemaError("integrator", "integrator: expected an object");
    if (ij.contains("method")) {
      const auto& m = ij.at("method");
      const std::string name = m.is_string() ? m.get<std::string>() : "";
      if (name == "rk4") cfg.method = IntegratorMethod::RK4Fixed;
      else if (name == "rk45") cfg.method = IntegratorMethod::RK45Adaptive;
      else throw SchemaError("integrator.method", "integrator.method: expected \"rk4\" or \"rk45\"");
    }
    if (ij.contains("step_h")) cfg.step_h = io::number_from_json(ij.at("step_h"), "integrator.step_h");
    if (ij.contains("abs_tol")) cfg.abs_tol = io::number_from_json(ij.at("abs_tol"), "integrator.abs_tol");
    if (ij.contains("rel_tol")) cfg.rel_tol = io::number_from_json(ij.at("rel_tol"), "integrator.rel_tol");
  }
  if (auto h = override_of(ctx, "step")) cfg.step_h = *h;
  if (auto tol = override_of(ctx, "tol")) cfg.abs_tol = cfg.rel_tol = *tol;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError("integrator", std::string("integrator: ") + e.what());
  }
  return cfg;
}

/// The field lives under "field" or is the document itself.
HerglotzFieldSpec field_of(const Json& doc) {
  if (doc.is_object() && doc.contains("field")) return io::field_from_json(doc.at("field"), "field");
  return io::field_from_json(doc, "");
}

bool is_scalar_json(const Json& j) {
  return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number());
}

/// Points are vectors, or complex scalars on one-dimensional domains.
ComplexVector point_from_json(const Json& j, std::size_t n, const std::string& path) {
  if (n == 1 && is_scalar_json(j)) return make_vector({io::complex_from_json(j, path)});
  ComplexVector v = io::vector_from_json(j, path);
  if (static_cast<std::size_t>(v.size()) != n) throw SchemaError(path, path + ": dimension mismatch");
  return v;
}

std::vector<ComplexVector> points_from_json(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, path + ": expected a non-empty array of points");
  std::vector<ComplexVector> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(point_from_json(j[k], n, io::index_path(path, k)));
  return out;
}

std::vector<double> times_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, path + ": expected a non-empty array of times");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(io::number_from_json(j[k], io::index_path(path, k)));
  return out;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Json run_flow(const Json& doc, Context& ctx) {
  const HerglotzFieldSpec spec = field_of(doc);
  const std::size_t n = spec.dimension();
  const Json& zj = require(doc, "z");
  const bool scalar = n == 1 && is_scalar_json(zj);
  const ComplexVector z = point_from_json(zj, n, "z");
  const double s = knob(ctx, doc, "", "s", 0.0);
  double t;
  if (auto v = override_of(ctx, "t_max")) t = *v;
  else t = io::number_from_json(require(doc, "t"), "t");
  ctx.config["s"] = s;
  ctx.config["t"] = t;

  FlowOptions opts;
  opts.record_trajectory = ctx.want_csv;
  const FlowResult r = integrate_flow(spec, z, s, t, ctx.cfg, opts);
  Json results = to_json(r);
  if (scalar) {
    results["endpoint"] = to_json(r.endpoint(0));
    results["jacobian"] = to_json(r.jacobian(0, 0));
  }
  std::ostringstream os;
  write_trajectory_csv(os, r.trajectory);
  ctx.csv = os.str();
  return results;
}

Json run_chain(const Json& doc, Context& ctx) {
  const HerglotzFieldSpec spec = field_of(doc);
  const std::size_t n = spec.dimension();
  double T;
  if (auto v = override_of(ctx, "horizon")) T = *v;
  else T = io::number_from_json(require(doc, "horizon"), "horizon");
  std::vector<double> s_values{0.0, T / 2};
  if (doc.contains("s_values")) s_values = times_from_json(doc.at("s_values"), "s_values");
  const auto points = points_from_json(require(doc, "points"), n, "points");
  ctx.config["horizon"] = T;
  ctx.config["s_values"] = s_values;

  const ChainHandle chain(spec, T, ctx.cfg);
  Json dump = Json::array();
  std::ostringstream csv;
  csv << "s,point,re_f1,im_f1\n";
  for (const double s : s_values) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const ComplexVector f = chain.eval(s, points[k]);
      dump.push_back(Json{{"s", s}, {"z", to_json(points[k])}, {"f", to_json(f)}});
      csv << csv_number(s) << "," << k << "," << csv_number(f(0).real()) << "," << csv_number(f(0).imag()) << "\n";
    }
  }
  std::vector<std::pair<double, double>> pairs;
  for (const double a : s_values) {
    for (const double b : s_values) {
      if (a < b) pairs.emplace_back(a, b);
    }
  }
  Json results{{"horizon", T}, {"dump", std::move(dump)}};
  if (!pairs.empty()) {
    const ResidualReport assoc = check_association(chain, pairs, points);
    ctx.config["association_tol"] = assoc.tolerance;
    results["association"] = to_json(assoc);
    if (!assoc.pass) ctx.exit_code = kFail;
  }
  ctx.csv = csv.str();
  return results;
}

Json run_range(const Json& doc, Context& ctx) {
  const HerglotzFieldSpec spec = field_of(doc);
  const std::size_t n = spec.dimension();
  CorankOptions opts;
  opts.seed = ctx.seed;
  opts.beta.t_max = knob(ctx, doc, "t_max", "t_max", opts.beta.t_max);
  std::vector<double> s_values{0.0};
  if (doc.contains("s_values")) s_values = times_from_json(doc.at("s_values"), "s_values");
  std::vector<ComplexVector> base;
  if (doc.contains("base_points")) {
    base = points_from_json(doc.at("base_points"), n, "base_points");
  } else {
    SampleStream stream(ctx.seed);
    base.push_back(ComplexVector::Zero(static_cast<Eigen::Index>(n)));
    base.push_back(stream.in_ball(n, 0.5));
  }
  ctx.config["s_values"] = s_values;
  ctx.config["t_max"] = opts.beta.t_max;
  ctx.config["levels"] = opts.beta.levels;
  ctx.config["tol_beta"] = opts.beta.tol_beta;
  ctx.config["zero_threshold"] = opts.zero_threshold;
  ctx.config["tie_band"] = opts.tie_band;

  const RangeReport report = classify_range(spec, s_values, base, ctx.cfg, opts);
  std::ostringstream csv;
  csv << "probe,s,t,kappa\n";
  for (std::size_t k = 0; k < report.probes.size(); ++k) {
    for (const auto& v : report.probes[k].values) {
      csv << k << "," << csv_number(report.probes[k].s) << "," << csv_number(v.t) << "," << csv_number(v.kappa) << "\n";
    }
  }
  ctx.csv = csv.str();
  return to_json(report);
}

Json run_check_field(const Json& doc, Context& ctx) {
  const HerglotzFieldSpec spec = field_of(doc);
  const std::size_t n = spec.dimension();
  const double T = knob(ctx, doc, "horizon", "horizon", 1.0);
  const auto pair_count = static_cast<std::size_t>(knob(ctx, doc, "", "pairs", 100));
  const auto time_count = static_cast<std::size_t>(knob(ctx, doc, "", "times", 10));
  const double radius = knob(ctx, doc, "", "radius", 0.9);
  ctx.config["horizon"] = T;
  ctx.config["pairs"] = pair_count;
  ctx.config["times"] = time_count;
  ctx.config["radius"] = radius;

  SampleStream stream(ctx.seed);
  auto sample = [&]() {
    return spec.domain().kind() == DomainKind::Polydisc ? stream.in_polydisc(n, radius) : stream.in_ball(n, radius);
  };
  std::vector<std::pair<ComplexVector, ComplexVector>> pairs;
  for (std::size_t k = 0; k < pair_count; ++k) {
    ComplexVector a = sample();
    ComplexVector b = sample();
    pairs.emplace_back(std::move(a), std::move(b));
  }
  std::vector<double> times;
  for (std::size_t k = 0; k < time_count; ++k) times.push_back(stream.uniform(0.0, T));
  std::sort(times.begin(), times.end());

  Json results;
  if (spec.domain().is_hyperbolic()) {
    const DissipativityOptions dopts;
    ctx.config["dissipativity_tol"] = dopts.tol;
    const DissipativityReport d = check_dissipativity(spec, pairs, times, dopts);
    results["dissipativity"] = to_json(d);
    results["verdict"] = d.pass ? "PASS" : "FAIL";
    if (!d.pass) ctx.exit_code = kFail;
  } else {
    results["dissipativity"] = nullptr;
    results["verdict"] = "PASS";
  }
  std::vector<ComplexVector> K;
  for (std::size_t k = 0; k < std::min<std::size_t>(pairs.size(), 20); ++k) K.push_back(pairs[k].first);
  results["weak_bound"] = to_json(check_weak_bound(spec, K, T));
  double cr = 0.0;
  for (const auto& z : K) {
    for (const double t : times) cr = std::max(cr, cauchy_riemann_residual(spec, z, t));
  }
  results["cauchy_riemann_residual"] = cr;
  return results;
}

Json run_extend(const Json& doc, Context& ctx) {
  if (doc.contains("lift")) {
    const LiftedChainSpec lift = io::lifted_chain_from_json(doc.at("lift"), ctx.cfg, "lift");
    const std::size_t n = lift.target_dimension();
    const auto points = points_from_json(require(doc, "points"), n, "points");
    const double t = knob(ctx, doc, "", "t", 0.0);
    ctx.config["t"] = t;
    Json values = Json::array();
    for (const auto& z : points) values.push_back(to_json(roper_suffridge_eval(lift, t, z)));
    Json results{{"values", std::move(values)}};
    if (doc.contains("s")) {
      const double s = io::number_from_json(doc.at("s"), "s");
      ctx.config["s"] = s;
      Json evo = Json::array();
      for (const auto& z : points) evo.push_back(to_json(lifted_evolution_eval(lift, s, t, z)));
      results["evolution"] = std::move(evo);
    }
    std::vector<double> grid;
    for (int k = 0; k <= 4; ++k) grid.push_back(lift.horizon() * k / 4.0);
    results["arg_hypotheses"] = to_json(check_arg_hypotheses(lift, grid));
    return results;
  }
  const DiscMap f = io::disc_map_from_json(require(doc, "map"), "map");
  const auto n = static_cast<std::size_t>(io::number_from_json(require(doc, "dimension"), "dimension"));
  if (n < 2) throw SchemaError("dimension", "dimension: extension needs n >= 2");
  ctx.config["dimension"] = n;
  const auto points = points_from_json(require(doc, "points"), n, "points");
  Json values = Json::array();
  for (const auto& z : points) values.push_back(to_json(roper_suffridge_extend(f, z)));
  return Json{{"values", std::move(values)}};
}

Json run_shape(const Json& doc, Context& ctx) {
  const MapUnderTest map = io::map_from_json(doc);
  std::string criterion = "spiral";
  if (doc.contains("criterion")) {
    const auto& c = doc.at("criterion");
    criterion = c.is_string() ? c.get<std::string>() : "";
    if (criterion != "spiral" && criterion != "star") {
      throw SchemaError("criterion", "criterion: expected \"spiral\" or \"star\"");
    }
  }
  const auto per_sphere = static_cast<std::size_t>(knob(ctx, doc, "", "per_sphere", 1000));
  const double tol = knob(ctx, doc, "", "tol_shape", 1e-9);
  ctx.config["criterion"] = criterion;
  ctx.config["per_sphere"] = per_sphere;
  ctx.config["tol_shape"] = tol;
  ctx.config["A"] = to_json(map.A.matrix());

  auto certify = [&](const std::vector<ComplexVector>& probes) {
    return criterion == "star" ? star_criterion(map, probes, tol) : spiral_criterion(map, probes, tol);
  };
  const CertificationReport report = certify(shape_probes(map.dimension, per_sphere));
  Json results = to_json(report);
  if (report.verdict == Verdict::Fail) ctx.exit_code = kFail;

  std::ostringstream csv;
  csv << "radius,min_margin\n";
  for (const double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    const auto rep = certify(halton_sphere(map.dimension, r, per_sphere));
    csv << csv_number(r) << "," << csv_number(rep.min_margin) << "\n";
  }
  ctx.csv = csv.str();

  if (map.disc) {
    std::vector<Complex> pts;
    for (const auto& p : sphere_probes(1, 17, {0.3, 0.6, 0.9})) pts.push_back(p(0));
    pts.resize(std::min<std::size_t>(pts.size(), 50));
    results["membership_oracle"] = to_json(star_membership_oracle(*map.disc, pts));
  }
  return results;
}

Json run_kernel(const Json& doc, Context& ctx) {
  std::vector<DiscMap> sequence;
  DiscMap limit = DiscMap::identity();
  Json labels = Json::array();
  if (doc.contains("contraction_ks")) {
    // f_k(z) = (1 - 1/k) z converging to the identity.
    const auto ks = times_from_json(doc.at("contraction_ks"), "contraction_ks");
    for (const double k : ks) {
      if (!(k > 1.0)) throw SchemaError("contraction_ks", "contraction_ks: entries must exceed 1");
      sequence.push_back(DiscMap::scaled(DiscMap::identity(), 1.0 - 1.0 / k));
      labels.push_back(k);
    }
  } else {
    const Json& sj = require(doc, "sequence");
    if (!sj.is_array() || sj.empty()) throw SchemaError("sequence", "sequence: expected a non-empty array");
    for (std::size_t k = 0; k < sj.size(); ++k) {
      sequence.push_back(io::disc_map_from_json(sj[k], io::index_path("sequence", k)));
      labels.push_back(k);
    }
    limit = io::disc_map_from_json(require(doc, "limit"), "limit");
  }
  const double radius = knob(ctx, doc, "", "K_radius", 0.3);
  const auto count = static_cast<std::size_t>(knob(ctx, doc, "", "K_count", 64));
  ctx.config["K_radius"] = radius;
  ctx.config["K_count"] = count;
  std::vector<Complex> K;
  for (const auto& p : sample_closed_ball(1, radius, count, ctx.seed)) K.push_back(p(0));
  const auto report = check_inverse_convergence(sequence, limit, K);
  Json results = to_json(report);
  results["labels"] = std::move(labels);
  return results;
}

Json error_json(const Error& e) {
  Json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SchemaError*>(&e)) err["path"] = s->path();
  if (const auto* t = dynamic_cast<const TrajectoryEscaped*>(&e)) err["t_escape"] = t->escape_time();
  return err;
}

Json base_report(Command command, const std::string& digest) {
  return Json{{"schema_version", io::kSchemaVersion},
              {"command", to_string(command)},
              {"inputs_digest", digest},
              {"config", Json::object()},
              {"results", nullptr}};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "flow") return Command::Flow;
  if (name == "chain") return Command::Chain;
  if (name == "range") return Command::Range;
  if (name == "check-field") return Command::CheckField;
  if (name == "extend") return Command::Extend;
  if (name == "shape") return Command::Shape;
  if (name == "kernel") return Command::Kernel;
  if (name == "validate") return Command::Validate;
  return std::nullopt;
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Flow: return "flow";
    case Command::Chain: return "chain";
    case Command::Range: return "range";
    case Command::CheckField: return "check-field";
    case Command::Extend: return "extend";
    case Command::Shape: return "shape";
    case Command::Kernel: return "kernel";
    case Command::Validate: return "validate";
  }
  return "?";
}

std::string inputs_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw InvalidArgument("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

RunOutcome validate_spec(const std::string& input_path) {
  RunOutcome out;
  std::string bytes;
  try {
    bytes = read_file(input_path);
  } catch (const Error& e) {
    out.report = base_report(Command::Validate, "");
    out.report["error"] = error_json(e);
    out.exit_code = kError;
    return out;
  }
  out.report = base_report(Command::Validate, inputs_digest(bytes));
  try {
    const Json doc = parse_document(bytes);
    std::vector<std::string> sections;
    if (doc.is_object() && doc.contains("domain")) {
      io::field_from_json(doc, "");
      sections.push_back("field");
    }
    if (doc.is_object() && doc.contains("field")) {
      io::field_from_json(doc.at("field"), "field");
      sections.push_back("field");
    }
    if (doc.is_object() && doc.contains("lift")) {
      io::lifted_chain_from_json(doc.at("lift"), IntegratorConfig{}, "lift");
      sections.push_back("lift");
    }
    if (doc.is_object() && doc.contains("map")) {
      io::map_from_json(doc);
      sections.push_back("map");
    }
    if (doc.is_object() && doc.contains("integrator")) {
      integrator_from(doc, Context{});
      sections.push_back("integrator");
    }
    if (sections.empty()) throw SchemaError("", "document: no field, lift, or map spec found");
    out.report["results"] = Json{{"valid", true}, {"sections", sections}};
  } catch (const ParseFailure& p) {
    out.report["results"] = Json{{"valid", false}};
    out.report["error"] = Json{{"kind", "ParseError"}, {"message", p.message}, {"line", p.line}, {"column", p.column}};
    out.exit_code = kParseError;
  } catch (const SchemaError& e) {
    out.report["results"] = Json{{"valid", false}, {"path", e.path()}};
    out.report["error"] = error_json(e);
    out.exit_code = kParseError;
  } catch (const Error& e) {
    // Constructors reject some specs (e.g. Re p < 0) with InvalidArgument.
    out.report["results"] = Json{{"valid", false}};
    out.report["error"] = error_json(e);
    out.exit_code = kParseError;
  }
  return out;
}

RunOutcome execute(const RunManifest& manifest) {
  if (manifest.command == Command::Validate) return validate_spec(manifest.input_path);
  RunOutcome out;
  std::string bytes;
  try {
    bytes = read_file(manifest.input_path);
  } catch (const Error& e) {
    out.report = base_report(manifest.command, "");
    out.report["error"] = error_json(e);
    out.exit_code = kError;
    return out;
  }
  out.report = base_report(manifest.command, inputs_digest(bytes));
  Context ctx;
  ctx.seed = manifest.seed;
  ctx.overrides = manifest.overrides;
  ctx.want_csv = !manifest.dump_csv.empty();
  const auto start = std::chrono::steady_clock::now();
  try {
    const Json doc = parse_document(bytes);
    ctx.cfg = integrator_from(doc, ctx);
    ctx.config["seed"] = ctx.seed;
    ctx.config["integrator"] = to_json(ctx.cfg);
    Json results;
    switch (manifest.command) {
      case Command::Flow: results = run_flow(doc, ctx); break;
      case Command::Chain: results = run_chain(doc, ctx); break;
      case Command::Range: results = run_range(doc, ctx); break;
      case Command::CheckField: results = run_check_field(doc, ctx); break;
      case Command::Extend: results = run_extend(doc, ctx); break;
      case Command::Shape: results = run_shape(doc, ctx); break;
      case Command::Kernel: results = run_kernel(doc, ctx); break;
      case Command::Validate: break;
    }
    out.report["results"] = std::move(results);
    out.exit_code = ctx.exit_code;
  } catch (const ParseFailure& p) {
    out.report["error"] = Json{{"kind", "ParseError"}, {"message", p.message}, {"line", p.line}, {"column", p.column}};
    out.exit_code = kParseError;
  } catch (const SchemaError& e) {
    out.report["error"] = error_json(e);
    out.exit_code = kParseError;
  } catch (const TrajectoryEscaped& e) {
    out.report["error"] = error_json(e);
    out.exit_code = kEscaped;
  } catch (const Error& e) {
    out.report["error"] = error_json(e);
    out.exit_code = kError;
  } catch (const Json::exception& e) {
    out.report["error"] = Json{{"kind", "SchemaError"}, {"message", e.what()}};
    out.exit_code = kParseError;
  }
  out.report["config"] = ctx.config;
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report["timings"] = Json{{"total_seconds", elapsed}};
  if (!manifest.dump_csv.empty()) out.report["csv"] = ctx.csv;  // stripped again in run()
  return out;
}

int run(const RunManifest& manifest) {
  RunOutcome out = execute(manifest);
  std::string csv;
  if (out.report.contains("csv")) {
    csv = out.report["csv"].get<std::string>();
    out.report.erase("csv");
  }
  try {
    if (!manifest.dump_csv.empty()) write_atomically(manifest.dump_csv, csv);
    const std::string text = render(out.report);
    if (manifest.output_path.empty()) {
      std::cout << text;
    } else {
      write_atomically(manifest.output_path, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "loewner: " << e.what() << "\n";
    return kError;
  }
  if (out.report.contains("error")) {
    std::cerr << "loewner: " << out.report["error"].value("message", std::string("error")) << "\n";
  }
  return out.exit_code;
}

}  // namespace loewner::cli
