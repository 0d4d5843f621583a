#include <gtest/gtest.h>

#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/reports.hpp"
#include "loewner/serialization.hpp"
#include "support.hpp"

using namespace loewner;
using loewner::io::Json;
using loewner::testing::Gen;

namespace {

const Complex I(0.0, 1.0);

std::vector<HerglotzFieldSpec> builtins() {
  ComplexMatrix A(2, 2);
  A << Complex(-1.0, 0.2), 0.3, 0.0, Complex(-2.0, -0.5);
  return {
      HerglotzFieldSpec::radial(DomainSpec::unit_disc(), LinearOperator::scalar(1, -1.0)),
      HerglotzFieldSpec::radial(DomainSpec::unit_ball(2), LinearOperator(A), make_vector({0.2, 0.1 * I})),
      HerglotzFieldSpec::radial(DomainSpec::full_space(2), LinearOperator(A)),
      HerglotzFieldSpec::rotation(DomainSpec::unit_disc()),
      HerglotzFieldSpec::berkson_porta(Complex(0.3, 0.1), RationalFunction({1.0, -1.0}, {1.0, 1.0})),
      HerglotzFieldSpec::ball_diagonal(
          {PiecewiseConstant({1.0}, {Complex(-1.0, 0.5), I}), PiecewiseConstant::constant(-2.0)}),
      HerglotzFieldSpec::ball_diagonal(DomainSpec::polydisc(2),
                                       {PiecewiseConstant::constant(-1.0), PiecewiseConstant::constant(I)})
          .with_breakpoints({0.5})
          .with_order({2.0}),
  };
}

std::string error_path(const Json& j) {
  try {
    io::field_from_json(j);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<none>";
}

Json radial_doc() {
  return Json::parse(R"({"domain": {"kind": "UnitBall", "dimension": 2}, "kind": "Radial",
                         "params": {"A": [[-1, 0], [0, [-1, 1]]]}})");
}

}  // namespace

TEST(FieldJson, RoundTripPreservesEvaluation) {
  Gen gen(81);
  for (const auto& spec : builtins()) {
    const Json doc = io::to_json(spec);
    const auto back = io::field_from_json(Json::parse(doc.dump()));
    EXPECT_EQ(io::to_json(back).dump(), doc.dump());
    EXPECT_EQ(back.kind(), spec.kind());
    EXPECT_EQ(back.domain(), spec.domain());
    EXPECT_EQ(back.breakpoints(), spec.breakpoints());
    EXPECT_EQ(back.order(), spec.order());
    for (int k = 0; k < 5; ++k) {
      const ComplexVector z = spec.domain().kind() == DomainKind::Polydisc ? gen.in_polydisc(spec.dimension(), 0.9)
                                                                         : gen.in_ball(spec.dimension(), 0.9);
      const double t = gen.real(0.0, 2.0);
      EXPECT_EQ(back.value(z, t), spec.value(z, t));
      EXPECT_EQ(back.jacobian(z, t), spec.jacobian(z, t));
    }
  }
}

TEST(FieldJson, CustomIsNotSerializable) {
  const auto custom = HerglotzFieldSpec::custom(DomainSpec::unit_disc(), [](const ComplexVector& z, double) {
    return ComplexVector(-z);
  });
  EXPECT_THROW(io::to_json(custom), InvalidArgument);
  Json doc = radial_doc();
  doc["kind"] = "Custom";
  EXPECT_EQ(error_path(doc), "kind");
}

TEST(FieldJson, ErrorPaths) {
  EXPECT_EQ(error_path(Json::object()), "domain");
  EXPECT_EQ(error_path(Json::array()), "");

  Json j = radial_doc();
  j["domain"]["kind"] = "Annulus";
  EXPECT_EQ(error_path(j), "domain.kind");

  j = radial_doc();
  j["domain"].erase("dimension");
  EXPECT_EQ(error_path(j), "domain.dimension");

  j = radial_doc();
  j["params"]["A"][1] = Json::array({0});
  EXPECT_EQ(error_path(j), "params.A[1]");

  j = radial_doc();
  j["params"]["A"][1][1] = "x";
  EXPECT_EQ(error_path(j), "params.A[1][1]");

  j = radial_doc();
  j["params"]["A"] = Json::array({Json::array({1})});
  EXPECT_EQ(error_path(j), "params.A");

  j = radial_doc();
  j["params"]["a"] = Json::array({0.8, 0.8});
  EXPECT_EQ(error_path(j), "params.a");

  j = radial_doc();
  j["breakpoints"] = Json::array({2.0, 1.0});
  EXPECT_EQ(error_path(j), "breakpoints");

  j = radial_doc();
  j["order"] = 0.5;
  EXPECT_EQ(error_path(j), "order");

  j = radial_doc();
  j["kind"] = "Spiral";
  EXPECT_EQ(error_path(j), "kind");

  j = radial_doc();
  j.erase("params");
  EXPECT_EQ(error_path(j), "params");

  const Json bp = Json::parse(R"({"domain": {"kind": "UnitDisc"}, "kind": "DiscBerksonPorta",
                                  "params": {"tau": [1.5, 0], "p": {"num": [1]}}})");
  EXPECT_EQ(error_path(bp), "params.tau");
  Json bp2 = bp;
  bp2["params"]["tau"] = 0;
  bp2["params"]["p"]["num"] = Json::array({-1});
  EXPECT_EQ(error_path(bp2), "params.p");
  bp2["params"]["p"].erase("num");
  EXPECT_EQ(error_path(bp2), "params.p.num");

  const Json diag = Json::parse(R"({"domain": {"kind": "UnitBall", "dimension": 2}, "kind": "BallDiagonal",
                                    "params": {"lambdas": [-1, {"breaks": [1, 0.5], "values": [-1, -1, -1]}]}})");
  EXPECT_EQ(error_path(diag), "params.lambdas[1].breaks");
  Json diag2 = diag;
  diag2["params"]["lambdas"].erase(1);
  EXPECT_EQ(error_path(diag2), "params.lambdas");

  EXPECT_EQ(error_path(radial_doc()), "<none>");
}

TEST(FieldJson, NestedPathsArePrefixed) {
  Json j = radial_doc();
  j["params"]["A"] = 3;
  try {
    io::field_from_json(j, "field");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "field.params.A");
    EXPECT_NE(std::string(e.what()).find("field.params.A"), std::string::npos);
  }
}

TEST(ReportJson, Keys) {
  const auto flow = integrate_flow(builtins()[0], make_vector({0.5}), 0.0, std::log(2.0));
  const Json fj = io::to_json(flow);
  for (const char* key : {"s", "t", "endpoint", "jacobian", "steps_taken", "max_local_error_estimate"}) {
    EXPECT_TRUE(fj.contains(key)) << key;
  }
  EXPECT_NEAR(fj["endpoint"][0][0].get<double>(), 0.25, 1e-9);

  CertificationReport cert;
  cert.witness = make_vector({0.5});
  const Json cj = io::to_json(cert);
  for (const char* key : {"verdict", "min_margin", "witness_point", "probes_used", "thresholds"}) {
    EXPECT_TRUE(cj.contains(key)) << key;
  }
  EXPECT_EQ(cj["verdict"], "PASS");
  EXPECT_EQ(cj["thresholds"]["tol_shape"], 1e-9);

  RangeReport range;
  const Json rj = io::to_json(range);
  for (const char* key : {"classification", "corank", "coranks", "consistent", "note", "probes", "thresholds"}) {
    EXPECT_TRUE(rj.contains(key)) << key;
  }
  EXPECT_TRUE(rj["corank"].is_null());

  const Json cfg = io::to_json(IntegratorConfig{});
  EXPECT_EQ(cfg["method"], "RK45Adaptive");
}

TEST(MapJson, Parsing) {
  const auto koebe = io::map_from_json(Json::parse(R"({"map": {"kind": "koebe"}})"));
  EXPECT_EQ(koebe.dimension, 1u);
  ASSERT_TRUE(koebe.disc.has_value());
  EXPECT_NEAR(std::abs(koebe.value(make_vector({0.5}))(0) - 2.0), 0.0, 1e-15);

  const auto poly = io::map_from_json(Json::parse(R"({"map": {"kind": "polynomial", "coeffs": [0, 1, [0, 2]], "scale": 0.5},
                                                     "A": [1, 1]})"));
  EXPECT_NEAR(std::abs(poly.value(make_vector({0.5}))(0) - 0.5 * (0.5 + 0.5 * I)), 0.0, 1e-15);
  EXPECT_EQ(poly.A.matrix()(0, 0), Complex(1.0, 1.0));

  const auto rs = io::map_from_json(Json::parse(R"({"map": {"kind": "half_plane"},
                                                   "extension": {"kind": "roper_suffridge", "dimension": 3}})"));
  EXPECT_EQ(rs.dimension, 3u);
  EXPECT_EQ(rs.A.dimension(), 3u);

  const auto id = io::map_from_json(Json::parse(R"({"map": {"kind": "identity", "dimension": 2},
                                                   "A": [[1, 0], [0, 2]]})"));
  EXPECT_EQ(id.dimension, 2u);
  EXPECT_EQ(id.A.matrix()(1, 1), Complex(2.0));

  auto path_of = [](const char* text) {
    try {
      io::map_from_json(Json::parse(text));
    } catch (const SchemaError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(path_of(R"({"map": {"kind": "sine"}})"), "map.kind");
  EXPECT_EQ(path_of(R"({"map": {"kind": "polynomial"}})"), "map.coeffs");
  EXPECT_EQ(path_of(R"({"map": {"kind": "koebe", "scale": 0}})"), "map.scale");
  EXPECT_EQ(path_of(R"({"map": {"kind": "koebe", "dimension": 2}})"), "map.dimension");
  EXPECT_EQ(path_of(R"({"map": {"kind": "koebe"}, "A": [[1, 0], [0, 1]]})"), "A");
  EXPECT_EQ(path_of(R"({"map": {"kind": "koebe"}, "extension": {"kind": "other"}})"), "extension.kind");
  EXPECT_EQ(path_of(R"({"map": {"kind": "koebe"}, "extension": {"kind": "roper_suffridge", "dimension": 1}})"),
            "extension.dimension");
}

TEST(LiftJson, RoundTrip) {
  const LiftedChainSpec lift(ChainHandle(builtins()[4], 2.5), 3);
  const Json doc = io::to_json(lift);
  const auto back = io::lifted_chain_from_json(doc, {});
  EXPECT_EQ(back.target_dimension(), 3u);
  EXPECT_EQ(back.horizon(), 2.5);
  EXPECT_EQ(io::to_json(back).dump(), doc.dump());

  Json bad = doc;
  bad["target_dimension"] = 1;
  EXPECT_THROW(io::lifted_chain_from_json(bad, {}), SchemaError);
  bad = doc;
  bad["chain"] = io::to_json(builtins()[1]);
  try {
    io::lifted_chain_from_json(bad, {});
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "chain.domain");
  }
}
