#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace loewner::cli;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("loewner_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_input(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunOutcome exec(Command c, const std::string& input, std::map<std::string, double> overrides = {}) {
  RunManifest m;
  m.command = c;
  m.input_path = input;
  m.overrides = std::move(overrides);
  return execute(m);
}

const char* kRadialFlow = R"({
  "field": {"domain": {"kind": "UnitDisc"}, "kind": "Radial", "params": {"A": [[-1]]}},
  "z": 0.5, "s": 0, "t": 0.6931471805599453
})";

const char* kExpanding = R"({"domain": {"kind": "UnitDisc"}, "kind": "Radial", "params": {"A": [[1]]}})";

int spawn(const std::string& args) {
  const std::string cmd = std::string(LOEWNER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, CommandNames) {
  for (const char* name : {"flow", "chain", "range", "check-field", "extend", "shape", "kernel", "validate"}) {
    const auto c = parse_command(name);
    ASSERT_TRUE(c.has_value()) << name;
    EXPECT_STREQ(to_string(*c), name);
  }
  EXPECT_FALSE(parse_command("frobnicate").has_value());
}

TEST(Cli, DigestIsFnv1a) {
  EXPECT_EQ(inputs_digest(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(inputs_digest("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Cli, FlowReport) {
  const auto out = exec(Command::Flow, write_input("flow.json", kRadialFlow));
  ASSERT_EQ(out.exit_code, kOk) << out.report.dump();
  const auto& r = out.report;
  for (const char* key : {"schema_version", "command", "inputs_digest", "config", "results", "timings"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_FALSE(r.contains("error"));
  EXPECT_EQ(r["command"], "flow");
  EXPECT_NEAR(r["results"]["endpoint"][0].get<double>(), 0.25, 1e-9);
  EXPECT_NEAR(r["results"]["endpoint"][1].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(r["results"]["jacobian"][0].get<double>(), 0.5, 1e-9);
  EXPECT_EQ(r["config"]["integrator"]["method"], "RK45Adaptive");
}

TEST(Cli, FlagsOverrideTheFile) {
  const auto out = exec(Command::Flow, write_input("flow.json", kRadialFlow), {{"t_max", 2.0 * std::log(2.0)}});
  ASSERT_EQ(out.exit_code, kOk);
  EXPECT_NEAR(out.report["results"]["endpoint"][0].get<double>(), 0.125, 1e-9);
  EXPECT_NEAR(out.report["config"]["t"].get<double>(), 2.0 * std::log(2.0), 1e-15);
}

TEST(Cli, EscapeExitCode) {
  const auto in = write_input("escape.json", std::string(R"({"field": )") + kExpanding + R"(, "z": 0.5, "t": 2})");
  const auto out = exec(Command::Flow, in);
  EXPECT_EQ(out.exit_code, kEscaped);
  EXPECT_EQ(out.report["error"]["kind"], "TrajectoryEscaped");
  EXPECT_NEAR(out.report["error"]["t_escape"].get<double>(), std::log(2.0), 1e-6);
}

TEST(Cli, CheckFieldVerdicts) {
  const auto bad = exec(Command::CheckField, write_input("expanding.json", kExpanding));
  EXPECT_EQ(bad.exit_code, kFail);
  EXPECT_EQ(bad.report["results"]["verdict"], "FAIL");
  const auto good = exec(Command::CheckField, write_input(
      "contracting.json", R"({"domain": {"kind": "UnitBall", "dimension": 2}, "kind": "BallDiagonal",
                              "params": {"lambdas": [[0, 1], -1]}})"));
  EXPECT_EQ(good.exit_code, kOk) << good.report.dump();
  EXPECT_EQ(good.report["results"]["verdict"], "PASS");
  EXPECT_EQ(good.report["results"]["dissipativity"]["samples"], 1000);
}

TEST(Cli, ValidateReportsPaths) {
  auto v = exec(Command::Validate, write_input(
      "bad_a.json", R"({"domain": {"kind": "UnitBall", "dimension": 2}, "kind": "Radial",
                        "params": {"A": [[-1, 0], [0, -1]], "a": [0.9, 0.9]}})"));
  EXPECT_EQ(v.exit_code, kParseError);
  EXPECT_EQ(v.report["results"]["path"], "params.a");

  v = exec(Command::Validate, write_input("broken.json", "{\n  \"domain\":\n  }\n"));
  EXPECT_EQ(v.exit_code, kParseError);
  EXPECT_EQ(v.report["error"]["kind"], "ParseError");
  EXPECT_EQ(v.report["error"]["line"], 3);

  v = exec(Command::Validate, write_input("good.json", kExpanding));
  EXPECT_EQ(v.exit_code, kOk);
  EXPECT_EQ(v.report["results"]["valid"], true);

  v = exec(Command::Validate, write_input("nested.json", R"({"field": {"domain": {"kind": "UnitDisc"}, "kind": "Radial", "params": {}}})"));
  EXPECT_EQ(v.report["results"]["path"], "field.params.A");
}

TEST(Cli, MissingInputIsAnError) {
  const auto out = exec(Command::Flow, (scratch_dir() / "does_not_exist.json").string());
  EXPECT_EQ(out.exit_code, kError);
  EXPECT_TRUE(out.report.contains("error"));
}

TEST(Cli, SchemaErrorsInCommands) {
  const auto out = exec(Command::Flow, write_input("noz.json", std::string(R"({"field": )") + kExpanding + R"(, "t": 1})"));
  EXPECT_EQ(out.exit_code, kParseError);
  EXPECT_EQ(out.report["error"]["path"], "z");
}

TEST(Cli, ReportsAreDeterministic) {
  const auto in = write_input("range.json", R"({"field": {"domain": {"kind": "UnitDisc"}, "kind": "Radial",
                                                  "params": {"A": [[[0, 1]]]}}, "t_max": 20})");
  auto a = exec(Command::Range, in).report;
  auto b = exec(Command::Range, in).report;
  a.erase("timings");
  b.erase("timings");
  EXPECT_EQ(render(a), render(b));
  EXPECT_EQ(a["results"]["classification"], "Disc");
}

TEST(Cli, ShapeAndExtendAndKernel) {
  auto out = exec(Command::Shape, write_input("koebe.json", R"({"map": {"kind": "koebe"}, "per_sphere": 200})"));
  EXPECT_EQ(out.exit_code, kOk);
  EXPECT_EQ(out.report["results"]["verdict"], "PASS");
  EXPECT_EQ(out.report["results"]["membership_oracle"]["star_shaped"], true);

  out = exec(Command::Shape, write_input("bad_poly.json", R"({"map": {"kind": "polynomial", "coeffs": [0, 1, 2]},
                                                            "criterion": "star", "per_sphere": 200})"));
  EXPECT_EQ(out.exit_code, kFail);
  EXPECT_EQ(out.report["results"]["verdict"], "FAIL");

  out = exec(Command::Extend, write_input("ext.json", R"({"map": {"kind": "koebe"}, "dimension": 2,
                                                        "points": [[0.1, 0.2]]})"));
  ASSERT_EQ(out.exit_code, kOk) << out.report.dump();
  EXPECT_NEAR(out.report["results"]["values"][0][0][0].get<double>(), 0.1 / 0.81, 1e-12);

  out = exec(Command::Kernel, write_input("kernel.json", R"({"contraction_ks": [10, 100]})"));
  ASSERT_EQ(out.exit_code, kOk) << out.report.dump();
  EXPECT_NEAR(out.report["results"]["sup_errors"][0].get<double>(), 0.3 / 9.0, 1e-9);
}

TEST(Cli, RunWritesAtomically) {
  RunManifest m;
  m.command = Command::Flow;
  m.input_path = write_input("flow.json", kRadialFlow);
  m.output_path = (scratch_dir() / "report.json").string();
  m.dump_csv = (scratch_dir() / "traj.csv").string();
  EXPECT_EQ(run(m), kOk);
  EXPECT_TRUE(fs::exists(m.output_path));
  EXPECT_FALSE(fs::exists(m.output_path + ".tmp"));
  const auto report = Json::parse(read(m.output_path));
  EXPECT_FALSE(report.contains("csv"));
  EXPECT_EQ(read(m.dump_csv).rfind("t,re_z1,im_z1\n", 0), 0u);
}

TEST(Cli, ExecutableExitCodes) {
  const auto flow = write_input("flow.json", kRadialFlow);
  const auto out = (scratch_dir() / "exe_report.json").string();
  EXPECT_EQ(spawn("flow --input " + flow + " --output " + out), 0);
  EXPECT_NEAR(Json::parse(read(out))["results"]["endpoint"][0].get<double>(), 0.25, 1e-9);
  EXPECT_EQ(spawn("frobnicate --input " + flow), kParseError);
  EXPECT_EQ(spawn("flow"), kParseError);
  EXPECT_EQ(spawn("check-field -i " + write_input("expanding.json", kExpanding)), kFail);
}
