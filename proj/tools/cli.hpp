#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace loewner::cli {

using Json = nlohmann::json;

enum class Command { Flow, Chain, Range, CheckField, Extend, Shape, Kernel, Validate };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command);

enum ExitCode : int { kOk = 0, kFail = 2, kError = 3, kParseError = 4, kEscaped = 5 };

struct RunManifest {
  Command command = Command::Flow;
  std::string input_path;
  std::string output_path;                // empty => report on stdout
  std::map<std::string, double> overrides;  // t_max, step, tol, horizon
  std::uint64_t seed = 0;
  std::string dump_csv;                   // empty => no CSV
};

struct RunOutcome {
  int exit_code = kOk;
  Json report;
};

/// Runs the manifest and returns the report without touching the output path.
RunOutcome execute(const RunManifest& manifest);

/// execute() followed by an atomic write of the report (and CSV tables when requested).
int run(const RunManifest& manifest);

/// Schema check of a spec file; never runs numerics. exit_code is kOk or kParseError.
RunOutcome validate_spec(const std::string& input_path);

/// FNV-1a 64-bit digest, hex encoded.
std::string inputs_digest(std::string_view bytes);

/// Writes to path + ".tmp" and renames over path.
void write_atomically(const std::string& path, const std::string& content);

/// Serialized report with the given indentation; stable for identical inputs.
std::string render(const Json& report);

}  // namespace loewner::cli
