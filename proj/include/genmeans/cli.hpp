#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "io.hpp"

namespace genmeans::cli {

using io::Json;

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kValidation = 2,
  kStrictIndeterminate = 3,
  kInconsistency = 4,
};

/// Everything needed to reproduce one invocation; inputs are embedded, not
/// referenced by path.
struct JobSpec {
  std::string command;
  std::string scalar = "rational";
  bool strict = false;
  double tolerance = kDefaultTolerance;
  Index window = 8;
  std::optional<PresetSpec> preset;
  Index order = 0;
  std::optional<Json> params;     ///< explicit (r, s, t, m), overrides preset
  Json inputs = Json::object();   ///< "input": sequence, "matrix": matrix window
  Json options = Json::object();  ///< index, K, L, space, dual, source, target, seed, associate
  std::string output;             ///< empty: stdout
  std::string format = "json";
};

Json to_json(const JobSpec& job);
JobSpec job_from_json(const Json& j);

struct RunResult {
  int exit_code = kOk;
  Json report;
  std::string csv;  ///< filled when the command has a flat table
  std::string error;
};

/// Executes the job; never throws for input problems, they map to exit codes.
RunResult run(const JobSpec& job);

/// Report text in the job's format.
std::string render(const JobSpec& job, const RunResult& result);

/// Rational-backend invariant checks on seeded random instances.
Json selftest(std::uint64_t seed, Index order, bool& all_passed);

}  // namespace genmeans::cli
