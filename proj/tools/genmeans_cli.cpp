#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genmeans/cli.hpp"

using genmeans::cli::Json;
using genmeans::cli::JobSpec;

namespace {

struct Flags {
  std::string preset;
  genmeans::Index n = 0;
  std::optional<genmeans::Index> m;
  std::string scalar = "rational";
  bool strict = false;
  double tolerance = genmeans::kDefaultTolerance;
  genmeans::Index window = 8;
  std::string alpha, u, v, lambda;
  std::string params, input, matrix, job;
  std::string target, source, dual, space;
  std::optional<genmeans::Index> index, K, L;
  std::optional<std::int64_t> seed;
  bool associate = false;
  bool all_conditions = false;
  std::string output, format = "json";
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw genmeans::io::SchemaError(path, e.what());
  }
}

JobSpec job_from_flags(const std::string& command, const Flags& f) {
  JobSpec job;
  job.command = command;
  job.scalar = f.scalar;
  job.strict = f.strict;
  job.tolerance = f.tolerance;
  job.window = f.window;
  job.order = f.n;
  job.output = f.output;
  job.format = f.format;
  if (!f.preset.empty()) {
    genmeans::PresetSpec spec;
    auto name = genmeans::parse_preset_name(f.preset);
    if (!name) throw genmeans::io::SchemaError("--preset", "unknown preset \"" + f.preset + "\"");
    spec.name = *name;
    if (f.m) spec.m = *f.m;
    if (!f.alpha.empty()) spec.alpha = genmeans::parse_rational(f.alpha);
    if (!f.u.empty()) spec.u = genmeans::io::parse_rule(f.u);
    if (!f.v.empty()) spec.v = genmeans::io::parse_rule(f.v);
    if (!f.lambda.empty()) spec.lambda = genmeans::io::parse_rule(f.lambda);
    job.preset = spec;
  }
  if (!f.params.empty()) {
    Json p = read_json(f.params);
    if (f.m) p["m"] = *f.m;
    job.params = p;
  }
  if (!f.input.empty()) job.inputs["input"] = read_json(f.input);
  if (!f.matrix.empty()) job.inputs["matrix"] = read_json(f.matrix);
  if (!f.target.empty()) job.options["target"] = f.target;
  if (!f.source.empty()) job.options["source"] = f.source;
  if (!f.dual.empty()) job.options["dual"] = f.dual;
  if (!f.space.empty()) job.options["space"] = f.space;
  if (f.index) job.options["index"] = *f.index;
  if (f.K) job.options["K"] = *f.K;
  if (f.L) job.options["L"] = *f.L;
  if (f.seed) job.options["seed"] = *f.seed;
  if (f.associate) job.options["associate"] = true;
  if (f.all_conditions) job.options["all_conditions"] = true;
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-means difference sequence spaces: operators, duals, matrix classes, compactness"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Flags f;
  app.add_option("--preset", f.preset, "uv | euler | aydin | lambda | identity");
  app.add_option("--n", f.n, "truncation order N");
  app.add_option("--m", f.m, "difference order m");
  app.add_option("--scalar", f.scalar, "rational | f64")->check(CLI::IsMember({"rational", "f64"}));
  app.add_flag("--strict", f.strict, "exit 3 when a verdict is indeterminate");
  app.add_option("--tolerance", f.tolerance, "float tolerance");
  app.add_option("--window", f.window, "trend window W");
  app.add_option("--alpha", f.alpha, "alpha for euler / aydin");
  app.add_option("--u", f.u, "u rule for uv: ones, const:c, affine:a,b, geom:a,b or a comma list");
  app.add_option("--v", f.v, "v rule for uv");
  app.add_option("--lambda", f.lambda, "lambda rule for the lambda preset");
  app.add_option("--params", f.params, "JSON file with explicit r, s, t, m");
  app.add_option("--input", f.input, "JSON sequence file");
  app.add_option("--matrix", f.matrix, "JSON matrix file");
  app.add_option("--target", f.target, "c0 | c | l_inf");
  app.add_option("--source", f.source, "c0 | c | l_inf");
  app.add_option("--dual", f.dual, "alpha | beta | gamma");
  app.add_option("--space", f.space, "c0 | c | l_inf");
  app.add_option("--index", f.index, "basis index j >= -1");
  app.add_option("--K", f.K, "reconstruction order");
  app.add_option("--L", f.L, "gamma-dual order");
  app.add_option("--seed", f.seed, "selftest seed");
  app.add_flag("--associate", f.associate, "the matrix is the associate matrix itself");
  app.add_flag("--all-conditions", f.all_conditions, "matclass: also evaluate every condition id");
  app.add_option("--output", f.output, "report path (default stdout)");
  app.add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--job", f.job, "run a serialized job spec");

  for (const char* name : {"transform", "inverse-transform", "norm", "basis", "dual", "matclass", "chi", "selftest"})
    app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : genmeans::cli::kValidation;
  }

  JobSpec job;
  try {
    if (!f.job.empty()) {
      job = genmeans::cli::job_from_json(read_json(f.job));
      if (!f.output.empty()) job.output = f.output;
      if (app.count("--format")) job.format = f.format;
      if (f.strict) job.strict = true;
    } else {
      auto subs = app.get_subcommands();
      if (subs.empty()) {
        std::cerr << app.help();
        return genmeans::cli::kValidation;
      }
      job = job_from_flags(subs.front()->get_name(), f);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return genmeans::cli::kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return genmeans::cli::kValidation;
  }

  const auto result = genmeans::cli::run(job);
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  const std::string text = genmeans::cli::render(job, result);
  if (job.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(job.output);
    if (!out || !(out << text)) {
      std::cerr << "error: cannot write " << job.output << "\n";
      return genmeans::cli::kIoError;
    }
  }
  return result.exit_code;
}
