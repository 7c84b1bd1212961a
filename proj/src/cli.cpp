#include "genmeans/cli.hpp"

#include <sstream>

namespace genmeans::cli {

namespace {

using io::SchemaError;

std::string get_string(const Json& j, const std::string& key, const std::string& fallback) {
  const Json* v = io::optional_field(j, key);
  if (!v) return fallback;
  if (!v->is_string()) throw SchemaError(io::join("$.options", key), "expected a string");
  return v->get<std::string>();
}

Index get_index(const Json& j, const std::string& key, Index fallback) {
  const Json* v = io::optional_field(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw SchemaError(io::join("$.options", key), "expected an integer");
  return v->get<Index>();
}

bool get_bool(const Json& j, const std::string& key) {
  const Json* v = io::optional_field(j, key);
  return v && v->is_boolean() && v->get<bool>();
}

template <class Scalar>
Json estimate_json(const LimitEstimate<Scalar>& e) {
  Json out{{"kind", std::string(to_string(e.kind))}, {"value", io::to_json(e.value)}};
  if (e.upper) out["upper"] = io::to_json(*e.upper);
  out["status"] = std::string(to_string(e.status));
  out["trend"] = std::string(to_string(e.trend));
  Json window = Json::array(), trace = Json::array();
  for (Index i : e.window) window.push_back(i);
  for (const auto& v : e.trace) trace.push_back(io::to_json(v));
  out["window"] = window;
  out["trace"] = trace;
  if (!e.note.empty()) out["note"] = e.note;
  return out;
}

Json verdict_json(const Verdict& v) { return Json{{"outcome", std::string(to_string(v.outcome))}, {"trace", v.trace}}; }

template <class Scalar>
std::string scalar_text(const Scalar& v) {
  return genmeans::to_string(v);
}

template <class Scalar>
std::string sequence_csv(const Vector<Scalar>& v) {
  std::ostringstream os;
  os << "index,value\n";
  for (Index i = 0; i < v.size(); ++i) os << i << "," << scalar_text(v(i)) << "\n";
  return os.str();
}

template <class Scalar>
std::string estimate_csv(const LimitEstimate<Scalar>& e) {
  std::ostringstream os;
  os << "index,value\n";
  for (std::size_t i = 0; i < e.window.size(); ++i) os << e.window[i] << "," << scalar_text(e.trace[i]) << "\n";
  return os.str();
}

Space option_space(const Json& options, const std::string& key, Space fallback) {
  const Json* v = io::optional_field(options, key);
  if (!v) return fallback;
  if (!v->is_string()) throw SchemaError(io::join("$.options", key), "expected a string");
  return io::space_from_string(v->get<std::string>(), io::join("$.options", key));
}

template <class Scalar>
ParameterTriple<Scalar> job_params(const JobSpec& job) {
  if (job.params) return io::params_from_json<Scalar>(*job.params, "$.params");
  if (!job.preset) throw SchemaError("$.preset", "either \"params\" or \"preset\" is required");
  if (job.order <= 0) throw SchemaError("$.order", "truncation order must be positive");
  return preset<Scalar>(*job.preset, job.order);
}

template <class Scalar>
SequenceWindow<Scalar> job_sequence(const JobSpec& job) {
  return io::sequence_from_json<Scalar>(io::field(job.inputs, "input", "$.inputs"), "$.inputs.input");
}

template <class Scalar>
MatrixWindow<Scalar> job_matrix(const JobSpec& job, const ParameterTriple<Scalar>& p) {
  return io::window_from_json<Scalar>(io::field(job.inputs, "matrix", "$.inputs"), "$.inputs.matrix", &p);
}

template <class Scalar>
RunResult execute(const JobSpec& job) {
  RunResult res;
  Json& rep = res.report;
  rep["command"] = job.command;
  rep["backend"] = std::string(ScalarTraits<Scalar>::name);
  const Json job_json = to_json(job);
  rep["job_hash"] = io::job_hash(job_json);
  rep["job"] = job_json;

  EvalOptions opt;
  opt.tolerance = job.tolerance;
  opt.window = job.window;
  bool indeterminate = false;
  const Json& o = job.options;

  if (job.command == "selftest") {
    bool ok = true;
    rep["result"] = selftest(static_cast<std::uint64_t>(get_index(o, "seed", 1)), job.order > 0 ? job.order : 8, ok);
    res.exit_code = ok ? kOk : kInconsistency;
    return res;
  }

  const auto p = job_params<Scalar>(job);
  validate_params(p);
  rep["params"] = io::to_json(p);

  if (job.command == "transform" || job.command == "inverse-transform") {
    const auto x = job_sequence<Scalar>(job);
    const auto y = job.command == "transform" ? transform(p, x) : inverse_transform(p, x);
    rep["result"] = io::to_json(y);
    res.csv = sequence_csv(y.values);
  } else if (job.command == "norm") {
    const auto x = job_sequence<Scalar>(job);
    const auto n = space_norm(p, x);
    rep["result"] = Json{{"value", io::to_json(n.value)},
                         {"argmax", n.argmax},
                         {"truncation_lower_bound", n.truncation_lower_bound}};
    res.csv = "value,argmax,truncation_lower_bound\n" + scalar_text(n.value) + "," + std::to_string(n.argmax) + "," +
              (n.truncation_lower_bound ? "true" : "false") + "\n";
  } else if (job.command == "basis") {
    const Index j = get_index(o, "index", 0);
    const auto b = basis_vector(p, j);
    rep["result"] = Json{{"index", b.index}, {"values", io::to_json(b.values)}};
    if (o.contains("K")) {
      const auto x = job_sequence<Scalar>(job);
      const auto space = option_space(o, "space", Space::c0);
      const auto r = reconstruct(p, x, get_index(o, "K", 0), space);
      Json rec{{"partial", io::to_json(r.partial)}, {"residual_norm", io::to_json(r.residual_norm)}};
      if (r.limit) {
        rec["limit"] = io::to_json(*r.limit);
        rec["limit_is_truncation_proxy"] = r.limit_is_truncation_proxy;
      }
      rep["reconstruction"] = rec;
    }
    res.csv = sequence_csv(b.values.values);
  } else if (job.command == "dual") {
    const auto a = job_sequence<Scalar>(job);
    const std::string kind = get_string(o, "dual", "beta");
    DualKind d = DualKind::beta;
    if (kind == "alpha") d = DualKind::alpha;
    else if (kind == "gamma") d = DualKind::gamma;
    else if (kind != "beta") throw SchemaError("$.options.dual", "expected alpha, beta or gamma");
    const auto space = option_space(o, "space", Space::c0);
    const auto v = dual_membership(p, a, d, space, opt);
    rep["result"] = Json{{"dual", kind}, {"space", std::string(to_string(space))}, {"verdict", verdict_json(v)}};
    if (a.tail == SeqTail::zero && d == DualKind::beta) {
      const auto r = associate_row(p, a, opt.tolerance);
      rep["result"]["associate_row"] = io::to_json(r.values);
    }
    indeterminate = v.indeterminate();
  } else if (job.command == "matclass") {
    const auto a = job_matrix<Scalar>(job, p);
    const auto source = option_space(o, "source", Space::c0);
    const auto target = option_space(o, "target", Space::c0);
    const auto ctx = make_context(p, a, opt);
    const auto report = classify_map(ctx, source, target, opt);
    Json conds = Json::array();
    std::ostringstream csv;
    csv << "condition,outcome,status,value\n";
    auto add = [&](const ConditionResult<Scalar>& c) {
      conds.push_back(Json{{"id", std::string(label(c.id))},
                           {"statement", std::string(statement(c.id))},
                           {"outcome", std::string(to_string(c.outcome))},
                           {"estimate", estimate_json(c.estimate)}});
      csv << label(c.id) << "," << to_string(c.outcome) << "," << to_string(c.estimate.status) << ","
          << scalar_text(c.estimate.value) << "\n";
    };
    for (const auto& c : report.conditions) add(c);
    rep["result"] = Json{{"source", std::string(to_string(source))},
                         {"target", std::string(to_string(target))},
                         {"conditions", conds},
                         {"overall", verdict_json(report.overall)}};
    if (report.reading) rep["result"]["reading"] = *report.reading;
    if (get_bool(o, "all_conditions")) {
      Json all = Json::array();
      for (ConditionId id : kAllConditions) {
        const auto c = eval_condition(id, ctx, opt);
        all.push_back(Json{{"id", std::string(label(id))},
                           {"outcome", std::string(to_string(c.outcome))},
                           {"estimate", estimate_json(c.estimate)}});
      }
      rep["result"]["all_conditions"] = all;
    }
    res.csv = csv.str();
    indeterminate = report.overall.indeterminate();
  } else if (job.command == "chi") {
    const auto a = job_matrix<Scalar>(job, p);
    const auto target = option_space(o, "target", Space::c0);
    const bool supplied = get_bool(o, "associate");
    const auto at = supplied ? AssociateMatrix<Scalar>::supplied(a) : associate_matrix(p, a, opt.tolerance);
    const auto chi = chi_norm(at, target, opt);
    const auto verdict = compactness_verdict(at, target, opt);
    const auto norm = operator_norm(at, opt);
    Json alpha = Json::array();
    for (const auto& e : chi.alpha_tilde) alpha.push_back(io::to_json(e.value));
    rep["result"] = Json{{"target", std::string(to_string(target))},
                         {"provenance", std::string(to_string(at.provenance))},
                         {"lower", io::to_json(chi.lower)},
                         {"upper", io::to_json(chi.upper)},
                         {"status", std::string(to_string(chi.status))},
                         {"limsup", estimate_json(chi.limsup)},
                         {"trace", chi.trace},
                         {"compactness", verdict_json(verdict)},
                         {"operator_norm", estimate_json(norm)}};
    if (target == Space::c) rep["result"]["alpha_tilde"] = alpha;
    if (!supplied && option_space(o, "source", Space::c0) == Space::l_inf && target != Space::l_inf) {
      const auto check = linfty_source_autocompact_check(p, a, target, opt);
      rep["result"]["autocompact"] = Json{{"applicable", check.applicable}, {"verdict", verdict_json(check.verdict)}};
    }
    res.csv = estimate_csv(chi.limsup);
    indeterminate = chi.status == LimitStatus::indeterminate || verdict.indeterminate();
  } else {
    throw SchemaError("$.command", "unknown command \"" + job.command + "\"");
  }
  if (indeterminate && job.strict) res.exit_code = kStrictIndeterminate;
  return res;
}

}  // namespace

Json to_json(const JobSpec& job) {
  Json out{{"command", job.command},
           {"scalar", job.scalar},
           {"strict", job.strict},
           {"tolerance", genmeans::to_string(job.tolerance)},
           {"window", job.window}};
  if (job.preset) out["preset"] = io::to_json(*job.preset);
  if (job.order > 0) out["order"] = job.order;
  if (job.params) out["params"] = *job.params;
  out["inputs"] = job.inputs;
  out["options"] = job.options;
  out["output"] = Json{{"path", job.output}, {"format", job.format}};
  return out;
}

JobSpec job_from_json(const Json& j) {
  JobSpec job;
  const Json& cmd = io::field(j, "command", "$");
  if (!cmd.is_string()) throw SchemaError("$.command", "expected a string");
  job.command = cmd.get<std::string>();
  if (const Json* s = io::optional_field(j, "scalar")) job.scalar = s->get<std::string>();
  if (const Json* s = io::optional_field(j, "strict")) job.strict = s->is_boolean() && s->get<bool>();
  if (const Json* t = io::optional_field(j, "tolerance"))
    job.tolerance = io::rational_from_json(*t, "$.tolerance").convert_to<double>();
  if (const Json* w = io::optional_field(j, "window")) {
    if (!w->is_number_integer()) throw SchemaError("$.window", "expected an integer");
    job.window = w->get<Index>();
  }
  if (const Json* p = io::optional_field(j, "preset")) job.preset = io::preset_from_json(*p, "$.preset");
  if (const Json* n = io::optional_field(j, "order")) {
    if (!n->is_number_integer()) throw SchemaError("$.order", "expected an integer");
    job.order = n->get<Index>();
  }
  if (const Json* p = io::optional_field(j, "params")) job.params = *p;
  if (const Json* i = io::optional_field(j, "inputs")) job.inputs = *i;
  if (const Json* o = io::optional_field(j, "options")) job.options = *o;
  if (const Json* out = io::optional_field(j, "output")) {
    if (const Json* path = io::optional_field(*out, "path")) job.output = path->get<std::string>();
    if (const Json* fmt = io::optional_field(*out, "format")) job.format = fmt->get<std::string>();
  }
  return job;
}

RunResult run(const JobSpec& job) {
  auto fail = [](int code, const std::string& what) {
    RunResult r;
    r.exit_code = code;
    r.error = what;
    r.report = Json{{"error", what}, {"exit_code", code}};
    return r;
  };
  try {
    if (job.scalar == "rational") return execute<Rational>(job);
    if (job.scalar == "f64") return execute<double>(job);
    return fail(kValidation, "unknown scalar backend \"" + job.scalar + "\" (expected rational or f64)");
  } catch (const InconsistencyError& e) {
    return fail(kInconsistency, e.what());
  } catch (const ValidationError& e) {
    RunResult r = fail(kValidation, e.what());
    r.report["violations"] = e.violations();
    return r;
  } catch (const Error& e) {
    return fail(kValidation, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kValidation, e.what());
  }
}

std::string render(const JobSpec& job, const RunResult& result) {
  if (job.format == "csv" && result.exit_code != kValidation && !result.csv.empty()) return result.csv;
  return result.report.dump(2) + "\n";
}

}  // namespace genmeans::cli
