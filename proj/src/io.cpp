#include "genmeans/io.hpp"

#include <cstdio>
#include <sstream>

namespace genmeans::io {

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }
std::string join(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key), "missing required field \"" + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

Json to_json(const Rational& q) {
  return Json{{"num", boost::multiprecision::numerator(q).str()},
              {"den", boost::multiprecision::denominator(q).str()}};
}

Json to_json(double x) { return genmeans::to_string(x); }

namespace {

Rational integer_text(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of("./eE") != std::string::npos) throw SchemaError(path, "expected an integer string");
    try {
      return parse_rational(s);
    } catch (const InvalidParameter& e) {
      throw SchemaError(path, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw SchemaError(path, "expected an integer string");
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_object()) {
      Rational num = integer_text(field(j, "num", path), join(path, "num"));
      Rational den = integer_text(field(j, "den", path), join(path, "den"));
      if (den == 0) throw SchemaError(join(path, "den"), "zero denominator");
      return num / den;
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const InvalidParameter& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path, "expected a number, a numeric string or {\"num\", \"den\"}");
}

std::string canonical(const Json& scalar) {
  if (scalar.is_object()) {
    Rational q = rational_from_json(scalar, "$");
    return q.str();
  }
  if (scalar.is_string()) return scalar.get<std::string>();
  return scalar.dump();
}

Tail tail_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    for (Tail t : {Tail::zero, Tail::structural, Tail::unknown})
      if (to_string(t) == s) return t;
  }
  throw SchemaError(path, "expected one of \"zero\", \"structural\", \"unknown\"");
}

SeqTail seq_tail_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "zero") return SeqTail::zero;
    if (s == "unknown") return SeqTail::unknown;
  }
  throw SchemaError(path, "expected \"zero\" or \"unknown\"");
}

Space space_from_string(const std::string& s, const std::string& path) {
  if (s == "c0") return Space::c0;
  if (s == "c") return Space::c;
  if (s == "l_inf" || s == "linf" || s == "l-inf") return Space::l_inf;
  throw SchemaError(path, "unknown space \"" + s + "\" (expected c0, c or l_inf)");
}

Json to_json(const SequenceRule& rule) {
  switch (rule.kind) {
    case SequenceRule::Kind::values: {
      Json v = Json::array();
      for (const auto& q : rule.values) v.push_back(to_json(q));
      return Json{{"kind", "values"}, {"values", v}};
    }
    case SequenceRule::Kind::constant: return Json{{"kind", "constant"}, {"a", to_json(rule.a)}};
    case SequenceRule::Kind::affine: return Json{{"kind", "affine"}, {"a", to_json(rule.a)}, {"b", to_json(rule.b)}};
    case SequenceRule::Kind::geometric:
      return Json{{"kind", "geometric"}, {"a", to_json(rule.a)}, {"b", to_json(rule.b)}};
  }
  return Json();
}

SequenceRule rule_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rule(j.get<std::string>());
    } catch (const InvalidParameter& e) {
      throw SchemaError(path, e.what());
    }
  }
  const Json& kind_j = field(j, "kind", path);
  const std::string kind = kind_j.is_string() ? kind_j.get<std::string>() : "";
  if (kind == "values") {
    const Json& v = field(j, "values", path);
    if (!v.is_array()) throw SchemaError(join(path, "values"), "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_from_json(v[i], join(join(path, "values"), i)));
    return SequenceRule::explicit_values(std::move(out));
  }
  auto a = [&] { return rational_from_json(field(j, "a", path), join(path, "a")); };
  auto b = [&] { return rational_from_json(field(j, "b", path), join(path, "b")); };
  if (kind == "constant") return SequenceRule::constant(a());
  if (kind == "affine") return SequenceRule::affine(a(), b());
  if (kind == "geometric") return SequenceRule::geometric(a(), b());
  throw SchemaError(join(path, "kind"), "expected values, constant, affine or geometric");
}

SequenceRule parse_rule(const std::string& text) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
  };
  auto pair = [&](const std::string& rest, const char* what) {
    auto parts = split(rest);
    if (parts.size() != 2) throw InvalidParameter(std::string(what) + " rule needs two numbers: '" + text + "'");
    return std::make_pair(parse_rational(parts[0]), parse_rational(parts[1]));
  };
  if (text == "ones" || text == "e") return SequenceRule::ones();
  if (text.rfind("const:", 0) == 0) return SequenceRule::constant(parse_rational(text.substr(6)));
  if (text.rfind("affine:", 0) == 0) {
    auto [a, b] = pair(text.substr(7), "affine");
    return SequenceRule::affine(a, b);
  }
  if (text.rfind("geom:", 0) == 0) {
    auto [a, b] = pair(text.substr(5), "geom");
    return SequenceRule::geometric(a, b);
  }
  std::vector<Rational> values;
  for (const auto& part : split(text)) values.push_back(parse_rational(part));
  if (values.empty()) throw InvalidParameter("empty sequence rule");
  return SequenceRule::explicit_values(std::move(values));
}

Json to_json(const PresetSpec& spec) {
  return Json{{"name", std::string(to_string(spec.name))}, {"m", spec.m},         {"alpha", to_json(spec.alpha)},
              {"u", to_json(spec.u)},                      {"v", to_json(spec.v)}, {"lambda", to_json(spec.lambda)}};
}

PresetSpec preset_from_json(const Json& j, const std::string& path) {
  PresetSpec spec;
  const Json& name = field(j, "name", path);
  auto parsed = name.is_string() ? parse_preset_name(name.get<std::string>()) : std::nullopt;
  if (!parsed) throw SchemaError(join(path, "name"), "expected uv, euler, aydin, lambda or identity");
  spec.name = *parsed;
  if (const Json* m = optional_field(j, "m")) {
    if (!m->is_number_integer()) throw SchemaError(join(path, "m"), "expected an integer");
    spec.m = m->get<Index>();
  }
  if (const Json* a = optional_field(j, "alpha")) spec.alpha = rational_from_json(*a, join(path, "alpha"));
  if (const Json* u = optional_field(j, "u")) spec.u = rule_from_json(*u, join(path, "u"));
  if (const Json* v = optional_field(j, "v")) spec.v = rule_from_json(*v, join(path, "v"));
  if (const Json* l = optional_field(j, "lambda")) spec.lambda = rule_from_json(*l, join(path, "lambda"));
  return spec;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string job_hash(const Json& job) {
  nlohmann::json sorted = nlohmann::json::parse(job.dump());
  if (sorted.is_object()) sorted.erase("output");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(sorted.dump())));
  return buf;
}

}  // namespace genmeans::io
