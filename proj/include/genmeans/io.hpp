#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "compactness.hpp"

namespace genmeans::io {

using Json = nlohmann::ordered_json;

/// Input document does not match the schema; `path` names the field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error("schema error at " + path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

const Json& field(const Json& j, const std::string& key, const std::string& path);
const Json* optional_field(const Json& j, const std::string& key);
std::string join(const std::string& path, const std::string& key);
std::string join(const std::string& path, std::size_t index);

// scalars -------------------------------------------------------------------

Json to_json(const Rational& q);
Json to_json(double x);
Rational rational_from_json(const Json& j, const std::string& path);

template <class Scalar>
Scalar scalar_from_json(const Json& j, const std::string& path) {
  return ScalarTraits<Scalar>::from_rational(rational_from_json(j, path));
}

/// Canonical text of a scalar: "p/q" or "p" for rationals, 17 digits for floats.
std::string canonical(const Json& scalar);

// enums ---------------------------------------------------------------------

Tail tail_from_json(const Json& j, const std::string& path);
SeqTail seq_tail_from_json(const Json& j, const std::string& path);
Space space_from_string(const std::string& s, const std::string& path);

// vectors, sequences, matrices ----------------------------------------------

template <class Scalar>
Json to_json(const Vector<Scalar>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

template <class Scalar>
Vector<Scalar> vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  Vector<Scalar> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = scalar_from_json<Scalar>(j[i], join(path, i));
  return v;
}

template <class Scalar>
Json to_json(const SequenceWindow<Scalar>& x) {
  Json out{{"values", to_json(x.values)}, {"tail", std::string(to_string(x.tail))}};
  if (x.space) out["space"] = std::string(to_string(*x.space));
  return out;
}

template <class Scalar>
SequenceWindow<Scalar> sequence_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object with \"values\" and \"tail\"");
  SequenceWindow<Scalar> x;
  x.values = vector_from_json<Scalar>(field(j, "values", path), join(path, "values"));
  x.tail = seq_tail_from_json(field(j, "tail", path), join(path, "tail"));
  if (const Json* s = optional_field(j, "space")) {
    if (!s->is_string()) throw SchemaError(join(path, "space"), "expected a string");
    x.space = space_from_string(s->get<std::string>(), join(path, "space"));
  }
  return x;
}

template <class Scalar>
Json rows_to_json(const Matrix<Scalar>& m) {
  Json rows = Json::array();
  for (Index n = 0; n < m.rows(); ++n) rows.push_back(to_json(Vector<Scalar>(m.row(n).transpose())));
  return rows;
}

template <class Scalar>
Json to_json(const TriangleMatrix<Scalar>& m) {
  return Json{{"rows", rows_to_json(m.entries())}, {"tail", std::string(to_string(m.tail()))}};
}

/// Ragged rows are padded with zeros to the widest row.
template <class Scalar>
Matrix<Scalar> rows_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  std::vector<Vector<Scalar>> rows;
  Index width = 0;
  for (std::size_t n = 0; n < j.size(); ++n) {
    rows.push_back(vector_from_json<Scalar>(j[n], join(path, n)));
    width = std::max(width, rows.back().size());
  }
  Matrix<Scalar> m = Matrix<Scalar>::Zero(static_cast<Index>(rows.size()), width);
  for (std::size_t n = 0; n < rows.size(); ++n) m.row(static_cast<Index>(n)).head(rows[n].size()) = rows[n].transpose();
  return m;
}

template <class Scalar>
TriangleMatrix<Scalar> triangle_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object with \"rows\" and \"tail\"");
  Matrix<Scalar> m = rows_from_json<Scalar>(field(j, "rows", path), join(path, "rows"));
  Tail tail = tail_from_json(field(j, "tail", path), join(path, "tail"));
  if (m.rows() != m.cols()) {
    // a triangle may be written with its zeros above the diagonal omitted
    Matrix<Scalar> sq = Matrix<Scalar>::Zero(m.rows(), m.rows());
    if (m.cols() > m.rows()) throw SchemaError(join(path, "rows"), "more columns than rows");
    sq.leftCols(m.cols()) = m;
    m = std::move(sq);
  }
  return TriangleMatrix<Scalar>(std::move(m), tail);
}

// parameters ----------------------------------------------------------------

Json to_json(const SequenceRule& rule);
SequenceRule rule_from_json(const Json& j, const std::string& path);
/// "ones", "const:c", "affine:a,b", "geom:a,b" or a comma list of values.
SequenceRule parse_rule(const std::string& text);

Json to_json(const PresetSpec& spec);
PresetSpec preset_from_json(const Json& j, const std::string& path);

template <class Scalar>
Json to_json(const ParameterTriple<Scalar>& p) {
  Json out{{"r", to_json(p.r)}, {"s", to_json(p.s)}, {"t", to_json(p.t)}, {"m", p.m}, {"order", p.order}};
  if (p.origin) out["origin"] = to_json(*p.origin);
  return out;
}

template <class Scalar>
ParameterTriple<Scalar> params_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  ParameterTriple<Scalar> p;
  p.r = vector_from_json<Scalar>(field(j, "r", path), join(path, "r"));
  p.s = vector_from_json<Scalar>(field(j, "s", path), join(path, "s"));
  p.t = vector_from_json<Scalar>(field(j, "t", path), join(path, "t"));
  const Json& m = field(j, "m", path);
  if (!m.is_number_integer()) throw SchemaError(join(path, "m"), "expected an integer");
  p.m = m.get<Index>();
  if (const Json* o = optional_field(j, "order")) {
    if (!o->is_number_integer()) throw SchemaError(join(path, "order"), "expected an integer");
    p.order = o->get<Index>();
  } else {
    p.order = std::min({p.r.size(), p.s.size(), p.t.size()});
  }
  if (const Json* o = optional_field(j, "origin")) p.origin = preset_from_json(*o, join(path, "origin"));
  return p;
}

// matrix windows with generators --------------------------------------------

/// Generator kinds: identity, harmonic_e0, T, A, euler_rows {alpha, damping?}.
template <class Scalar>
std::function<Matrix<Scalar>(Index)> generator_from_json(const Json& j, const std::string& path,
                                                        const ParameterTriple<Scalar>* p) {
  if (!j.is_object()) throw SchemaError(path, "expected an object with \"kind\"");
  const Json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) throw SchemaError(join(path, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "identity")
    return [](Index rows) -> Matrix<Scalar> { return Matrix<Scalar>::Identity(rows, rows); };
  if (kind == "harmonic_e0")
    return [](Index rows) -> Matrix<Scalar> {
      Matrix<Scalar> m = Matrix<Scalar>::Zero(rows, rows);
      for (Index n = 0; n < rows; ++n) m(n, 0) = ScalarTraits<Scalar>::from_rational(Rational(1, n + 1));
      return m;
    };
  if (kind == "T" || kind == "A") {
    if (!p) throw SchemaError(path, "generator \"" + kind + "\" needs space parameters");
    const ParameterTriple<Scalar> base = *p;
    const bool t = kind == "T";
    return [base, t](Index rows) -> Matrix<Scalar> {
      auto q = resize(base, rows);
      if (!q) throw DimensionError("generator: parameters cannot be regenerated to order " + std::to_string(rows));
      return t ? build_T(*q).entries() : build_A(*q).entries();
    };
  }
  if (kind == "euler_rows") {
    const Rational alpha = rational_from_json(field(j, "alpha", path), join(path, "alpha"));
    Rational damping(1);
    if (const Json* d = optional_field(j, "damping")) damping = rational_from_json(*d, join(path, "damping"));
    return [alpha, damping](Index rows) -> Matrix<Scalar> {
      Matrix<Scalar> m = Matrix<Scalar>::Zero(rows, rows);
      Rational scale(1);
      for (Index n = 0; n < rows; ++n) {
        for (Index k = 0; k <= n; ++k)
          m(n, k) = ScalarTraits<Scalar>::from_rational(scale * binomial(n, k) * detail::power(alpha, k) *
                                                        detail::power(Rational(1) - alpha, n - k));
        scale *= damping;
      }
      return m;
    };
  }
  throw SchemaError(join(path, "kind"), "unknown generator \"" + kind + "\"");
}

template <class Scalar>
MatrixWindow<Scalar> window_from_json(const Json& j, const std::string& path, const ParameterTriple<Scalar>* p) {
  if (!j.is_object()) throw SchemaError(path, "expected an object with \"rows\" and \"tail\"");
  MatrixWindow<Scalar> w;
  w.tail = tail_from_json(field(j, "tail", path), join(path, "tail"));
  const Json* g = optional_field(j, "generator");
  if (g) w.extend = generator_from_json<Scalar>(*g, join(path, "generator"), p);
  if (const Json* rows = optional_field(j, "rows")) {
    w.entries = rows_from_json<Scalar>(*rows, join(path, "rows"));
  } else if (g) {
    const Json& n = field(j, "order", path);
    if (!n.is_number_integer() || n.get<Index>() <= 0) throw SchemaError(join(path, "order"), "expected a positive integer");
    w.entries = w.extend(n.get<Index>());
  } else {
    throw SchemaError(join(path, "rows"), "missing required field");
  }
  if (w.extend && w.tail != Tail::structural)
    throw SchemaError(join(path, "generator"), "a generator is only meaningful with tail \"structural\"");
  return w;
}

// hashing -------------------------------------------------------------------

/// FNV-1a over the canonical (key-sorted, compact) serialization.
std::uint64_t fnv1a(const std::string& bytes);
/// 16 hex digits; the "output" block (path, format) is left out.
std::string job_hash(const Json& job);

}  // namespace genmeans::io
