#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triangle.hpp"

namespace genmeans {

// ---------------------------------------------------------------------------
// Binomials
// ---------------------------------------------------------------------------

/// binom(top, bottom) for bottom >= 0, extended to top = -1 as (-1)^bottom.
/// Only top >= -1 occurs (m + n - k - 1 with m >= 0, n >= k).
inline Rational binomial(Index top, Index bottom) {
  if (bottom < 0) return Rational(0);
  if (top < 0) {
    if (top != -1) throw InvalidParameter("binomial: unsupported negative top " + std::to_string(top));
    return Rational(bottom % 2 == 0 ? 1 : -1);
  }
  if (bottom > top) return Rational(0);
  boost::multiprecision::mpz_int acc = 1;
  for (Index i = 1; i <= bottom; ++i) {
    acc *= (top - bottom + i);
    acc /= i;
  }
  return Rational(acc);
}

// ---------------------------------------------------------------------------
// Parameters and presets
// ---------------------------------------------------------------------------

/// Closed-form description of a sequence so a parameter set can be rebuilt at
/// any order. Values are kept exact.
struct SequenceRule {
  enum class Kind { values, constant, affine, geometric };

  Kind kind = Kind::constant;
  std::vector<Rational> values;  ///< Kind::values
  Rational a{1};                 ///< constant a | affine a*n + b | geometric a*b^n
  Rational b{0};

  static SequenceRule constant(Rational c) { return {Kind::constant, {}, std::move(c), Rational(0)}; }
  static SequenceRule ones() { return constant(Rational(1)); }
  static SequenceRule affine(Rational slope, Rational offset) {
    return {Kind::affine, {}, std::move(slope), std::move(offset)};
  }
  static SequenceRule geometric(Rational scale, Rational ratio) {
    return {Kind::geometric, {}, std::move(scale), std::move(ratio)};
  }
  static SequenceRule explicit_values(std::vector<Rational> v) { return {Kind::values, std::move(v), {}, {}}; }

  /// Number of terms available; nullopt when unbounded.
  std::optional<Index> extent() const {
    if (kind == Kind::values) return static_cast<Index>(values.size());
    return std::nullopt;
  }

  Rational at(Index n) const {
    switch (kind) {
      case Kind::values:
        if (n >= static_cast<Index>(values.size()))
          throw DimensionError("sequence has only " + std::to_string(values.size()) + " explicit terms, index " +
                               std::to_string(n) + " requested");
        return values[static_cast<std::size_t>(n)];
      case Kind::constant: return a;
      case Kind::affine: return a * Rational(n) + b;
      case Kind::geometric: {
        Rational p(1);
        for (Index i = 0; i < n; ++i) p *= b;
        return a * p;
      }
    }
    return Rational(0);
  }

  friend bool operator==(const SequenceRule&, const SequenceRule&) = default;
};

enum class PresetName { uv, euler, aydin, lambda, identity };

std::string_view to_string(PresetName p);
std::optional<PresetName> parse_preset_name(std::string_view s);

inline std::string_view to_string(PresetName p) {
  switch (p) {
    case PresetName::uv: return "uv";
    case PresetName::euler: return "euler";
    case PresetName::aydin: return "aydin";
    case PresetName::lambda: return "lambda";
    case PresetName::identity: return "identity";
  }
  return "identity";
}

inline std::optional<PresetName> parse_preset_name(std::string_view s) {
  for (auto p : {PresetName::uv, PresetName::euler, PresetName::aydin, PresetName::lambda, PresetName::identity})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

/// Known special cases of the generalized-means difference spaces.
struct PresetSpec {
  PresetName name = PresetName::identity;
  Index m = 1;
  Rational alpha{0};                               ///< euler, aydin
  SequenceRule u = SequenceRule::ones();           ///< uv
  SequenceRule v = SequenceRule::ones();           ///< uv
  SequenceRule lambda = SequenceRule::affine(1, 1);  ///< lambda

  friend bool operator==(const PresetSpec&, const PresetSpec&) = default;
};

/// Defining data (r, s, t, m) of X(r,s,t;Delta^(m)) truncated at order N.
/// The scalar mode is the template parameter.
template <class Scalar>
struct ParameterTriple {
  Vector<Scalar> r;
  Vector<Scalar> s;
  Vector<Scalar> t;
  Index m = 1;
  Index order = 0;
  std::optional<PresetSpec> origin;  ///< set when built from a preset; enables extension

  friend bool operator==(const ParameterTriple& a, const ParameterTriple& b) {
    auto same = [](const Vector<Scalar>& x, const Vector<Scalar>& y) { return x.size() == y.size() && x == y; };
    return same(a.r, b.r) && same(a.s, b.s) && same(a.t, b.t) && a.m == b.m && a.order == b.order &&
           a.origin == b.origin;
  }
};

/// Collects every violation instead of stopping at the first.
template <class Scalar>
std::vector<std::string> param_violations(const ParameterTriple<Scalar>& p) {
  std::vector<std::string> out;
  if (p.order <= 0) out.push_back("truncation order N = " + std::to_string(p.order) + " must be positive");
  if (p.m < 0) out.push_back("difference order m = " + std::to_string(p.m) + " must be >= 0");
  auto length_check = [&](const Vector<Scalar>& v, const char* name) {
    if (v.size() < p.order)
      out.push_back(std::string(name) + " has length " + std::to_string(v.size()) + " < N = " +
                    std::to_string(p.order));
  };
  length_check(p.r, "r");
  length_check(p.s, "s");
  length_check(p.t, "t");
  for (Index n = 0; n < std::min<Index>(p.order, p.r.size()); ++n)
    if (ScalarTraits<Scalar>::is_zero(p.r(n))) out.push_back("r_" + std::to_string(n) + " = 0 (r must lie in U)");
  for (Index n = 0; n < std::min<Index>(p.order, p.t.size()); ++n)
    if (ScalarTraits<Scalar>::is_zero(p.t(n))) out.push_back("t_" + std::to_string(n) + " = 0 (t must lie in U)");
  if (p.s.size() > 0 && ScalarTraits<Scalar>::is_zero(p.s(0))) out.push_back("s_0 = 0 (s must lie in U0)");
  return out;
}

template <class Scalar>
const ParameterTriple<Scalar>& validate_params(const ParameterTriple<Scalar>& p) {
  if (auto v = param_violations(p); !v.empty()) throw ValidationError(std::move(v));
  return p;
}

namespace detail {

inline Rational factorial(Index n) {
  boost::multiprecision::mpz_int f = 1;
  for (Index i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

inline Rational power(const Rational& base, Index e) {
  Rational p(1);
  for (Index i = 0; i < e; ++i) p *= base;
  return p;
}

template <class Scalar>
Vector<Scalar> convert(const std::vector<Rational>& q) {
  Vector<Scalar> out(static_cast<Index>(q.size()));
  for (Index i = 0; i < out.size(); ++i) out(i) = ScalarTraits<Scalar>::from_rational(q[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace detail

/// Builds (r, s, t) for a preset in exact arithmetic, then converts.
template <class Scalar>
ParameterTriple<Scalar> preset(const PresetSpec& spec, Index order) {
  if (order <= 0) throw InvalidParameter("preset: order must be positive");
  const auto n_terms = static_cast<std::size_t>(order);
  std::vector<Rational> r(n_terms), s(n_terms), t(n_terms);
  Index m = spec.m;
  switch (spec.name) {
    case PresetName::uv:
      for (Index n = 0; n < order; ++n) {
        Rational u = spec.u.at(n), v = spec.v.at(n);
        if (u == 0) throw InvalidParameter("uv preset: u_" + std::to_string(n) + " = 0");
        if (v == 0) throw InvalidParameter("uv preset: v_" + std::to_string(n) + " = 0");
        r[n] = Rational(1) / u;
        t[n] = v;
        s[n] = 1;
      }
      break;
    case PresetName::euler:
      if (!(spec.alpha > 0 && spec.alpha < 1)) throw InvalidParameter("euler preset requires 0 < alpha < 1");
      for (Index n = 0; n < order; ++n) {
        Rational fact = detail::factorial(n);
        r[n] = Rational(1) / fact;
        t[n] = detail::power(spec.alpha, n) / fact;
        s[n] = detail::power(Rational(1) - spec.alpha, n) / fact;
      }
      break;
    case PresetName::aydin:
      if (!(spec.alpha > 0 && spec.alpha < 1)) throw InvalidParameter("aydin preset requires 0 < alpha < 1");
      for (Index n = 0; n < order; ++n) {
        r[n] = Rational(n + 1);
        t[n] = Rational(1) + detail::power(spec.alpha, n);
        s[n] = 1;
      }
      break;
    case PresetName::lambda: {
      m = 1;
      Rational previous(0);
      Rational step_sign(0);
      for (Index n = 0; n < order; ++n) {
        Rational lam = spec.lambda.at(n);
        if (lam == 0) throw InvalidParameter("lambda preset: lambda_" + std::to_string(n) + " = 0");
        Rational diff = lam - previous;
        if (diff == 0) throw InvalidParameter("lambda preset: t_" + std::to_string(n) + " = 0");
        if (n > 0) {
          Rational sign = diff > 0 ? Rational(1) : Rational(-1);
          if (n > 1 && sign != step_sign)
            throw InvalidParameter("lambda preset: lambda is not strictly monotone at n = " + std::to_string(n));
          step_sign = sign;
        }
        r[n] = lam;
        t[n] = diff;
        s[n] = 1;
        previous = lam;
      }
      break;
    }
    case PresetName::identity:
      for (Index n = 0; n < order; ++n) {
        r[n] = 1;
        t[n] = 1;
        s[n] = n == 0 ? 1 : 0;
      }
      break;
  }
  if (m < 0) throw InvalidParameter("preset: m must be >= 0");
  ParameterTriple<Scalar> p{detail::convert<Scalar>(r), detail::convert<Scalar>(s), detail::convert<Scalar>(t),
                            m, order, spec};
  p.origin->m = m;
  return p;
}

/// Same parameters at a different order: truncation always works, growth
/// needs a preset origin.
template <class Scalar>
std::optional<ParameterTriple<Scalar>> resize(const ParameterTriple<Scalar>& p, Index order) {
  if (order <= std::min({p.r.size(), p.s.size(), p.t.size()})) {
    return ParameterTriple<Scalar>{p.r.head(order), p.s.head(order), p.t.head(order), p.m, order, p.origin};
  }
  if (p.origin) {
    try {
      return preset<Scalar>(*p.origin, order);
    } catch (const DimensionError&) {
      return std::nullopt;  // explicit-value rules ran out of terms
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Operator construction
// ---------------------------------------------------------------------------

template <class Scalar>
CoeffWindow<Scalar> d_coeffs(const ParameterTriple<Scalar>& p) {
  return toeplitz_inverse_coeffs(SequenceWindow<Scalar>{p.s.head(p.order), SeqTail::unknown, std::nullopt}, p.order);
}

/// a_nk = s_{n-k} t_k / r_n.
template <class Scalar>
TriangleMatrix<Scalar> build_A(const ParameterTriple<Scalar>& p) {
  validate_params(p);
  Matrix<Scalar> a = Matrix<Scalar>::Zero(p.order, p.order);
  for (Index n = 0; n < p.order; ++n)
    for (Index k = 0; k <= n; ++k) a(n, k) = p.s(n - k) * p.t(k) / p.r(n);
  return TriangleMatrix<Scalar>(std::move(a), Tail::structural);
}

/// (-1)^{n-k} binom(m, n-k) on the band n-m <= k <= n.
template <class Scalar>
TriangleMatrix<Scalar> build_delta(Index m, Index order) {
  if (m < 0) throw InvalidParameter("build_delta: m must be >= 0");
  if (order <= 0) throw DimensionError("build_delta: order must be positive");
  Matrix<Scalar> d = Matrix<Scalar>::Zero(order, order);
  for (Index n = 0; n < order; ++n)
    for (Index k = std::max<Index>(0, n - m); k <= n; ++k) {
      Rational c = binomial(m, n - k);
      d(n, k) = ScalarTraits<Scalar>::from_rational((n - k) % 2 == 0 ? c : Rational(-c));
    }
  return TriangleMatrix<Scalar>(std::move(d), Tail::structural);
}

/// binom(m+n-k-1, n-k).
template <class Scalar>
TriangleMatrix<Scalar> build_delta_inverse(Index m, Index order) {
  if (m < 0) throw InvalidParameter("build_delta_inverse: m must be >= 0");
  if (order <= 0) throw DimensionError("build_delta_inverse: order must be positive");
  Matrix<Scalar> d = Matrix<Scalar>::Zero(order, order);
  for (Index n = 0; n < order; ++n)
    for (Index k = 0; k <= n; ++k) d(n, k) = ScalarTraits<Scalar>::from_rational(binomial(m + n - k - 1, n - k));
  return TriangleMatrix<Scalar>(std::move(d), Tail::structural);
}

/// Inverse of A(r,s,t): b_nk = (-1)^{n-k} D_{n-k} r_k / t_n.
template <class Scalar>
TriangleMatrix<Scalar> build_B(const ParameterTriple<Scalar>& p) {
  validate_params(p);
  const auto d = d_coeffs(p);
  Matrix<Scalar> b = Matrix<Scalar>::Zero(p.order, p.order);
  for (Index n = 0; n < p.order; ++n)
    for (Index k = 0; k <= n; ++k) {
      Scalar v = d[n - k] * p.r(k) / p.t(n);
      b(n, k) = (n - k) % 2 == 0 ? v : Scalar(-v);
    }
  return TriangleMatrix<Scalar>(std::move(b), Tail::structural);
}

/// T = A(r,s,t) Delta^(m), entry by entry from the y_n kernel:
/// t_nj = (1/r_n) sum_{i=j}^{n} (-1)^{i-j} binom(m, i-j) s_{n-i} t_i.
template <class Scalar>
TriangleMatrix<Scalar> build_T(const ParameterTriple<Scalar>& p) {
  validate_params(p);
  std::vector<Scalar> band;  // (-1)^d binom(m, d)
  for (Index d = 0; d <= std::min(p.m, p.order); ++d) {
    Rational c = binomial(p.m, d);
    band.push_back(ScalarTraits<Scalar>::from_rational(d % 2 == 0 ? c : Rational(-c)));
  }
  Matrix<Scalar> t = Matrix<Scalar>::Zero(p.order, p.order);
  for (Index n = 0; n < p.order; ++n)
    for (Index j = 0; j <= n; ++j) {
      Scalar acc(0);
      for (Index i = j; i <= std::min(n, j + p.m); ++i)
        acc += band[static_cast<std::size_t>(i - j)] * p.s(n - i) * p.t(i);
      t(n, j) = acc / p.r(n);
    }
  return TriangleMatrix<Scalar>(std::move(t), Tail::structural);
}

namespace detail {

/// binom(m + d - 1, d) for d = 0 .. count-1, i.e. the Delta^(-m) band.
template <class Scalar>
std::vector<Scalar> inverse_difference_band(Index m, Index count) {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index d = 0; d < count; ++d) out.push_back(ScalarTraits<Scalar>::from_rational(binomial(m + d - 1, d)));
  return out;
}

/// (-1)^d D_d.
template <class Scalar>
std::vector<Scalar> signed_d(const CoeffWindow<Scalar>& d) {
  std::vector<Scalar> out;
  for (Index i = 0; i < d.length(); ++i) out.push_back(i % 2 == 0 ? d[i] : Scalar(-d[i]));
  return out;
}

}  // namespace detail

/// Closed-form inverse of T:
/// s_jk = sum_{i=k}^{j} (-1)^{i-k} binom(m+j-i-1, j-i) (D_{i-k}/t_i) r_k.
template <class Scalar>
TriangleMatrix<Scalar> build_S(const ParameterTriple<Scalar>& p) {
  validate_params(p);
  const auto band = detail::inverse_difference_band<Scalar>(p.m, p.order);
  const auto sd = detail::signed_d(d_coeffs(p));
  Matrix<Scalar> s = Matrix<Scalar>::Zero(p.order, p.order);
  for (Index j = 0; j < p.order; ++j)
    for (Index k = 0; k <= j; ++k) {
      Scalar acc(0);
      for (Index i = k; i <= j; ++i)
        acc += band[static_cast<std::size_t>(j - i)] * sd[static_cast<std::size_t>(i - k)] / p.t(i);
      s(j, k) = acc * p.r(k);
    }
  return TriangleMatrix<Scalar>(std::move(s), Tail::structural);
}

// ---------------------------------------------------------------------------
// Transforms and norm
// ---------------------------------------------------------------------------

template <class Scalar>
void require_length(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& x, const char* what) {
  if (x.length() != p.order)
    throw DimensionError(std::string(what) + ": sequence length " + std::to_string(x.length()) +
                         " does not match N = " + std::to_string(p.order));
}

/// y = A(r,s,t) Delta^(m) x.
template <class Scalar>
SequenceWindow<Scalar> transform(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& x) {
  require_length(p, x, "transform");
  return apply(build_T(p), x);
}

/// x = S y, the explicit double-sum inverse.
template <class Scalar>
SequenceWindow<Scalar> inverse_transform(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& y) {
  require_length(p, y, "inverse_transform");
  return apply(build_S(p), y);
}

template <class Scalar>
struct NormReport {
  Scalar value{0};
  Index argmax = 0;  ///< smallest index attaining the sup
  /// True unless x has zero tail and T is zero-tail-compatible; the
  /// reported value is then only a lower bound for the norm.
  bool truncation_lower_bound = true;
};

/// sup_n |(Tx)_n| over the window.
template <class Scalar>
NormReport<Scalar> space_norm(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& x) {
  require_length(p, x, "space_norm");
  const auto t = build_T(p);
  const auto y = apply(t, x);
  NormReport<Scalar> out;
  for (Index n = 0; n < y.length(); ++n) {
    Scalar a = ScalarTraits<Scalar>::abs(y[n]);
    if (a > out.value) {
      out.value = a;
      out.argmax = n;
    }
  }
  out.truncation_lower_bound = !(x.tail == SeqTail::zero && t.tail() == Tail::zero);
  return out;
}

}  // namespace genmeans
