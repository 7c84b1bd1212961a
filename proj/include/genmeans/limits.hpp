#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triangle.hpp"

namespace genmeans {

enum class Outcome { satisfied, violated, indeterminate };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::satisfied: return "satisfied";
    case Outcome::violated: return "violated";
    case Outcome::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

/// Outcome plus the diagnostic trace that produced it.
struct Verdict {
  Outcome outcome = Outcome::indeterminate;
  std::vector<std::string> trace;

  bool satisfied() const { return outcome == Outcome::satisfied; }
  bool violated() const { return outcome == Outcome::violated; }
  bool indeterminate() const { return outcome == Outcome::indeterminate; }
};

/// Evaluation knobs shared by the limit machinery.
struct EvalOptions {
  double tolerance = kDefaultTolerance;
  Index window = 8;          ///< W, trailing values inspected for trends
  Index extend_factor = 4;   ///< structural tails are regenerated up to this multiple of N
  Index brute_force_columns = 12;
};

enum class LimitKind { sup, lim, limsup, exists };
enum class LimitStatus { exact, trend_converged, indeterminate };
enum class Trend { exact, converged, extrapolated, monotone, oscillating };

inline std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::sup: return "sup";
    case LimitKind::lim: return "lim";
    case LimitKind::limsup: return "limsup";
    case LimitKind::exists: return "exists";
  }
  return "lim";
}

inline std::string_view to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::exact: return "exact";
    case LimitStatus::trend_converged: return "trend-converged";
    case LimitStatus::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

inline std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::exact: return "exact";
    case Trend::converged: return "converged";
    case Trend::extrapolated: return "extrapolated";
    case Trend::monotone: return "monotone";
    case Trend::oscillating: return "oscillating";
  }
  return "oscillating";
}

/// Numerically observed limit / limsup / sup with the window that produced it.
template <class Scalar>
struct LimitEstimate {
  LimitKind kind = LimitKind::lim;
  Scalar value{0};
  std::optional<Scalar> upper;  ///< set when only an interval [value, upper] is known
  std::vector<Index> window;    ///< indices inspected
  std::vector<Scalar> trace;    ///< values at those indices
  LimitStatus status = LimitStatus::indeterminate;
  Trend trend = Trend::oscillating;
  std::string note;

  bool decided() const { return status != LimitStatus::indeterminate; }
};

/// General matrix truncation: `entries` holds rows 0..R-1, and every stored
/// row vanishes beyond column C-1. `tail` describes rows R, R+1, ...; for a
/// structural tail `extend(R')` regenerates the first R' rows.
template <class Scalar>
struct MatrixWindow {
  Matrix<Scalar> entries;
  Tail tail = Tail::unknown;
  std::function<Matrix<Scalar>(Index rows)> extend;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }

  static MatrixWindow from(const TriangleMatrix<Scalar>& t) { return {t.entries(), t.tail(), {}}; }

  /// Rows up to `target` when a generator exists, otherwise what is stored.
  Matrix<Scalar> extended(Index target) const {
    if (tail == Tail::structural && extend && target > rows()) return extend(target);
    return entries;
  }
};

namespace detail {

template <class Scalar>
double spread(const std::vector<Scalar>& v, std::size_t from) {
  if (from >= v.size()) return 0.0;
  auto [lo, hi] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(from), v.end());
  return ScalarTraits<Scalar>::to_double(Scalar(*hi - *lo));
}

template <class Scalar>
bool monotone(const std::vector<Scalar>& v, double eps) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    double d = ScalarTraits<Scalar>::to_double(Scalar(v[i] - v[i - 1]));
    if (d < -eps) up = false;
    if (d > eps) down = false;
  }
  return up || down;
}

}  // namespace detail

/// True when the values never step against a single direction (beyond eps).
template <class Scalar>
bool is_monotone(const std::vector<Scalar>& v, double eps = kDefaultTolerance) {
  return detail::monotone(v, eps);
}

/// Limit of a sequence known at indices first_index, first_index+1, ...
/// from its trailing window. First the raw window is tested for spread < eps;
/// failing that, a monotone window is accelerated with the first-order
/// Richardson step L_n = (n+1) v_n - n v_{n-1} and the accelerated window is
/// tested the same way.
template <class Scalar>
LimitEstimate<Scalar> trend_limit(const std::vector<Scalar>& values, Index first_index, const EvalOptions& opt,
                                  LimitKind kind = LimitKind::lim) {
  LimitEstimate<Scalar> est;
  est.kind = kind;
  if (values.empty()) {
    est.note = "no values";
    return est;
  }
  const std::size_t w = static_cast<std::size_t>(std::max<Index>(2, opt.window));
  const std::size_t from = values.size() > w ? values.size() - w : 0;
  for (std::size_t i = from; i < values.size(); ++i) {
    est.window.push_back(first_index + static_cast<Index>(i));
    est.trace.push_back(values[i]);
  }
  const bool full = values.size() - from >= w;
  if (full && detail::spread(est.trace, 0) < opt.tolerance) {
    est.status = LimitStatus::trend_converged;
    est.trend = Trend::converged;
    est.value = kind == LimitKind::limsup ? *std::max_element(est.trace.begin(), est.trace.end()) : est.trace.back();
    return est;
  }
  est.value = est.trace.back();
  if (detail::monotone(est.trace, opt.tolerance)) {
    est.trend = Trend::monotone;
    if (full && from > 0) {
      std::vector<Scalar> accelerated;
      for (std::size_t i = from; i < values.size(); ++i) {
        Scalar n(first_index + static_cast<Index>(i));
        accelerated.push_back(Scalar((n + Scalar(1)) * values[i] - n * values[i - 1]));
      }
      if (detail::spread(accelerated, 0) < opt.tolerance) {
        est.status = LimitStatus::trend_converged;
        est.trend = Trend::extrapolated;
        est.value = accelerated.back();
        est.note = "first-order Richardson extrapolation of the trailing window";
        return est;
      }
    }
  } else {
    est.trend = Trend::oscillating;
  }
  est.note = "trailing window did not settle within tolerance";
  return est;
}

/// Exact limit known in closed form (eventually constant data).
template <class Scalar>
LimitEstimate<Scalar> exact_limit(Scalar value, LimitKind kind, std::string note = {}) {
  LimitEstimate<Scalar> est;
  est.kind = kind;
  est.value = std::move(value);
  est.status = LimitStatus::exact;
  est.trend = Trend::exact;
  est.note = std::move(note);
  return est;
}

/// Does the estimated quantity equal zero (within tolerance)?
template <class Scalar>
Outcome zero_outcome(const LimitEstimate<Scalar>& e, double eps) {
  if (!e.decided()) return Outcome::indeterminate;
  if (e.upper) {
    if (ScalarTraits<Scalar>::to_double(ScalarTraits<Scalar>::abs(*e.upper)) <= eps) return Outcome::satisfied;
    if (ScalarTraits<Scalar>::to_double(ScalarTraits<Scalar>::abs(e.value)) > eps) return Outcome::violated;
    return Outcome::indeterminate;
  }
  if (e.status == LimitStatus::exact && ScalarTraits<Scalar>::exact)
    return ScalarTraits<Scalar>::is_zero(e.value) ? Outcome::satisfied : Outcome::violated;
  return ScalarTraits<Scalar>::to_double(ScalarTraits<Scalar>::abs(e.value)) <= eps ? Outcome::satisfied
                                                                                   : Outcome::violated;
}

/// Finiteness / existence claims: decided means satisfied.
template <class Scalar>
Outcome finite_outcome(const LimitEstimate<Scalar>& e) {
  return e.decided() ? Outcome::satisfied : Outcome::indeterminate;
}

/// Combines per-item outcomes: any violation decided on its own wins only
/// when nothing is indeterminate.
inline Outcome all_of(const std::vector<Outcome>& outcomes) {
  bool violated = false;
  for (Outcome o : outcomes) {
    if (o == Outcome::indeterminate) return Outcome::indeterminate;
    if (o == Outcome::violated) violated = true;
  }
  return violated ? Outcome::violated : Outcome::satisfied;
}

// ---------------------------------------------------------------------------
// sup over finite column sets K of sum_n |sum_{k in K} a_nk|
// ---------------------------------------------------------------------------

template <class Scalar>
struct SubsetSupResult {
  Scalar lower{0};
  Scalar upper{0};  ///< equals lower when exact
  bool brute_force = false;
  std::vector<Index> best_columns;
  std::vector<Scalar> prefix_trace;  ///< value on row prefixes ending at the trailing rows (brute force only)
};

/// Exact over all subsets of nonzero columns when there are at most
/// `max_columns` of them (Gray-code enumeration, one pass per row);
/// otherwise the pair [best of single columns and the two sign-aligned
/// greedy sets, sum of all |a_nk|].
template <class Scalar>
SubsetSupResult<Scalar> subset_sup(const Matrix<Scalar>& a, Index max_columns, Index trailing_rows = 0) {
  SubsetSupResult<Scalar> res;
  std::vector<Index> cols;
  for (Index k = 0; k < a.cols(); ++k)
    for (Index n = 0; n < a.rows(); ++n)
      if (!ScalarTraits<Scalar>::is_zero(a(n, k))) {
        cols.push_back(k);
        break;
      }
  if (cols.empty()) {
    res.brute_force = true;
    return res;
  }
  if (static_cast<Index>(cols.size()) <= max_columns) {
    res.brute_force = true;
    const std::size_t c = cols.size();
    const std::size_t subsets = std::size_t{1} << c;
    std::vector<Scalar> total(subsets, Scalar(0));
    const Index first_trace_row = std::max<Index>(0, a.rows() - trailing_rows);
    for (Index n = 0; n < a.rows(); ++n) {
      Scalar sum(0);
      std::size_t gray = 0;
      for (std::size_t i = 1; i < subsets; ++i) {
        const std::size_t next = i ^ (i >> 1);
        const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(next ^ gray));
        const Scalar& v = a(n, cols[bit]);
        if (next & (std::size_t{1} << bit)) sum += v; else sum -= v;
        gray = next;
        total[gray] += ScalarTraits<Scalar>::abs(sum);
      }
      if (trailing_rows > 0 && n >= first_trace_row)
        res.prefix_trace.push_back(*std::max_element(total.begin(), total.end()));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < subsets; ++i)
      if (total[i] > total[best]) best = i;
    res.lower = res.upper = total[best];
    for (std::size_t b = 0; b < c; ++b)
      if (best & (std::size_t{1} << b)) res.best_columns.push_back(cols[b]);
    return res;
  }
  auto value_of = [&](const std::vector<Index>& set) {
    Scalar acc(0);
    for (Index n = 0; n < a.rows(); ++n) {
      Scalar row(0);
      for (Index k : set) row += a(n, k);
      acc += ScalarTraits<Scalar>::abs(row);
    }
    return acc;
  };
  Scalar upper(0);
  for (Index n = 0; n < a.rows(); ++n)
    for (Index k : cols) upper += ScalarTraits<Scalar>::abs(a(n, k));
  std::vector<Index> positive, negative;
  for (Index k : cols) {
    Scalar colsum(0);
    for (Index n = 0; n < a.rows(); ++n) colsum += a(n, k);
    (colsum >= Scalar(0) ? positive : negative).push_back(k);
  }
  res.lower = Scalar(0);
  auto consider = [&](const std::vector<Index>& set) {
    if (set.empty()) return;
    Scalar v = value_of(set);
    if (v > res.lower) {
      res.lower = v;
      res.best_columns = set;
    }
  };
  for (Index k : cols) consider({k});
  consider(positive);
  consider(negative);
  res.upper = upper;
  return res;
}

}  // namespace genmeans
