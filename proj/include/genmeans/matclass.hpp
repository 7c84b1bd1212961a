#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bases_duals.hpp"
#include "limits.hpp"
#include "operators.hpp"

namespace genmeans {

// ---------------------------------------------------------------------------
// Condition ids
// ---------------------------------------------------------------------------

enum class ConditionId {
  c4_4, c4_5, c4_6, c4_7, c4_8, c4_9, c4_10, c4_11,
  c4_13, c4_14, c4_15, c4_16, c4_17, c4_18, c4_19, c4_20, c4_21, c4_22, c4_23, c4_24, c4_25,
};

inline constexpr std::array<ConditionId, 21> kAllConditions = {
    ConditionId::c4_4,  ConditionId::c4_5,  ConditionId::c4_6,  ConditionId::c4_7,  ConditionId::c4_8,
    ConditionId::c4_9,  ConditionId::c4_10, ConditionId::c4_11, ConditionId::c4_13, ConditionId::c4_14,
    ConditionId::c4_15, ConditionId::c4_16, ConditionId::c4_17, ConditionId::c4_18, ConditionId::c4_19,
    ConditionId::c4_20, ConditionId::c4_21, ConditionId::c4_22, ConditionId::c4_23, ConditionId::c4_24,
    ConditionId::c4_25,
};

inline std::string_view label(ConditionId id) {
  static constexpr std::array<std::string_view, 21> names = {
      "4.4",  "4.5",  "4.6",  "4.7",  "4.8",  "4.9",  "4.10", "4.11", "4.13", "4.14", "4.15",
      "4.16", "4.17", "4.18", "4.19", "4.20", "4.21", "4.22", "4.23", "4.24", "4.25"};
  return names[static_cast<std::size_t>(id)];
}

inline std::string_view statement(ConditionId id) {
  switch (id) {
    case ConditionId::c4_4: return "sup_K sum_n |sum_{k in K} a_nk| < inf";
    case ConditionId::c4_5: return "sup_n sum_k |a_nk| < inf";
    case ConditionId::c4_6: return "lim_n sum_k |a_nk| = 0";
    case ConditionId::c4_7: return "lim_n a_nk = 0 for all k";
    case ConditionId::c4_8: return "lim_n sum_k a_nk = 0";
    case ConditionId::c4_9: return "lim_n a_nk exists for all k";
    case ConditionId::c4_10: return "lim_n sum_k |a_nk - alpha_k| = 0";
    case ConditionId::c4_11: return "lim_n sum_k a_nk exists";
    case ConditionId::c4_13: return "sup_n sum_k |R_k(A_n)| < inf";
    case ConditionId::c4_14: return "lim_n R_k(A_n) = 0 for all k";
    case ConditionId::c4_15: return "sup_p sum_{k<=p} |w_pk^{A_n}| < inf for all n";
    case ConditionId::c4_16: return "lim_p w_pk^{A_n} = 0 for all k, n";
    case ConditionId::c4_17: return "lim_n R_k(A_n) exists for all k";
    case ConditionId::c4_18: return "lim_n sum_k |R_k(A_n)| = 0";
    case ConditionId::c4_19: return "lim_p sum_{k<=p} |w_pk^{A_n}| = 0 for all n";
    case ConditionId::c4_20: return "lim_n sum_k |R_k(A_n) - lim_n R_k(A_n)| = 0";
    case ConditionId::c4_21: return "lim_p w_pk^{A_n} exists for all k, n";
    case ConditionId::c4_22: return "lim_p sum_{k<=p} w_pk^{A_n} exists for all n";
    case ConditionId::c4_23: return "R_k(A_n)e - (gamma_n) in c0";
    case ConditionId::c4_24: return "R_k(A_n)e - (gamma_n) in l_inf";
    case ConditionId::c4_25: return "R_k(A_n)e - (gamma_n) in c";
  }
  return "";
}

inline std::optional<ConditionId> parse_condition(std::string_view s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  for (ConditionId id : kAllConditions)
    if (label(id) == s) return id;
  return std::nullopt;
}

/// Conditions stated directly on a matrix, as opposed to its associate objects.
constexpr bool is_raw(ConditionId id) { return id <= ConditionId::c4_11; }

/// How the gamma-shifted membership conditions are evaluated.
inline constexpr std::string_view kGammaShiftReading =
    "R_k(A_n)e - (gamma_n) in Y is evaluated as: the sequence n -> sum_k R_k(A_n) - gamma_n lies in Y";

template <class Scalar>
struct ConditionResult {
  ConditionId id = ConditionId::c4_4;
  LimitEstimate<Scalar> estimate;
  Outcome outcome = Outcome::indeterminate;
};

// ---------------------------------------------------------------------------
// Row samples and the exact / trend / indeterminate ladder
// ---------------------------------------------------------------------------

/// Rows of a matrix window as inspected: the stored rows, or for a
/// structural tail with a generator, the rows regenerated up to
/// extend_factor times as many.
template <class Scalar>
struct RowSample {
  Matrix<Scalar> rows;
  Index stored_rows = 0;
  Index stored_cols = 0;
  Tail tail = Tail::unknown;
  bool extended = false;
};

template <class Scalar>
RowSample<Scalar> sample(const MatrixWindow<Scalar>& w, const EvalOptions& opt) {
  RowSample<Scalar> out;
  out.stored_rows = w.rows();
  out.stored_cols = w.cols();
  out.tail = w.tail;
  out.rows = w.extended(std::max<Index>(1, w.rows()) * opt.extend_factor);
  out.extended = out.rows.rows() > w.rows();
  return out;
}

namespace detail {

inline int severity(LimitStatus s) {
  switch (s) {
    case LimitStatus::exact: return 0;
    case LimitStatus::trend_converged: return 1;
    case LimitStatus::indeterminate: return 2;
  }
  return 2;
}

template <class Scalar>
void keep_window(LimitEstimate<Scalar>& est, const std::vector<Scalar>& values, const EvalOptions& opt) {
  const std::size_t w = static_cast<std::size_t>(std::max<Index>(1, opt.window));
  const std::size_t from = values.size() > w ? values.size() - w : 0;
  for (std::size_t i = from; i < values.size(); ++i) {
    est.window.push_back(static_cast<Index>(i));
    est.trace.push_back(values[i]);
  }
}

template <class Scalar>
Scalar abs_sum(const Matrix<Scalar>& m, Index row) {
  Scalar acc(0);
  for (Index k = 0; k < m.cols(); ++k) acc += ScalarTraits<Scalar>::abs(m(row, k));
  return acc;
}

template <class Scalar>
Scalar signed_sum(const Matrix<Scalar>& m, Index row) {
  Scalar acc(0);
  for (Index k = 0; k < m.cols(); ++k) acc += m(row, k);
  return acc;
}

}  // namespace detail

/// Limit over n of a per-row quantity v_n. `at_zero_row` is the value the
/// quantity takes on an all-zero row, which is every row past the window
/// under a zero tail.
template <class Scalar>
LimitEstimate<Scalar> limit_over_rows(const std::vector<Scalar>& values, const Scalar& at_zero_row, Tail tail,
                                      LimitKind kind, const EvalOptions& opt) {
  if (tail == Tail::zero) {
    Scalar v = at_zero_row;
    if (kind == LimitKind::sup)
      for (const auto& x : values)
        if (x > v) v = x;
    auto est = exact_limit(v, kind, "rows past the window vanish");
    detail::keep_window(est, values, opt);
    return est;
  }
  auto est = trend_limit(values, 0, opt, kind == LimitKind::sup ? LimitKind::limsup : kind);
  est.kind = kind;
  if (kind == LimitKind::sup && est.decided())
    for (const auto& x : values)
      if (x > est.value) est.value = x;
  if (tail == Tail::unknown) {
    est.status = LimitStatus::indeterminate;
    est.note = "unknown tail; trend shown for information only";
  }
  return est;
}

/// lim_n m(n, k) for every k < columns.
template <class Scalar>
std::vector<LimitEstimate<Scalar>> column_limits(const Matrix<Scalar>& m, Index columns, Tail tail,
                                                 const EvalOptions& opt) {
  std::vector<LimitEstimate<Scalar>> out;
  std::vector<Scalar> values(static_cast<std::size_t>(m.rows()));
  for (Index k = 0; k < std::min(columns, m.cols()); ++k) {
    for (Index n = 0; n < m.rows(); ++n) values[static_cast<std::size_t>(n)] = m(n, k);
    out.push_back(limit_over_rows(values, Scalar(0), tail, LimitKind::lim, opt));
  }
  return out;
}

/// Folds per-column estimates into one: value max_k |lim_k|, worst status.
template <class Scalar>
LimitEstimate<Scalar> fold_columns(const std::vector<LimitEstimate<Scalar>>& cols, LimitKind kind) {
  LimitEstimate<Scalar> out;
  out.kind = kind;
  out.status = LimitStatus::exact;
  out.trend = Trend::exact;
  out.note = "max over columns k < " + std::to_string(cols.size()) + " of |lim_n a_nk|";
  Index worst = -1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    Scalar a = ScalarTraits<Scalar>::abs(cols[k].value);
    if (a > out.value) out.value = a;
    if (detail::severity(cols[k].status) > detail::severity(out.status)) {
      out.status = cols[k].status;
      out.trend = cols[k].trend;
      worst = static_cast<Index>(k);
    }
  }
  if (worst >= 0) {
    out.window = cols[static_cast<std::size_t>(worst)].window;
    out.trace = cols[static_cast<std::size_t>(worst)].trace;
    out.note += "; least settled column " + std::to_string(worst);
  } else if (!cols.empty()) {
    out.window = cols.back().window;
    out.trace = cols.back().trace;
  }
  return out;
}

namespace detail {

template <class Scalar>
LimitEstimate<Scalar> worse(LimitEstimate<Scalar> est, LimitStatus other, const std::string& why) {
  if (severity(other) > severity(est.status)) {
    est.status = other;
    if (!why.empty()) est.note += (est.note.empty() ? "" : "; ") + why;
  }
  return est;
}

template <class Scalar>
std::vector<Scalar> row_values(const Matrix<Scalar>& m, bool absolute) {
  std::vector<Scalar> out;
  for (Index n = 0; n < m.rows(); ++n) out.push_back(absolute ? abs_sum(m, n) : signed_sum(m, n));
  return out;
}

/// sum_k |a_nk - alpha_k| over the sample, with alpha_k the column limits for
/// stored columns and 0 for columns that exist only in regenerated rows.
template <class Scalar>
LimitEstimate<Scalar> deviation_limit(const RowSample<Scalar>& s, const std::vector<LimitEstimate<Scalar>>& alpha,
                                      LimitKind kind, const EvalOptions& opt) {
  auto alpha_at = [&](Index k) { return k < static_cast<Index>(alpha.size()) ? alpha[k].value : Scalar(0); };
  std::vector<Scalar> values;
  for (Index n = 0; n < s.rows.rows(); ++n) {
    Scalar acc(0);
    for (Index k = 0; k < s.rows.cols(); ++k) acc += ScalarTraits<Scalar>::abs(Scalar(s.rows(n, k) - alpha_at(k)));
    values.push_back(acc);
  }
  Scalar at_zero(0);
  for (const auto& a : alpha) at_zero += ScalarTraits<Scalar>::abs(a.value);
  auto est = limit_over_rows(values, at_zero, s.tail, kind, opt);
  const auto folded = fold_columns(alpha, LimitKind::lim);
  return worse(std::move(est), folded.status, "column limits: " + folded.note);
}

template <class Scalar>
ConditionResult<Scalar> subset_condition(const RowSample<Scalar>& s, const EvalOptions& opt) {
  ConditionResult<Scalar> res;
  res.id = ConditionId::c4_4;
  const auto sup = subset_sup(s.rows, opt.brute_force_columns, opt.window);
  auto& est = res.estimate;
  est.kind = LimitKind::sup;
  est.value = sup.lower;
  if (!sup.brute_force) est.upper = sup.upper;
  const std::string how = sup.brute_force ? "all subsets of nonzero columns" : "bounds: best single/sign-aligned set .. sum of |a_nk|";
  if (s.tail == Tail::zero) {
    est.status = LimitStatus::exact;
    est.trend = Trend::exact;
    est.note = how + "; rows past the window vanish";
  } else if (s.tail == Tail::structural && sup.brute_force) {
    const Index first = s.rows.rows() - static_cast<Index>(sup.prefix_trace.size());
    est = trend_limit(sup.prefix_trace, first, opt, LimitKind::sup);
    est.kind = LimitKind::sup;
    est.note = how + " on row prefixes; " + est.note;
    if (est.decided() && sup.lower > est.value) est.value = sup.lower;
  } else {
    est.status = LimitStatus::indeterminate;
    est.note = how + "; the sum over n is not closed by the declared tail";
  }
  res.outcome = finite_outcome(est);
  return res;
}

}  // namespace detail

/// Conditions stated on the raw matrix, evaluated on a row sample.
template <class Scalar>
ConditionResult<Scalar> eval_raw_condition(ConditionId id, const RowSample<Scalar>& s, const EvalOptions& opt) {
  if (!is_raw(id))
    throw InvalidParameter(std::string("condition ") + std::string(label(id)) +
                           " is stated on associate objects and needs the parameters of the space");
  if (id == ConditionId::c4_4) return detail::subset_condition(s, opt);
  ConditionResult<Scalar> res;
  res.id = id;
  switch (id) {
    case ConditionId::c4_5:
      res.estimate = limit_over_rows(detail::row_values(s.rows, true), Scalar(0), s.tail, LimitKind::sup, opt);
      res.outcome = finite_outcome(res.estimate);
      break;
    case ConditionId::c4_6:
      res.estimate = limit_over_rows(detail::row_values(s.rows, true), Scalar(0), s.tail, LimitKind::lim, opt);
      res.outcome = zero_outcome(res.estimate, opt.tolerance);
      break;
    case ConditionId::c4_7:
      res.estimate = fold_columns(column_limits(s.rows, s.stored_cols, s.tail, opt), LimitKind::lim);
      res.outcome = zero_outcome(res.estimate, opt.tolerance);
      break;
    case ConditionId::c4_8:
      res.estimate = limit_over_rows(detail::row_values(s.rows, false), Scalar(0), s.tail, LimitKind::lim, opt);
      res.outcome = zero_outcome(res.estimate, opt.tolerance);
      break;
    case ConditionId::c4_9:
      res.estimate = fold_columns(column_limits(s.rows, s.stored_cols, s.tail, opt), LimitKind::exists);
      res.outcome = finite_outcome(res.estimate);
      break;
    case ConditionId::c4_10:
      res.estimate =
          detail::deviation_limit(s, column_limits(s.rows, s.stored_cols, s.tail, opt), LimitKind::lim, opt);
      res.outcome = zero_outcome(res.estimate, opt.tolerance);
      break;
    case ConditionId::c4_11:
      res.estimate = limit_over_rows(detail::row_values(s.rows, false), Scalar(0), s.tail, LimitKind::exists, opt);
      res.outcome = finite_outcome(res.estimate);
      break;
    default: break;
  }
  return res;
}

template <class Scalar>
ConditionResult<Scalar> eval_condition(ConditionId id, const MatrixWindow<Scalar>& m, const EvalOptions& opt = {}) {
  return eval_raw_condition(id, sample(m, opt), opt);
}

template <class Scalar>
ConditionResult<Scalar> eval_condition(ConditionId id, const TriangleMatrix<Scalar>& m, const EvalOptions& opt = {}) {
  return eval_condition(id, MatrixWindow<Scalar>::from(m), opt);
}

// ---------------------------------------------------------------------------
// Transformed rows R_k(A_n) and the W tensor
// ---------------------------------------------------------------------------

namespace detail {

template <class Scalar>
Matrix<Scalar> pad_columns(const Matrix<Scalar>& m, Index cols) {
  if (m.cols() == cols) return m;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(m.rows(), cols);
  out.leftCols(m.cols()) = m;
  return out;
}

/// Rows padded to a common order together with the parameters at that order.
template <class Scalar>
struct Aligned {
  Matrix<Scalar> rows;
  ParameterTriple<Scalar> p;
};

template <class Scalar>
std::optional<Aligned<Scalar>> align(const ParameterTriple<Scalar>& p, const Matrix<Scalar>& rows) {
  const Index width = std::max(rows.cols(), p.order);
  std::optional<ParameterTriple<Scalar>> q = width == p.order ? std::optional(p) : resize(p, width);
  if (!q) return std::nullopt;
  return Aligned<Scalar>{pad_columns(rows, width), std::move(*q)};
}

/// (A S)_nk = sum_{j>=k} a_nj s_jk.
template <class Scalar>
Matrix<Scalar> times_lower(const Matrix<Scalar>& a, const TriangleMatrix<Scalar>& s) {
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), s.order());
  for (Index n = 0; n < a.rows(); ++n)
    for (Index j = 0; j < a.cols(); ++j) {
      if (ScalarTraits<Scalar>::is_zero(a(n, j))) continue;
      for (Index k = 0; k <= j; ++k) out(n, k) += a(n, j) * s(j, k);
    }
  return out;
}

template <class Scalar>
void check_closed_form(const Aligned<Scalar>& al, const Matrix<Scalar>& at, Index rows, double eps) {
  const ClosedFormTables<Scalar> tab(al.p);
  for (Index n = 0; n < rows; ++n) {
    const Vector<Scalar> closed = associate_closed_form(al.p, tab, Vector<Scalar>(al.rows.row(n).transpose()));
    for (Index k = 0; k < at.cols(); ++k)
      if (!agree(at(n, k), closed(k), eps))
        throw InconsistencyError("associate matrix: definition and closed form disagree at (" + std::to_string(n) +
                                 "," + std::to_string(k) + ")");
  }
}

template <class Scalar>
Aligned<Scalar> require_aligned(const ParameterTriple<Scalar>& p, const Matrix<Scalar>& rows, const char* what) {
  auto al = align(p, rows);
  if (!al)
    throw DimensionError(std::string(what) + ": rows reach column " + std::to_string(rows.cols() - 1) +
                         " but the parameters stop at N = " + std::to_string(p.order) + " and cannot be regenerated");
  return std::move(*al);
}

}  // namespace detail

/// B^A with rows R(A_n): entries R_k(A_n), checked against the closed form on
/// every stored row. A structural tail with a generator stays extendable.
template <class Scalar>
MatrixWindow<Scalar> transformed_rows(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a,
                                      double eps = kDefaultTolerance) {
  validate_params(p);
  const auto al = detail::require_aligned(p, a.entries, "transformed_rows");
  Matrix<Scalar> at = detail::times_lower(al.rows, build_S(al.p));
  detail::check_closed_form(al, at, al.rows.rows(), eps);
  MatrixWindow<Scalar> out{at, a.tail, {}};
  if (a.tail == Tail::structural && a.extend) {
    out.extend = [p, a, at](Index target) -> Matrix<Scalar> {
      auto grown = detail::align(p, a.extend(target));
      if (!grown) return at;
      return detail::times_lower(grown->rows, build_S(grown->p));
    };
  }
  return out;
}

/// Row-by-row form; every row must have zero tail.
template <class Scalar>
MatrixWindow<Scalar> transformed_rows(const ParameterTriple<Scalar>& p, const std::vector<SequenceWindow<Scalar>>& rows,
                                      Tail tail, double eps = kDefaultTolerance) {
  Index width = 0;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].tail != SeqTail::zero)
      throw TailError("row " + std::to_string(n) + " has no declared zero tail");
    width = std::max(width, rows[n].length());
  }
  Matrix<Scalar> m = Matrix<Scalar>::Zero(static_cast<Index>(rows.size()), width);
  for (std::size_t n = 0; n < rows.size(); ++n)
    m.row(static_cast<Index>(n)).head(rows[n].length()) = rows[n].values.transpose();
  return transformed_rows(p, MatrixWindow<Scalar>{std::move(m), tail, {}}, eps);
}

/// What the W^{A_n} conditions need from one row of A.
template <class Scalar>
struct WRowSummary {
  Index row = 0;
  Index support_end = 0;        ///< w_pk = 0 for p >= support_end
  Scalar sup_abs_row_sum{0};    ///< sup_p sum_{k<=p} |w_pk|
  Scalar gamma{0};              ///< lim_p sum_{k<=p} w_pk
};

template <class Scalar>
struct WTensor {
  std::vector<WMatrix<Scalar>> rows;
  std::vector<Scalar> gamma;
  Tail tail = Tail::unknown;
};

namespace detail {

template <class Scalar>
WRowSummary<Scalar> summarize_w(const TriangleMatrix<Scalar>& s, const Vector<Scalar>& a, Index row) {
  WRowSummary<Scalar> out;
  out.row = row;
  out.support_end = support_end(a);
  const Matrix<Scalar> w = w_by_definition(s, a);
  for (Index p = 0; p < w.rows(); ++p) {
    Scalar acc(0);
    for (Index k = 0; k <= p; ++k) acc += ScalarTraits<Scalar>::abs(w(p, k));
    if (acc > out.sup_abs_row_sum) out.sup_abs_row_sum = acc;
  }
  // past the support every w_pk vanishes, so the p-limits are attained there
  out.gamma = Scalar(0);
  return out;
}

}  // namespace detail

/// W^{A_n} for each stored row together with gamma_n.
template <class Scalar>
WTensor<Scalar> w_tensor(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a,
                         double eps = kDefaultTolerance) {
  validate_params(p);
  const auto al = detail::require_aligned(p, a.entries, "w_tensor");
  WTensor<Scalar> out;
  out.tail = a.tail;
  for (Index n = 0; n < al.rows.rows(); ++n) {
    SequenceWindow<Scalar> row{al.rows.row(n).transpose(), SeqTail::zero, std::nullopt};
    out.rows.push_back(w_matrix(al.p, row, eps));
    out.gamma.push_back(Scalar(0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation context for all 21 conditions
// ---------------------------------------------------------------------------

template <class Scalar>
struct TransformedContext {
  RowSample<Scalar> a;
  RowSample<Scalar> a_tilde;
  std::vector<WRowSummary<Scalar>> w;  ///< one per row of a.rows
  std::vector<std::string> notes;
};

template <class Scalar>
TransformedContext<Scalar> make_context(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a,
                                        const EvalOptions& opt = {}) {
  validate_params(p);
  TransformedContext<Scalar> ctx;
  ctx.a = sample(a, opt);
  auto al = detail::align(p, ctx.a.rows);
  if (!al && ctx.a.extended) {
    ctx.notes.push_back("parameters cannot be regenerated past N; regenerated rows dropped");
    ctx.a.rows = a.entries;
    ctx.a.extended = false;
    al = detail::align(p, ctx.a.rows);
  }
  if (!al) al = detail::require_aligned(p, ctx.a.rows, "make_context");
  if (ctx.a.extended)
    ctx.notes.push_back("structural tail regenerated to " + std::to_string(ctx.a.rows.rows()) + " rows");
  const auto s = build_S(al->p);
  ctx.a_tilde.rows = detail::times_lower(al->rows, s);
  ctx.a_tilde.stored_rows = ctx.a.stored_rows;
  ctx.a_tilde.stored_cols = std::max(a.cols(), p.order);
  ctx.a_tilde.tail = ctx.a.tail;
  ctx.a_tilde.extended = ctx.a.extended;
  detail::check_closed_form(*al, ctx.a_tilde.rows, std::min(ctx.a.stored_rows, al->rows.rows()), opt.tolerance);
  for (Index n = 0; n < al->rows.rows(); ++n)
    ctx.w.push_back(detail::summarize_w(s, Vector<Scalar>(al->rows.row(n).transpose()), n));
  return ctx;
}

namespace detail {

/// Per-row W quantities: each row has finite support, so every p-limit is
/// attained; what remains is whether "for all n" is closed by the tail.
template <class Scalar>
LimitEstimate<Scalar> per_row_w(const TransformedContext<Scalar>& ctx, Scalar value, LimitKind kind,
                                const std::string& what) {
  LimitEstimate<Scalar> est;
  est.kind = kind;
  est.value = std::move(value);
  for (const auto& w : ctx.w) {
    est.window.push_back(w.row);
    est.trace.push_back(w.sup_abs_row_sum);
  }
  if (est.window.size() > 8) {
    est.window.erase(est.window.begin(), est.window.end() - 8);
    est.trace.erase(est.trace.begin(), est.trace.end() - 8);
  }
  switch (ctx.a.tail) {
    case Tail::zero:
      est.status = LimitStatus::exact;
      est.trend = Trend::exact;
      est.note = what + "; rows past the window are zero";
      break;
    case Tail::structural:
      est.status = LimitStatus::exact;
      est.trend = Trend::exact;
      est.note = what + "; every generated row has finite support";
      break;
    case Tail::unknown:
      est.status = LimitStatus::indeterminate;
      est.note = what + " on stored rows; rows past the window are unknown";
      break;
  }
  return est;
}

}  // namespace detail

template <class Scalar>
ConditionResult<Scalar> eval_condition(ConditionId id, const TransformedContext<Scalar>& ctx,
                                       const EvalOptions& opt = {}) {
  if (is_raw(id)) return eval_raw_condition(id, ctx.a, opt);
  auto on_tilde = [&](ConditionId raw) {
    auto r = eval_raw_condition(raw, ctx.a_tilde, opt);
    r.id = id;
    return r;
  };
  ConditionResult<Scalar> res;
  res.id = id;
  switch (id) {
    case ConditionId::c4_13: return on_tilde(ConditionId::c4_5);
    case ConditionId::c4_14: return on_tilde(ConditionId::c4_7);
    case ConditionId::c4_17: return on_tilde(ConditionId::c4_9);
    case ConditionId::c4_18: return on_tilde(ConditionId::c4_6);
    case ConditionId::c4_20: return on_tilde(ConditionId::c4_10);
    case ConditionId::c4_15: {
      Scalar best(0);
      for (const auto& w : ctx.w)
        if (w.sup_abs_row_sum > best) best = w.sup_abs_row_sum;
      res.estimate = detail::per_row_w(ctx, best, LimitKind::sup, "max over inspected n of sup_p sum_k |w_pk|");
      res.outcome = finite_outcome(res.estimate);
      return res;
    }
    case ConditionId::c4_16:
    case ConditionId::c4_19:
    case ConditionId::c4_21: {
      const bool exists = id == ConditionId::c4_21;
      res.estimate = detail::per_row_w(ctx, Scalar(0), exists ? LimitKind::exists : LimitKind::lim,
                                       "w_pk = 0 once p passes the support of A_n");
      res.outcome = exists ? finite_outcome(res.estimate) : zero_outcome(res.estimate, opt.tolerance);
      return res;
    }
    case ConditionId::c4_22: {
      Scalar best(0);
      for (const auto& w : ctx.w) best = std::max(best, ScalarTraits<Scalar>::abs(w.gamma));
      res.estimate = detail::per_row_w(ctx, best, LimitKind::exists, "gamma_n attained once p passes the support");
      res.outcome = finite_outcome(res.estimate);
      return res;
    }
    case ConditionId::c4_23:
    case ConditionId::c4_24:
    case ConditionId::c4_25: {
      std::vector<Scalar> sigma;
      for (Index n = 0; n < ctx.a_tilde.rows.rows(); ++n)
        sigma.push_back(detail::signed_sum(ctx.a_tilde.rows, n) - ctx.w[static_cast<std::size_t>(n)].gamma);
      const LimitKind kind = id == ConditionId::c4_23   ? LimitKind::lim
                             : id == ConditionId::c4_24 ? LimitKind::sup
                                                        : LimitKind::exists;
      res.estimate = limit_over_rows(sigma, Scalar(0), ctx.a_tilde.tail, kind, opt);
      res.estimate.note += std::string("; ") + std::string(kGammaShiftReading);
      res.outcome = id == ConditionId::c4_23 ? zero_outcome(res.estimate, opt.tolerance) : finite_outcome(res.estimate);
      return res;
    }
    default: break;
  }
  throw InvalidParameter("no evaluator for condition " + std::string(label(id)));
}

// ---------------------------------------------------------------------------
// Class verdicts
// ---------------------------------------------------------------------------

inline std::vector<ConditionId> required_conditions(Space source, Space target) {
  using C = ConditionId;
  switch (source) {
    case Space::c0:
      switch (target) {
        case Space::c0: return {C::c4_13, C::c4_14, C::c4_15, C::c4_16};
        case Space::c: return {C::c4_13, C::c4_15, C::c4_16, C::c4_17};
        case Space::l_inf: return {C::c4_13, C::c4_15, C::c4_16};
      }
      break;
    case Space::l_inf:
      switch (target) {
        case Space::c0: return {C::c4_18, C::c4_19};
        case Space::c: return {C::c4_13, C::c4_17, C::c4_19, C::c4_20};
        case Space::l_inf: return {C::c4_13, C::c4_19};
      }
      break;
    case Space::c:
      switch (target) {
        case Space::c0: return {C::c4_13, C::c4_14, C::c4_15, C::c4_21, C::c4_22, C::c4_23};
        case Space::c: return {C::c4_13, C::c4_15, C::c4_17, C::c4_21, C::c4_22, C::c4_25};
        case Space::l_inf: return {C::c4_13, C::c4_15, C::c4_21, C::c4_22, C::c4_24};
      }
      break;
  }
  throw InvalidParameter("unsupported (source, target) pair");
}

template <class Scalar>
struct ClassReport {
  Space source = Space::c0;
  Space target = Space::c0;
  std::vector<ConditionResult<Scalar>> conditions;
  Verdict overall;
  std::optional<std::string> reading;  ///< set when a gamma-shifted condition was used
};

template <class Scalar>
ClassReport<Scalar> classify_map(const TransformedContext<Scalar>& ctx, Space source, Space target,
                                 const EvalOptions& opt = {}) {
  ClassReport<Scalar> rep;
  rep.source = source;
  rep.target = target;
  rep.overall.trace = ctx.notes;
  std::vector<Outcome> outcomes;
  for (ConditionId id : required_conditions(source, target)) {
    auto r = eval_condition(id, ctx, opt);
    rep.overall.trace.push_back("(" + std::string(label(id)) + ") " + std::string(to_string(r.outcome)) + " [" +
                                std::string(to_string(r.estimate.status)) + "] " + std::string(statement(id)) +
                                ": " + genmeans::to_string(r.estimate.value) +
                                (r.estimate.note.empty() ? "" : " (" + r.estimate.note + ")"));
    if (id >= ConditionId::c4_23) rep.reading = std::string(kGammaShiftReading);
    outcomes.push_back(r.outcome);
    rep.conditions.push_back(std::move(r));
  }
  rep.overall.outcome = all_of(outcomes);
  return rep;
}

template <class Scalar>
ClassReport<Scalar> classify_map(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a, Space source,
                                 Space target, const EvalOptions& opt = {}) {
  return classify_map(make_context(p, a, opt), source, target, opt);
}

}  // namespace genmeans
