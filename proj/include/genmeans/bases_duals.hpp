#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limits.hpp"
#include "operators.hpp"

namespace genmeans {

// ---------------------------------------------------------------------------
// Schauder basis
// ---------------------------------------------------------------------------

/// b^(j) for j >= 0 (column j of S) or b^(-1) (row sums of S).
template <class Scalar>
struct BasisVector {
  Index index = 0;
  SequenceWindow<Scalar> values;
};

template <class Scalar>
BasisVector<Scalar> basis_vector(const ParameterTriple<Scalar>& p, Index j) {
  validate_params(p);
  if (j < -1 || j >= p.order)
    throw DimensionError("basis_vector: index " + std::to_string(j) + " outside [-1, " + std::to_string(p.order) + ")");
  const auto s = build_S(p);
  Vector<Scalar> b = Vector<Scalar>::Zero(p.order);
  if (j >= 0) {
    b = s.entries().col(j);
  } else {
    for (Index n = 0; n < p.order; ++n)
      for (Index k = 0; k <= n; ++k) b(n) += s(n, k);
  }
  return {j, {std::move(b), SeqTail::unknown, std::nullopt}};
}

template <class Scalar>
struct Reconstruction {
  SequenceWindow<Scalar> partial;
  Scalar residual_norm{0};
  std::vector<Scalar> coefficients;  ///< mu_0 .. mu_K
  std::optional<Scalar> limit;       ///< ell for space c
  /// ell is y_{N-1}, a stand-in for lim (Tx)_n that finite data cannot observe.
  bool limit_is_truncation_proxy = false;
};

/// Partial basis expansion of x up to order K in c0(...) or c(...).
template <class Scalar>
Reconstruction<Scalar> reconstruct(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& x, Index K,
                                   Space space) {
  require_length(p, x, "reconstruct");
  if (K < 0 || K >= p.order)
    throw DimensionError("reconstruct: K = " + std::to_string(K) + " must lie in [0, N)");
  if (space == Space::l_inf) throw InvalidParameter("reconstruct: l_inf(r,s,t;Delta^(m)) has no Schauder basis");
  const auto y = transform(p, x);
  const auto s = build_S(p);
  Reconstruction<Scalar> out;
  Vector<Scalar> partial = Vector<Scalar>::Zero(p.order);
  Scalar ell(0);
  if (space == Space::c) {
    ell = y[p.order - 1];
    out.limit = ell;
    out.limit_is_truncation_proxy = true;
    for (Index n = 0; n < p.order; ++n)
      for (Index k = 0; k <= n; ++k) partial(n) += ell * s(n, k);
  }
  for (Index j = 0; j <= K; ++j) {
    Scalar mu = y[j] - ell;
    out.coefficients.push_back(y[j]);
    partial += mu * s.entries().col(j);
  }
  out.partial = {std::move(partial), SeqTail::unknown, x.space};
  SequenceWindow<Scalar> diff{x.values - out.partial.values, SeqTail::unknown, std::nullopt};
  out.residual_norm = space_norm(p, diff).value;
  return out;
}

// ---------------------------------------------------------------------------
// Associate row R(a) and W = (w_pk)
// ---------------------------------------------------------------------------

namespace detail {

template <class Scalar>
SequenceWindow<Scalar> zero_tail_window(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a,
                                        const char* what) {
  if (a.tail != SeqTail::zero)
    throw TailError(std::string(what) + ": input must have zero tail (finite support); series over infinite "
                                        "support are not evaluated");
  if (a.length() > p.order)
    throw DimensionError(std::string(what) + ": support window " + std::to_string(a.length()) + " exceeds N = " +
                         std::to_string(p.order));
  Vector<Scalar> v = Vector<Scalar>::Zero(p.order);
  v.head(a.length()) = a.values;
  return {std::move(v), SeqTail::zero, a.space};
}

/// One past the last nonzero index.
template <class Scalar>
Index support_end(const Vector<Scalar>& v) {
  for (Index n = v.size(); n > 0; --n)
    if (!ScalarTraits<Scalar>::is_zero(v(n - 1))) return n;
  return 0;
}

template <class Scalar>
bool agree(const Scalar& a, const Scalar& b, double eps) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return a == b;
  } else {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= eps * scale;
  }
}

/// Shared pieces of the closed forms: binom(m+d-1, d) and (-1)^d D_d.
template <class Scalar>
struct ClosedFormTables {
  std::vector<Scalar> band;
  std::vector<Scalar> signed_d;
  explicit ClosedFormTables(const ParameterTriple<Scalar>& p)
      : band(inverse_difference_band<Scalar>(p.m, p.order)), signed_d(detail::signed_d(d_coeffs(p))) {}
  const Scalar& binom(Index d) const { return band[static_cast<std::size_t>(d)]; }
  const Scalar& sd(Index d) const { return signed_d[static_cast<std::size_t>(d)]; }
};

/// R_k(a) in the three-group form
///   r_k [ a_k/(s_0 t_k)
///         + sum_{i=k}^{k+1} (-1)^{i-k} D_{i-k}/t_i sum_{j>k} binom(m+j-i-1, j-i) a_j
///         + sum_{l>=2} (-1)^l D_l/t_{l+k} sum_{j>=k+l} binom(m+j-k-l-1, j-k-l) a_j ],
/// every series cut at the support of a.
template <class Scalar>
Vector<Scalar> associate_closed_form(const ParameterTriple<Scalar>& p, const ClosedFormTables<Scalar>& tab,
                                     const Vector<Scalar>& a) {
  const Index end = support_end(a);
  Vector<Scalar> out = Vector<Scalar>::Zero(a.size());
  for (Index k = 0; k < end; ++k) {
    Scalar acc = a(k) / (p.s(0) * p.t(k));
    for (Index i = k; i <= k + 1 && i < end; ++i) {
      Scalar inner(0);
      for (Index j = std::max(k + 1, i); j < end; ++j) inner += tab.binom(j - i) * a(j);
      acc += tab.sd(i - k) / p.t(i) * inner;
    }
    for (Index l = 2; k + l < end; ++l) {
      Scalar inner(0);
      for (Index j = k + l; j < end; ++j) inner += tab.binom(j - k - l) * a(j);
      acc += tab.sd(l) / p.t(l + k) * inner;
    }
    out(k) = p.r(k) * acc;
  }
  return out;
}

/// w_pk = r_k [ sum_{i=k}^{p} (-1)^{i-k} D_{i-k}/t_i sum_{j>=p} binom(m+j-i-1, j-i) a_j
///             + sum_{i>p} (-1)^{i-k} D_{i-k}/t_i sum_{j>=i} binom(m+j-i-1, j-i) a_j ].
template <class Scalar>
Matrix<Scalar> w_closed_form(const ParameterTriple<Scalar>& p, const ClosedFormTables<Scalar>& tab,
                             const Vector<Scalar>& a) {
  const Index n = a.size();
  const Index end = support_end(a);
  Matrix<Scalar> w = Matrix<Scalar>::Zero(n, n);
  for (Index row = 0; row < std::min(n, end); ++row)
    for (Index k = 0; k <= row; ++k) {
      Scalar acc(0);
      for (Index i = k; i <= row; ++i) {
        Scalar inner(0);
        for (Index j = row; j < end; ++j) inner += tab.binom(j - i) * a(j);
        acc += tab.sd(i - k) / p.t(i) * inner;
      }
      for (Index i = row + 1; i < end; ++i) {
        Scalar inner(0);
        for (Index j = i; j < end; ++j) inner += tab.binom(j - i) * a(j);
        acc += tab.sd(i - k) / p.t(i) * inner;
      }
      w(row, k) = p.r(k) * acc;
    }
  return w;
}

}  // namespace detail

/// R(a) = S^t a for finitely supported a.
template <class Scalar>
struct AssociateRow {
  SequenceWindow<Scalar> source;
  Vector<Scalar> values;  ///< R_0(a) .. R_{N-1}(a); zero past the support of a
};

/// Computes R_k(a) = sum_j a_j s_jk directly and via the closed form; throws
/// InconsistencyError if they differ.
template <class Scalar>
AssociateRow<Scalar> associate_row(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a,
                                   double eps = kDefaultTolerance) {
  validate_params(p);
  auto padded = detail::zero_tail_window(p, a, "associate_row");
  const auto s = build_S(p);
  Vector<Scalar> by_definition = s.entries().transpose() * padded.values;
  const detail::ClosedFormTables<Scalar> tab(p);
  Vector<Scalar> closed = detail::associate_closed_form(p, tab, padded.values);
  for (Index k = 0; k < p.order; ++k)
    if (!detail::agree(by_definition(k), closed(k), eps))
      throw InconsistencyError("associate_row: definition and closed form disagree at k = " + std::to_string(k));
  return {std::move(padded), std::move(by_definition)};
}

/// Triangle w_pk = sum_{j>=p} a_j s_jk, 0 <= k <= p < N.
template <class Scalar>
struct WMatrix {
  SequenceWindow<Scalar> source;
  Matrix<Scalar> entries;
  Tail tail = Tail::zero;  ///< rows p >= N vanish because a has zero tail
};

template <class Scalar>
Matrix<Scalar> w_by_definition(const TriangleMatrix<Scalar>& s, const Vector<Scalar>& a) {
  const Index n = a.size();
  Matrix<Scalar> w = Matrix<Scalar>::Zero(n, n);
  // suffix recursion: w_pk = a_p s_pk + w_{p+1,k}
  Vector<Scalar> suffix = Vector<Scalar>::Zero(n);
  for (Index row = n - 1; row >= 0; --row) {
    for (Index k = 0; k <= row; ++k) suffix(k) += a(row) * s(row, k);
    for (Index k = 0; k <= row; ++k) w(row, k) = suffix(k);
  }
  return w;
}

template <class Scalar>
WMatrix<Scalar> w_matrix(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a,
                         double eps = kDefaultTolerance) {
  validate_params(p);
  auto padded = detail::zero_tail_window(p, a, "w_matrix");
  const auto s = build_S(p);
  Matrix<Scalar> w = w_by_definition(s, padded.values);
  const detail::ClosedFormTables<Scalar> tab(p);
  Matrix<Scalar> closed = detail::w_closed_form(p, tab, padded.values);
  for (Index row = 0; row < p.order; ++row)
    for (Index k = 0; k <= row; ++k)
      if (!detail::agree(w(row, k), closed(row, k), eps))
        throw InconsistencyError("w_matrix: definition and closed form disagree at (" + std::to_string(row) + "," +
                                 std::to_string(k) + ")");
  return {std::move(padded), std::move(w), Tail::zero};
}

// ---------------------------------------------------------------------------
// alpha- and gamma-dual matrices
// ---------------------------------------------------------------------------

/// c_nj = s_nj a_n, so that a_n x_n = (C y)_n whenever y = T x.
template <class Scalar>
TriangleMatrix<Scalar> alpha_dual_matrix(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a) {
  validate_params(p);
  if (a.length() < p.order)
    throw DimensionError("alpha_dual_matrix: a has " + std::to_string(a.length()) + " terms, need N = " +
                         std::to_string(p.order));
  const auto s = build_S(p);
  Matrix<Scalar> c = Matrix<Scalar>::Zero(p.order, p.order);
  for (Index n = 0; n < p.order; ++n)
    for (Index j = 0; j <= n; ++j) c(n, j) = s(n, j) * a[n];
  return TriangleMatrix<Scalar>(std::move(c), a.tail == SeqTail::zero ? Tail::zero : Tail::unknown);
}

/// E of the gamma-dual, rows l < L, built from the three-group display:
///   e_ln = r_n [ a_n/(s_0 t_n)
///               + sum_{k=n}^{n+1} (-1)^{k-n} D_{k-n}/t_k sum_{j=n+1}^{l} binom(m+j-k-1, j-k) a_j
///               + sum_{k=n+2}^{l} (-1)^{k-n} D_{k-n}/t_k sum_{j=k}^{l} binom(m+j-k-1, j-k) a_j ].
/// Satisfies sum_{n<=l} a_n x_n = (E y)_l.
template <class Scalar>
TriangleMatrix<Scalar> gamma_dual_matrix(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a, Index L) {
  validate_params(p);
  if (L <= 0 || L > p.order)
    throw DimensionError("gamma_dual_matrix: L = " + std::to_string(L) + " must lie in (0, N]");
  if (a.length() < L) throw DimensionError("gamma_dual_matrix: a shorter than L");
  const detail::ClosedFormTables<Scalar> tab(p);
  Matrix<Scalar> e = Matrix<Scalar>::Zero(L, L);
  for (Index l = 0; l < L; ++l)
    for (Index n = 0; n <= l; ++n) {
      Scalar acc = a[n] / (p.s(0) * p.t(n));
      for (Index k = n; k <= n + 1 && k <= l; ++k) {
        Scalar inner(0);
        for (Index j = n + 1; j <= l; ++j)
          if (j >= k) inner += tab.binom(j - k) * a[j];
        acc += tab.sd(k - n) / p.t(k) * inner;
      }
      for (Index k = n + 2; k <= l; ++k) {
        Scalar inner(0);
        for (Index j = k; j <= l; ++j) inner += tab.binom(j - k) * a[j];
        acc += tab.sd(k - n) / p.t(k) * inner;
      }
      e(l, n) = p.r(n) * acc;
    }
  return TriangleMatrix<Scalar>(std::move(e), a.tail == SeqTail::zero ? Tail::structural : Tail::unknown);
}

// ---------------------------------------------------------------------------
// Dual membership
// ---------------------------------------------------------------------------

enum class DualKind { alpha, beta, gamma };

inline std::string_view to_string(DualKind d) {
  switch (d) {
    case DualKind::alpha: return "alpha";
    case DualKind::beta: return "beta";
    case DualKind::gamma: return "gamma";
  }
  return "beta";
}

namespace detail {

template <class Scalar>
std::string fmt(const Scalar& v) {
  return genmeans::to_string(v);
}

template <class Scalar>
Scalar row_abs_sum(const Matrix<Scalar>& m, Index row) {
  Scalar acc(0);
  for (Index k = 0; k < m.cols(); ++k) acc += ScalarTraits<Scalar>::abs(m(row, k));
  return acc;
}

}  // namespace detail

/// Membership of a finitely supported a in the alpha-, beta- or gamma-dual of
/// X(r,s,t;Delta^(m)). With zero tail every series and limit involved is
/// eventually constant, so the verdict is exact.
template <class Scalar>
Verdict dual_membership(const ParameterTriple<Scalar>& p, const SequenceWindow<Scalar>& a, DualKind dual,
                        Space space, const EvalOptions& opt = {}) {
  validate_params(p);
  Verdict v;
  if (a.tail != SeqTail::zero) {
    v.outcome = Outcome::indeterminate;
    v.trace.push_back("a has no declared zero tail; membership needs series over infinite support, not evaluated");
    return v;
  }
  auto padded = detail::zero_tail_window(p, a, "dual_membership");
  const Index end = detail::support_end(padded.values);
  v.trace.push_back("support of a ends before index " + std::to_string(end));

  if (dual == DualKind::alpha) {
    const auto c = alpha_dual_matrix(p, padded);
    const auto sup = subset_sup(c.entries(), opt.brute_force_columns);
    v.trace.push_back(std::string("(4.4) on C: ") + (sup.brute_force ? "exact " : "bounds ") + detail::fmt(sup.lower) +
                      (sup.brute_force ? "" : " .. " + detail::fmt(sup.upper)));
    v.trace.push_back("rows of C past the support of a vanish; the sup is a finite maximum");
    v.outcome = Outcome::satisfied;
    return v;
  }

  if (dual == DualKind::gamma) {
    const auto e = gamma_dual_matrix(p, padded, p.order);
    Scalar best(0);
    for (Index l = 0; l < p.order; ++l) {
      Scalar row = detail::row_abs_sum(e.entries(), l);
      if (l < 8 || l + 1 == p.order) v.trace.push_back("sum_n |e_" + std::to_string(l) + "n| = " + detail::fmt(row));
      if (row > best) best = row;
    }
    v.trace.push_back("rows of E are constant for l >= " + std::to_string(std::max<Index>(0, end - 1)) +
                      "; sup_l = " + detail::fmt(best));
    v.outcome = Outcome::satisfied;
    return v;
  }

  // beta: R(a) and W; every series is cut at the support of a
  const auto row = associate_row(p, padded, opt.tolerance);
  const auto w = w_matrix(p, padded, opt.tolerance);
  Scalar l1(0);
  for (Index k = 0; k < p.order; ++k) l1 += ScalarTraits<Scalar>::abs(row.values(k));
  Scalar sup_w(0);
  for (Index r = 0; r < p.order; ++r) sup_w = std::max(sup_w, detail::row_abs_sum(w.entries, r));
  bool rows_vanish = true;
  for (Index r = end; r < p.order; ++r)
    for (Index k = 0; k <= r; ++k)
      if (!ScalarTraits<Scalar>::is_zero(w.entries(r, k))) rows_vanish = false;
  if (!rows_vanish) throw InconsistencyError("dual_membership: w_pk nonzero past the support of a");

  auto record = [&](const char* set, const std::string& detail) { v.trace.push_back(std::string(set) + ": " + detail); };
  record("B1", "sum_k |R_k(a)| = " + detail::fmt(l1) + " (finite)");
  std::vector<std::string> required;
  switch (space) {
    case Space::c0: required = {"B1", "B2", "B3"}; break;
    case Space::l_inf: required = {"B1", "B4"}; break;
    case Space::c: required = {"B1", "B3", "B5", "B6"}; break;
  }
  for (const auto& set : required) {
    if (set == "B2") record("B2", "w_pk = 0 for p >= " + std::to_string(end) + ", lim_p w_pk = 0 exactly");
    if (set == "B3") record("B3", "sup_p sum_k |w_pk| = " + detail::fmt(sup_w) + " (finite)");
    if (set == "B4") record("B4", "sum_{k<=p} |w_pk| = 0 for p >= " + std::to_string(end) + ", limit 0 exactly");
    if (set == "B5") record("B5", "lim_p w_pk = 0 exists for every k");
    if (set == "B6") record("B6", "lim_p sum_{k<=p} w_pk = 0 exists");
  }
  v.outcome = Outcome::satisfied;
  return v;
}

}  // namespace genmeans
