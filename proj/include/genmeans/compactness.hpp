#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matclass.hpp"

namespace genmeans {

enum class Provenance { computed, supplied };

inline std::string_view to_string(Provenance p) { return p == Provenance::computed ? "computed" : "user-supplied"; }

/// The matrix with entries R_k(A_n), linking Ax = Ãy under y = Tx.
template <class Scalar>
struct AssociateMatrix {
  MatrixWindow<Scalar> entries;
  Provenance provenance = Provenance::computed;

  Tail tail() const { return entries.tail; }

  static AssociateMatrix supplied(MatrixWindow<Scalar> m) { return {std::move(m), Provenance::supplied}; }
};

template <class Scalar>
AssociateMatrix<Scalar> associate_matrix(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a,
                                         double eps = kDefaultTolerance) {
  return {transformed_rows(p, a, eps), Provenance::computed};
}

template <class Scalar>
AssociateMatrix<Scalar> associate_matrix(const ParameterTriple<Scalar>& p,
                                         const std::vector<SequenceWindow<Scalar>>& rows, Tail tail,
                                         double eps = kDefaultTolerance) {
  return {transformed_rows(p, rows, tail, eps), Provenance::computed};
}

namespace detail {

template <class Scalar>
std::vector<Scalar> row_l1(const Matrix<Scalar>& m) {
  std::vector<Scalar> out;
  for (Index n = 0; n < m.rows(); ++n) out.push_back(abs_sum(m, n));
  return out;
}

}  // namespace detail

/// ||L_A|| = sup_n sum_k |ã_nk|.
template <class Scalar>
LimitEstimate<Scalar> operator_norm(const AssociateMatrix<Scalar>& at, const EvalOptions& opt = {}) {
  const auto s = sample(at.entries, opt);
  return limit_over_rows(detail::row_l1(s.rows), Scalar(0), s.tail, LimitKind::sup, opt);
}

template <class Scalar>
LimitEstimate<Scalar> operator_norm(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a,
                                    const EvalOptions& opt = {}) {
  return operator_norm(associate_matrix(p, a, opt.tolerance), opt);
}

template <class Scalar>
struct ChiEstimate {
  Space target = Space::c0;
  Scalar lower{0};
  Scalar upper{0};
  std::vector<LimitEstimate<Scalar>> alpha_tilde;  ///< target c only
  LimitStatus status = LimitStatus::indeterminate;
  LimitEstimate<Scalar> limsup;                    ///< the limsup the bounds are built from
  std::vector<std::string> trace;
};

/// Bounds for the Hausdorff measure of noncompactness of L_A.
template <class Scalar>
ChiEstimate<Scalar> chi_norm(const AssociateMatrix<Scalar>& at, Space target, const EvalOptions& opt = {}) {
  const auto s = sample(at.entries, opt);
  ChiEstimate<Scalar> out;
  out.target = target;
  out.trace.push_back(std::string("associate matrix ") + std::string(to_string(at.provenance)) + ", " +
                      std::to_string(s.stored_rows) + " stored rows, tail " + std::string(to_string(s.tail)) +
                      (s.extended ? ", regenerated to " + std::to_string(s.rows.rows()) + " rows" : ""));
  if (target == Space::c) {
    out.alpha_tilde = column_limits(s.rows, s.stored_cols, s.tail, opt);
    out.limsup = detail::deviation_limit(s, out.alpha_tilde, LimitKind::limsup, opt);
    out.upper = out.limsup.value;
    out.lower = out.upper / Scalar(2);
    out.trace.push_back("L = limsup_n sum_k |ã_nk - alpha_k| = " + to_string(out.upper) + "; bounds [L/2, L]");
  } else {
    out.limsup = limit_over_rows(detail::row_l1(s.rows), Scalar(0), s.tail, LimitKind::limsup, opt);
    out.upper = out.limsup.value;
    out.lower = target == Space::c0 ? out.upper : Scalar(0);
    out.trace.push_back("limsup_n sum_k |ã_nk| = " + to_string(out.upper) +
                        (target == Space::c0 ? "; equals the measure" : "; bounds [0, limsup]"));
  }
  out.status = out.limsup.status;
  out.trace.push_back(std::string("status ") + std::string(to_string(out.status)) +
                      (out.limsup.note.empty() ? "" : " (" + out.limsup.note + ")"));
  return out;
}

template <class Scalar>
ChiEstimate<Scalar> chi_norm(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a, Space target,
                             const EvalOptions& opt = {}) {
  return chi_norm(associate_matrix(p, a, opt.tolerance), target, opt);
}

/// Compact iff lim_n sum_k |ã_nk| = 0 (targets c0, l_inf) or
/// lim_n sum_k |ã_nk - alpha_k| = 0 (target c).
template <class Scalar>
Verdict compactness_verdict(const AssociateMatrix<Scalar>& at, Space target, const EvalOptions& opt = {}) {
  const auto s = sample(at.entries, opt);
  LimitEstimate<Scalar> est;
  Verdict v;
  if (target == Space::c) {
    est = detail::deviation_limit(s, column_limits(s.rows, s.stored_cols, s.tail, opt), LimitKind::lim, opt);
    v.trace.push_back("lim_n sum_k |ã_nk - alpha_k| = " + to_string(est.value));
  } else {
    est = limit_over_rows(detail::row_l1(s.rows), Scalar(0), s.tail, LimitKind::lim, opt);
    v.trace.push_back("lim_n sum_k |ã_nk| = " + to_string(est.value));
  }
  v.trace.push_back(std::string("status ") + std::string(to_string(est.status)) + ", trend " +
                    std::string(to_string(est.trend)) + (est.note.empty() ? "" : " (" + est.note + ")"));
  std::string window = "window";
  for (std::size_t i = 0; i < est.window.size(); ++i)
    window += " " + std::to_string(est.window[i]) + ":" + to_string(est.trace[i]);
  if (!est.window.empty()) v.trace.push_back(window);
  v.outcome = zero_outcome(est, opt.tolerance);
  v.trace.push_back(v.satisfied() ? "compact" : v.violated() ? "not compact" : "compactness undecided");
  return v;
}

template <class Scalar>
Verdict compactness_verdict(const ParameterTriple<Scalar>& p, const MatrixWindow<Scalar>& a, Space target,
                            const EvalOptions& opt = {}) {
  return compactness_verdict(associate_matrix(p, a, opt.tolerance), target, opt);
}

template <class Scalar>
struct AutocompactCheck {
  bool applicable = false;
  ClassReport<Scalar> membership;
  Verdict compactness;
  Verdict verdict;
};

/// Maps from l_inf(r,s,t;Delta^(m)) into c0 or c are compact. Runs both
/// routes; throws InconsistencyError if membership holds but compactness
/// fails.
template <class Scalar>
AutocompactCheck<Scalar> linfty_source_autocompact_check(const ParameterTriple<Scalar>& p,
                                                         const MatrixWindow<Scalar>& a, Space target,
                                                         const EvalOptions& opt = {}) {
  if (target == Space::l_inf) throw InvalidParameter("autocompact check applies to targets c0 and c only");
  AutocompactCheck<Scalar> out;
  const auto ctx = make_context(p, a, opt);
  out.membership = classify_map(ctx, Space::l_inf, target, opt);
  bool all_exact = true;
  for (const auto& c : out.membership.conditions)
    if (c.estimate.status != LimitStatus::exact) all_exact = false;
  out.applicable = out.membership.overall.satisfied() && all_exact;
  if (!out.applicable) {
    out.verdict.outcome = Outcome::indeterminate;
    const bool member = out.membership.overall.satisfied();
    out.verdict.trace.push_back(std::string("precondition not met: membership in (l_inf, ") +
                                std::string(to_string(target)) + ") is " +
                                std::string(to_string(out.membership.overall.outcome)) +
                                (member ? " but not every condition is exact" : "") + "; check not applicable");
    return out;
  }
  out.compactness = compactness_verdict(associate_matrix(p, a, opt.tolerance), target, opt);
  if (!out.compactness.satisfied())
    throw InconsistencyError("membership in (l_inf, " + std::string(to_string(target)) +
                             ") holds exactly but the compactness route reports " +
                             std::string(to_string(out.compactness.outcome)));
  out.verdict.outcome = Outcome::satisfied;
  out.verdict.trace.push_back("membership satisfied exactly and L_A compact: consistent");
  return out;
}

}  // namespace genmeans
