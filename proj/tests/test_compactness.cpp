#include <doctest.h>

#include <genmeans/random.hpp>

#include "oracles.hpp"

using namespace genmeans;
using Q = Rational;

namespace {

MatrixWindow<Q> zero_tail(const Matrix<Q>& m) { return {m, Tail::zero, {}}; }

MatrixWindow<Q> generated(std::function<Matrix<Q>(Index)> rows, Index n) { return {rows(n), Tail::structural, rows}; }

Matrix<Q> cesaro(Index n) {
  Matrix<Q> m = Matrix<Q>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= i; ++k) m(i, k) = Q(1, i + 1);
  return m;
}

/// Every row is e_0: converges to e_0 in the column sense.
Matrix<Q> first_column(Index n) {
  Matrix<Q> m = Matrix<Q>::Zero(n, n);
  m.col(0).setOnes();
  return m;
}

Matrix<Q> identity(Index n) { return Matrix<Q>::Identity(n, n); }

}  // namespace

TEST_CASE("associate matrix links Ax and Ã(Tx)") {
  RandomInstances rnd(51);
  for (int i = 0; i < 10; ++i) {
    const auto p = rnd.params<Q>(9, rnd.uniform(0, 3));
    const Matrix<Q> a = rnd.block<Q>(4, 9, 9);
    const auto at = associate_matrix(p, zero_tail(a));
    CHECK(at.provenance == Provenance::computed);
    const auto x = rnd.sequence<Q>(9);
    CHECK(oracle::product(a, x.values) == oracle::product(at.entries.entries, transform(p, x).values));
    CHECK(associate_matrix(p, MatrixWindow<Q>::from(build_T(p))).entries.entries == identity(9));
  }
  PresetSpec id;
  id.name = PresetName::identity;
  id.m = 0;
  const Matrix<Q> a = rnd.block<Q>(6, 6, 6);
  CHECK(associate_matrix(preset<Q>(id, 6), zero_tail(a)).entries.entries == a);
}

TEST_CASE("operator norm") {
  RandomInstances rnd(52);
  const Matrix<Q> a = rnd.block<Q>(5, 6, 6);
  const auto at = AssociateMatrix<Q>::supplied(zero_tail(a));
  Q expected(0);
  for (Index n = 0; n < 5; ++n) { const Q r = a.row(n).cwiseAbs().sum(); if (r > expected) expected = r; }
  const auto est = operator_norm(at);
  CHECK(est.value == expected);
  CHECK(est.status == LimitStatus::exact);

  const auto ces = operator_norm(AssociateMatrix<Q>::supplied(generated(cesaro, 16)));
  CHECK(ces.value == 1);
  CHECK(ces.decided());
}

TEST_CASE("chi of supplied associate matrices") {
  const auto eye = AssociateMatrix<Q>::supplied(generated(identity, 12));
  auto c0 = chi_norm(eye, Space::c0);
  CHECK(c0.lower == 1);
  CHECK(c0.upper == 1);
  CHECK(c0.status != LimitStatus::indeterminate);
  auto c = chi_norm(eye, Space::c);
  CHECK(c.lower == Q(1, 2));
  CHECK(c.upper == 1);
  auto li = chi_norm(eye, Space::l_inf);
  CHECK(li.lower == 0);
  CHECK(li.upper == 1);

  const auto col = AssociateMatrix<Q>::supplied(generated(first_column, 12));
  CHECK(chi_norm(col, Space::c0).upper == 1);
  const auto cc = chi_norm(col, Space::c);
  CHECK(cc.upper == 0);
  CHECK(cc.lower == 0);
  REQUIRE_FALSE(cc.alpha_tilde.empty());
  CHECK(cc.alpha_tilde[0].value == 1);

  const auto zero = AssociateMatrix<Q>::supplied(zero_tail(Matrix<Q>::Zero(4, 4)));
  for (Space t : {Space::c0, Space::c, Space::l_inf}) {
    const auto z = chi_norm(zero, t);
    CHECK(z.upper == 0);
    CHECK(z.status == LimitStatus::exact);
  }
}

TEST_CASE("compactness verdicts") {
  const auto eye = AssociateMatrix<Q>::supplied(generated(identity, 12));
  CHECK(compactness_verdict(eye, Space::c0).violated());
  CHECK(compactness_verdict(eye, Space::c).violated());

  const auto col = AssociateMatrix<Q>::supplied(generated(first_column, 12));
  CHECK(compactness_verdict(col, Space::c0).violated());
  const auto cv = compactness_verdict(col, Space::c);
  CHECK(cv.satisfied());
  bool has_window = false;
  for (const auto& line : cv.trace) has_window = has_window || line.rfind("window", 0) == 0;
  CHECK(has_window);

  RandomInstances rnd(53);
  const auto p = rnd.params<Q>(8, 2);
  const auto finite = zero_tail(rnd.block<Q>(3, 8, 8));
  for (Space t : {Space::c0, Space::c, Space::l_inf}) CHECK(compactness_verdict(p, finite, t).satisfied());

  const auto unknown = AssociateMatrix<Q>::supplied({rnd.block<Q>(6, 6, 6), Tail::unknown, {}});
  CHECK(compactness_verdict(unknown, Space::c0).indeterminate());
}

TEST_CASE("l_inf source autocompactness") {
  RandomInstances rnd(54);
  for (int i = 0; i < 10; ++i) {
    const auto p = rnd.params<Q>(7, rnd.uniform(0, 3));
    const auto a = zero_tail(rnd.block<Q>(rnd.uniform(1, 5), 7, 7));
    for (Space t : {Space::c0, Space::c}) {
      const auto check = linfty_source_autocompact_check(p, a, t);
      CHECK(check.applicable);
      CHECK(check.membership.overall.satisfied());
      CHECK(check.compactness.satisfied());
      CHECK(check.verdict.satisfied());
    }
  }
  PresetSpec spec;
  spec.name = PresetName::euler;
  spec.alpha = Q(1, 2);
  spec.m = 1;
  const auto p = preset<Q>(spec, 12);
  const MatrixWindow<Q> t{build_T(p).entries(), Tail::structural,
                          [spec](Index rows) -> Matrix<Q> { return build_T(preset<Q>(spec, rows)).entries(); }};
  const auto not_member = linfty_source_autocompact_check(p, t, Space::c0);
  CHECK_FALSE(not_member.applicable);
  CHECK(not_member.verdict.indeterminate());
  CHECK_THROWS_AS(linfty_source_autocompact_check(p, t, Space::l_inf), InvalidParameter);
}

TEST_CASE("chi bounds are ordered and scale with the matrix") {
  RandomInstances rnd(55);
  for (int i = 0; i < 20; ++i) {
    const Matrix<Q> a = rnd.block<Q>(6, 6, 6);
    const Q lambda = rnd.rational(5, 4, true);
    const auto base = AssociateMatrix<Q>::supplied({a, Tail::structural, [a](Index) { return a; }});
    const Matrix<Q> scaled_m = a * lambda;
    const auto scaled = AssociateMatrix<Q>::supplied(zero_tail(scaled_m));
    for (Space t : {Space::c0, Space::c, Space::l_inf}) {
      const auto b = chi_norm(base, t);
      CHECK(b.lower <= b.upper);
      CHECK(b.upper <= operator_norm(base).value);
      const auto s = chi_norm(AssociateMatrix<Q>::supplied(zero_tail(a)), t);
      const auto ss = chi_norm(scaled, t);
      CHECK(ss.upper == abs(lambda) * s.upper);
      CHECK(ss.lower == abs(lambda) * s.lower);
    }
    CHECK(chi_norm(base, Space::c).upper <= 2 * chi_norm(base, Space::c0).upper);
  }
}
