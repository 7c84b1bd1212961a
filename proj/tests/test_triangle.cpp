#include <doctest.h>

#include <genmeans/random.hpp>

#include "oracles.hpp"

using namespace genmeans;
using Q = Rational;

namespace {

TriangleMatrix<Q> tri(const oracle::M& m, Tail tail = Tail::structural) { return TriangleMatrix<Q>(m, tail); }

SequenceWindow<Q> seq(std::vector<Q> v, SeqTail tail = SeqTail::unknown) {
  Vector<Q> out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return {out, tail, std::nullopt};
}

TriangleMatrix<Q> random_triangle(RandomInstances& rnd, Index n) {
  Matrix<Q> m = Matrix<Q>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= i; ++k) m(i, k) = rnd.rational(9, 9, i == k);
  return tri(m);
}

}  // namespace

TEST_CASE("construction rejects entries above the diagonal and non-square storage") {
  Matrix<Q> m = Matrix<Q>::Zero(3, 3);
  m(0, 2) = 1;
  CHECK_THROWS_AS(tri(m), DimensionError);
  CHECK_THROWS_AS(TriangleMatrix<Q>(Matrix<Q>::Zero(2, 3), Tail::zero), DimensionError);
  CHECK_THROWS_AS(TriangleMatrix<Q>(Matrix<Q>::Zero(0, 0), Tail::zero), DimensionError);
}

TEST_CASE("tail tags combine pessimistically") {
  CHECK(combine(Tail::zero, Tail::zero) == Tail::zero);
  CHECK(combine(Tail::structural, Tail::structural) == Tail::structural);
  CHECK(combine(Tail::zero, Tail::structural) == Tail::unknown);
  CHECK(combine(Tail::unknown, Tail::zero) == Tail::unknown);
}

TEST_CASE("compose") {
  RandomInstances rnd(11);
  const auto any = random_triangle(rnd, 6);
  CHECK(compose(TriangleMatrix<Q>::identity(6), any).entries() == any.entries());

  const auto d1 = tri(oracle::first_difference(5));
  const auto d2 = compose(d1, d1);
  CHECK(d2(4, 2) == 1);
  CHECK(d2(4, 3) == -2);
  CHECK(d2(4, 4) == 1);
  CHECK(d2(4, 1) == 0);

  CHECK(compose(tri(oracle::identity(3), Tail::zero), tri(oracle::identity(3), Tail::zero)).tail() == Tail::zero);
  CHECK(compose(tri(oracle::identity(3), Tail::zero), tri(oracle::identity(3))).tail() == Tail::unknown);
  CHECK_THROWS_AS(compose(TriangleMatrix<Q>::identity(3), TriangleMatrix<Q>::identity(4)), DimensionError);
}

TEST_CASE("compose is associative") {
  RandomInstances rnd(12);
  for (int i = 0; i < 5; ++i) {
    const auto a = random_triangle(rnd, 10), b = random_triangle(rnd, 10), c = random_triangle(rnd, 10);
    CHECK(compose(compose(a, b), c).entries() == compose(a, compose(b, c)).entries());
    CHECK(compose(a, b).entries() == oracle::product(a.entries(), b.entries()));
  }
}

TEST_CASE("apply") {
  const auto x = seq({1, 1, 1, 1});
  CHECK(apply(TriangleMatrix<Q>::identity(4), x).values == x.values);
  CHECK(apply(tri(oracle::first_difference(4)), x).values == seq({1, 0, 0, 0}).values);
  Matrix<Q> sum = Matrix<Q>::Zero(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index k = 0; k <= i; ++k) sum(i, k) = 1;
  CHECK(apply(tri(sum), seq({1, 0, 0, 0})).values == seq({1, 1, 1, 1}).values);
  CHECK(apply(tri(sum, Tail::zero), seq({1, 0, 0, 0}, SeqTail::zero)).tail == SeqTail::zero);
  CHECK(apply(tri(sum), seq({1, 0, 0, 0}, SeqTail::zero)).tail == SeqTail::unknown);
  CHECK_THROWS_AS(apply(tri(sum), seq({1, 0, 0})), DimensionError);
}

TEST_CASE("apply is linear") {
  RandomInstances rnd(13);
  for (int i = 0; i < 10; ++i) {
    const auto m = random_triangle(rnd, 8);
    const auto x = rnd.sequence<Q>(8), y = rnd.sequence<Q>(8);
    const Q a = rnd.rational(), b = rnd.rational();
    SequenceWindow<Q> mix{Vector<Q>(a * x.values + b * y.values), SeqTail::zero, std::nullopt};
    CHECK(apply(m, mix).values == Vector<Q>(a * apply(m, x).values + b * apply(m, y).values));
  }
}

TEST_CASE("invert_triangle") {
  CHECK(invert_triangle(TriangleMatrix<Q>::identity(4)).entries() == oracle::identity(4));
  const auto inv = invert_triangle(tri(oracle::first_difference(5)));
  for (Index i = 0; i < 5; ++i)
    for (Index k = 0; k <= i; ++k) CHECK(inv(i, k) == 1);

  Matrix<Q> singular = oracle::identity(4);
  singular(2, 2) = 0;
  try {
    invert_triangle(tri(singular));
    FAIL("expected a singular triangle");
  } catch (const SingularError& e) {
    CHECK(e.row() == 2);
  }
  CHECK(invert_triangle(tri(oracle::identity(3), Tail::zero)).tail() == Tail::unknown);
}

TEST_CASE("invert_triangle gives an exact inverse up to order 32") {
  RandomInstances rnd(14);
  for (Index n : {1, 5, 16, 32}) {
    const auto m = random_triangle(rnd, n);
    CHECK(compose(invert_triangle(m), m).entries() == oracle::identity(n));
    CHECK(invert_triangle(m).entries() == oracle::inverse_lower(m.entries()));
  }
}

TEST_CASE("toeplitz_inverse_coeffs") {
  const auto ones = toeplitz_inverse_coeffs(seq({1, 1, 1, 1, 1, 1}), 6);
  CHECK(ones[0] == 1);
  CHECK(ones[1] == 1);
  for (Index n = 2; n < 6; ++n) CHECK(ones[n] == 0);

  const auto unit = toeplitz_inverse_coeffs(seq({1, 0, 0, 0}), 4);
  CHECK(unit.values == seq({1, 0, 0, 0}).values);

  const auto d = toeplitz_inverse_coeffs(seq({2, 1, 3}), 3);
  CHECK(d[0] == Q(1, 2));
  CHECK(d[2] == Q(-5, 8));

  CHECK_THROWS_AS(toeplitz_inverse_coeffs(seq({0, 1}), 2), InvalidParameter);
  CHECK_THROWS_AS(toeplitz_inverse_coeffs(seq({1, 1}), 3), DimensionError);
}

TEST_CASE("signed D coefficients invert the Toeplitz convolution") {
  RandomInstances rnd(15);
  for (int i = 0; i < 10; ++i) {
    auto s = rnd.sequence<Q>(12);
    if (s.values(0) == 0) s.values(0) = 3;
    const auto d = toeplitz_inverse_coeffs(s, 12);
    CHECK(d[0] == Q(1) / s[0]);
    for (Index n = 0; n < 12; ++n) {
      Q acc(0);
      for (Index j = 0; j <= n; ++j) acc += s[j] * ((n - j) % 2 == 0 ? d[n - j] : Q(-d[n - j]));
      CHECK(acc == (n == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("det_oracle_D") {
  CHECK(det_oracle_D(seq({3, 5}), 0) == Q(1, 3));
  CHECK(det_oracle_D(seq({1, 1, 1}), 2) == 0);
  CHECK(det_oracle_D(seq({2, 1, 3}), 2) == Q(-5, 8));
  std::vector<Q> long_s(12, Q(1));
  CHECK_THROWS_AS(det_oracle_D(seq(long_s), 9), GuardError);
}

TEST_CASE("recursion and determinant agree for n <= 8") {
  RandomInstances rnd(16);
  for (int i = 0; i < 20; ++i) {
    auto s = rnd.sequence<Q>(9);
    if (s.values(0) == 0) s.values(0) = -2;
    const auto d = toeplitz_inverse_coeffs(s, 9);
    for (Index n = 0; n <= 8; ++n) CHECK(d[n] == det_oracle_D(s, n));
  }
}

TEST_CASE("float backend inverts within tolerance") {
  RandomInstances rnd(17);
  Matrix<double> m = Matrix<double>::Zero(12, 12);
  for (Index i = 0; i < 12; ++i)
    for (Index k = 0; k <= i; ++k) m(i, k) = i == k ? 2.0 + rnd.rational(3, 3).convert_to<double>() * 0.1 : 0.1;
  const TriangleMatrix<double> t(m, Tail::structural);
  CHECK(is_identity(compose(invert_triangle(t), t)));
}
