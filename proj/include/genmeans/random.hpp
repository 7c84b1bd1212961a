#pragma once

#include <cstdint>
#include <random>

#include "operators.hpp"

namespace genmeans {

/// Seeded source of small random rationals; everything derived from it is
/// reproducible from the seed.
class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : gen_(seed) {}

  std::mt19937_64& engine() { return gen_; }

  Index uniform(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(gen_); }

  /// num/den with |num| <= max_num, 1 <= den <= max_den.
  Rational rational(Index max_num = 9, Index max_den = 9, bool nonzero = false) {
    for (;;) {
      Index num = uniform(-max_num, max_num);
      if (nonzero && num == 0) continue;
      return Rational(num, uniform(1, max_den));
    }
  }

  /// Random valid (r, s, t, m) with no preset origin.
  template <class Scalar>
  ParameterTriple<Scalar> params(Index order, Index m) {
    std::vector<Rational> r, s, t;
    for (Index n = 0; n < order; ++n) {
      r.push_back(rational(9, 9, true));
      t.push_back(rational(9, 9, true));
      s.push_back(n == 0 ? rational(9, 9, true) : rational());
    }
    return {detail::convert<Scalar>(r), detail::convert<Scalar>(s), detail::convert<Scalar>(t), m, order, {}};
  }

  /// Length-n window whose entries past `support` are zero.
  template <class Scalar>
  SequenceWindow<Scalar> sequence(Index n, SeqTail tail = SeqTail::zero, Index support = -1) {
    if (support < 0) support = n;
    Vector<Scalar> v = Vector<Scalar>::Zero(n);
    for (Index i = 0; i < std::min(n, support); ++i) v(i) = ScalarTraits<Scalar>::from_rational(rational());
    return {std::move(v), tail, std::nullopt};
  }

  /// rows x cols block with entries in the first `support` columns of each row.
  template <class Scalar>
  Matrix<Scalar> block(Index rows, Index cols, Index support) {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(rows, cols);
    for (Index n = 0; n < rows; ++n)
      for (Index k = 0; k < std::min(cols, support); ++k) m(n, k) = ScalarTraits<Scalar>::from_rational(rational());
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace genmeans
