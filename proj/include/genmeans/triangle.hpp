#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace genmeans {

/// Declared behavior of a matrix beyond its stored rows.
enum class Tail { zero, structural, unknown };

/// Declared behavior of a sequence beyond its stored prefix.
enum class SeqTail { zero, unknown };

enum class Space { c0, c, l_inf };

std::string_view to_string(Tail t);
std::string_view to_string(SeqTail t);
std::string_view to_string(Space s);

inline std::string_view to_string(Tail t) {
  switch (t) {
    case Tail::zero: return "zero";
    case Tail::structural: return "structural";
    case Tail::unknown: return "unknown";
  }
  return "unknown";
}

inline std::string_view to_string(SeqTail t) { return t == SeqTail::zero ? "zero" : "unknown"; }

inline std::string_view to_string(Space s) {
  switch (s) {
    case Space::c0: return "c0";
    case Space::c: return "c";
    case Space::l_inf: return "l_inf";
  }
  return "l_inf";
}

/// Equal tags survive; any mix is unknown, since no generator covers the combination.
constexpr Tail combine(Tail a, Tail b) {
  if (a == Tail::zero && b == Tail::zero) return Tail::zero;
  if (a == Tail::structural && b == Tail::structural) return Tail::structural;
  return Tail::unknown;
}

/// Finite N x N lower-triangular truncation of an infinite matrix.
///
/// Entries above the diagonal are identically zero; construction rejects
/// anything else. Being a "triangle" (nonzero diagonal) is not required here,
/// only by the operations that invert.
template <class Scalar>
class TriangleMatrix {
 public:
  TriangleMatrix(Matrix<Scalar> entries, Tail tail) : entries_(std::move(entries)), tail_(tail) {
    if (entries_.rows() != entries_.cols())
      throw DimensionError("triangle must be square, got " + std::to_string(entries_.rows()) + "x" +
                           std::to_string(entries_.cols()));
    if (entries_.rows() == 0) throw DimensionError("triangle order must be positive");
    for (Index n = 0; n < entries_.rows(); ++n)
      for (Index k = n + 1; k < entries_.cols(); ++k)
        if (!ScalarTraits<Scalar>::is_zero(entries_(n, k)))
          throw DimensionError("entry (" + std::to_string(n) + "," + std::to_string(k) +
                               ") above the diagonal is nonzero");
  }

  static TriangleMatrix identity(Index order, Tail tail = Tail::structural) {
    return TriangleMatrix(Matrix<Scalar>::Identity(order, order), tail);
  }

  Index order() const { return entries_.rows(); }
  Tail tail() const { return tail_; }
  const Matrix<Scalar>& entries() const { return entries_; }
  const Scalar& operator()(Index n, Index k) const { return entries_(n, k); }

  bool is_triangle() const { return first_zero_diagonal() < 0; }

  Index first_zero_diagonal() const {
    for (Index n = 0; n < order(); ++n)
      if (ScalarTraits<Scalar>::is_zero(entries_(n, n))) return n;
    return -1;
  }

  TriangleMatrix with_tail(Tail tail) const { return TriangleMatrix(entries_, tail); }

  friend bool operator==(const TriangleMatrix& a, const TriangleMatrix& b) {
    return a.tail_ == b.tail_ && a.order() == b.order() && a.entries_ == b.entries_;
  }

 private:
  Matrix<Scalar> entries_;
  Tail tail_;
};

/// Finite prefix of a sequence with declared tail and optional space label.
template <class Scalar>
struct SequenceWindow {
  Vector<Scalar> values;
  SeqTail tail = SeqTail::unknown;
  std::optional<Space> space;

  Index length() const { return values.size(); }
  const Scalar& operator[](Index n) const { return values(n); }

  static SequenceWindow zeros(Index n, SeqTail tail = SeqTail::zero) {
    return {Vector<Scalar>::Zero(n), tail, std::nullopt};
  }
  static SequenceWindow unit(Index n, Index j) {
    SequenceWindow e = zeros(n);
    e.values(j) = Scalar(1);
    return e;
  }
  static SequenceWindow ones(Index n) { return {Vector<Scalar>::Ones(n), SeqTail::unknown, std::nullopt}; }

  friend bool operator==(const SequenceWindow& a, const SequenceWindow& b) {
    return a.tail == b.tail && a.space == b.space && a.length() == b.length() && a.values == b.values;
  }
};

/// D_0^(s) ... D_{N-1}^(s).
template <class Scalar>
struct CoeffWindow {
  Vector<Scalar> values;
  Index length() const { return values.size(); }
  const Scalar& operator[](Index n) const { return values(n); }
};

template <class Scalar>
TriangleMatrix<Scalar> compose(const TriangleMatrix<Scalar>& left, const TriangleMatrix<Scalar>& right) {
  if (left.order() != right.order())
    throw DimensionError("compose: order " + std::to_string(left.order()) + " vs " + std::to_string(right.order()));
  const Index n = left.order();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= i; ++k) {
      Scalar acc(0);
      for (Index j = k; j <= i; ++j) acc += left(i, j) * right(j, k);
      out(i, k) = acc;
    }
  return TriangleMatrix<Scalar>(std::move(out), combine(left.tail(), right.tail()));
}

template <class Scalar>
SequenceWindow<Scalar> apply(const TriangleMatrix<Scalar>& m, const SequenceWindow<Scalar>& x) {
  if (m.order() != x.length())
    throw DimensionError("apply: matrix order " + std::to_string(m.order()) + " vs sequence length " +
                         std::to_string(x.length()));
  Vector<Scalar> y(x.length());
  for (Index n = 0; n < m.order(); ++n) {
    Scalar acc(0);
    for (Index k = 0; k <= n; ++k) acc += m(n, k) * x[k];
    y(n) = acc;
  }
  const bool zero = m.tail() == Tail::zero && x.tail == SeqTail::zero;
  return {std::move(y), zero ? SeqTail::zero : SeqTail::unknown, std::nullopt};
}

/// Inverse by forward substitution, one column at a time.
template <class Scalar>
TriangleMatrix<Scalar> invert_triangle(const TriangleMatrix<Scalar>& m) {
  if (Index bad = m.first_zero_diagonal(); bad >= 0) throw SingularError(bad);
  const Index n = m.order();
  Matrix<Scalar> inv = Matrix<Scalar>::Zero(n, n);
  for (Index col = 0; col < n; ++col) {
    inv(col, col) = Scalar(1) / m(col, col);
    for (Index row = col + 1; row < n; ++row) {
      Scalar acc(0);
      for (Index j = col; j < row; ++j) acc += m(row, j) * inv(j, col);
      inv(row, col) = -acc / m(row, row);
    }
  }
  // Rows of a zero-tail truncation past N are zero, which is not invertible
  // as an infinite matrix; only the structural tag survives inversion.
  return TriangleMatrix<Scalar>(std::move(inv), m.tail() == Tail::structural ? Tail::structural : Tail::unknown);
}

/// Coefficients of the inverse of the lower Toeplitz matrix built from s,
/// via c_0 = 1/s_0, c_n = -(1/s_0) sum_{j=1}^{n} s_j c_{n-j}, D_n = (-1)^n c_n.
template <class Scalar>
CoeffWindow<Scalar> toeplitz_inverse_coeffs(const SequenceWindow<Scalar>& s, Index count) {
  if (count < 0) throw InvalidParameter("toeplitz_inverse_coeffs: negative count");
  if (s.length() < count)
    throw DimensionError("toeplitz_inverse_coeffs: s has " + std::to_string(s.length()) + " terms, need " +
                         std::to_string(count));
  if (count > 0 && ScalarTraits<Scalar>::is_zero(s[0]))
    throw InvalidParameter("toeplitz_inverse_coeffs: s_0 = 0");
  Vector<Scalar> c(count);
  Vector<Scalar> d(count);
  for (Index n = 0; n < count; ++n) {
    if (n == 0) {
      c(0) = Scalar(1) / s[0];
    } else {
      Scalar acc(0);
      for (Index j = 1; j <= n; ++j) acc += s[j] * c(n - j);
      c(n) = -acc / s[0];
    }
    d(n) = (n % 2 == 0) ? c(n) : Scalar(-c(n));
  }
  return {std::move(d)};
}

namespace detail {

template <class Scalar>
Scalar laplace_det(const Matrix<Scalar>& a) {
  const Index n = a.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return a(0, 0);
  Scalar det(0);
  for (Index j = 0; j < n; ++j) {
    if (ScalarTraits<Scalar>::is_zero(a(0, j))) continue;
    Matrix<Scalar> minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, mc = 0; c < n; ++c)
        if (c != j) minor(r - 1, mc++) = a(r, c);
    Scalar term = a(0, j) * laplace_det(minor);
    det += (j % 2 == 0) ? term : Scalar(-term);
  }
  return det;
}

}  // namespace detail

inline constexpr Index kDeterminantOracleMaxOrder = 8;

/// D_n^(s) straight from the Hessenberg determinant (cofactor expansion).
/// Test oracle only; factorial cost.
template <class Scalar>
Scalar det_oracle_D(const SequenceWindow<Scalar>& s, Index n) {
  if (n < 0) throw InvalidParameter("det_oracle_D: negative index");
  if (n > kDeterminantOracleMaxOrder)
    throw GuardError("det_oracle_D: n = " + std::to_string(n) + " exceeds the cofactor guard " +
                     std::to_string(kDeterminantOracleMaxOrder));
  if (s.length() <= n) throw DimensionError("det_oracle_D: s too short for n = " + std::to_string(n));
  if (ScalarTraits<Scalar>::is_zero(s[0])) throw InvalidParameter("det_oracle_D: s_0 = 0");
  Matrix<Scalar> h = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (Index idx = i - j + 1; idx >= 0) h(i, j) = s[idx];
  Scalar s0_pow(1);
  for (Index i = 0; i <= n; ++i) s0_pow *= s[0];
  return detail::laplace_det(h) / s0_pow;
}

template <class Scalar>
bool near(const TriangleMatrix<Scalar>& a, const TriangleMatrix<Scalar>& b, double eps = kDefaultTolerance) {
  if (a.order() != b.order()) return false;
  for (Index n = 0; n < a.order(); ++n)
    for (Index k = 0; k <= n; ++k)
      if (!ScalarTraits<Scalar>::near(a(n, k), b(n, k), eps)) return false;
  return true;
}

template <class Scalar>
bool is_identity(const TriangleMatrix<Scalar>& a, double eps = kDefaultTolerance) {
  return near(a, TriangleMatrix<Scalar>::identity(a.order(), a.tail()), eps);
}

}  // namespace genmeans
