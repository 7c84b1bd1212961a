#pragma once

// Independent reference computations. Nothing here calls the library's
// operator builders; matrices are assembled from their defining formulas and
// multiplied / inverted with plain loops.

#include <vector>

#include <genmeans/genmeans.hpp>

namespace oracle {

using genmeans::Index;
using Q = genmeans::Rational;
using M = genmeans::Matrix<Q>;
using V = genmeans::Vector<Q>;

/// Pascal's triangle up to row n.
inline std::vector<std::vector<Q>> pascal(Index n) {
  std::vector<std::vector<Q>> rows;
  for (Index i = 0; i <= n; ++i) {
    std::vector<Q> row(static_cast<std::size_t>(i + 1), Q(1));
    for (Index k = 1; k < i; ++k)
      row[static_cast<std::size_t>(k)] =
          rows.back()[static_cast<std::size_t>(k - 1)] + rows.back()[static_cast<std::size_t>(k)];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline M product(const M& a, const M& b) {
  M out = M::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Q acc(0);
      for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline V product(const M& a, const V& x) {
  V out = V::Zero(a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) out(i) += a(i, k) * x(k);
  return out;
}

inline M identity(Index n) { return M::Identity(n, n); }

/// delta_nk = (-1)^{n-k} for n-1 <= k <= n.
inline M first_difference(Index n) {
  M d = M::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 1;
    if (i > 0) d(i, i - 1) = -1;
  }
  return d;
}

inline M difference(Index m, Index n) {
  M d = identity(n);
  for (Index i = 0; i < m; ++i) d = product(d, first_difference(n));
  return d;
}

/// Solves L x = b for lower-triangular L by substitution.
inline V solve_lower(const M& l, const V& b) {
  V x = V::Zero(b.size());
  for (Index i = 0; i < b.size(); ++i) {
    Q acc = b(i);
    for (Index k = 0; k < i; ++k) acc -= l(i, k) * x(k);
    x(i) = acc / l(i, i);
  }
  return x;
}

/// Inverse column by column through solve_lower.
inline M inverse_lower(const M& l) {
  const Index n = l.rows();
  M inv = M::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    V e = V::Zero(n);
    e(j) = 1;
    inv.col(j) = solve_lower(l, e);
  }
  return inv;
}

/// a_nk = s_{n-k} t_k / r_n straight from vectors.
inline M generalized_means(const V& r, const V& s, const V& t, Index n) {
  M a = M::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= i; ++k) a(i, k) = s(i - k) * t(k) / r(i);
  return a;
}

inline M composite(const genmeans::ParameterTriple<Q>& p) {
  return product(generalized_means(p.r, p.s, p.t, p.order), difference(p.m, p.order));
}

/// g_nk = u_n v_k for k <= n.
inline M g_uv(const V& u, const V& v) {
  const Index n = u.size();
  M g = M::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k <= i; ++k) g(i, k) = u(i) * v(k);
  return g;
}

/// Row n of the Euler mean: binom(n,k) alpha^k (1-alpha)^{n-k}.
inline std::vector<Q> euler_row(const Q& alpha, Index n) {
  const auto pas = pascal(n);
  std::vector<Q> row;
  for (Index k = 0; k <= n; ++k) {
    Q term = pas[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    for (Index i = 0; i < k; ++i) term *= alpha;
    for (Index i = 0; i < n - k; ++i) term *= Q(1) - alpha;
    row.push_back(term);
  }
  return row;
}

/// sup over nonempty column subsets of sum_n |sum_{k in K} a_nk|, plain bitmask loop.
inline Q subset_sup(const M& a) {
  Q best(0);
  const Index c = a.cols();
  for (unsigned long mask = 1; mask < (1ul << c); ++mask) {
    Q total(0);
    for (Index n = 0; n < a.rows(); ++n) {
      Q row(0);
      for (Index k = 0; k < c; ++k)
        if (mask & (1ul << k)) row += a(n, k);
      total += abs(row);
    }
    if (total > best) best = total;
  }
  return best;
}

inline Q sup_abs(const V& v) {
  Q best(0);
  for (Index i = 0; i < v.size(); ++i)
    if (abs(v(i)) > best) best = abs(v(i));
  return best;
}

}  // namespace oracle
