#include "genmeans/cli.hpp"
#include "genmeans/random.hpp"

namespace genmeans::cli {

namespace {

using Q = Rational;

struct Tally {
  Json checks = Json::array();
  bool ok = true;

  void record(const std::string& name, int passed, int total) {
    checks.push_back(Json{{"check", name}, {"passed", passed}, {"total", total}, {"ok", passed == total}});
    ok = ok && passed == total;
  }
};

Vector<Q> unit(Index n, Index j) {
  Vector<Q> e = Vector<Q>::Zero(n);
  e(j) = 1;
  return e;
}

}  // namespace

Json selftest(std::uint64_t seed, Index order, bool& all_passed) {
  RandomInstances rnd(seed);
  Tally tally;
  const int instances = 5;
  const Index n = order;

  int inverses = 0, round_trips = 0, norms = 0, bases = 0, dualities = 0, associates = 0, t_to_identity = 0;
  for (int i = 0; i < instances; ++i) {
    const auto p = rnd.params<Q>(n, rnd.uniform(0, 3));
    const auto t = build_T(p);
    const auto s = build_S(p);
    const auto id = TriangleMatrix<Q>::identity(n);
    inverses += compose(build_B(p), build_A(p)).entries() == id.entries() && compose(s, t).entries() == id.entries();

    const auto x = rnd.sequence<Q>(n);
    round_trips += inverse_transform(p, transform(p, x)).values == x.values;

    const auto y = transform(p, x);
    norms += space_norm(p, x).value == y.values.cwiseAbs().maxCoeff();

    bool basis_ok = true;
    for (Index j = 0; j < n; ++j) basis_ok = basis_ok && transform(p, basis_vector(p, j).values).values == unit(n, j);
    basis_ok = basis_ok && transform(p, basis_vector(p, -1).values).values == Vector<Q>::Ones(n);
    bases += basis_ok;

    const auto a = rnd.sequence<Q>(n);
    const auto r = associate_row(p, a);
    const Q lhs = a.values.dot(x.values);
    const Q rhs = r.values.dot(y.values);
    const auto c = apply(alpha_dual_matrix(p, a), y);
    const auto e = apply(gamma_dual_matrix(p, a, n), y);
    bool dual_ok = lhs == rhs;
    Q partial(0);
    for (Index k = 0; k < n; ++k) {
      partial += a[k] * x[k];
      dual_ok = dual_ok && c[k] == a[k] * x[k] && e[k] == partial;
    }
    dualities += dual_ok;

    MatrixWindow<Q> am{rnd.block<Q>(4, n, n), Tail::zero, {}};
    const auto at = associate_matrix(p, am);
    associates += am.entries * x.values == at.entries.entries * y.values;
    t_to_identity += associate_matrix(p, MatrixWindow<Q>::from(t)).entries.entries == id.entries();
  }
  tally.record("compose(B,A) = I and compose(S,T) = I", inverses, instances);
  tally.record("inverse_transform(transform(x)) = x", round_trips, instances);
  tally.record("space_norm = sup |Tx|", norms, instances);
  tally.record("transform(b^(j)) = e_j, transform(b^(-1)) = e", bases, instances);
  tally.record("duality identities (R, C, E)", dualities, instances);
  tally.record("Ax = Ã(Tx)", associates, instances);
  tally.record("A = T gives Ã = I", t_to_identity, instances);

  int d_ok = 0;
  for (int i = 0; i < instances; ++i) {
    const auto s = rnd.sequence<Q>(8);
    Vector<Q> v = s.values;
    if (v(0) == 0) v(0) = 1;
    SequenceWindow<Q> sw{v, SeqTail::unknown, std::nullopt};
    const auto d = toeplitz_inverse_coeffs(sw, 7);
    bool ok = true;
    for (Index k = 0; k < 7; ++k) ok = ok && d[k] == det_oracle_D(sw, k);
    d_ok += ok;
  }
  tally.record("D recursion = determinant oracle", d_ok, instances);

  PresetSpec spec;
  spec.name = PresetName::uv;
  const auto p = preset<Q>(spec, 6);
  MatrixWindow<Q> eye{Matrix<Q>::Identity(6, 6), Tail::structural,
                      [](Index rows) -> Matrix<Q> { return Matrix<Q>::Identity(rows, rows); }};
  const auto chi = chi_norm(AssociateMatrix<Q>::supplied(eye), Space::c0);
  tally.record("chi of the identity associate matrix = 1", chi.lower == 1 && chi.upper == 1, 1);

  all_passed = tally.ok;
  return Json{{"seed", seed}, {"order", n}, {"checks", tally.checks}, {"all_passed", tally.ok}};
}

}  // namespace genmeans::cli
