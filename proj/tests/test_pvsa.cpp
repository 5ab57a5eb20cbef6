#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "wsato/pvsa.hpp"

using namespace wsato;
using namespace wsato::testing;

namespace {

DiffPoly dp(const VarKey& v) { return DiffPoly(v); }

// Scalar order-two table over u = u_{1,11}, v = u_{0,11}: the classical
// Virasoro-type presentation, used as a fixed external table.
struct ScalarTable {
  IndexSet I = IndexSet::gl(1, 0);
  VarKey u = VarKey::u_gen(1, 1, 1, I);
  VarKey v = VarKey::u_gen(0, 1, 1, I);
  BracketTable T;
  ScalarTable() : T({u, v}) {
    LambdaPoly uu = Scalar(2) * LambdaPoly::lambda(1);
    LambdaPoly uv = LambdaPoly::lambda(2) + LambdaPoly::lambda(1) * LambdaPoly(dp(u));
    LambdaPoly vu = -LambdaPoly::lambda(2) + LambdaPoly::lambda(1) * LambdaPoly(dp(u)) +
                    LambdaPoly(dp(u.with_der(1)));
    LambdaPoly vv = -LambdaPoly::lambda(3) +
                    LambdaPoly::lambda(1) *
                        LambdaPoly(dp(u) * dp(u) - Scalar(2) * dp(v) +
                                   Scalar(2) * dp(u.with_der(1))) +
                    LambdaPoly(dp(u.with_der(2)) + dp(u) * dp(u.with_der(1)) -
                               dp(v.with_der(1)));
    T.set_value(u, u, uu);
    T.set_value(u, v, uv);
    T.set_value(v, u, vu);
    T.set_value(v, v, vv);
  }
};

LambdaPoly right_arrow(const LambdaPoly& bracket, const DiffPoly& x) {
  LambdaPoly r;
  for (const auto& [key, c] : bracket.coeffs())
    r += c * lambda_shift_apply(key.first, LambdaPoly(x));
  return r;
}

}  // namespace

TEST_CASE("master_eval reduces to the table on generators") {
  ScalarTable S;
  CHECK(master_eval(S.T, dp(S.u), dp(S.v)) == S.T.value(pack(S.u), pack(S.v)));
  CHECK(master_eval(S.T, dp(S.v), dp(S.v)) == S.T.value(pack(S.v), pack(S.v)));
  VarKey other = even_var("pv_unknown");
  CHECK_THROWS(master_eval(S.T, dp(other), dp(S.u)));
}

TEST_CASE("sesquilinearity") {
  ScalarTable S;
  Rng rng(11);
  std::vector<VarKey> vars{S.u, S.v};
  for (int t = 0; t < 20; ++t) {
    DiffPoly f = random_poly(rng, vars, 3, 2, 2);
    DiffPoly g = random_poly(rng, vars, 3, 2, 2);
    // {df la g} = -la {f la g}
    CHECK(master_eval(S.T, poly_d(f), g) ==
          -(LambdaPoly::lambda(1) * master_eval(S.T, f, g)));
    // {f la dg} = (la + d) {f la g}
    LambdaPoly fg = master_eval(S.T, f, g);
    CHECK(master_eval(S.T, f, poly_d(g)) ==
          LambdaPoly::lambda(1) * fg + poly_d(fg));
  }
}

TEST_CASE("Leibniz rules") {
  ScalarTable S;
  Rng rng(23);
  std::vector<VarKey> vars{S.u, S.v};
  for (int t = 0; t < 15; ++t) {
    DiffPoly a = random_poly(rng, vars, 2, 1, 2);
    DiffPoly b = random_poly(rng, vars, 2, 1, 2);
    DiffPoly c = random_poly(rng, vars, 2, 1, 2);
    // everything is even here, so no Koszul factors
    CHECK(master_eval(S.T, a, b * c) ==
          master_eval(S.T, a, b) * LambdaPoly(c) + LambdaPoly(b) * master_eval(S.T, a, c));
    LambdaPoly rhs = right_arrow(master_eval(S.T, a, c), b) +
                     right_arrow(master_eval(S.T, b, c), a);
    CHECK(master_eval(S.T, a * b, c) == rhs);
  }
}

TEST_CASE("Virasoro family golden value") {
  ScalarTable S;
  for (Scalar alpha : {Scalar(0), Scalar(1), Scalar(1, 2), Scalar(2)}) {
    DiffPoly w = -dp(S.v) + Scalar(1, 2) * (dp(S.u) * dp(S.u)) +
                 alpha * dp(S.u.with_der(1));
    LambdaPoly got = master_eval(S.T, w, w);
    // (d + 2 la) w + (-2 a^2 + 2 a - 1) la^3
    LambdaPoly want = poly_d(LambdaPoly(w)) +
                      Scalar(2) * (LambdaPoly::lambda(1) * LambdaPoly(w));
    Scalar c = Scalar(-2) * alpha * alpha + Scalar(2) * alpha - Scalar(1);
    want += LambdaPoly::lambda(3) * LambdaPoly(DiffPoly(c));
    CHECK(got == want);
  }
}

TEST_CASE("scalar table satisfies skew and Jacobi") {
  ScalarTable S;
  CHECK(check_skew(S.T).empty());
  CHECK(check_jacobi(S.T).empty());
}

TEST_CASE("affine bracket values") {
  IndexSet gl2 = IndexSet::gl(2, 0);
  // {q12 la q21} = q11 - q22 - la at level -1
  LambdaPoly b = affine_bracket(gl2, Scalar(-1), 1, 2, 2, 1);
  LambdaPoly want = LambdaPoly(dp(VarKey::q_gen(1, 1, gl2)) -
                               dp(VarKey::q_gen(2, 2, gl2))) -
                    LambdaPoly::lambda(1);
  CHECK(b == want);
  CHECK(affine_bracket(gl2, Scalar(-1), 1, 1, 2, 2).is_zero());
  // skew and Jacobi at a couple of levels, also with odd indices
  for (auto& I : {IndexSet::gl(2, 0), IndexSet::gl(1, 1)}) {
    for (Scalar lev : {Scalar(-1), Scalar(3)}) {
      BracketTable T = affine_table(I, lev);
      CHECK(check_skew(T).empty());
      CHECK(check_jacobi(T).empty());
    }
  }
}

TEST_CASE("generic N=1 equals the affine level -1 presentation") {
  IndexSet J = IndexSet::gl(1, 1);
  std::map<PackedVar, DiffPoly> sub;
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y) {
      DiffPoly img(VarKey::u_gen(0, x, y, J));
      if (J.parity_of(x)) img = -img;
      sub[pack(VarKey::q_gen(x, y, J))] = img;
    }
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int h = 1; h <= 2; ++h)
        for (int k = 1; k <= 2; ++k) {
          LambdaPoly got = generic_H_bracket(J, 1, 0, i, j, 0, h, k);
          LambdaPoly expect = map_coeffs(
              affine_bracket(J, Scalar(-1), i, j, h, k),
              [&](const DiffPoly& c) { return substitute(c, sub); });
          if ((J.parity_of(i) + J.parity_of(h)) % 2) expect = -expect;
          CHECK(got == expect);
        }
}

TEST_CASE("top-weight generic brackets") {
  IndexSet J = IndexSet::gl(1, 1);
  const int N = 2;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c)
        for (int d = 1; d <= 2; ++d) {
          LambdaPoly got = generic_H_bracket(J, N, N - 1, a, b, N - 1, c, d);
          LambdaPoly want;
          if (c == b) want += LambdaPoly(dp(VarKey::u_gen(N - 1, a, d, J)));
          if (a == d) want -= LambdaPoly(dp(VarKey::u_gen(N - 1, c, b, J)));
          if (a == d && c == b)
            want -= LambdaPoly::lambda(1) * LambdaPoly(DiffPoly(Scalar(N)));
          int s = (J.parity_of(a) * J.parity_of(b) +
                   J.parity_of(a) * J.parity_of(c) +
                   J.parity_of(b) * J.parity_of(c)) % 2;
          if (s) want = -want;
          CHECK(got == want);
        }
}

TEST_CASE("scalar order-two generic table") {
  // The computed presentation is the opposite of the fixed ScalarTable:
  // both satisfy the axioms, and the sign is pinned by the N = 1 affine
  // correspondence together with the top-weight display.
  ScalarTable S;
  IndexSet I = S.I;
  CHECK(generic_H_bracket(I, 2, 1, 1, 1, 1, 1, 1) ==
        -S.T.value(pack(S.u), pack(S.u)));
  CHECK(generic_H_bracket(I, 2, 1, 1, 1, 0, 1, 1) ==
        -S.T.value(pack(S.u), pack(S.v)));
  CHECK(generic_H_bracket(I, 2, 0, 1, 1, 1, 1, 1) ==
        -S.T.value(pack(S.v), pack(S.u)));
  CHECK(generic_H_bracket(I, 2, 0, 1, 1, 0, 1, 1) ==
        -S.T.value(pack(S.v), pack(S.v)));
}

TEST_CASE("K bracket vanishing properties") {
  IndexSet J = IndexSet::gl(1, 1);
  // {u_{N-1,ab} la u_{l,cd}}_K = 0
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int l = 0; l < 2; ++l)
        for (int c = 1; c <= 2; ++c)
          for (int d = 1; d <= 2; ++d) {
            CHECK(generic_K_bracket(J, 2, 1, a, b, l, c, d).is_zero());
            CHECK(generic_K_bracket(J, 2, l, c, d, 1, a, b).is_zero());
          }
  // N=1: K identically zero
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int h = 1; h <= 2; ++h)
        for (int k = 1; k <= 2; ++k)
          CHECK(generic_K_bracket(J, 1, 0, i, j, 0, h, k).is_zero());
}

TEST_CASE("eps pencil is linear in eps") {
  IndexSet J = IndexSet::gl(1, 1);
  Rng rng(5);
  for (int t = 0; t < 12; ++t) {
    int k = rng.uniform(0, 1), l = rng.uniform(0, 1);
    int a = rng.uniform(1, 2), b = rng.uniform(1, 2);
    int c = rng.uniform(1, 2), d = rng.uniform(1, 2);
    LambdaPoly F0 = generic_eps_bracket(J, 2, k, a, b, l, c, d, Scalar(0));
    LambdaPoly F1 = generic_eps_bracket(J, 2, k, a, b, l, c, d, Scalar(1));
    LambdaPoly F2 = generic_eps_bracket(J, 2, k, a, b, l, c, d, Scalar(2));
    // no eps^2 term
    CHECK((F2 - Scalar(2) * F1 + F0).is_zero());
    // F(5) = H + 5 K
    LambdaPoly F5 = generic_eps_bracket(J, 2, k, a, b, l, c, d, Scalar(5));
    CHECK(F5 == F0 + Scalar(5) * (F1 - F0));
  }
}

TEST_CASE("H, K and H+K tables satisfy the axioms at (2,1,1)") {
  IndexSet J = IndexSet::gl(1, 1);
  BracketTable H = generic_H_table(J, 2, ExecMode::serial);
  BracketTable K = generic_K_table(J, 2, ExecMode::serial);
  CHECK(check_skew(H, ExecMode::serial).empty());
  CHECK(check_jacobi(H, ExecMode::serial).empty());
  CHECK(check_skew(K, ExecMode::serial).empty());
  CHECK(check_jacobi(K, ExecMode::serial).empty());
  BracketTable HK = BracketTable::combine(H, K, Scalar(1));
  CHECK(check_skew(HK, ExecMode::serial).empty());
  CHECK(check_jacobi(HK, ExecMode::serial).empty());
}

TEST_CASE("corrupted tables are reported") {
  ScalarTable S;
  BracketTable bad = S.T;
  bad.set_value(S.u, S.v, -S.T.value(pack(S.u), pack(S.v)));
  CHECK_FALSE(check_skew(bad).empty());
  CHECK_FALSE(check_jacobi(bad).empty());
}

TEST_CASE("affine operator is a matrix sATO") {
  IndexSet J = IndexSet::gl(1, 1);
  BracketTable T = affine_table(J, Scalar(-1));
  MatPSDO A(J, J);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Psdo e;
      if (r == c) e.set_coeff(1, DiffPoly::one());
      DiffPoly q(VarKey::q_gen(J.id_at(r), J.id_at(c), J));
      if (J.parity_of(J.id_at(r))) q = -q;
      e.add_coeff(0, q);
      A.at(r, c) = e;
    }
  CHECK(verify_adler_identity(A, T, 1, 1, 2, 1, ExecMode::serial).empty());
  // flipping the level breaks it
  BracketTable wrong = affine_table(J, Scalar(1));
  CHECK_FALSE(verify_adler_identity(A, wrong, 1, 1, 2, 1, ExecMode::serial).empty());
}

TEST_CASE("generic operator is a matrix sATO and so is its star inverse") {
  IndexSet J = IndexSet::gl(1, 1);
  const int N = 2;
  MatPSDO L = generic_operator(J, N);
  BracketTable H = generic_H_table(J, N, ExecMode::serial);
  CHECK(verify_adler_identity(L, H, N, N, 2, 1, ExecMode::serial).empty());
  // the star inverse satisfies the identity for the opposite bracket
  MatPSDO Linv = star_inverse_monic(L, 6);
  CHECK(verify_adler_identity(Linv, H, -1, -1, 3, -1, ExecMode::serial).empty());
  // and fails for the original sign
  CHECK_FALSE(verify_adler_identity(Linv, H, -1, -1, 3, 1, ExecMode::serial).empty());
}

TEST_CASE("parity-compatible submatrices stay sATO") {
  // Pi of the (1,1,2) rectangular setting: parities (0,1,0,1)
  IndexSet Pi = IndexSet::blocks_of_gl(2, 1, 1);
  BracketTable T = affine_table(Pi, Scalar(-1));
  MatPSDO A(Pi, Pi);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Psdo e;
      if (r == c) e.set_coeff(1, DiffPoly::one());
      DiffPoly q(VarKey::q_gen(Pi.id_at(r), Pi.id_at(c), Pi));
      if (Pi.parity_of(Pi.id_at(r))) q = -q;
      e.add_coeff(0, q);
      A.at(r, c) = e;
    }
  MatPSDO S = submatrix(A, {1, 2}, {3, 4});
  CHECK(verify_adler_identity(S, T, 1, 1, 2, 1, ExecMode::serial).empty());
}

TEST_CASE("parity bookkeeping of bracket values") {
  IndexSet J = IndexSet::gl(1, 1);
  for (int k = 0; k < 2; ++k)
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int l = 0; l < 2; ++l)
          for (int c = 1; c <= 2; ++c)
            for (int d = 1; d <= 2; ++d) {
              Parity want = (J.parity_of(a) + J.parity_of(b) + J.parity_of(c) +
                             J.parity_of(d)) % 2;
              CHECK(generic_H_bracket(J, 2, k, a, b, l, c, d).has_parity(want));
            }
}

TEST_CASE("functional Gelfand-Dickey brackets") {
  IndexSet J = IndexSet::gl(1, 1);
  const int N = 2;
  MatPSDO L = generic_operator(J, N);
  BracketTable H = generic_H_table(J, N, ExecMode::serial);
  BracketTable K = generic_K_table(J, N, ExecMode::serial);
  std::vector<VarKey> vars;
  for (int M = 0; M < N; ++M)
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) vars.push_back(VarKey::u_gen(M, a, b, J));
  Rng rng(20240813);
  for (int t = 0; t < 12; ++t) {
    DiffPoly f = random_homogeneous(rng, vars, static_cast<Parity>(t % 2), 3, 1, 2);
    DiffPoly g = random_homogeneous(rng, vars, static_cast<Parity>((t / 2) % 2), 3, 1, 2);
    DiffPoly viaH = master_eval(H, f, g).at_lambda_zero();
    DiffPoly dq = gd_quadratic(f, g, L) - viaH;
    if (!dq.is_zero()) CHECK(is_total_derivative(dq));
    DiffPoly viaK = master_eval(K, f, g).at_lambda_zero();
    DiffPoly dl = gd_linear(f, g, L) - viaK;
    if (!dl.is_zero()) CHECK(is_total_derivative(dl));
  }
  // f = g even: the induced bracket is skew, so the value integrates to zero
  DiffPoly f = random_homogeneous(rng, vars, 0, 3, 1, 2);
  DiffPoly d = gd_quadratic(f, f, L);
  if (!d.is_zero()) CHECK(is_total_derivative(d));
  // constants have zero variational derivative
  CHECK(gd_quadratic(DiffPoly(Scalar(3)), f, L).is_zero());
  CHECK(gd_linear(DiffPoly(Scalar(3)), f, L).is_zero());
  // u_{N-1,aa} generates no K-flow
  for (int a = 1; a <= 2; ++a) {
    DiffPoly top(VarKey::u_gen(N - 1, a, a, J));
    DiffPoly r = gd_linear(top, f, L);
    if (!r.is_zero()) CHECK(is_total_derivative(r));
  }
}
