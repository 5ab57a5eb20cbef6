#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "wsato/psdo.hpp"

using namespace wsato;
using namespace wsato::testing;

namespace {
const VarKey U = even_var("uu");
const VarKey V = even_var("vv");
const VarKey T1 = odd_var("th1");
const VarKey T2 = odd_var("th2");

DiffPoly dp(const VarKey& v) { return DiffPoly(v); }
Psdo fn(const VarKey& v) { return Psdo(DiffPoly(v)); }

Psdo random_psdo(Rng& rng, const std::vector<VarKey>& vars, int top, int bottom,
                 Floor fl = std::nullopt) {
  Psdo p;
  for (int k = top; k >= bottom; --k) {
    if (rng.uniform(0, 2) == 0) continue;
    p.set_coeff(k, random_poly(rng, vars, 2, 2, 2));
  }
  p.set_floor(fl);
  return p;
}

Psdo random_homog_psdo(Rng& rng, const std::vector<VarKey>& vars, Parity par,
                       int top, int bottom, Floor fl = std::nullopt) {
  Psdo p;
  for (int k = top; k >= bottom; --k) {
    DiffPoly c = random_homogeneous(rng, vars, par, 2, 2, 2);
    if (!c.is_zero()) p.set_coeff(k, c);
  }
  p.set_floor(fl);
  return p;
}

bool equal_trusted(const Psdo& a, const Psdo& b) {
  Floor f = floor_max(a.floor(), b.floor());
  int lo = f ? *f : std::min(a.min_exp(), b.min_exp());
  int hi = lo;
  if (!a.is_zero()) hi = std::max(hi, a.order());
  if (!b.is_zero()) hi = std::max(hi, b.order());
  for (int k = lo; k <= hi; ++k)
    if (!(a.coeff(k) == b.coeff(k))) return false;
  return true;
}
}  // namespace

TEST_CASE("product rules") {
  // d o u = u' + u d
  Psdo got = psdo_mul(d_op(1), fn(U));
  Psdo want;
  want.set_coeff(0, dp(U.with_der(1)));
  want.set_coeff(1, dp(U));
  CHECK(got == want);

  // d^{-1} o u truncated at -3
  Psdo inv = psdo_mul(d_op(-1), fn(U), Floor(-3));
  Psdo expect;
  expect.set_coeff(-1, dp(U));
  expect.set_coeff(-2, -dp(U.with_der(1)));
  expect.set_coeff(-3, dp(U.with_der(2)));
  expect.set_floor(-3);
  CHECK(inv == expect);

  // (d + u)(d - u) = d^2 - u' - u^2
  Psdo a = d_op(1) + fn(U);
  Psdo b = d_op(1) - fn(U);
  Psdo prod = psdo_mul(a, b);
  Psdo ref;
  ref.set_coeff(2, DiffPoly::one());
  ref.set_coeff(0, -dp(U.with_der(1)) - dp(U) * dp(U));
  CHECK(prod == ref);
}

TEST_CASE("infinite expansions demand a floor") {
  CHECK_THROWS(psdo_mul(d_op(-1), fn(U)));
  CHECK(psdo_mul(d_op(-2), d_op(5)).exact());
}

TEST_CASE("adjoint") {
  CHECK(psdo_adjoint(d_op(1)) == -d_op(1));
  Psdo ud = psdo_mul(fn(U), d_op(1));
  Psdo want = -psdo_mul(fn(U), d_op(1)) - fn(U.with_der(1));
  CHECK(psdo_adjoint(ud) == want);
  // (d^2 + u d + v)^* = d^2 - u d + (v - u')
  Psdo A = d_op(2) + psdo_mul(fn(U), d_op(1)) + fn(V);
  Psdo ref = d_op(2) - psdo_mul(fn(U), d_op(1)) + fn(V) - fn(U.with_der(1));
  CHECK(psdo_adjoint(A) == ref);
}

TEST_CASE("adjoint is an involution") {
  Rng rng(42);
  std::vector<VarKey> vars{U, V, T1, T2};
  for (int t = 0; t < 30; ++t) {
    Psdo A = random_psdo(rng, vars, 2, -2, Floor(-5));
    CHECK(equal_trusted(psdo_adjoint(psdo_adjoint(A)), A));
  }
}

TEST_CASE("super adjoint reverses products") {
  Rng rng(4242);
  std::vector<VarKey> vars{U, V, T1, T2};
  for (int t = 0; t < 40; ++t) {
    Parity pa = static_cast<Parity>(t % 2), pb = static_cast<Parity>((t / 2) % 2);
    Psdo A = random_homog_psdo(rng, vars, pa, 2, 0);
    Psdo B = random_homog_psdo(rng, vars, pb, 2, 0);
    if (A.is_zero() || B.is_zero()) continue;
    Psdo lhs = psdo_adjoint(psdo_mul(A, B, Floor(-6)), Floor(-6));
    Psdo rhs = psdo_mul(psdo_adjoint(B, Floor(-6)), psdo_adjoint(A, Floor(-6)),
                        Floor(-6));
    if (pa * pb) rhs = -rhs;
    CHECK(equal_trusted(lhs, rhs));
  }
}

TEST_CASE("residue") {
  CHECK(psdo_residue(d_op(1)).is_zero());
  Psdo p = psdo_mul(fn(U), d_op(-1));
  CHECK(psdo_residue(p) == dp(U));
  Psdo q = psdo_mul(d_op(-1), fn(U), Floor(-3));
  CHECK(psdo_residue(q) == dp(U));
  Psdo shallow;
  shallow.set_coeff(0, dp(U));
  shallow.set_floor(0);
  CHECK_THROWS(psdo_residue(shallow));
}

TEST_CASE("residue of commutators is a total derivative") {
  Rng rng(77);
  std::vector<VarKey> vars{U, V, T1, T2};
  for (int t = 0; t < 25; ++t) {
    Parity pa = static_cast<Parity>(t % 2), pb = static_cast<Parity>((t / 2) % 2);
    Psdo A = random_homog_psdo(rng, vars, pa, 2, 0);
    Psdo B = random_homog_psdo(rng, vars, pb, 2, 0);
    if (A.is_zero() || B.is_zero()) continue;
    // super commutator: AB - (-1)^{AB} BA
    Psdo ba = psdo_mul(B, A);
    if (pa * pb) ba = -ba;
    DiffPoly res = psdo_residue(psdo_mul(A, B) - ba);
    if (!res.is_zero()) CHECK(is_total_derivative(res));
  }
}

TEST_CASE("plus and minus parts") {
  Psdo A = d_op(1) + fn(U) + psdo_mul(fn(V), d_op(-1));
  Psdo plus = psdo_plus(A);
  Psdo minus = psdo_minus(A);
  CHECK(plus == d_op(1) + fn(U));
  CHECK(minus == psdo_mul(fn(V), d_op(-1)));
  CHECK(plus + minus == A);
  CHECK(plus.exact());
}

TEST_CASE("associativity within trusted floors") {
  Rng rng(2718);
  std::vector<VarKey> vars{U, V, T1, T2};
  for (int t = 0; t < 25; ++t) {
    Psdo A = random_psdo(rng, vars, 2, -1, Floor(-4));
    Psdo B = random_psdo(rng, vars, 2, -1, Floor(-4));
    Psdo C = random_psdo(rng, vars, 2, -1, Floor(-4));
    Psdo lhs = psdo_mul(psdo_mul(A, B), C);
    Psdo rhs = psdo_mul(A, psdo_mul(B, C));
    CHECK(equal_trusted(lhs, rhs));
  }
}

TEST_CASE("deepening the floor preserves trusted coefficients") {
  Rng rng(314);
  std::vector<VarKey> vars{U, V};
  Psdo A = random_psdo(rng, vars, 2, 0);
  Psdo B = random_psdo(rng, vars, 1, 0);
  Psdo inv_shallow = psdo_mul(d_op(-1), B, Floor(-4));
  Psdo inv_deep = psdo_mul(d_op(-1), B, Floor(-6));
  for (int k = -4; k <= 1; ++k)
    CHECK(inv_shallow.coeff(k) == inv_deep.coeff(k));
  Psdo p1 = psdo_mul(A, inv_shallow);
  Psdo p2 = psdo_mul(A, inv_deep);
  REQUIRE(p1.floor().has_value());
  for (int k = *p1.floor(); k <= p1.order(); ++k)
    CHECK(p1.coeff(k) == p2.coeff(k));
}

TEST_CASE("symbol application") {
  // A = d, B = u: A(z+d)(B(z)) = u' + u z
  auto r = symbol_apply(d_op(1), fn(U), -2);
  CHECK(r.at(0) == dp(U.with_der(1)));
  CHECK(r.at(1) == dp(U));
  // A = d^{-1}, B = 1 truncated at z^{-2}: z^{-1}
  auto r2 = symbol_apply(d_op(-1), Psdo(DiffPoly::one()), -2);
  CHECK(r2.size() == 1);
  CHECK(r2.at(-1) == DiffPoly::one());
  // A = u, B = v
  auto r3 = symbol_apply(fn(U), fn(V), -2);
  CHECK(r3.size() == 1);
  CHECK(r3.at(0) == dp(U) * dp(V));
}
