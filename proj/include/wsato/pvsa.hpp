#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wsato/exec.hpp"
#include "wsato/lambdapoly.hpp"
#include "wsato/matop.hpp"
#include "wsato/superpoly.hpp"

namespace wsato {

// A lambda-bracket presentation: values on ordered pairs of generators.
// Together with the master formula this determines the bracket on the
// whole differential superalgebra.
class BracketTable {
 public:
  BracketTable() = default;
  explicit BracketTable(std::vector<VarKey> gens) : gens_(std::move(gens)) {}

  const std::vector<VarKey>& generators() const { return gens_; }
  bool has(PackedVar base) const;
  const LambdaPoly& value(PackedVar a, PackedVar b) const;
  void set_value(const VarKey& a, const VarKey& b, const LambdaPoly& v);

  // The entrywise combination T + eps*S (compatible-pencil checks).
  static BracketTable combine(const BracketTable& T, const BracketTable& S,
                              const Scalar& eps);

 private:
  std::vector<VarKey> gens_;
  std::map<std::pair<PackedVar, PackedVar>, LambdaPoly> values_;
};

// Master-formula closure: the bracket {f lambda g} of arbitrary elements
// of the differential superalgebra generated by the table's generators.
LambdaPoly master_eval(const BracketTable& T, const DiffPoly& f,
                       const DiffPoly& g);

// Affine bracket on gl(I) at the given level, with the supertrace form:
// {q_ij lambda q_hk} = delta_jh q_ik - (-1)^{(i+j)(h+k)} delta_ik q_hj
//                      + level (-1)^i delta_jh delta_ik lambda.
LambdaPoly affine_bracket(const IndexSet& I, const Scalar& level, int i, int j,
                          int h, int k);
BracketTable affine_table(const IndexSet& I, const Scalar& level);

// The generic operator L = 1 d^N + sum u_{M,ab} d^M over V_I^N.
MatPSDO generic_operator(const IndexSet& I, int N);

// Bracket of the deformed operator L + eps*1, evaluated through the
// residue form of the Adler identity; exact, no truncation.
LambdaPoly generic_eps_bracket(const IndexSet& I, int N, int k, int a, int b,
                               int l, int c, int d, const Scalar& eps);
// H-bracket (eps = 0) and K-bracket (the eps-linear part).
LambdaPoly generic_H_bracket(const IndexSet& I, int N, int k, int a, int b,
                             int l, int c, int d);
LambdaPoly generic_K_bracket(const IndexSet& I, int N, int k, int a, int b,
                             int l, int c, int d);

BracketTable generic_H_table(const IndexSet& I, int N,
                             ExecMode mode = default_exec_mode());
BracketTable generic_K_table(const IndexSet& I, int N,
                             ExecMode mode = default_exec_mode());

// Process-wide caches (mutex-guarded single-writer; returned references
// stay valid for the process lifetime).
const BracketTable& affine_table_cached(const IndexSet& I, const Scalar& level);
const BracketTable& generic_H_table_cached(const IndexSet& I, int N);
const BracketTable& generic_K_table_cached(const IndexSet& I, int N);

struct PairViolation {
  VarKey a, b;
  LambdaPoly difference;
};
struct TripleViolation {
  VarKey a, b, c;
  LambdaPoly difference;
};

// Skew-symmetry on all generator pairs; empty report = pass.
std::vector<PairViolation> check_skew(const BracketTable& T,
                                      ExecMode mode = default_exec_mode());
// Jacobi identity on all generator triples in V[lambda, mu].
std::vector<TripleViolation> check_jacobi(const BracketTable& T,
                                          ExecMode mode = default_exec_mode());

struct AdlerViolation {
  int i, j, h, k;  // entry ids
  int zdeg, wdeg;
  LambdaPoly difference;
};

// Checks the super Adler identity for A against the bracket table T on
// the coefficient window z,w in [-depth, zmax] x [-depth, wmax].
// sign = -1 verifies A against the opposite bracket -{ }.
std::vector<AdlerViolation> verify_adler_identity(
    const MatPSDO& A, const BracketTable& T, int zmax, int wmax, int depth,
    int sign = 1, ExecMode mode = default_exec_mode());

// Functional Gelfand-Dickey brackets; representatives of classes mod dV.
// gd_quadratic matches int {f lambda g}_H |_{lambda=0}, gd_linear the K
// counterpart (computed as the eps-derivative of the quadratic formula).
DiffPoly gd_quadratic(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                      int depth = -1);
DiffPoly gd_linear(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                   int depth = -1);
// The quadratic functional evaluated at L + eps*1.
DiffPoly gd_eps(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                const Scalar& eps, int depth = -1);

// Variational-derivative matrix delta f / delta L.
MatPSDO delta_matrix(const DiffPoly& f, const IndexSet& I, int N, int depth);

}  // namespace wsato
