#pragma once

#include <optional>
#include <vector>

#include "wsato/matop.hpp"
#include "wsato/pvsa.hpp"

namespace wsato {

// The N x (m|n) rectangular setting: index set Pi = {1,...,N(m+n)} with
// the block parity pattern, block coordinates q_{[uv](ab)}.
struct RectangularSpec {
  int m = 1, n = 0, N = 2;
  IndexSet Pi;    // N blocks of gl(m|n)
  IndexSet Imn;   // gl(m|n)

  RectangularSpec(int m_, int n_, int N_);

  int block_size() const { return m + n; }
  // Full index of (block u, position a), 1-based.
  int full_index(int u, int a) const { return (u - 1) * (m + n) + a; }
  int block_of(int i) const { return (i - 1) / (m + n) + 1; }
  int pos_of(int i) const { return (i - 1) % (m + n) + 1; }
  // ad h/2 grading of q_{ij}: block(j) - block(i).
  int grading(int i, int j) const { return block_of(j) - block_of(i); }

  VarKey q(int i, int j, int der = 0) const {
    return VarKey::q_gen(i, j, Pi, der);
  }
  VarKey q_block(int u, int v, int a, int b, int der = 0) const {
    return q(full_index(u, a), full_index(v, b), der);
  }
};

// The first-order operator A_ij = delta_ij d + (-1)^i q_ij over V(gl(Pi)).
MatPSDO build_affine_operator(const RectangularSpec& spec);

// The reduction homomorphism: q of grading >= 2 dies, grading 1 becomes
// (-1)^a delta_ab, grading <= 0 is fixed.
DiffPoly rho(const RectangularSpec& spec, const DiffPoly& x);
LambdaPoly rho(const RectangularSpec& spec, const LambdaPoly& x);
MatPSDO rho(const RectangularSpec& spec, const MatPSDO& x);

// The monic order-N operator over gl(m|n) whose coefficients generate the
// W-superalgebra; computed by quasi-determinant and cross-checked against
// the explicit expansion over decreasing block paths.
MatPSDO build_L(const RectangularSpec& spec);

struct WGenerator {
  int i, j, k;
  DiffPoly value;
  VarKey var;  // the w_{ij;k} symbol
};

// All N(m+n)^2 coefficients w_{ij;k} of L.
std::vector<WGenerator> extract_generators(const RectangularSpec& spec);
std::vector<WGenerator> extract_generators(const RectangularSpec& spec,
                                           const MatPSDO& L);

// Linear part predicted by the construction:
// f_{ij;k} = (-1)^k sum_h q_{[N+h-k, h+1](ij)}.
DiffPoly linear_part_formula(const RectangularSpec& spec, int i, int j, int k);
// Degree-1, derivative-free part of x.
DiffPoly linear_part(const DiffPoly& x);

// Common conformal weight of all monomials, or nullopt if inhomogeneous.
std::optional<int> conformal_weight(const RectangularSpec& spec,
                                    const DiffPoly& x);

struct MembershipViolation {
  int u, a, b;
  LambdaPoly value;
};

// x is in the W-superalgebra iff rho({q_{[u,u+1](ab)} la x}) = 0 for all
// grading-one generators; returns the violating triples.
std::vector<MembershipViolation> check_membership(const RectangularSpec& spec,
                                                  const DiffPoly& x);

// W-algebra bracket rho({x la y}_Aff) at level -1. When check is set the
// arguments are first run through check_membership.
LambdaPoly w_bracket(const RectangularSpec& spec, const DiffPoly& x,
                     const DiffPoly& y, bool check = true);

// Rewrites elements of the W-subalgebra as differential polynomials in
// the w_{ij;k} symbols by triangular elimination along leading linear
// parts, ordered by conformal weight.
class WRewriter {
 public:
  explicit WRewriter(const RectangularSpec& spec);
  // Polynomial in w-family VarKeys, or nullopt when x is not reachable.
  std::optional<DiffPoly> rewrite(const DiffPoly& x) const;
  // Same, with the w symbols renamed to generic generators u_{k,ij}.
  std::optional<DiffPoly> rewrite_to_generic(const DiffPoly& x) const;

 private:
  const RectangularSpec& spec_;
  std::map<PackedVar, DiffPoly> solve_;    // leader -> w-var minus residue
  std::map<PackedVar, DiffPoly> w_to_u_;   // w symbol -> generic generator
  std::map<PackedVar, DiffPoly> w_to_q_;   // w symbol -> its q-expression
};

struct IsoViolation {
  VarKey a, b;
  LambdaPoly got, want;
};

// Compares the W-bracket of all generator pairs, rewritten in the w's,
// with the generic H-bracket of V_{(m|n)}^N.
std::vector<IsoViolation> verify_isomorphism(const RectangularSpec& spec,
                                             ExecMode mode = default_exec_mode());

}  // namespace wsato
