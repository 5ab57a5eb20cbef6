#pragma once

#include <map>
#include <vector>

#include "wsato/matop.hpp"
#include "wsato/pvsa.hpp"

namespace wsato {

// Default working depth for the fractional-power computations.
inline int default_depth(int k, int N) { return k + N + 1; }

// Conserved density h_k = (N/k) Res str L^{k/N} of the generic operator.
// Computed at the given depth and revalidated at depth+2.
DiffPoly hamiltonian_density(const IndexSet& I, int N, int k, int depth = -1);

// delta h_k / delta u_{i,ab} = Res_z (z+d)^{-i-1} (L^{k/N-1})_{ba}(z);
// returns true when the identity holds.
bool variational_identity_check(const IndexSet& I, int N, int k, int i, int a,
                                int b, int depth = -1);

// One Hamiltonian flow: the t_k-derivative of L and of each generator.
struct FlowResult {
  int k = 0;
  MatPSDO dL;
  std::map<PackedVar, DiffPoly> dGen;

  const DiffPoly& of(PackedVar base) const;
};

// H-flow dL/dt_k = (L^{k/N})_+ o L - L o (L^{k/N})_+. With cross_check the
// result is compared against the master-formula flow {h_k la .}_H|_{la=0}
// on every generator (a defect check, not a user error).
FlowResult flow_H(const IndexSet& I, int N, int k, int depth = -1,
                  bool cross_check = false);
// K-flow, with exponent k/N - 1.
FlowResult flow_K(const IndexSet& I, int N, int k, int depth = -1,
                  bool cross_check = false);

// Same Lax flows for an explicitly given monic operator (used for reduced
// systems, where some generators are set to zero).
FlowResult lax_flow(const MatPSDO& L, int N, int k, int exponent_shift,
                    int depth);

// Applies the derivation defined by a flow (extended by the Leibniz rule)
// to an arbitrary differential polynomial.
DiffPoly apply_flow(const FlowResult& F, const DiffPoly& x);

struct LenardMagriReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// flow_H(k) = flow_K(k+N) for k <= kmax, and flow_K(k) = 0 for k <= N.
LenardMagriReport check_lenard_magri(const IndexSet& I, int N, int kmax,
                                     int depth = -1);

// d h_{k'} / dt_k is a total derivative.
bool check_conservation(const IndexSet& I, int N, int k, int kprime,
                        int depth = -1);

}  // namespace wsato
