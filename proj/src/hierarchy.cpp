#include "wsato/hierarchy.hpp"

#include <sstream>
#include <stdexcept>

namespace wsato {

namespace {

DiffPoly density_at(const IndexSet& I, int N, int k, int depth) {
  MatPSDO L = generic_operator(I, N);
  MatPSDO P = circ_frac_power(L, k, N, depth);
  DiffPoly h = psdo_residue(supertrace(P));
  return Scalar(N, k) * h;
}

}  // namespace

DiffPoly hamiltonian_density(const IndexSet& I, int N, int k, int depth) {
  if (k < 1) throw std::invalid_argument("hamiltonian_density: k must be >= 1");
  if (depth < 0) depth = default_depth(k, N);
  if (depth < 1) depth = 1;
  DiffPoly h = density_at(I, N, k, depth);
  if (!(h == density_at(I, N, k, depth + 2)))
    throw std::runtime_error("hamiltonian_density: unstable under depth+2");
  auto p = h.parity();
  if (!p || *p != 0)
    throw std::logic_error("hamiltonian_density: density not even");
  return h;
}

bool variational_identity_check(const IndexSet& I, int N, int k, int i, int a,
                                int b, int depth) {
  if (i < 0 || i >= N)
    throw std::invalid_argument("variational_identity_check: bad weight index");
  if (depth < 0) depth = default_depth(k, N) + N;
  DiffPoly h = hamiltonian_density(I, N, k, depth);
  DiffPoly lhs = variational_derivative(h, VarKey::u_gen(i, a, b, I));

  MatPSDO L = generic_operator(I, N);
  MatPSDO P = circ_frac_power(L, k - N, N, depth);
  // Res_z (z+d)^{-i-1} applied to the (b,a) symbol: the z^p coefficient
  // c_p contributes C(-i-1, p-i) d^{p-i}(c_p).
  int rb = -1, ca = -1;
  for (int t = 0; t < I.size(); ++t) {
    if (I.id_at(t) == b) rb = t;
    if (I.id_at(t) == a) ca = t;
  }
  DiffPoly rhs;
  const Psdo& e = P.at(rb, ca);
  for (const auto& [p, cp] : e.coeffs()) {
    if (p < i) continue;
    Scalar c = binomial(-i - 1, p - i);
    if (c.is_zero()) continue;
    rhs += c * poly_d(cp, p - i);
  }
  return lhs == rhs;
}

const DiffPoly& FlowResult::of(PackedVar base) const {
  auto it = dGen.find(packed_base(base));
  if (it == dGen.end())
    throw std::invalid_argument("FlowResult: unknown generator");
  return it->second;
}

FlowResult lax_flow(const MatPSDO& L, int N, int k, int exponent_shift,
                    int depth) {
  MatPSDO P = circ_frac_power(L, k + exponent_shift * N, N, depth);
  const IndexSet& I = L.rows();
  MatPSDO Pp(I, I, P.parity());
  for (int i = 0; i < I.size(); ++i)
    for (int j = 0; j < I.size(); ++j) Pp.at(i, j) = psdo_plus(P.at(i, j));
  FlowResult F;
  F.k = k;
  F.dL = mat_circ_mul(Pp, L) - mat_circ_mul(L, Pp);
  for (int i = 0; i < I.size(); ++i)
    for (int j = 0; j < I.size(); ++j) {
      const Psdo& e = F.dL.at(i, j);
      if (!e.is_zero() && e.order() >= N)
        throw std::logic_error("lax_flow: flow has order >= N");
    }
  return F;
}

namespace {

FlowResult generic_flow(const IndexSet& I, int N, int k, int depth,
                        bool cross_check, bool K_flow) {
  if (k < 1) throw std::invalid_argument("flow: k must be >= 1");
  if (depth < 0) depth = default_depth(k, N);
  MatPSDO L = generic_operator(I, N);
  FlowResult F = lax_flow(L, N, k, K_flow ? -1 : 0, depth);
  for (int M = 0; M < N; ++M)
    for (int a = 0; a < I.size(); ++a)
      for (int b = 0; b < I.size(); ++b) {
        VarKey u = VarKey::u_gen(M, I.id_at(a), I.id_at(b), I);
        F.dGen[pack(u)] = F.dL.at(a, b).coeff(M);
      }
  if (cross_check) {
    const BracketTable& T = K_flow ? generic_K_table_cached(I, N)
                                   : generic_H_table_cached(I, N);
    DiffPoly h = hamiltonian_density(I, N, k, depth + N);
    for (const auto& [base, val] : F.dGen) {
      DiffPoly viaMaster =
          master_eval(T, h, DiffPoly(unpack(base))).at_lambda_zero();
      if (!(viaMaster == val))
        throw std::logic_error("flow: Lax and bracket flows disagree on " +
                               unpack(base).str());
    }
  }
  return F;
}

}  // namespace

FlowResult flow_H(const IndexSet& I, int N, int k, int depth, bool cross_check) {
  return generic_flow(I, N, k, depth, cross_check, false);
}

FlowResult flow_K(const IndexSet& I, int N, int k, int depth, bool cross_check) {
  return generic_flow(I, N, k, depth, cross_check, true);
}

DiffPoly apply_flow(const FlowResult& F, const DiffPoly& x) {
  DiffPoly r;
  for (PackedVar base : occurring_base_vars(x)) {
    auto it = F.dGen.find(packed_base(base));
    if (it == F.dGen.end())
      throw std::invalid_argument("apply_flow: unknown generator " +
                                  unpack(base).str());
    const int dmax = max_der_of(x, base);
    for (int m = 0; m <= dmax; ++m) {
      DiffPoly pd = partial_derivative(x, packed_with_der(base, m));
      if (pd.is_zero()) continue;
      r += poly_d(it->second, m) * pd;
    }
  }
  return r;
}

LenardMagriReport check_lenard_magri(const IndexSet& I, int N, int kmax,
                                     int depth) {
  LenardMagriReport rep;
  for (int k = 1; k <= N; ++k) {
    FlowResult FK = flow_K(I, N, k, depth);
    for (const auto& [base, val] : FK.dGen) {
      if (!val.is_zero()) {
        rep.pass = false;
        std::ostringstream os;
        os << "flow_K(" << k << ") nonzero on " << unpack(base).str();
        rep.failures.push_back(os.str());
      }
    }
  }
  for (int k = 1; k <= kmax; ++k) {
    FlowResult FH = flow_H(I, N, k, depth);
    FlowResult FK = flow_K(I, N, k + N, depth);
    for (const auto& [base, val] : FH.dGen) {
      if (!(val == FK.of(base))) {
        rep.pass = false;
        std::ostringstream os;
        os << "recursion fails at k=" << k << " on " << unpack(base).str();
        rep.failures.push_back(os.str());
      }
    }
  }
  return rep;
}

bool check_conservation(const IndexSet& I, int N, int k, int kprime, int depth) {
  if (depth < 0) depth = default_depth(std::max(k, kprime), N);
  FlowResult F = flow_H(I, N, k, depth);
  DiffPoly h = hamiltonian_density(I, N, kprime, depth);
  DiffPoly dh = apply_flow(F, h);
  if (dh.is_zero()) return true;
  return is_total_derivative(dh);
}

}  // namespace wsato
