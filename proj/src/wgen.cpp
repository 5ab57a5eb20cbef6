#include "wsato/wgen.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace wsato {

RectangularSpec::RectangularSpec(int m_, int n_, int N_) : m(m_), n(n_), N(N_) {
  if (m + n < 1 || N < 2)
    throw std::invalid_argument("RectangularSpec: need m+n >= 1 and N >= 2");
  Pi = IndexSet::blocks_of_gl(N, m, n);
  Imn = IndexSet::gl(m, n);
}

MatPSDO build_affine_operator(const RectangularSpec& spec) {
  const IndexSet& Pi = spec.Pi;
  MatPSDO A(Pi, Pi);
  for (int r = 0; r < Pi.size(); ++r) {
    const int i = Pi.id_at(r);
    for (int c = 0; c < Pi.size(); ++c) {
      const int j = Pi.id_at(c);
      Psdo e;
      if (i == j) e.set_coeff(1, DiffPoly::one());
      DiffPoly qij(spec.q(i, j));
      if (Pi.parity_of(i)) qij = -qij;
      e.add_coeff(0, qij);
      A.at(r, c) = e;
    }
  }
  return A;
}

namespace {

// Substitution images for rho on the positive-grading generators.
std::map<PackedVar, DiffPoly> rho_images(const RectangularSpec& spec) {
  std::map<PackedVar, DiffPoly> images;
  const int s = spec.block_size();
  for (int i = 1; i <= spec.N * s; ++i) {
    for (int j = 1; j <= spec.N * s; ++j) {
      const int g = spec.grading(i, j);
      if (g < 1) continue;
      DiffPoly img;
      if (g == 1 && spec.pos_of(i) == spec.pos_of(j)) {
        Scalar c(1);
        if (spec.Imn.parity_of(spec.pos_of(i))) c = -c;
        img = DiffPoly(c);
      }
      images[pack(spec.q(i, j))] = img;
    }
  }
  return images;
}

}  // namespace

DiffPoly rho(const RectangularSpec& spec, const DiffPoly& x) {
  return substitute(x, rho_images(spec));
}

LambdaPoly rho(const RectangularSpec& spec, const LambdaPoly& x) {
  auto images = rho_images(spec);
  return map_coeffs(x, [&](const DiffPoly& c) { return substitute(c, images); });
}

MatPSDO rho(const RectangularSpec& spec, const MatPSDO& x) {
  auto images = rho_images(spec);
  MatPSDO r(x.rows(), x.cols(), x.parity());
  for (int i = 0; i < x.rows().size(); ++i) {
    for (int j = 0; j < x.cols().size(); ++j) {
      Psdo e;
      for (const auto& [k, c] : x.at(i, j).coeffs())
        e.add_coeff(k, substitute(c, images));
      e.set_floor(x.at(i, j).floor());
      r.at(i, j) = e;
    }
  }
  return r;
}

namespace {

// Scalar entry A_{[uv](ab)} = delta_uv delta_ab d + (-1)^a q_{[uv](ab)}.
Psdo block_entry(const RectangularSpec& spec, int u, int v, int a, int b) {
  Psdo e;
  if (u == v && a == b) e.set_coeff(1, DiffPoly::one());
  DiffPoly q(spec.q_block(u, v, a, b));
  if (spec.Imn.parity_of(a)) q = -q;
  e.add_coeff(0, q);
  return e;
}

// Explicit expansion of L_ij over strictly decreasing block paths
// N > i_1 > ... > i_k > 0 with inner gl(m|n) summations.
Psdo explicit_L_entry(const RectangularSpec& spec, int i, int j) {
  const int N = spec.N, s = spec.block_size();
  Psdo total;
  std::vector<int> path;
  // enumerate decreasing tuples (i_1,...,i_k), k = path length
  std::function<void(int)> rec = [&](int low) {
    // current path fixed; sum over the s-indices along it
    const int k = static_cast<int>(path.size());
    std::vector<int> sidx(static_cast<size_t>(k), 1);
    while (true) {
      // product A_{[N, i1+1](i, s1)} A_{[i1, i2+1](s1, s2)} ... A_{[ik, 1](sk, j)}
      Psdo prod(DiffPoly::one());
      int ublock = N;
      int arow = i;
      for (int t = 0; t < k; ++t) {
        prod = psdo_mul(prod, block_entry(spec, ublock, path[static_cast<size_t>(t)] + 1,
                                          arow, sidx[static_cast<size_t>(t)]));
        ublock = path[static_cast<size_t>(t)];
        arow = sidx[static_cast<size_t>(t)];
      }
      prod = psdo_mul(prod, block_entry(spec, ublock, 1, arow, j));
      if (k % 2) prod = -prod;
      total += prod;
      // advance the multi-index
      int t = k - 1;
      while (t >= 0 && sidx[static_cast<size_t>(t)] == s) {
        sidx[static_cast<size_t>(t)] = 1;
        --t;
      }
      if (t < 0) break;
      ++sidx[static_cast<size_t>(t)];
    }
    // extend the path with a smaller block index
    for (int next = (path.empty() ? N - 1 : path.back() - 1); next >= 1; --next) {
      path.push_back(next);
      rec(next);
      path.pop_back();
    }
  };
  rec(N);
  if ((N - 1) % 2) total = -total;
  return total;
}

}  // namespace

MatPSDO build_L(const RectangularSpec& spec) {
  const int N = spec.N, s = spec.block_size();
  MatPSDO P = rho(spec, build_affine_operator(spec));
  std::vector<int> I_ids, J_ids;
  for (int a = 1; a <= s; ++a) {
    I_ids.push_back((N - 1) * s + a);
    J_ids.push_back(a);
  }
  MatPSDO Q = quasi_determinant(P, I_ids, J_ids, /*depth=*/0);
  if ((N - 1) % 2) Q = -Q;

  // re-index rows and columns to gl(m|n)
  MatPSDO L(spec.Imn, spec.Imn);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) L.at(a, b) = Q.at(a, b);

  // cross-check against the explicit path expansion
  for (int a = 1; a <= s; ++a)
    for (int b = 1; b <= s; ++b) {
      if (!(L.at(a - 1, b - 1) == explicit_L_entry(spec, a, b)))
        throw std::logic_error("build_L: quasi-determinant and explicit "
                               "expansion disagree");
    }
  if (!L.is_monic(N)) throw std::logic_error("build_L: result not monic");
  if (!L.evenness_ok()) throw std::logic_error("build_L: evenness violated");
  return L;
}

std::vector<WGenerator> extract_generators(const RectangularSpec& spec) {
  return extract_generators(spec, build_L(spec));
}

std::vector<WGenerator> extract_generators(const RectangularSpec& spec,
                                           const MatPSDO& L) {
  std::vector<WGenerator> gens;
  const int s = spec.block_size();
  for (int k = spec.N - 1; k >= 0; --k)
    for (int i = 1; i <= s; ++i)
      for (int j = 1; j <= s; ++j)
        gens.push_back({i, j, k, L.at(i - 1, j - 1).coeff(k),
                        VarKey::w_gen(k, i, j, spec.Imn)});
  return gens;
}

DiffPoly linear_part_formula(const RectangularSpec& spec, int i, int j, int k) {
  DiffPoly r;
  for (int h = 0; h <= k; ++h)
    r += DiffPoly(spec.q_block(spec.N + h - k, h + 1, i, j));
  // sign: (-1)^k from the path count, (-1)^{N-1} from the normalization
  // of L, (-1)^i from the q-coefficient of the single non-diagonal factor
  if ((k + spec.N - 1 + spec.Imn.parity_of(i)) % 2) r = -r;
  return r;
}

DiffPoly linear_part(const DiffPoly& x) {
  DiffPoly r;
  for (const auto& [m, c] : x.terms()) {
    if (m.size() == 1 && m[0].e == 1 && packed_der(m[0].v) == 0)
      r.add_term(m, c);
  }
  return r;
}

std::optional<int> conformal_weight(const RectangularSpec& spec,
                                    const DiffPoly& x) {
  std::optional<int> weight;
  for (const auto& [m, c] : x.terms()) {
    int w = 0;
    for (const VarPow& f : m) {
      VarKey v = unpack(f.v);
      int base;
      if (v.family == Family::q) base = 1 - spec.grading(v.i, v.j);
      else if (v.family == Family::w) base = spec.N - v.M;
      else if (v.family == Family::u) base = spec.N - v.M;
      else throw std::invalid_argument("conformal_weight: unknown family");
      w += f.e * (base + v.der);
    }
    if (weight && *weight != w) return std::nullopt;
    weight = w;
  }
  return weight ? weight : std::optional<int>(0);
}

std::vector<MembershipViolation> check_membership(const RectangularSpec& spec,
                                                  const DiffPoly& x) {
  const BracketTable& T = affine_table_cached(spec.Pi, Scalar(-1));
  std::vector<MembershipViolation> out;
  const int s = spec.block_size();
  for (int u = 1; u < spec.N; ++u) {
    for (int a = 1; a <= s; ++a) {
      for (int b = 1; b <= s; ++b) {
        DiffPoly nu(spec.q_block(u, u + 1, a, b));
        LambdaPoly v = rho(spec, master_eval(T, nu, x));
        if (!v.is_zero()) out.push_back({u, a, b, v});
      }
    }
  }
  return out;
}

LambdaPoly w_bracket(const RectangularSpec& spec, const DiffPoly& x,
                     const DiffPoly& y, bool check) {
  if (check) {
    if (!check_membership(spec, x).empty() || !check_membership(spec, y).empty())
      throw std::invalid_argument("w_bracket: argument not in the W-algebra");
  }
  const BracketTable& T = affine_table_cached(spec.Pi, Scalar(-1));
  return rho(spec, master_eval(T, x, y));
}

WRewriter::WRewriter(const RectangularSpec& spec) : spec_(spec) {
  MatPSDO L = build_L(spec);
  for (const WGenerator& g : extract_generators(spec, L)) {
    // leader variable q_{[N-k, 1](ij)}, read its +-1 coefficient off the
    // generator and solve for it
    VarKey leader = spec.q_block(spec.N - g.k, 1, g.i, g.j);
    Mono lead_mono{{pack(leader), 1}};
    auto it = g.value.terms().find(lead_mono);
    if (it == g.value.terms().end())
      throw std::logic_error("WRewriter: generator misses its leader");
    const Scalar c = it->second;
    if (!(c == Scalar(1)) && !(c == Scalar(-1)))
      throw std::logic_error("WRewriter: leader coefficient not a unit");
    DiffPoly rest = g.value;
    DiffPoly lead = c * DiffPoly(leader);
    rest -= lead;  // g.value = c * leader + rest
    DiffPoly solved = c * (DiffPoly(g.var) - rest);
    solve_[pack(leader)] = solved;
    w_to_u_[pack(g.var)] = DiffPoly(VarKey::u_gen(g.k, g.i, g.j, spec.Imn));
    w_to_q_[pack(g.var)] = g.value;
  }
}

std::optional<DiffPoly> WRewriter::rewrite(const DiffPoly& x) const {
  DiffPoly cur = x;
  const int cap = 2 * spec_.N + 4;
  for (int pass = 0; pass < cap; ++pass) {
    bool has_leader = false;
    for (PackedVar v : occurring_base_vars(cur))
      if (solve_.count(packed_base(v))) has_leader = true;
    if (!has_leader) break;
    cur = substitute(cur, solve_);
  }
  for (PackedVar v : occurring_base_vars(cur)) {
    if (unpack(v).family == Family::q) return std::nullopt;
  }
  // safety: substituting the q-expressions back must reproduce x
  if (!(substitute(cur, w_to_q_) == x))
    throw std::logic_error("WRewriter: back-substitution check failed");
  return cur;
}

std::optional<DiffPoly> WRewriter::rewrite_to_generic(const DiffPoly& x) const {
  auto r = rewrite(x);
  if (!r) return std::nullopt;
  return substitute(*r, w_to_u_);
}

std::vector<IsoViolation> verify_isomorphism(const RectangularSpec& spec,
                                             ExecMode mode) {
  MatPSDO L = build_L(spec);
  auto gens = extract_generators(spec, L);
  // membership of every generator is part of the claim
  for (const WGenerator& g : gens) {
    if (!check_membership(spec, g.value).empty())
      throw std::logic_error("verify_isomorphism: generator fails membership");
  }
  WRewriter rw(spec);
  const size_t G = gens.size();
  return run_indexed<IsoViolation>(G * G, mode, [&](size_t idx, IsoViolation& out) {
    const WGenerator& ga = gens[idx / G];
    const WGenerator& gb = gens[idx % G];
    LambdaPoly bw = w_bracket(spec, ga.value, gb.value, /*check=*/false);
    LambdaPoly got;
    for (const auto& [key, c] : bw.coeffs()) {
      auto rc = rw.rewrite_to_generic(c);
      if (!rc)
        throw std::logic_error("verify_isomorphism: bracket value leaves the "
                               "W-algebra");
      got += LambdaPoly::lambda(key.first) * LambdaPoly(*rc);
    }
    LambdaPoly want = generic_H_bracket(spec.Imn, spec.N, ga.k, ga.i, ga.j,
                                        gb.k, gb.i, gb.j);
    if (got == want) return false;
    out = {ga.var, gb.var, got, want};
    return true;
  });
}

}  // namespace wsato
