#include "wsato/pvsa.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace wsato {

namespace {
ExecMode g_default_mode = ExecMode::openmp;
}

ExecMode default_exec_mode() { return g_default_mode; }
void set_default_exec_mode(ExecMode m) { g_default_mode = m; }

bool BracketTable::has(PackedVar base) const {
  for (const VarKey& g : gens_)
    if (pack(g) == packed_base(base)) return true;
  return false;
}

const LambdaPoly& BracketTable::value(PackedVar a, PackedVar b) const {
  auto it = values_.find({packed_base(a), packed_base(b)});
  if (it == values_.end())
    throw std::invalid_argument("BracketTable: unknown generator pair " +
                                unpack(a).str() + ", " + unpack(b).str());
  return it->second;
}

void BracketTable::set_value(const VarKey& a, const VarKey& b,
                             const LambdaPoly& v) {
  values_[{pack(a.with_der(0)), pack(b.with_der(0))}] = v;
}

BracketTable BracketTable::combine(const BracketTable& T, const BracketTable& S,
                                   const Scalar& eps) {
  BracketTable r(T.gens_);
  for (const auto& [key, v] : T.values_) {
    auto it = S.values_.find(key);
    LambdaPoly sv = (it == S.values_.end()) ? LambdaPoly() : it->second;
    r.values_[key] = v + eps * sv;
  }
  return r;
}

LambdaPoly master_eval(const BracketTable& T, const DiffPoly& f,
                       const DiffPoly& g) {
  LambdaPoly result;
  for (Parity pf : {0, 1}) {
    DiffPoly fh = f.parity_part(pf);
    if (fh.is_zero()) continue;
    for (Parity pg : {0, 1}) {
      DiffPoly gh = g.parity_part(pg);
      if (gh.is_zero()) continue;
      for (PackedVar vi : occurring_base_vars(fh)) {
        if (!T.has(vi))
          throw std::invalid_argument("master_eval: unknown generator " +
                                      unpack(vi).str());
        const Parity pi = packed_parity(vi);
        const int mmax = max_der_of(fh, vi);
        for (int m = 0; m <= mmax; ++m) {
          DiffPoly dfm = partial_derivative(fh, packed_with_der(vi, m));
          if (dfm.is_zero()) continue;
          // (-lambda-d)^m df/du_i^{(m)}
          LambdaPoly Xm = neg_lambda_shift_apply(m, LambdaPoly(dfm));
          for (PackedVar vj : occurring_base_vars(gh)) {
            if (!T.has(vj))
              throw std::invalid_argument("master_eval: unknown generator " +
                                          unpack(vj).str());
            const Parity pj = packed_parity(vj);
            const LambdaPoly& B = T.value(vi, vj);
            if (B.is_zero()) continue;
            // {u_i lambda+d u_j}_> acting on Xm
            LambdaPoly inner;
            for (const auto& [key, bp] : B.coeffs())
              inner += bp * lambda_shift_apply(key.first, Xm);
            if (inner.is_zero()) continue;
            const int sgn =
                (pf * pg + pi * pj + pg * pj + pj) % 2 ? -1 : 1;
            const int nmax = max_der_of(gh, vj);
            for (int n = 0; n <= nmax; ++n) {
              DiffPoly dgn = partial_derivative(gh, packed_with_der(vj, n));
              if (dgn.is_zero()) continue;
              LambdaPoly term = dgn * lambda_shift_apply(n, inner);
              if (sgn < 0) term = -term;
              result += term;
            }
          }
        }
      }
    }
  }
  return result;
}

LambdaPoly affine_bracket(const IndexSet& I, const Scalar& level, int i, int j,
                          int h, int k) {
  const Parity pi = I.parity_of(i), pj = I.parity_of(j);
  const Parity ph = I.parity_of(h), pk = I.parity_of(k);
  LambdaPoly r;
  if (j == h) r += LambdaPoly(DiffPoly(VarKey::q_gen(i, k, I)));
  if (i == k) {
    DiffPoly t(VarKey::q_gen(h, j, I));
    if (((pi + pj) * (ph + pk)) % 2) r += LambdaPoly(t);
    else r -= LambdaPoly(t);
  }
  if (j == h && i == k) {
    Scalar c = level;
    if (pi) c = -c;
    r += LambdaPoly::lambda(1) * LambdaPoly(DiffPoly(c));
  }
  return r;
}

BracketTable affine_table(const IndexSet& I, const Scalar& level) {
  std::vector<VarKey> gens;
  for (int i : I.ids())
    for (int j : I.ids()) gens.push_back(VarKey::q_gen(i, j, I));
  BracketTable T(gens);
  for (int i : I.ids())
    for (int j : I.ids())
      for (int h : I.ids())
        for (int k : I.ids())
          T.set_value(VarKey::q_gen(i, j, I), VarKey::q_gen(h, k, I),
                      affine_bracket(I, level, i, j, h, k));
  return T;
}

MatPSDO generic_operator(const IndexSet& I, int N) {
  MatPSDO L(I, I);
  for (int r = 0; r < I.size(); ++r) {
    for (int c = 0; c < I.size(); ++c) {
      Psdo e;
      if (r == c) e.set_coeff(N, DiffPoly::one());
      for (int M = 0; M < N; ++M)
        e.add_coeff(M, DiffPoly(VarKey::u_gen(M, I.id_at(r), I.id_at(c), I)));
      L.at(r, c) = e;
    }
  }
  return L;
}

namespace {

Psdo generic_entry(const IndexSet& I, int N, int x, int y, const Scalar& eps) {
  Psdo e;
  if (x == y) {
    e.set_coeff(N, DiffPoly::one());
    if (!eps.is_zero()) e.add_coeff(0, DiffPoly(eps));
  }
  for (int M = 0; M < N; ++M)
    e.add_coeff(M, DiffPoly(VarKey::u_gen(M, x, y, I)));
  return e;
}

}  // namespace

LambdaPoly generic_eps_bracket(const IndexSet& I, int N, int k, int a, int b,
                               int l, int c, int d, const Scalar& eps) {
  if (k < 0 || k >= N || l < 0 || l >= N)
    throw std::invalid_argument("generic bracket: weight index out of range");
  if (!I.contains(a) || !I.contains(b) || !I.contains(c) || !I.contains(d))
    throw std::invalid_argument("generic bracket: index out of range");
  const Psdo Lcb = generic_entry(I, N, c, b, eps);
  const Psdo Lad = generic_entry(I, N, a, d, eps);
  const LPsdo dual_l = LPsdo::d_power(-l - 1, LambdaPoly(DiffPoly::one()));

  // (L_cb(d+la) (d+la)^{-k-1})_+ L_ad(d) d^{-l-1}
  LPsdo S1 = lambda_shift(psdo_mul(Lcb, d_op(-k - 1)), Floor(0));
  LPsdo T1 = psdo_mul(psdo_mul(psdo_plus(S1), lift_lambda(Lad)), dual_l);
  LambdaPoly R1 = psdo_residue(T1);

  // L_cb(d+la) ((d+la)^{-k-1} L_ad(d))_+ d^{-l-1}
  const int tau = -(N + k + 2);
  LPsdo I2 =
      psdo_mul(lambda_shift_power(-k - 1, Floor(tau)), lift_lambda(Lad), Floor(0));
  LPsdo T2 = psdo_mul(psdo_mul(lambda_shift(Lcb), psdo_plus(I2)), dual_l);
  LambdaPoly R2 = psdo_residue(T2);

  LambdaPoly v = R1 - R2;
  const Parity pa = I.parity_of(a), pb = I.parity_of(b), pc = I.parity_of(c);
  if ((pa * pb + pa * pc + pb * pc) % 2) v = -v;
  return v;
}

LambdaPoly generic_H_bracket(const IndexSet& I, int N, int k, int a, int b,
                             int l, int c, int d) {
  return generic_eps_bracket(I, N, k, a, b, l, c, d, Scalar(0));
}

LambdaPoly generic_K_bracket(const IndexSet& I, int N, int k, int a, int b,
                             int l, int c, int d) {
  return generic_eps_bracket(I, N, k, a, b, l, c, d, Scalar(1)) -
         generic_eps_bracket(I, N, k, a, b, l, c, d, Scalar(0));
}

namespace {

BracketTable generic_table(const IndexSet& I, int N, bool K, ExecMode mode) {
  std::vector<VarKey> gens;
  for (int M = 0; M < N; ++M)
    for (int a : I.ids())
      for (int b : I.ids()) gens.push_back(VarKey::u_gen(M, a, b, I));
  BracketTable T(gens);
  const size_t G = gens.size();
  struct Entry {
    size_t s, t;
    LambdaPoly v;
  };
  auto values = run_indexed<Entry>(G * G, mode, [&](size_t idx, Entry& out) {
    size_t s = idx / G, t = idx % G;
    const VarKey &x = gens[s], &y = gens[t];
    out.s = s;
    out.t = t;
    out.v = K ? generic_K_bracket(I, N, x.M, x.i, x.j, y.M, y.i, y.j)
              : generic_H_bracket(I, N, x.M, x.i, x.j, y.M, y.i, y.j);
    return true;
  });
  for (const Entry& e : values) T.set_value(gens[e.s], gens[e.t], e.v);
  return T;
}

}  // namespace

BracketTable generic_H_table(const IndexSet& I, int N, ExecMode mode) {
  return generic_table(I, N, false, mode);
}

BracketTable generic_K_table(const IndexSet& I, int N, ExecMode mode) {
  return generic_table(I, N, true, mode);
}

namespace {

std::string table_key(const IndexSet& I, const std::string& tag) {
  std::ostringstream os;
  os << tag << ":";
  for (int id : I.ids()) os << id << "." << I.parity_of(id) << ",";
  return os.str();
}

const BracketTable& cache_lookup(const std::string& key,
                                 const std::function<BracketTable()>& build) {
  static std::mutex mu;
  static std::map<std::string, BracketTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build()).first;
  return it->second;
}

}  // namespace

const BracketTable& affine_table_cached(const IndexSet& I, const Scalar& level) {
  return cache_lookup(table_key(I, "aff" + level.str()),
                      [&] { return affine_table(I, level); });
}

const BracketTable& generic_H_table_cached(const IndexSet& I, int N) {
  return cache_lookup(table_key(I, "H" + std::to_string(N)), [&] {
    return generic_H_table(I, N, ExecMode::serial);
  });
}

const BracketTable& generic_K_table_cached(const IndexSet& I, int N) {
  return cache_lookup(table_key(I, "K" + std::to_string(N)), [&] {
    return generic_K_table(I, N, ExecMode::serial);
  });
}

std::vector<PairViolation> check_skew(const BracketTable& T, ExecMode mode) {
  const auto& gens = T.generators();
  const size_t G = gens.size();
  return run_indexed<PairViolation>(G * G, mode, [&](size_t idx, PairViolation& out) {
    const VarKey& a = gens[idx / G];
    const VarKey& b = gens[idx % G];
    LambdaPoly rhs = expand_at_minus_lambda_minus_d(T.value(pack(b), pack(a)));
    LambdaPoly defect = T.value(pack(a), pack(b));
    if ((a.parity * b.parity) % 2) defect -= rhs;
    else defect += rhs;
    if (defect.is_zero()) return false;
    out = {a, b, defect};
    return true;
  });
}

namespace {

// J1 - J2 - J3 for the triple (a, b, c); zero iff Jacobi holds.
LambdaPoly jacobi_defect(const BracketTable& T, const VarKey& a, const VarKey& b,
                         const VarKey& c) {
  const DiffPoly da(a), db(b), dc(c);
  LambdaPoly defect;
  // {a la {b mu c}}: outer bracket applied to each mu-coefficient
  for (const auto& [key, coeff] : T.value(pack(b), pack(c)).coeffs())
    defect += LambdaPoly::mu(key.first) * master_eval(T, da, coeff);
  // {{a la b} la+mu c}
  for (const auto& [key, coeff] : T.value(pack(a), pack(b)).coeffs())
    defect -= LambdaPoly::lambda(key.first) *
              subst_lambda_to_lambda_plus_mu(master_eval(T, coeff, dc));
  // (-1)^{ab} {b mu {a la c}}
  LambdaPoly third;
  for (const auto& [key, coeff] : T.value(pack(a), pack(c)).coeffs())
    third += LambdaPoly::lambda(key.first) *
             rename_lambda_to_mu(master_eval(T, db, coeff));
  if ((a.parity * b.parity) % 2) defect += third;
  else defect -= third;
  return defect;
}

}  // namespace

std::vector<TripleViolation> check_jacobi(const BracketTable& T, ExecMode mode) {
  const auto& gens = T.generators();
  const size_t G = gens.size();
  return run_indexed<TripleViolation>(
      G * G * G, mode, [&](size_t idx, TripleViolation& out) {
        const VarKey& a = gens[idx / (G * G)];
        const VarKey& b = gens[(idx / G) % G];
        const VarKey& c = gens[idx % G];
        LambdaPoly defect = jacobi_defect(T, a, b, c);
        if (defect.is_zero()) return false;
        out = {a, b, c, defect};
        return true;
      });
}

namespace {

// Truncated series in z and w with LambdaPoly coefficients.
using TriSeries = std::map<std::pair<int, int>, LambdaPoly>;

void tri_add(TriSeries& s, int z, int w, const LambdaPoly& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = s.try_emplace({z, w}, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) s.erase(it);
  }
}

// A_hj(z) iota_z (z-w-la-d)^{-1} (A_ik(w)) on the window.
TriSeries adler_term_b(const Psdo& Ahj, const Psdo& Aik, int zmin, int zmax,
                       int wmin, int wmax) {
  TriSeries out;
  for (const auto& [p, ap] : Ahj.coeffs()) {
    for (int n = 0; n <= p - zmin - 1; ++n) {
      const int zdeg = p - n - 1;
      if (zdeg > zmax) continue;
      // (w+la+d)^n = sum_{t+r+s=n} C(n,t) C(n-t,r) w^r la^s d^t
      for (const auto& [q, bq] : Aik.coeffs()) {
        DiffPoly der = bq;
        for (int t = 0; t <= n; ++t) {
          if (t > 0) der = poly_d(der);
          for (int r = 0; r + t <= n; ++r) {
            const int wdeg = q + r;
            if (wdeg < wmin || wdeg > wmax) continue;
            const int s = n - t - r;
            Scalar c = binomial(n, t) * binomial(n - t, r);
            tri_add(out, zdeg, wdeg,
                    LambdaPoly::lambda(s) * LambdaPoly(ap * (c * der)));
          }
        }
      }
    }
  }
  return out;
}

// A_hj(w+la+d) iota_z (z-w-la-d)^{-1} ((A_ik)^*(la-z)) on the window.
TriSeries adler_term_a(const Psdo& Ahj, const Psdo& Aik, int zmin, int zmax,
                       int wmin, int wmax) {
  // symbol of the adjoint at la-z: map z-degree -> LambdaPoly
  Psdo star = psdo_adjoint(Aik, Aik.floor());
  std::map<int, LambdaPoly> G;
  for (const auto& [e, be] : star.coeffs()) {
    if (e >= 0) {
      // (la-z)^e = sum_t C(e,t) (-1)^t la^{e-t} z^t
      for (int t = 0; t <= e; ++t) {
        Scalar c = binomial(e, t);
        if (t % 2) c = -c;
        LambdaPoly v = LambdaPoly::lambda(e - t) * LambdaPoly(c * be);
        if (!v.is_zero()) {
          auto [it, fresh] = G.try_emplace(t, v);
          if (!fresh) it->second += v;
        }
      }
    } else {
      // iota_z (la-z)^e = sum_t (-1)^{e+t} C(e,t) la^t z^{e-t}
      for (int t = 0; e - t >= zmin; ++t) {
        Scalar c = binomial(e, t);
        if ((e + t) % 2) c = -c;
        LambdaPoly v = LambdaPoly::lambda(t) * LambdaPoly(c * be);
        if (!v.is_zero()) {
          auto [it, fresh] = G.try_emplace(e - t, v);
          if (!fresh) it->second += v;
        }
      }
    }
  }
  // iota-expansion: accumulate (w+la+d)^n G at z-degree xi-n-1, w-degree r
  TriSeries mid;
  for (const auto& [xi, lv] : G) {
    for (int n = 0; n <= xi - zmin - 1; ++n) {
      const int zdeg = xi - n - 1;
      if (zdeg > zmax) continue;
      for (const auto& [lkey, lc] : lv.coeffs()) {
        DiffPoly der = lc;
        for (int t = 0; t <= n; ++t) {
          if (t > 0) der = poly_d(der);
          for (int r = 0; r + t <= n; ++r) {
            const int s = n - t - r;
            Scalar c = binomial(n, t) * binomial(n - t, r);
            if (c.is_zero()) continue;
            tri_add(mid, zdeg, r,
                    LambdaPoly::lambda(lkey.first + s) * LambdaPoly(c * der));
          }
        }
      }
    }
  }
  // apply A_hj(w+la+d) from the left
  TriSeries out;
  for (const auto& [p, ap] : Ahj.coeffs()) {
    for (const auto& [zw, lv] : mid) {
      const int zdeg = zw.first;
      const int w0 = zw.second;
      for (const auto& [lkey, lc] : lv.coeffs()) {
        DiffPoly der = lc;
        const int tcap = p >= 0 ? p : w0 + p - wmin;
        for (int t = 0; t <= tcap; ++t) {
          if (t > 0) der = poly_d(der);
          const int rcap = p >= 0 ? p - t : w0 + p - t - wmin;
          for (int r = 0; r <= rcap; ++r) {
            const int wdeg = w0 + p - t - r;
            if (wdeg < wmin || wdeg > wmax) continue;
            Scalar c = binomial(p, t) * binomial(p - t, r);
            if (c.is_zero()) continue;
            tri_add(out, zdeg, wdeg,
                    LambdaPoly::lambda(lkey.first + r) * LambdaPoly(ap * (c * der)));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<AdlerViolation> verify_adler_identity(const MatPSDO& A,
                                                  const BracketTable& T,
                                                  int zmax, int wmax, int depth,
                                                  int sign, ExecMode mode) {
  const IndexSet& R = A.rows();
  const IndexSet& C = A.cols();
  const int zmin = -depth, wmin = -depth;
  // trust precondition: window and expansion reach must be trusted
  int maxtop = 0;
  bool any = false;
  for (int i = 0; i < R.size(); ++i)
    for (int j = 0; j < C.size(); ++j)
      if (!A.at(i, j).is_zero()) {
        maxtop = any ? std::max(maxtop, A.at(i, j).order()) : A.at(i, j).order();
        any = true;
      }
  const int nbound = std::max(0, maxtop - zmin - 1);
  const int need = std::min(zmin, wmin - nbound);
  for (int i = 0; i < R.size(); ++i)
    for (int j = 0; j < C.size(); ++j) {
      Floor f = A.at(i, j).floor();
      if (f && *f > need)
        throw std::invalid_argument(
            "verify_adler_identity: window exceeds trusted floors (need " +
            std::to_string(need) + ", have " + std::to_string(*f) + ")");
    }

  const size_t n = static_cast<size_t>(R.size()) * static_cast<size_t>(C.size());
  const size_t total = n * n;
  auto all = run_indexed<std::vector<AdlerViolation>>(
      total, mode, [&](size_t idx, std::vector<AdlerViolation>& out) {
        const size_t fst = idx / n, snd = idx % n;
        const int i = static_cast<int>(fst) / C.size();
        const int j = static_cast<int>(fst) % C.size();
        const int h = static_cast<int>(snd) / C.size();
        const int k = static_cast<int>(snd) % C.size();
        const Parity pi = R.parity_of(R.id_at(i));
        const Parity pj = C.parity_of(C.id_at(j));
        const Parity ph = R.parity_of(R.id_at(h));

        // LHS: {A_ij(z) la A_hk(w)} coefficientwise via the master formula
        TriSeries lhs;
        for (const auto& [p, ap] : A.at(i, j).coeffs()) {
          if (p < zmin || p > zmax) continue;
          for (const auto& [q, bq] : A.at(h, k).coeffs()) {
            if (q < wmin || q > wmax) continue;
            tri_add(lhs, p, q, master_eval(T, ap, bq));
          }
        }
        // RHS: (-1)^{ij+ih+jh} (term_b - term_a), times the sign flag
        TriSeries tb = adler_term_b(A.at(h, j), A.at(i, k), zmin, zmax, wmin, wmax);
        TriSeries ta = adler_term_a(A.at(h, j), A.at(i, k), zmin, zmax, wmin, wmax);
        int s = ((pi * pj + pi * ph + pj * ph) % 2) ? -1 : 1;
        if (sign < 0) s = -s;
        TriSeries diff = lhs;
        for (const auto& [zw, v] : tb)
          tri_add(diff, zw.first, zw.second, s < 0 ? v : -v);
        for (const auto& [zw, v] : ta)
          tri_add(diff, zw.first, zw.second, s < 0 ? -v : v);
        for (const auto& [zw, v] : diff) {
          if (zw.first < zmin || zw.first > zmax || zw.second < wmin ||
              zw.second > wmax)
            continue;
          if (!v.is_zero())
            out.push_back({R.id_at(i), C.id_at(j), R.id_at(h), C.id_at(k),
                           zw.first, zw.second, v});
        }
        return !out.empty();
      });
  std::vector<AdlerViolation> flat;
  for (auto& v : all) flat.insert(flat.end(), v.begin(), v.end());
  return flat;
}

MatPSDO delta_matrix(const DiffPoly& f, const IndexSet& I, int N, int depth) {
  auto p = f.parity();
  if (!p)
    throw std::invalid_argument("delta_matrix: f must have homogeneous parity");
  MatPSDO D(I, I, *p);
  for (int a = 0; a < I.size(); ++a) {
    const int ida = I.id_at(a);
    for (int b = 0; b < I.size(); ++b) {
      const int idb = I.id_at(b);
      Psdo e;
      for (int k = 0; k < N; ++k) {
        DiffPoly vd = variational_derivative(f, VarKey::u_gen(k, ida, idb, I));
        if (vd.is_zero()) continue;
        Psdo term = psdo_mul(Psdo::d_power(-k - 1, DiffPoly::one()), Psdo(vd),
                             Floor(-depth));
        if (I.parity_of(ida)) term = -term;
        e += term;
      }
      e.set_floor(floor_max(e.floor(), Floor(-depth)));
      D.at(b, a) = e;
    }
  }
  return D;
}

DiffPoly gd_eps(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                const Scalar& eps, int depth) {
  const IndexSet& I = L.rows();
  const int N = L.order();
  if (depth < 0) depth = 2 * N + 2;
  MatPSDO Leps = L;
  if (!eps.is_zero()) {
    for (int i = 0; i < I.size(); ++i) Leps.at(i, i).add_coeff(0, DiffPoly(eps));
  }
  DiffPoly total;
  for (Parity pf : {0, 1}) {
    DiffPoly fh = f.parity_part(pf);
    if (fh.is_zero()) continue;
    for (Parity pg : {0, 1}) {
      DiffPoly gh = g.parity_part(pg);
      if (gh.is_zero()) continue;
      MatPSDO Df = delta_matrix(fh, I, N, depth);
      MatPSDO Dg = delta_matrix(gh, I, N, depth);
      // (L Df)_+ L Dg - L (Df L)_+ Dg, products in the star sense
      MatPSDO X1 = mat_star_mul(Leps, Df);
      MatPSDO P1(I, I, X1.parity());
      for (int i = 0; i < I.size(); ++i)
        for (int j = 0; j < I.size(); ++j) P1.at(i, j) = psdo_plus(X1.at(i, j));
      MatPSDO T1 = mat_star_mul(mat_star_mul(P1, Leps), Dg);

      MatPSDO X2 = mat_star_mul(Df, Leps);
      MatPSDO P2(I, I, X2.parity());
      for (int i = 0; i < I.size(); ++i)
        for (int j = 0; j < I.size(); ++j) P2.at(i, j) = psdo_plus(X2.at(i, j));
      MatPSDO T2 = mat_star_mul(mat_star_mul(Leps, P2), Dg);

      total += psdo_residue(supertrace(T1 - T2));
    }
  }
  return total;
}

DiffPoly gd_quadratic(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                      int depth) {
  return gd_eps(f, g, L, Scalar(0), depth);
}

DiffPoly gd_linear(const DiffPoly& f, const DiffPoly& g, const MatPSDO& L,
                   int depth) {
  return gd_eps(f, g, L, Scalar(1), depth) - gd_eps(f, g, L, Scalar(0), depth);
}

}  // namespace wsato
