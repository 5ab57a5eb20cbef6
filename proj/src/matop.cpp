#include "wsato/matop.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace wsato {

MatPSDO::MatPSDO(IndexSet rows, IndexSet cols, Parity parity)
    : rows_(std::move(rows)), cols_(std::move(cols)), parity_(parity) {
  entries_.resize(static_cast<size_t>(rows_.size()) * static_cast<size_t>(cols_.size()));
}

MatPSDO MatPSDO::identity(const IndexSet& I) {
  MatPSDO r(I, I);
  for (int i = 0; i < I.size(); ++i) r.at(i, i) = Psdo(DiffPoly::one());
  return r;
}

MatPSDO MatPSDO::d_matrix(const IndexSet& I, int k) {
  MatPSDO r(I, I);
  for (int i = 0; i < I.size(); ++i) r.at(i, i) = d_op(k);
  return r;
}

bool MatPSDO::is_zero() const {
  for (const Psdo& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

int MatPSDO::order() const {
  bool any = false;
  int N = 0;
  for (const Psdo& e : entries_) {
    if (e.is_zero()) continue;
    N = any ? std::max(N, e.order()) : e.order();
    any = true;
  }
  if (!any) throw std::domain_error("order of zero matrix operator");
  return N;
}

bool MatPSDO::is_monic(int N) const {
  if (!square()) return false;
  for (int r = 0; r < rows_.size(); ++r) {
    for (int c = 0; c < cols_.size(); ++c) {
      const Psdo& e = at(r, c);
      if (!e.is_zero() && e.order() > N) return false;
      DiffPoly lead = e.coeff(N);
      if (r == c ? !(lead == DiffPoly::one()) : !lead.is_zero()) return false;
    }
  }
  return true;
}

MatPSDO MatPSDO::coeff_matrix(int k) const {
  MatPSDO r(rows_, cols_, parity_);
  for (int i = 0; i < rows_.size(); ++i)
    for (int j = 0; j < cols_.size(); ++j)
      r.at(i, j) = Psdo(at(i, j).coeff(k));
  return r;
}

MatPSDO MatPSDO::operator-() const {
  MatPSDO r(rows_, cols_, parity_);
  for (size_t t = 0; t < entries_.size(); ++t) r.entries_[t] = -entries_[t];
  return r;
}

MatPSDO& MatPSDO::operator+=(const MatPSDO& o) {
  if (!(rows_ == o.rows_) || !(cols_ == o.cols_))
    throw std::invalid_argument("matrix addition: shape mismatch");
  for (size_t t = 0; t < entries_.size(); ++t) entries_[t] += o.entries_[t];
  return *this;
}

MatPSDO& MatPSDO::operator-=(const MatPSDO& o) {
  if (!(rows_ == o.rows_) || !(cols_ == o.cols_))
    throw std::invalid_argument("matrix subtraction: shape mismatch");
  for (size_t t = 0; t < entries_.size(); ++t) entries_[t] -= o.entries_[t];
  return *this;
}

MatPSDO operator*(const Scalar& s, MatPSDO m) {
  for (auto& e : m.entries_) e = s * e;
  return m;
}

MatPSDO MatPSDO::d_of() const {
  MatPSDO r(rows_, cols_, parity_);
  for (int i = 0; i < rows_.size(); ++i) {
    for (int j = 0; j < cols_.size(); ++j) {
      Psdo e;
      for (const auto& [k, c] : at(i, j).coeffs()) e.set_coeff(k, poly_d(c));
      e.set_floor(at(i, j).floor());
      r.at(i, j) = e;
    }
  }
  return r;
}

void MatPSDO::set_floor_all(Floor f) {
  for (auto& e : entries_) e.set_floor(floor_max(e.floor(), f));
}

bool MatPSDO::evenness_ok() const {
  for (int i = 0; i < rows_.size(); ++i) {
    for (int j = 0; j < cols_.size(); ++j) {
      Parity want = (rows_.parity_of(rows_.id_at(i)) +
                     cols_.parity_of(cols_.id_at(j)) + parity_) % 2;
      for (const auto& [k, c] : at(i, j).coeffs())
        if (!coeff_parity_ok(c, want)) return false;
    }
  }
  return true;
}

std::string MatPSDO::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_.size(); ++i) {
    os << "[ ";
    for (int j = 0; j < cols_.size(); ++j) {
      if (j) os << " | ";
      os << at(i, j).str();
    }
    os << " ]\n";
  }
  return os.str();
}

namespace {

enum class Product { circ, star };

MatPSDO mat_mul(const MatPSDO& A, const MatPSDO& B, Product kind, Floor trunc) {
  if (!(A.cols() == B.rows()))
    throw std::invalid_argument("matrix product: inner index sets differ");
  MatPSDO r(A.rows(), B.cols(), (A.parity() + B.parity()) % 2);
  const IndexSet& I = A.rows();
  const IndexSet& T = A.cols();
  const IndexSet& J = B.cols();
  for (int i = 0; i < I.size(); ++i) {
    Parity pi = I.parity_of(I.id_at(i));
    for (int j = 0; j < J.size(); ++j) {
      Parity pj = J.parity_of(J.id_at(j));
      Psdo acc;
      Floor f;
      for (int t = 0; t < T.size(); ++t) {
        const Psdo& a = A.at(i, t);
        const Psdo& b = B.at(t, j);
        if (a.is_zero() || b.is_zero()) {
          // propagate trust limits of skipped zero factors
          if (!a.exact() && !b.is_zero()) f = floor_max(f, *a.floor() + b.order());
          if (!b.exact() && !a.is_zero()) f = floor_max(f, *b.floor() + a.order());
          continue;
        }
        Parity pt = T.parity_of(T.id_at(t));
        int expo = (kind == Product::circ) ? (pt + pj) * (pi + pt + A.parity())
                                           : (pt + pj) * A.parity();
        Psdo term = psdo_mul(a, b, trunc);
        if (expo % 2) term = -term;
        f = floor_max(f, term.floor());
        acc += term;
      }
      acc.set_floor(floor_max(acc.floor(), f));
      r.at(i, j) = acc;
    }
  }
  return r;
}

MatPSDO shift_exponents(const MatPSDO& A, int k) {
  MatPSDO r(A.rows(), A.cols(), A.parity());
  for (int i = 0; i < A.rows().size(); ++i)
    for (int j = 0; j < A.cols().size(); ++j) {
      Psdo e;
      for (const auto& [p, c] : A.at(i, j).coeffs()) e.set_coeff(p + k, c);
      if (A.at(i, j).floor()) e.set_floor(*A.at(i, j).floor() + k);
      r.at(i, j) = e;
    }
  return r;
}

bool diagonal_is_identity(const MatPSDO& A) {
  if (!A.square()) return false;
  const Psdo one(DiffPoly::one());
  for (int i = 0; i < A.rows().size(); ++i)
    if (!(A.at(i, i) == one)) return false;
  return true;
}

// Inverse of A for either product via the Neumann series. Two shapes are
// supported: a monic operator of order N (factor out 1 d^N), and a
// unipotent matrix 1 + X with X nilpotent, which sums exactly. Rows and
// columns may carry different ids as long as the positional parities
// agree (the Mat_{JxK} = gl(J) identification); the inverse then lives in
// Mat_{KxJ}.
MatPSDO inverse_impl(const MatPSDO& A0, int depth, Product kind) {
  if (A0.rows().size() != A0.cols().size())
    throw std::invalid_argument("inverse: non-square matrix");
  for (int t = 0; t < A0.rows().size(); ++t) {
    if (A0.rows().parity_of(A0.rows().id_at(t)) !=
        A0.cols().parity_of(A0.cols().id_at(t)))
      throw std::invalid_argument("inverse: positional parity mismatch");
  }
  // work positionally over gl(rows)
  MatPSDO A(A0.rows(), A0.rows(), A0.parity());
  for (int i = 0; i < A0.rows().size(); ++i)
    for (int j = 0; j < A0.cols().size(); ++j) A.at(i, j) = A0.at(i, j);
  auto relabel = [&A0](MatPSDO M) {
    MatPSDO R(A0.cols(), A0.rows(), M.parity());
    for (int i = 0; i < M.rows().size(); ++i)
      for (int j = 0; j < M.cols().size(); ++j) R.at(i, j) = M.at(i, j);
    return R;
  };
  auto mul = (kind == Product::circ) ? mat_circ_mul : mat_star_mul;
  const IndexSet& I = A.rows();

  if (diagonal_is_identity(A)) {
    MatPSDO X = A - MatPSDO::identity(I);
    MatPSDO S = MatPSDO::identity(I);
    MatPSDO P = X;
    int sign = -1;
    int steps = 0;
    while (!P.is_zero()) {
      if (++steps > I.size() + 1)
        throw std::invalid_argument("inverse: unipotent block is not nilpotent");
      MatPSDO term = P;
      if (sign < 0) term = -term;
      S += term;
      sign = -sign;
      P = mul(P, X, Floor());
    }
    return relabel(S);
  }

  const int N = A.order();
  if (N < 1 || !A.is_monic(N))
    throw std::invalid_argument("inverse: operator not monic");
  // A = (1 + X) 1 d^N with X = (A - 1 d^N) d^{-N} of order <= -1, hence
  // A^inv = d^{-N} (1 - X + X^2 - ...)
  MatPSDO X = shift_exponents(A - MatPSDO::d_matrix(I, N), -N);
  const int series_floor = N - depth;  // so that d^{-N} o S has floor -depth
  MatPSDO S = MatPSDO::identity(I);
  MatPSDO P = X;
  int sign = -1;
  while (!P.is_zero() && P.order() >= series_floor) {
    MatPSDO term = P;
    if (sign < 0) term = -term;
    S += term;
    sign = -sign;
    P = mul(P, X, Floor(series_floor));
    P.set_floor_all(series_floor);
  }
  S.set_floor_all(series_floor);
  MatPSDO R(I, I, A.parity());
  for (int i = 0; i < I.size(); ++i)
    for (int j = 0; j < I.size(); ++j)
      R.at(i, j) = psdo_mul(d_op(-N), S.at(i, j), Floor(-depth));
  return relabel(R);
}

}  // namespace

MatPSDO mat_circ_mul(const MatPSDO& A, const MatPSDO& B, Floor trunc) {
  return mat_mul(A, B, Product::circ, trunc);
}

MatPSDO mat_star_mul(const MatPSDO& A, const MatPSDO& B, Floor trunc) {
  return mat_mul(A, B, Product::star, trunc);
}

Psdo supertrace(const MatPSDO& A) {
  if (!A.square()) throw std::invalid_argument("supertrace: non-square matrix");
  Psdo r;
  Floor f;
  for (int i = 0; i < A.rows().size(); ++i) {
    Psdo term = A.at(i, i);
    if (A.rows().parity_of(A.rows().id_at(i)) == 1) term = -term;
    f = floor_max(f, term.floor());
    r += term;
  }
  r.set_floor(floor_max(r.floor(), f));
  return r;
}

MatPSDO mat_circ_pow(const MatPSDO& A, int n, Floor trunc) {
  if (n < 1) throw std::invalid_argument("mat_circ_pow: n must be >= 1");
  MatPSDO r = A;
  for (int t = 1; t < n; ++t) r = mat_circ_mul(r, A, trunc);
  return r;
}

MatPSDO star_inverse_monic(const MatPSDO& A, int depth) {
  return inverse_impl(A, depth, Product::star);
}

MatPSDO circ_inverse_monic(const MatPSDO& A, int depth) {
  return inverse_impl(A, depth, Product::circ);
}

MatPSDO circ_root(const MatPSDO& A, int N, int depth) {
  if (depth < 0) throw std::invalid_argument("circ_root: negative depth");
  if (!A.square() || !A.is_monic(N))
    throw std::invalid_argument("circ_root: operator not monic of order N");
  const IndexSet& I = A.rows();
  // Computed coefficients of B are exact; the not-yet-computed tail of B
  // only contributes below the matched exponent N-1-s, so powers of the
  // partial B may be truncated right at that exponent.
  MatPSDO B = MatPSDO::d_matrix(I, 1);
  for (int s = 0; s <= depth; ++s) {
    const int match = N - 1 - s;
    // intermediate truncation margin keeps the matched exponent trusted
    MatPSDO P = mat_circ_pow(B, N, Floor(match - N));
    MatPSDO V = (A - P).coeff_matrix(match);
    for (int i = 0; i < I.size(); ++i)
      for (int j = 0; j < I.size(); ++j) {
        DiffPoly v = Scalar(1, N) * V.at(i, j).coeff(0);
        if (!v.is_zero()) B.at(i, j).add_coeff(-s, v);
      }
  }
  B.set_floor_all(-depth);
  return B;
}

namespace {

// Monic roots and inverses are unique, so deeper computations subsume
// shallower ones; cache them per operator and serve by restricting.
std::string op_cache_key(const MatPSDO& A, int N, const char* tag) {
  std::ostringstream os;
  os << tag << N << "|";
  for (int id : A.rows().ids()) os << id << "." << A.rows().parity_of(id) << ",";
  os << "|";
  for (int i = 0; i < A.rows().size(); ++i)
    for (int j = 0; j < A.cols().size(); ++j) os << A.at(i, j).str() << ";";
  return os.str();
}

struct CachedOp {
  int depth = -1;
  MatPSDO value;
};

MatPSDO cached_monotone(const std::string& key, int depth,
                        const std::function<MatPSDO(int)>& compute) {
  static std::mutex mu;
  static std::map<std::string, CachedOp> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (slot.depth < depth) {
    slot.value = compute(depth);
    slot.depth = depth;
  }
  MatPSDO r = slot.value;
  r.set_floor_all(-depth);
  return r;
}

}  // namespace

MatPSDO circ_root_cached(const MatPSDO& A, int N, int depth) {
  return cached_monotone(op_cache_key(A, N, "root"), depth,
                         [&](int d) { return circ_root(A, N, d); });
}

MatPSDO circ_inverse_monic_cached(const MatPSDO& A, int depth) {
  return cached_monotone(op_cache_key(A, 0, "inv"), depth,
                         [&](int d) { return circ_inverse_monic(A, d); });
}

MatPSDO circ_frac_power(const MatPSDO& A, int k, int N, int depth) {
  if (k == 0) return MatPSDO::identity(A.rows());
  if (k % N == 0) {
    int e = k / N;
    if (e > 0) return mat_circ_pow(A, e);
    MatPSDO inv = circ_inverse_monic_cached(A, depth + N * (-e - 1));
    MatPSDO P = mat_circ_pow(inv, -e, Floor(-depth));
    P.set_floor_all(-depth);
    return P;
  }
  // only the root itself is expensive; its powers inherit enough trust
  // when the root is deepened by the number of extra factors
  if (k > 0) {
    MatPSDO R = circ_root_cached(A, N, depth + k - 1);
    MatPSDO P = k == 1 ? R : mat_circ_pow(R, k, Floor(-depth));
    P.set_floor_all(-depth);
    return P;
  }
  MatPSDO R = circ_root_cached(A, N, depth + 1);
  MatPSDO Rinv = circ_inverse_monic_cached(R, depth - k - 1);
  MatPSDO P = mat_circ_pow(Rinv, -k, Floor(-depth));
  P.set_floor_all(-depth);
  return P;
}

namespace {

// Entry extraction without the gl(J)-identification profile check; the
// quasi-determinant formula needs genuinely rectangular blocks.
MatPSDO submatrix_unchecked(const MatPSDO& A, const std::vector<int>& J,
                            const std::vector<int>& K) {
  IndexSet rj = A.rows().subset(J);
  IndexSet ck = A.cols().subset(K);
  MatPSDO r(rj, ck, A.parity());
  for (size_t a = 0; a < J.size(); ++a) {
    int ra = -1;
    for (int t = 0; t < A.rows().size(); ++t)
      if (A.rows().id_at(t) == J[a]) ra = t;
    for (size_t b = 0; b < K.size(); ++b) {
      int cb = -1;
      for (int t = 0; t < A.cols().size(); ++t)
        if (A.cols().id_at(t) == K[b]) cb = t;
      r.at(static_cast<int>(a), static_cast<int>(b)) = A.at(ra, cb);
    }
  }
  return r;
}

}  // namespace

MatPSDO submatrix(const MatPSDO& A, const std::vector<int>& J,
                  const std::vector<int>& K) {
  if (!parity_profiles_match(A.rows().subset(J), A.cols().subset(K)))
    throw std::invalid_argument("submatrix: parity profiles of J and K differ");
  return submatrix_unchecked(A, J, K);
}

MatPSDO quasi_determinant(const MatPSDO& A, const std::vector<int>& J,
                          const std::vector<int>& K, int depth) {
  if (!A.square()) throw std::invalid_argument("quasi_determinant: non-square");
  std::vector<int> Jc, Kc;
  for (int id : A.rows().ids())
    if (std::find(J.begin(), J.end(), id) == J.end()) Jc.push_back(id);
  for (int id : A.cols().ids())
    if (std::find(K.begin(), K.end(), id) == K.end()) Kc.push_back(id);
  MatPSDO AJK = submatrix(A, J, K);
  if (Jc.empty()) return AJK;
  MatPSDO AJKc = submatrix_unchecked(A, J, Kc);
  MatPSDO AJcKc = submatrix_unchecked(A, Jc, Kc);
  MatPSDO AJcK = submatrix_unchecked(A, Jc, K);
  MatPSDO inv = star_inverse_monic(AJcKc, depth);
  return AJK - mat_star_mul(mat_star_mul(AJKc, inv), AJcK);
}

bool equal_within_floors(const MatPSDO& A, const MatPSDO& B) {
  if (!(A.rows() == B.rows()) || !(A.cols() == B.cols())) return false;
  for (int i = 0; i < A.rows().size(); ++i) {
    for (int j = 0; j < A.cols().size(); ++j) {
      const Psdo &a = A.at(i, j), &b = B.at(i, j);
      Floor f = floor_max(a.floor(), b.floor());
      int lo = f ? *f : std::min(a.min_exp(), b.min_exp());
      int hi = std::max(a.is_zero() ? lo : a.order(), b.is_zero() ? lo : b.order());
      for (int k = lo; k <= hi; ++k)
        if (!(a.coeff(k) == b.coeff(k))) return false;
    }
  }
  return true;
}

bool is_zero_within_floors(const MatPSDO& A) {
  for (int i = 0; i < A.rows().size(); ++i)
    for (int j = 0; j < A.cols().size(); ++j) {
      const Psdo& a = A.at(i, j);
      if (a.is_zero()) continue;
      Floor f = a.floor();
      for (const auto& [k, c] : a.coeffs())
        if ((!f || k >= *f) && !c.is_zero()) return false;
    }
  return true;
}

}  // namespace wsato
