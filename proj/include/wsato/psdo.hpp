#pragma once

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsato/lambdapoly.hpp"
#include "wsato/superpoly.hpp"

namespace wsato {

// Truncation floor of a Laurent series in d. nullopt = exact: every
// coefficient is trusted. A finite value T means coefficients at
// exponents < T are unknown.
using Floor = std::optional<int>;

inline Floor floor_max(Floor a, Floor b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

// d-constant coefficients (numeric constants) make negative-power
// expansions terminate.
inline bool d_constant(const DiffPoly& c) { return c.degree() == 0; }
inline bool d_constant(const LambdaPoly& c) {
  for (const auto& [k, v] : c.coeffs())
    if (!d_constant(v)) return false;
  return true;
}

inline Parity coeff_parity_ok(const DiffPoly& c, Parity p) {
  auto cp = c.parity();
  return cp.has_value() && (*cp == p || c.is_zero());
}

// Scalar pseudo-differential operator sum_k a_k d^k with left-stored
// coefficients in T (DiffPoly, or LambdaPoly when a symbol shift is in
// play). Truncation is explicit state: products compute the exact
// trusted floor, never a silently wrong tail.
template <typename T>
class BasePSDO {
 public:
  BasePSDO() = default;
  explicit BasePSDO(const T& c) { set_coeff(0, c); }

  static BasePSDO d_power(int k, const T& c) {
    BasePSDO r;
    r.set_coeff(k, c);
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, T>& coeffs() const { return coeffs_; }
  Floor floor() const { return floor_; }
  bool exact() const { return !floor_.has_value(); }

  // Order = top exponent; throws on the zero operator.
  int order() const {
    if (coeffs_.empty()) throw std::domain_error("order of zero operator");
    return coeffs_.rbegin()->first;
  }
  int min_exp() const {
    if (coeffs_.empty()) return 0;
    return coeffs_.begin()->first;
  }

  T coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? T() : it->second;
  }

  void set_coeff(int k, const T& c) {
    if (c.is_zero()) coeffs_.erase(k);
    else coeffs_[k] = c;
  }
  void add_coeff(int k, const T& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = coeffs_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  void set_floor(Floor f) {
    floor_ = f;
    prune();
  }

  BasePSDO operator-() const {
    BasePSDO r;
    r.floor_ = floor_;
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
    return r;
  }
  BasePSDO& operator+=(const BasePSDO& o) {
    floor_ = floor_max(floor_, o.floor_);
    for (const auto& [k, c] : o.coeffs_) add_coeff(k, c);
    prune();
    return *this;
  }
  BasePSDO& operator-=(const BasePSDO& o) {
    floor_ = floor_max(floor_, o.floor_);
    for (const auto& [k, c] : o.coeffs_) add_coeff(k, -c);
    prune();
    return *this;
  }
  friend BasePSDO operator+(BasePSDO a, const BasePSDO& b) { return a += b; }
  friend BasePSDO operator-(BasePSDO a, const BasePSDO& b) { return a -= b; }

  friend BasePSDO operator*(const Scalar& s, BasePSDO p) {
    if (s.is_zero()) { BasePSDO r; r.floor_ = p.floor_; return r; }
    BasePSDO r;
    r.floor_ = p.floor_;
    for (const auto& [k, c] : p.coeffs_) r.coeffs_[k] = s * c;
    return r;
  }

  // Structural equality of trusted data.
  friend bool operator==(const BasePSDO& a, const BasePSDO& b) {
    return a.floor_ == b.floor_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    std::ostringstream os;
    if (coeffs_.empty()) os << "0";
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second.str() << ")";
      if (it->first != 0) os << " D^" << it->first;
    }
    if (floor_) os << "  [floor " << *floor_ << "]";
    return os.str();
  }

 private:
  void prune() {
    if (!floor_) return;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (it->first < *floor_) it = coeffs_.erase(it);
      else ++it;
    }
  }

  std::map<int, T> coeffs_;
  Floor floor_;
};

using Psdo = BasePSDO<DiffPoly>;
using LPsdo = BasePSDO<LambdaPoly>;

namespace detail {
template <typename T>
bool all_d_constant(const BasePSDO<T>& a, bool negative_exps_only) {
  for (const auto& [k, c] : a.coeffs())
    if ((!negative_exps_only || k < 0) && !d_constant(c)) return false;
  return true;
}
}  // namespace detail

// Product A o B. The expansion d^{-1} v = sum (-1)^m v^{(m)} d^{-m-1}
// makes negative powers against non-constant coefficients infinite; the
// result floor is then max(floor_A + top_B, floor_B + top_A), lowered
// further only by an explicit trunc request.
template <typename T>
BasePSDO<T> psdo_mul(const BasePSDO<T>& A, const BasePSDO<T>& B,
                     Floor trunc = std::nullopt) {
  BasePSDO<T> r;
  if (A.is_zero() || B.is_zero()) {
    Floor f;
    if (!A.exact() && !B.is_zero()) f = floor_max(f, *A.floor() + B.order());
    if (!B.exact() && !A.is_zero()) f = floor_max(f, *B.floor() + A.order());
    r.set_floor(floor_max(f, trunc));
    return r;
  }
  const int topA = A.order(), topB = B.order();
  Floor f;
  if (!A.exact()) f = floor_max(f, *A.floor() + topB);
  if (!B.exact()) f = floor_max(f, *B.floor() + topA);
  f = floor_max(f, trunc);
  const bool finite = A.min_exp() >= 0 || detail::all_d_constant(B, false);
  if (!f.has_value() && !finite)
    throw std::invalid_argument("psdo_mul: infinite expansion needs a floor");

  for (const auto& [q, bq] : B.coeffs()) {
    // derivative chain d^s(b_q), shared across all coefficients of A
    std::vector<T> ders{bq};
    const bool bconst = d_constant(bq);
    for (const auto& [p, ap] : A.coeffs()) {
      // d^p o b = sum_s C(p,s) b^{(s)} d^{p-s}
      int smax;
      if (p >= 0) smax = p;
      else if (bconst) smax = 0;
      else smax = p + q - *f;  // lowest kept exponent is *f
      while (static_cast<int>(ders.size()) <= smax)
        ders.push_back(poly_d(ders.back()));
      for (int s = 0; s <= smax; ++s) {
        Scalar c = binomial(p, s);
        if (c.is_zero()) continue;
        r.add_coeff(p + q - s, ap * (c * ders[static_cast<size_t>(s)]));
      }
    }
  }
  r.set_floor(f);
  return r;
}

// Adjoint sum (-d)^k o a_k re-expanded into left-coefficient form.
template <typename T>
BasePSDO<T> psdo_adjoint(const BasePSDO<T>& A, Floor trunc = std::nullopt) {
  Floor f = floor_max(A.floor(), trunc);
  if (!f.has_value() && A.min_exp() < 0 && !detail::all_d_constant(A, true))
    throw std::invalid_argument("psdo_adjoint: infinite expansion needs a floor");
  BasePSDO<T> r;
  for (const auto& [k, ak] : A.coeffs()) {
    int smax;
    if (k >= 0) smax = k;
    else if (d_constant(ak)) smax = 0;
    else smax = k - *f;
    T der = ak;
    for (int s = 0; s <= smax; ++s) {
      if (s > 0) der = poly_d(der);
      Scalar c = binomial(k, s);
      if (k % 2 != 0) c = -c;
      if (c.is_zero()) continue;
      r.add_coeff(k - s, c * der);
    }
  }
  r.set_floor(f);
  return r;
}

// Coefficient of d^{-1}; requires that exponent to be trusted.
template <typename T>
T psdo_residue(const BasePSDO<T>& A) {
  if (A.floor() && *A.floor() > -1)
    throw std::invalid_argument("residue: floor above -1, coefficient untrusted");
  return A.coeff(-1);
}

// Differential part: split at exponent 0, always exact.
template <typename T>
BasePSDO<T> psdo_plus(const BasePSDO<T>& A) {
  if (A.floor() && *A.floor() > 0)
    throw std::invalid_argument("plus_part: floor above 0, untrusted");
  BasePSDO<T> r;
  for (const auto& [k, c] : A.coeffs())
    if (k >= 0) r.set_coeff(k, c);
  return r;
}

// Integral part; inherits the floor.
template <typename T>
BasePSDO<T> psdo_minus(const BasePSDO<T>& A) {
  BasePSDO<T> r;
  for (const auto& [k, c] : A.coeffs())
    if (k < 0) r.set_coeff(k, c);
  r.set_floor(A.floor());
  return r;
}

// Restricts trusted data to exponents >= new_floor.
template <typename T>
BasePSDO<T> psdo_refloor(const BasePSDO<T>& A, int new_floor) {
  BasePSDO<T> r = A;
  r.set_floor(floor_max(A.floor(), new_floor));
  return r;
}

// d^k as an exact operator.
inline Psdo d_op(int k = 1) { return Psdo::d_power(k, DiffPoly::one()); }

// Lifts a DiffPoly-coefficient operator into the lambda world.
LPsdo lift_lambda(const Psdo& A);

// Substitutes d -> d + lambda, expanding negative powers for large d:
// (d+lambda)^p = sum_{s>=0} C(p,s) lambda^s d^{p-s}, truncated at trunc
// for p < 0.
LPsdo lambda_shift(const LPsdo& A, Floor trunc = std::nullopt);
LPsdo lambda_shift(const Psdo& A, Floor trunc = std::nullopt);

// (d+lambda)^k as an LPsdo, truncated at trunc when k < 0.
LPsdo lambda_shift_power(int k, Floor trunc = std::nullopt);

// A(z+d) applied to the symbol B(z): returns the z-coefficient map of
// A(z+d)(B(z)) with negative powers of z+d expanded so only nonnegative
// powers of d appear. Coefficients of z-powers below ztrunc are dropped
// (only relevant when A has negative exponents).
std::map<int, DiffPoly> symbol_apply(const Psdo& A, const Psdo& B, int ztrunc);

}  // namespace wsato
