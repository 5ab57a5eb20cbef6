#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "wsato/superpoly.hpp"

namespace wsato {

// Polynomial in the even indeterminates lambda (and mu, for the Jacobi
// identity) with DiffPoly coefficients. d acts on coefficients and
// commutes with both indeterminates.
class LambdaPoly {
 public:
  using Key = std::pair<int, int>;  // (lambda degree, mu degree)

  LambdaPoly() = default;
  explicit LambdaPoly(const DiffPoly& c) {
    if (!c.is_zero()) coeffs_[{0, 0}] = c;
  }

  static LambdaPoly lambda(int deg = 1) {
    LambdaPoly r;
    r.coeffs_[{deg, 0}] = DiffPoly::one();
    return r;
  }
  static LambdaPoly mu(int deg = 1) {
    LambdaPoly r;
    r.coeffs_[{0, deg}] = DiffPoly::one();
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Key, DiffPoly>& coeffs() const { return coeffs_; }
  DiffPoly coeff(int ldeg, int mdeg = 0) const {
    auto it = coeffs_.find({ldeg, mdeg});
    return it == coeffs_.end() ? DiffPoly() : it->second;
  }
  int lambda_degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max(d, k.first);
    return d;
  }
  bool mu_free() const {
    for (const auto& [k, c] : coeffs_)
      if (k.second != 0) return false;
    return true;
  }

  void add_coeff(int ldeg, int mdeg, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = coeffs_.try_emplace({ldeg, mdeg}, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  LambdaPoly operator-() const {
    LambdaPoly r;
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
    return r;
  }
  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add_coeff(k.first, k.second, c);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add_coeff(k.first, k.second, -c);
    return *this;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly r;
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_)
        r.add_coeff(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend LambdaPoly operator*(const Scalar& s, const LambdaPoly& p) {
    LambdaPoly r;
    for (const auto& [k, c] : p.coeffs_) r.add_coeff(k.first, k.second, s * c);
    return r;
  }
  friend LambdaPoly operator*(const DiffPoly& f, const LambdaPoly& p) {
    LambdaPoly r;
    for (const auto& [k, c] : p.coeffs_) r.add_coeff(k.first, k.second, f * c);
    return r;
  }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  DiffPoly at_lambda_zero() const { return coeff(0, 0); }

  // All coefficients have the given parity (zero passes everything).
  bool has_parity(Parity p) const {
    for (const auto& [k, c] : coeffs_) {
      auto cp = c.parity();
      if (!cp || (!c.is_zero() && *cp != p)) return false;
    }
    return true;
  }

  std::string str() const;

 private:
  std::map<Key, DiffPoly> coeffs_;
};

// (lambda + d)^n applied to p, n >= 0: sum_s C(n,s) lambda^{n-s} d^s(p).
LambdaPoly lambda_shift_apply(int n, const LambdaPoly& p);
// (-lambda - d)^n applied to p.
LambdaPoly neg_lambda_shift_apply(int n, const LambdaPoly& p);
// (mu + d)^n applied to p.
LambdaPoly mu_shift_apply(int n, const LambdaPoly& p);

// Derivation acting on the DiffPoly coefficients.
LambdaPoly poly_d(const LambdaPoly& p);

// Substitutes lambda -> lambda + mu (for the Jacobi identity).
LambdaPoly subst_lambda_to_lambda_plus_mu(const LambdaPoly& p);
// Renames lambda to mu (input must be mu-free).
LambdaPoly rename_lambda_to_mu(const LambdaPoly& p);

// {b_{-lambda-d} a}-expansion: given the bracket value sum c_n lambda^n,
// returns sum (-lambda-d)^n(c_n).
LambdaPoly expand_at_minus_lambda_minus_d(const LambdaPoly& p);

// Applies a coefficient map to every DiffPoly coefficient.
template <typename F>
LambdaPoly map_coeffs(const LambdaPoly& p, F&& f) {
  LambdaPoly r;
  for (const auto& [k, c] : p.coeffs()) r.add_coeff(k.first, k.second, f(c));
  return r;
}

}  // namespace wsato
