#include "wsato/lambdapoly.hpp"

#include <sstream>
#include <stdexcept>

namespace wsato {

LambdaPoly lambda_shift_apply(int n, const LambdaPoly& p) {
  LambdaPoly r;
  for (int s = 0; s <= n; ++s) {
    Scalar c = binomial(n, s);
    for (const auto& [k, v] : p.coeffs())
      r.add_coeff(k.first + n - s, k.second, c * poly_d(v, s));
  }
  return r;
}

LambdaPoly neg_lambda_shift_apply(int n, const LambdaPoly& p) {
  LambdaPoly r = lambda_shift_apply(n, p);
  return (n % 2 == 1) ? -r : r;
}

LambdaPoly mu_shift_apply(int n, const LambdaPoly& p) {
  LambdaPoly r;
  for (int s = 0; s <= n; ++s) {
    Scalar c = binomial(n, s);
    for (const auto& [k, v] : p.coeffs())
      r.add_coeff(k.first, k.second + n - s, c * poly_d(v, s));
  }
  return r;
}

LambdaPoly poly_d(const LambdaPoly& p) {
  return map_coeffs(p, [](const DiffPoly& c) { return poly_d(c); });
}

LambdaPoly subst_lambda_to_lambda_plus_mu(const LambdaPoly& p) {
  LambdaPoly r;
  for (const auto& [k, v] : p.coeffs()) {
    for (int s = 0; s <= k.first; ++s)
      r.add_coeff(k.first - s, k.second + s, binomial(k.first, s) * v);
  }
  return r;
}

LambdaPoly rename_lambda_to_mu(const LambdaPoly& p) {
  LambdaPoly r;
  for (const auto& [k, v] : p.coeffs()) {
    if (k.second != 0)
      throw std::invalid_argument("rename_lambda_to_mu: input not mu-free");
    r.add_coeff(0, k.first, v);
  }
  return r;
}

LambdaPoly expand_at_minus_lambda_minus_d(const LambdaPoly& p) {
  LambdaPoly r;
  for (const auto& [k, v] : p.coeffs()) {
    if (k.second != 0)
      throw std::invalid_argument("expand_at_minus_lambda_minus_d: mu present");
    r += neg_lambda_shift_apply(k.first, LambdaPoly(v));
  }
  return r;
}

std::string LambdaPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k.first == 1) os << " l";
    if (k.first > 1) os << " l^" << k.first;
    if (k.second == 1) os << " m";
    if (k.second > 1) os << " m^" << k.second;
  }
  return os.str();
}

}  // namespace wsato
