#include "wsato/psdo.hpp"

namespace wsato {

LPsdo lift_lambda(const Psdo& A) {
  LPsdo r;
  for (const auto& [k, c] : A.coeffs()) r.set_coeff(k, LambdaPoly(c));
  r.set_floor(A.floor());
  return r;
}

LPsdo lambda_shift(const LPsdo& A, Floor trunc) {
  Floor f = floor_max(A.floor(), trunc);
  if (!f.has_value() && A.min_exp() < 0)
    throw std::invalid_argument("lambda_shift: negative powers need a floor");
  LPsdo r;
  for (const auto& [p, ap] : A.coeffs()) {
    int smax = p >= 0 ? p : p - *f;
    for (int s = 0; s <= smax; ++s) {
      Scalar c = binomial(p, s);
      if (c.is_zero()) continue;
      r.add_coeff(p - s, LambdaPoly::lambda(s) * (c * ap));
    }
  }
  r.set_floor(f);
  return r;
}

LPsdo lambda_shift(const Psdo& A, Floor trunc) {
  return lambda_shift(lift_lambda(A), trunc);
}

LPsdo lambda_shift_power(int k, Floor trunc) {
  LPsdo base;
  base.set_coeff(k, LambdaPoly(DiffPoly::one()));
  return lambda_shift(base, trunc);
}

std::map<int, DiffPoly> symbol_apply(const Psdo& A, const Psdo& B, int ztrunc) {
  std::map<int, DiffPoly> out;
  auto add = [&out](int z, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = out.try_emplace(z, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [p, ap] : A.coeffs()) {
    for (const auto& [q, bq] : B.coeffs()) {
      int smax = p >= 0 ? p : (d_constant(bq) ? 0 : p + q - ztrunc);
      DiffPoly der = bq;
      for (int s = 0; s <= smax; ++s) {
        if (s > 0) der = poly_d(der);
        Scalar c = binomial(p, s);
        if (c.is_zero()) continue;
        if (p + q - s >= ztrunc) add(p + q - s, ap * (c * der));
      }
    }
  }
  return out;
}

}  // namespace wsato
