#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsato {

// Exact rational coefficient. Thin wrapper over GMP's mpq_class that
// guarantees the canonical form (reduced fraction, positive denominator)
// on every construction path; GMP only canonicalizes results of
// arithmetic, not raw constructions.
class Scalar {
 public:
  Scalar() : v_(0) {}
  Scalar(long n) : v_(n) {}
  Scalar(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
    v_.canonicalize();
  }
  explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p" or "p/q".
  static Scalar parse(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return Scalar(q);
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const { return Scalar(mpq_class(-v_)); }
  Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
  Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
  Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::invalid_argument("Scalar: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_negative() const { return sgn(v_) < 0; }

  // "p" when integral, "p/q" otherwise.
  std::string str() const { return v_.get_str(); }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Scalar binomial(long n, long k) {
  // Generalized binomial C(n, k) for integer n (possibly negative), k >= 0.
  if (k < 0) return Scalar(0);
  mpq_class r(1);
  for (long t = 0; t < k; ++t) {
    r *= mpq_class(n - t);
    r /= mpq_class(t + 1);
  }
  r.canonicalize();
  return Scalar(r);
}

}  // namespace wsato
