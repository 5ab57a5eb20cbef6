#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsato/scalar.hpp"

namespace wsato {

// Parity: 0 = even, 1 = odd.
using Parity = int;

// Ordered index set with a parity map, the I of gl(I). Indices are
// 1-based everywhere to match the usual matrix conventions.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<int> ids, std::vector<Parity> parity);

  // gl(m|n): indices 1..m+n, first m even, last n odd.
  static IndexSet gl(int m, int n);

  // Block index set Pi = {1,...,blocks*(m+n)} with parity repeating the
  // gl(m|n) pattern modulo m+n.
  static IndexSet blocks_of_gl(int blocks, int m, int n);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& ids() const { return ids_; }
  int id_at(int pos) const { return ids_[pos]; }
  Parity parity_of(int id) const;
  bool contains(int id) const;
  int even_count() const;
  int odd_count() const;

  IndexSet subset(const std::vector<int>& ids) const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.ids_ == b.ids_ && a.parity_ == b.parity_;
  }

 private:
  std::vector<int> ids_;
  std::vector<Parity> parity_;  // aligned with ids_
};

// Returns true when the pair (J, K) of subsets has matching even and odd
// counts, the compatibility condition for rectangular blocks.
bool parity_profiles_match(const IndexSet& J, const IndexSet& K);

enum class Family : std::uint8_t { u = 0, q = 1, w = 2, custom = 3 };

// Registry for display names of custom generator families ("theta", ...).
int register_custom_family(const std::string& name);
const std::string& custom_family_name(int id);

// A generator symbol u^{(der)} with its position data. Parity is stored
// denormalized (computed from the owning index set at construction) so
// arithmetic never needs the index set.
struct VarKey {
  Family family = Family::u;
  int custom_id = 0;  // used when family == custom
  int M = -1;         // weight index, -1 when absent
  int i = 0;
  int j = 0;
  int der = 0;
  Parity parity = 0;

  // Generic generator u_{M,ab} over an index set.
  static VarKey u_gen(int M, int a, int b, const IndexSet& I, int der = 0);
  // Affine generator q_{ij} over an index set.
  static VarKey q_gen(int i, int j, const IndexSet& I, int der = 0);
  // W-algebra generator symbol w_{ij;k}.
  static VarKey w_gen(int k, int i, int j, const IndexSet& I, int der = 0);
  static VarKey custom_var(int custom_id, Parity parity, int der = 0, int i = 0,
                           int j = 0);

  VarKey with_der(int d) const {
    VarKey v = *this;
    v.der = d;
    return v;
  }

  std::string str() const;
};

// Packed key encoding the global total order (family, M, i, j, der) as a
// single integer compare; parity travels in the low bits.
using PackedVar = std::uint64_t;

PackedVar pack(const VarKey& v);
VarKey unpack(PackedVar p);

inline Parity packed_parity(PackedVar p) { return static_cast<Parity>(p & 1u); }
inline int packed_der(PackedVar p) { return static_cast<int>((p >> 8) & 0xffffu); }
inline PackedVar packed_with_der(PackedVar p, int der) {
  return (p & ~(PackedVar(0xffff) << 8)) | (PackedVar(der) << 8);
}
// The der-0 class of a variable.
inline PackedVar packed_base(PackedVar p) { return packed_with_der(p, 0); }

struct VarPow {
  PackedVar v;
  int e;
  friend auto operator<=>(const VarPow&, const VarPow&) = default;
};

// Factor list of a monomial: strictly increasing in the variable order,
// odd variables with exponent exactly 1.
using Mono = std::vector<VarPow>;

Parity mono_parity(const Mono& m);
// Total polynomial degree of the factor list.
int mono_degree(const Mono& m);

// Merges two canonical factor lists, accumulating the Koszul sign of the
// transpositions of odd factors. Returns 0 sign when an odd variable
// would appear twice.
int merge_mono(const Mono& a, const Mono& b, Mono& out);

// Canonical-form differential superpolynomial with exact rational
// coefficients. Structural equality is mathematical equality.
class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(const Scalar& c);  // constant
  explicit DiffPoly(const VarKey& v);  // single generator

  static DiffPoly zero() { return DiffPoly(); }
  static DiffPoly one() { return DiffPoly(Scalar(1)); }
  static DiffPoly var(const VarKey& v) { return DiffPoly(v); }

  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<Mono, Scalar>& terms() const { return terms_; }

  // 0, 1, or nullopt for mixed/zero-ambiguous input (zero reports 0).
  std::optional<Parity> parity() const;
  bool is_homogeneous_parity() const { return parity().has_value(); }
  DiffPoly parity_part(Parity p) const;

  Scalar constant_term() const;
  // Largest total degree among monomials (0 for constants and zero).
  int degree() const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Scalar& c, DiffPoly p);

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.terms_ == b.terms_;
  }

  void add_term(const Mono& m, const Scalar& c);

  std::string str() const;

 private:
  std::map<Mono, Scalar> terms_;
};

// The even derivation d of the differential superalgebra.
DiffPoly poly_d(const DiffPoly& a);
DiffPoly poly_d(const DiffPoly& a, int times);

// Signed partial derivative d/dv where v carries its der index.
DiffPoly partial_derivative(const DiffPoly& f, const VarKey& v);
DiffPoly partial_derivative(const DiffPoly& f, PackedVar v);

// Variational derivative sum_n (-d)^n d/dv^{(n)}; v must have der = 0.
DiffPoly variational_derivative(const DiffPoly& f, const VarKey& v);

// Exactness test: f is in the image of d. Rejects nonzero constant term.
bool is_total_derivative(const DiffPoly& f);

// All der-0 classes of variables occurring in f.
std::vector<PackedVar> occurring_base_vars(const DiffPoly& f);
// Highest der with which the class of v occurs in f (-1 if absent).
int max_der_of(const DiffPoly& f, PackedVar base);

// Differential-algebra substitution: every occurrence of a der-n variable
// whose der-0 class is a key of `images` becomes the n-th derivative of
// the image; other variables map to themselves.
DiffPoly substitute(const DiffPoly& f,
                    const std::map<PackedVar, DiffPoly>& images);

}  // namespace wsato
