#include "wsato/superpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace wsato {

IndexSet::IndexSet(std::vector<int> ids, std::vector<Parity> parity)
    : ids_(std::move(ids)), parity_(std::move(parity)) {
  if (ids_.size() != parity_.size())
    throw std::invalid_argument("IndexSet: ids/parity size mismatch");
}

IndexSet IndexSet::gl(int m, int n) {
  std::vector<int> ids;
  std::vector<Parity> par;
  for (int i = 1; i <= m + n; ++i) {
    ids.push_back(i);
    par.push_back(i <= m ? 0 : 1);
  }
  return IndexSet(std::move(ids), std::move(par));
}

IndexSet IndexSet::blocks_of_gl(int blocks, int m, int n) {
  std::vector<int> ids;
  std::vector<Parity> par;
  const int s = m + n;
  for (int i = 1; i <= blocks * s; ++i) {
    int r = (i - 1) % s + 1;  // position within the block
    ids.push_back(i);
    par.push_back(r <= m ? 0 : 1);
  }
  return IndexSet(std::move(ids), std::move(par));
}

Parity IndexSet::parity_of(int id) const {
  for (size_t t = 0; t < ids_.size(); ++t)
    if (ids_[t] == id) return parity_[t];
  throw std::invalid_argument("IndexSet: unknown id " + std::to_string(id));
}

bool IndexSet::contains(int id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

int IndexSet::even_count() const {
  int c = 0;
  for (Parity p : parity_) c += (p == 0);
  return c;
}

int IndexSet::odd_count() const { return size() - even_count(); }

IndexSet IndexSet::subset(const std::vector<int>& ids) const {
  std::vector<Parity> par;
  par.reserve(ids.size());
  for (int id : ids) par.push_back(parity_of(id));
  return IndexSet(ids, std::move(par));
}

bool parity_profiles_match(const IndexSet& J, const IndexSet& K) {
  return J.even_count() == K.even_count() && J.odd_count() == K.odd_count();
}

namespace {
std::vector<std::string>& custom_names() {
  static std::vector<std::string> names;
  return names;
}
}  // namespace

int register_custom_family(const std::string& name) {
  auto& names = custom_names();
  for (size_t t = 0; t < names.size(); ++t)
    if (names[t] == name) return static_cast<int>(t);
  names.push_back(name);
  return static_cast<int>(names.size() - 1);
}

const std::string& custom_family_name(int id) {
  return custom_names().at(static_cast<size_t>(id));
}

VarKey VarKey::u_gen(int M, int a, int b, const IndexSet& I, int der) {
  VarKey v;
  v.family = Family::u;
  v.M = M;
  v.i = a;
  v.j = b;
  v.der = der;
  v.parity = (I.parity_of(a) + I.parity_of(b)) % 2;
  return v;
}

VarKey VarKey::q_gen(int i, int j, const IndexSet& I, int der) {
  VarKey v;
  v.family = Family::q;
  v.i = i;
  v.j = j;
  v.der = der;
  v.parity = (I.parity_of(i) + I.parity_of(j)) % 2;
  return v;
}

VarKey VarKey::w_gen(int k, int i, int j, const IndexSet& I, int der) {
  VarKey v;
  v.family = Family::w;
  v.M = k;
  v.i = i;
  v.j = j;
  v.der = der;
  v.parity = (I.parity_of(i) + I.parity_of(j)) % 2;
  return v;
}

VarKey VarKey::custom_var(int custom_id, Parity parity, int der, int i, int j) {
  VarKey v;
  v.family = Family::custom;
  v.custom_id = custom_id;
  v.i = i;
  v.j = j;
  v.der = der;
  v.parity = parity;
  return v;
}

std::string VarKey::str() const {
  std::ostringstream os;
  switch (family) {
    case Family::u: os << "u_{" << M << "," << i << j << "}"; break;
    case Family::q: os << "q_{" << i << j << "}"; break;
    case Family::w: os << "w_{" << i << j << ";" << M << "}"; break;
    case Family::custom:
      os << custom_family_name(custom_id);
      if (i || j) os << "_{" << i << j << "}";
      break;
  }
  if (der > 0 && der <= 3) os << std::string(static_cast<size_t>(der), '\'');
  if (der > 3) os << "^(" << der << ")";
  return os.str();
}

PackedVar pack(const VarKey& v) {
  assert(v.der >= 0 && v.der < (1 << 16));
  assert(v.i >= 0 && v.i < (1 << 12) && v.j >= 0 && v.j < (1 << 12));
  assert(v.M >= -1 && v.M + 1 < (1 << 8));
  std::uint64_t fam = (static_cast<std::uint64_t>(v.family) << 6) |
                      static_cast<std::uint64_t>(v.custom_id & 0x3f);
  std::uint64_t p = 0;
  p |= fam << 56;
  p |= static_cast<std::uint64_t>(v.M + 1) << 48;
  p |= static_cast<std::uint64_t>(v.i) << 36;
  p |= static_cast<std::uint64_t>(v.j) << 24;
  p |= static_cast<std::uint64_t>(v.der) << 8;
  p |= static_cast<std::uint64_t>(v.parity & 1);
  return p;
}

VarKey unpack(PackedVar p) {
  VarKey v;
  std::uint64_t fam = (p >> 56) & 0xff;
  v.family = static_cast<Family>(fam >> 6);
  v.custom_id = static_cast<int>(fam & 0x3f);
  v.M = static_cast<int>((p >> 48) & 0xff) - 1;
  v.i = static_cast<int>((p >> 36) & 0xfff);
  v.j = static_cast<int>((p >> 24) & 0xfff);
  v.der = static_cast<int>((p >> 8) & 0xffff);
  v.parity = static_cast<Parity>(p & 1);
  return v;
}

Parity mono_parity(const Mono& m) {
  int p = 0;
  for (const VarPow& f : m)
    if (packed_parity(f.v)) p ^= (f.e & 1);
  return p;
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (const VarPow& f : m) d += f.e;
  return d;
}

int merge_mono(const Mono& a, const Mono& b, Mono& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t ia = 0, ib = 0;
  int odd_rem_a = 0;
  for (const VarPow& f : a) odd_rem_a += packed_parity(f.v);
  int sign = 1;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia].v < b[ib].v) {
      odd_rem_a -= packed_parity(a[ia].v);
      out.push_back(a[ia++]);
    } else if (b[ib].v < a[ia].v) {
      // this factor of b hops over every remaining factor of a
      if (packed_parity(b[ib].v) && (odd_rem_a & 1)) sign = -sign;
      out.push_back(b[ib++]);
    } else {
      if (packed_parity(a[ia].v)) return 0;  // odd square
      out.push_back({a[ia].v, a[ia].e + b[ib].e});
      ++ia;
      ++ib;
    }
  }
  while (ia < a.size()) out.push_back(a[ia++]);
  while (ib < b.size()) out.push_back(b[ib++]);
  return sign;
}

DiffPoly::DiffPoly(const Scalar& c) {
  if (!c.is_zero()) terms_[Mono{}] = c;
}

DiffPoly::DiffPoly(const VarKey& v) { terms_[Mono{{pack(v), 1}}] = Scalar(1); }

std::optional<Parity> DiffPoly::parity() const {
  if (terms_.empty()) return 0;
  Parity p = mono_parity(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (mono_parity(m) != p) return std::nullopt;
  return p;
}

DiffPoly DiffPoly::parity_part(Parity p) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_)
    if (mono_parity(m) == p) r.terms_[m] = c;
  return r;
}

Scalar DiffPoly::constant_term() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? Scalar(0) : it->second;
}

int DiffPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

void DiffPoly::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  Mono merged;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      int sign = merge_mono(ma, mb, merged);
      if (sign == 0) continue;
      Scalar c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(merged, c);
    }
  }
  return r;
}

DiffPoly operator*(const Scalar& c, DiffPoly p) {
  if (c.is_zero()) return DiffPoly();
  for (auto& [m, x] : p.terms_) x *= c;
  return p;
}

std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    if (!first) os << (c.is_negative() ? " - " : " + ");
    else if (c.is_negative()) os << "-";
    first = false;
    std::string abs = c.is_negative() ? cs.substr(1) : cs;
    if (m.empty()) {
      os << abs;
      continue;
    }
    if (abs != "1") os << abs << " ";
    bool ffirst = true;
    for (const VarPow& f : m) {
      if (!ffirst) os << " ";
      ffirst = false;
      os << unpack(f.v).str();
      if (f.e > 1) os << "^" << f.e;
    }
  }
  return os.str();
}

DiffPoly poly_d(const DiffPoly& a) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms()) {
    for (size_t t = 0; t < m.size(); ++t) {
      // c * e_t * prefix * f_t^{e_t-1} * f_t' * suffix; d is even so the
      // only Koszul signs come from re-sorting f_t', handled by the
      // polynomial products below.
      Mono left(m.begin(), m.begin() + static_cast<long>(t + 1));
      left.back().e -= 1;
      if (left.back().e == 0) left.pop_back();
      Mono mid{{packed_with_der(m[t].v, packed_der(m[t].v) + 1), 1}};
      Mono right(m.begin() + static_cast<long>(t + 1), m.end());
      DiffPoly piece;
      piece.add_term(left, c * Scalar(m[t].e));
      DiffPoly pm, pr;
      pm.add_term(mid, Scalar(1));
      pr.add_term(right, Scalar(1));
      r += piece * pm * pr;
    }
  }
  return r;
}

DiffPoly poly_d(const DiffPoly& a, int times) {
  DiffPoly r = a;
  for (int t = 0; t < times; ++t) r = poly_d(r);
  return r;
}

DiffPoly partial_derivative(const DiffPoly& f, PackedVar v) {
  const Parity pv = packed_parity(v);
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    int prefix_odd = 0;
    for (size_t t = 0; t < m.size(); ++t) {
      if (m[t].v == v) {
        // remove one occurrence; the rest of the list stays sorted
        Mono rest = m;
        if (rest[t].e > 1) rest[t].e -= 1;
        else rest.erase(rest.begin() + static_cast<long>(t));
        Scalar coeff = c * Scalar(m[t].e);
        if (pv && (prefix_odd & 1)) coeff = -coeff;
        r.add_term(rest, coeff);
        break;  // each variable occurs in one factor of a canonical list
      }
      if (packed_parity(m[t].v)) ++prefix_odd;
    }
  }
  return r;
}

DiffPoly partial_derivative(const DiffPoly& f, const VarKey& v) {
  return partial_derivative(f, pack(v));
}

DiffPoly variational_derivative(const DiffPoly& f, const VarKey& v) {
  if (v.der != 0)
    throw std::invalid_argument("variational_derivative: v must have der = 0");
  const PackedVar base = pack(v);
  DiffPoly r;
  int dmax = max_der_of(f, base);
  for (int n = 0; n <= dmax; ++n) {
    DiffPoly p = partial_derivative(f, packed_with_der(base, n));
    if (p.is_zero()) continue;
    p = poly_d(p, n);
    if (n % 2 == 1) p = -p;
    r += p;
  }
  return r;
}

bool is_total_derivative(const DiffPoly& f) {
  if (!f.constant_term().is_zero())
    throw std::invalid_argument("is_total_derivative: nonzero constant term");
  for (PackedVar base : occurring_base_vars(f)) {
    if (!variational_derivative(f, unpack(base)).is_zero()) return false;
  }
  return true;
}

std::vector<PackedVar> occurring_base_vars(const DiffPoly& f) {
  std::vector<PackedVar> out;
  for (const auto& [m, c] : f.terms()) {
    for (const VarPow& fac : m) {
      PackedVar b = packed_base(fac.v);
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int max_der_of(const DiffPoly& f, PackedVar base) {
  int dmax = -1;
  base = packed_base(base);
  for (const auto& [m, c] : f.terms())
    for (const VarPow& fac : m)
      if (packed_base(fac.v) == base) dmax = std::max(dmax, packed_der(fac.v));
  return dmax;
}

DiffPoly substitute(const DiffPoly& f,
                    const std::map<PackedVar, DiffPoly>& images) {
  DiffPoly r;
  // cache of derivative images, keyed by (base, der)
  std::map<PackedVar, DiffPoly> der_cache;
  auto image_of = [&](PackedVar v) -> DiffPoly {
    PackedVar base = packed_base(v);
    auto it = images.find(base);
    if (it == images.end()) {
      DiffPoly p;
      p.add_term(Mono{{v, 1}}, Scalar(1));
      return p;
    }
    auto cit = der_cache.find(v);
    if (cit != der_cache.end()) return cit->second;
    DiffPoly img = poly_d(it->second, packed_der(v));
    der_cache.emplace(v, img);
    return img;
  };
  for (const auto& [m, c] : f.terms()) {
    DiffPoly prod(c);
    for (const VarPow& fac : m) {
      DiffPoly img = image_of(fac.v);
      for (int e = 0; e < fac.e; ++e) prod = prod * img;
      if (prod.is_zero()) break;
    }
    r += prod;
  }
  return r;
}

}  // namespace wsato
