#include "wsato/latex.hpp"

#include <sstream>

namespace wsato {

namespace {

std::string scalar_latex(const Scalar& c) {
  std::string s = c.str();
  auto slash = s.find('/');
  if (slash == std::string::npos) return s;
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  bool neg = !num.empty() && num[0] == '-';
  if (neg) num = num.substr(1);
  return (neg ? "-" : "") + ("\\frac{" + num + "}{" + den + "}");
}

}  // namespace

std::string render_latex(const VarKey& v) {
  std::ostringstream os;
  switch (v.family) {
    case Family::u: os << "u_{" << v.M << "," << v.i << v.j << "}"; break;
    case Family::q: os << "q_{" << v.i << v.j << "}"; break;
    case Family::w: os << "w_{" << v.i << v.j << ";" << v.M << "}"; break;
    case Family::custom:
      os << "\\" << custom_family_name(v.custom_id);
      if (v.i || v.j) os << "_{" << v.i << v.j << "}";
      break;
  }
  if (v.der > 0 && v.der <= 3) os << std::string(static_cast<size_t>(v.der), '\'');
  if (v.der > 3) os << "^{(" << v.der << ")}";
  return os.str();
}

std::string render_latex(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = scalar_latex(c);
    bool neg = cs[0] == '-';
    std::string abs = neg ? cs.substr(1) : cs;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    if (m.empty()) {
      os << abs;
      continue;
    }
    if (abs != "1") os << abs << " ";
    for (size_t t = 0; t < m.size(); ++t) {
      if (t) os << " ";
      os << render_latex(unpack(m[t].v));
      if (m[t].e > 1) os << "^{" << m[t].e << "}";
    }
  }
  return os.str();
}

namespace {

void append_power(std::ostringstream& os, const std::string& sym, int deg) {
  if (deg == 0) return;
  os << sym;
  if (deg != 1) os << "^{" << deg << "}";
}

std::string wrap_coeff(const DiffPoly& c, bool need_parens) {
  std::string s = render_latex(c);
  if (!need_parens || c.term_count() <= 1) return s;
  return "\\left(" + s + "\\right)";
}

}  // namespace

std::string render_latex(const LambdaPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.coeffs()) {
    if (!first) os << " + ";
    first = false;
    bool has_sym = k.first || k.second;
    std::string cs = wrap_coeff(c, has_sym);
    if (cs == "1" && has_sym) cs.clear();
    os << cs;
    if (!cs.empty() && has_sym) os << " ";
    std::ostringstream pw;
    append_power(pw, "\\lambda", k.first);
    if (k.second) {
      if (k.first) pw << " ";
      append_power(pw, "\\mu", k.second);
    }
    os << pw.str();
  }
  return os.str();
}

std::string render_latex(const Psdo& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    std::string cs = wrap_coeff(it->second, it->first != 0);
    if (cs == "1" && it->first != 0) cs.clear();
    os << cs;
    if (!cs.empty() && it->first != 0) os << " ";
    append_power(os, "\\partial", it->first);
  }
  return os.str();
}

std::string render_latex(const MatPSDO& m) {
  std::ostringstream os;
  os << "\\begin{bmatrix}\n";
  for (int i = 0; i < m.rows().size(); ++i) {
    for (int j = 0; j < m.cols().size(); ++j) {
      if (j) os << " & ";
      os << render_latex(m.at(i, j));
    }
    os << " \\\\\n";
  }
  os << "\\end{bmatrix}";
  return os.str();
}

}  // namespace wsato
