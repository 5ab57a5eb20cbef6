#pragma once

#include <string>

#include "wsato/lambdapoly.hpp"
#include "wsato/matop.hpp"
#include "wsato/superpoly.hpp"

namespace wsato {

// Presentation-only LaTeX rendering: primes for derivative orders up to
// three, ^{(n)} beyond; operators as polynomials in \partial.
std::string render_latex(const VarKey& v);
std::string render_latex(const DiffPoly& p);
std::string render_latex(const LambdaPoly& p);
std::string render_latex(const Psdo& p);
std::string render_latex(const MatPSDO& m);

}  // namespace wsato
