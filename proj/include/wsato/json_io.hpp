#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "wsato/lambdapoly.hpp"
#include "wsato/matop.hpp"
#include "wsato/pvsa.hpp"
#include "wsato/superpoly.hpp"

namespace wsato {

using Json = nlohmann::ordered_json;

// Resolves the parity of a variable on parse (the wire schema does not
// carry parities; they are recomputed from the owning index set).
using ParityResolver = std::function<Parity(const VarKey&)>;
// Resolver for u/q/w families over a fixed index set: parity(i)+parity(j).
ParityResolver index_set_resolver(const IndexSet& IJ, const IndexSet& full);

Json to_json(const Scalar& s);
Json to_json(const VarKey& v);
Json to_json(const DiffPoly& p);
Json to_json(const Psdo& p);
Json to_json(const LambdaPoly& p);
Json to_json(const IndexSet& I);
Json to_json(const MatPSDO& m);
Json to_json(const BracketTable& t);

VarKey varkey_from_json(const Json& j, const ParityResolver& res);
DiffPoly diffpoly_from_json(const Json& j, const ParityResolver& res);
Psdo psdo_from_json(const Json& j, const ParityResolver& res);
LambdaPoly lambdapoly_from_json(const Json& j, const ParityResolver& res);
IndexSet indexset_from_json(const Json& j);
MatPSDO matpsdo_from_json(const Json& j);
BracketTable brackettable_from_json(const Json& j, const ParityResolver& res);

}  // namespace wsato
