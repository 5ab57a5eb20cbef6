#include "wsato/json_io.hpp"

#include <stdexcept>

namespace wsato {

ParityResolver index_set_resolver(const IndexSet& IJ, const IndexSet& full) {
  return [IJ, full](const VarKey& v) -> Parity {
    const IndexSet& I = (v.family == Family::q) ? full : IJ;
    return (I.parity_of(v.i) + I.parity_of(v.j)) % 2;
  };
}

namespace {

std::string family_name(const VarKey& v) {
  switch (v.family) {
    case Family::u: return "u";
    case Family::q: return "q";
    case Family::w: return "w";
    case Family::custom: return custom_family_name(v.custom_id);
  }
  return "?";
}

}  // namespace

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const VarKey& v) {
  Json j;
  j["family"] = family_name(v);
  if (v.M >= 0) j["M"] = v.M;
  else j["M"] = nullptr;
  j["i"] = v.i;
  j["j"] = v.j;
  j["der"] = v.der;
  return j;
}

Json to_json(const DiffPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["coeff"] = c.str();
    Json factors = Json::array();
    for (const VarPow& f : m) {
      Json fj = to_json(unpack(f.v));
      fj["exp"] = f.e;
      factors.push_back(fj);
    }
    t["factors"] = factors;
    terms.push_back(t);
  }
  return terms;
}

Json to_json(const Psdo& p) {
  Json coeffs = Json::object();
  for (const auto& [k, c] : p.coeffs()) coeffs[std::to_string(k)] = to_json(c);
  Json j;
  j["coeffs"] = coeffs;
  if (p.floor()) j["floor"] = *p.floor();
  else j["floor"] = "exact";
  return j;
}

Json to_json(const LambdaPoly& p) {
  Json j = Json::array();
  for (const auto& [k, c] : p.coeffs()) {
    Json e;
    e["l"] = k.first;
    e["m"] = k.second;
    e["value"] = to_json(c);
    j.push_back(e);
  }
  return j;
}

Json to_json(const IndexSet& I) {
  Json j;
  j["ids"] = I.ids();
  Json par = Json::array();
  for (int id : I.ids()) par.push_back(I.parity_of(id));
  j["parity"] = par;
  return j;
}

Json to_json(const MatPSDO& m) {
  Json j;
  j["rows"] = to_json(m.rows());
  j["cols"] = to_json(m.cols());
  Json rows = Json::array();
  for (int i = 0; i < m.rows().size(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols().size(); ++c) row.push_back(to_json(m.at(i, c)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

Json to_json(const BracketTable& t) {
  Json j;
  Json gens = Json::array();
  for (const VarKey& g : t.generators()) gens.push_back(to_json(g));
  j["generators"] = gens;
  Json entries = Json::array();
  for (const VarKey& a : t.generators()) {
    for (const VarKey& b : t.generators()) {
      Json e;
      e["a"] = to_json(a);
      e["b"] = to_json(b);
      e["value"] = to_json(t.value(pack(a), pack(b)));
      entries.push_back(e);
    }
  }
  j["entries"] = entries;
  return j;
}

VarKey varkey_from_json(const Json& j, const ParityResolver& res) {
  VarKey v;
  std::string fam = j.at("family").get<std::string>();
  if (fam == "u") v.family = Family::u;
  else if (fam == "q") v.family = Family::q;
  else if (fam == "w") v.family = Family::w;
  else {
    v.family = Family::custom;
    v.custom_id = register_custom_family(fam);
  }
  v.M = j.at("M").is_null() ? -1 : j.at("M").get<int>();
  v.i = j.at("i").get<int>();
  v.j = j.at("j").get<int>();
  v.der = j.at("der").get<int>();
  v.parity = res(v);
  return v;
}

DiffPoly diffpoly_from_json(const Json& j, const ParityResolver& res) {
  DiffPoly p;
  for (const Json& t : j) {
    Scalar c = Scalar::parse(t.at("coeff").get<std::string>());
    Mono m;
    for (const Json& fj : t.at("factors")) {
      VarKey v = varkey_from_json(fj, res);
      m.push_back({pack(v), fj.at("exp").get<int>()});
    }
    std::sort(m.begin(), m.end(),
              [](const VarPow& a, const VarPow& b) { return a.v < b.v; });
    p.add_term(m, c);
  }
  return p;
}

Psdo psdo_from_json(const Json& j, const ParityResolver& res) {
  Psdo p;
  for (const auto& [k, c] : j.at("coeffs").items())
    p.set_coeff(std::stoi(k), diffpoly_from_json(c, res));
  if (j.at("floor").is_string()) p.set_floor(std::nullopt);
  else p.set_floor(j.at("floor").get<int>());
  return p;
}

LambdaPoly lambdapoly_from_json(const Json& j, const ParityResolver& res) {
  LambdaPoly p;
  for (const Json& e : j)
    p.add_coeff(e.at("l").get<int>(), e.at("m").get<int>(),
                diffpoly_from_json(e.at("value"), res));
  return p;
}

IndexSet indexset_from_json(const Json& j) {
  std::vector<int> ids = j.at("ids").get<std::vector<int>>();
  std::vector<Parity> par = j.at("parity").get<std::vector<Parity>>();
  return IndexSet(ids, par);
}

MatPSDO matpsdo_from_json(const Json& j) {
  IndexSet rows = indexset_from_json(j.at("rows"));
  IndexSet cols = indexset_from_json(j.at("cols"));
  // entries may mention q over the row set or u over either; resolve with
  // the full row set for q and the row set for u/w
  ParityResolver res = index_set_resolver(rows, rows);
  MatPSDO m(rows, cols);
  for (int i = 0; i < rows.size(); ++i)
    for (int c = 0; c < cols.size(); ++c)
      m.at(i, c) = psdo_from_json(j.at("entries").at(i).at(c), res);
  return m;
}

BracketTable brackettable_from_json(const Json& j, const ParityResolver& res) {
  std::vector<VarKey> gens;
  for (const Json& g : j.at("generators")) gens.push_back(varkey_from_json(g, res));
  BracketTable t(gens);
  for (const Json& e : j.at("entries"))
    t.set_value(varkey_from_json(e.at("a"), res), varkey_from_json(e.at("b"), res),
                lambdapoly_from_json(e.at("value"), res));
  return t;
}

}  // namespace wsato
