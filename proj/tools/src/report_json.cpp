#include "tamagawa_cli/report_json.hpp"

#include <map>

namespace tamagawa::cli {

Json to_json(const Integer& n) { return to_string(n); }
Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const WeierstrassCurve& e) {
  Json out = Json::array();
  for (const auto& a : e.coefficients()) out.push_back(to_json(a));
  return out;
}

Json to_json(const Factorization& f) {
  Json out = Json::array();
  for (const auto& pp : f.factors) out.push_back(Json::array({to_json(pp.prime), pp.exponent}));
  return out;
}

Json to_json(const LocalDatum& d) {
  return Json{{"p", to_json(d.prime)},
              {"kodaira", d.kodaira.to_string()},
              {"cp", d.tamagawa},
              {"class", to_string(d.reduction)},
              {"vdelta", d.v_delta_min},
              {"conductor_exponent", d.conductor_exponent}};
}

Json to_json(const TorsionStructure& t) {
  Json gens = Json::array();
  for (const auto& g : t.generators) gens.push_back(Json::array({to_json(g.x), to_json(g.y)}));
  return Json{{"shape", t.shape()}, {"order", t.order()}, {"generators", gens}};
}

Json to_json(const LedgerEntry& e) {
  return Json{{"p", to_json(e.prime)},
              {"source", to_json(e.source)},
              {"quotient", to_json(e.quotient)},
              {"ord3_ratio", e.ord3_ratio}};
}

Json to_json(const IsogenyPair& pair) {
  Json ledger = Json::array();
  for (const auto& e : pair.ledger) ledger.push_back(to_json(e));
  auto q = quotient_split_prime(pair);
  Json out{{"a", to_json(pair.source.a)},
           {"b", to_json(pair.source.b)},
           {"source", to_json(pair.source.curve())},
           {"quotient", to_json(pair.quotient)},
           {"ledger", ledger},
           {"ord3_ratio_total", pair.ord3_ratio_total()},
           {"split_prime", q ? to_json(*q) : Json(nullptr)}};
  if (!q) out["note"] = "no split prime != 3 on the quotient";
  return out;
}

Json to_json(const VerdictReport& r) {
  Json out;
  out["c4"] = to_json(r.key.c4);
  out["c6"] = to_json(r.key.c6);
  out["minimal"] = r.minimal ? to_json(*r.minimal) : Json(nullptr);
  out["conductor"] = to_json(r.conductor);
  out["torsion"] = r.torsion ? to_json(*r.torsion) : Json(nullptr);
  out["c_inf"] = r.c_inf;
  out["tamagawa_product"] = to_json(r.tamagawa_product);
  out["tamagawa_factored"] = to_json(r.tamagawa_factored);
  Json local = Json::array();
  for (const auto& d : r.local) local.push_back(to_json(d));
  out["local"] = local;
  out["divisible"] = r.divisible;
  out["fixture"] = r.fixture_label ? Json(*r.fixture_label) : Json("unmatched");
  out["sha"] = r.sha ? Json(*r.sha) : Json("unknown");
  out["manin"] = r.manin ? Json(*r.manin) : Json(nullptr);
  out["optimal"] = r.optimal ? Json(*r.optimal) : Json("not verifiable here");
  out["classification"] = r.classification ? Json(to_string(*r.classification)) : Json(nullptr);
  if (r.isogeny) out["isogeny"] = to_json(*r.isogeny);
  out["notes"] = r.notes;
  out["incomplete"] = r.incomplete;
  return out;
}

Json to_json(const ScanFinding& f) {
  Json out{{"parameters", f.parameters}, {"kind", f.kind}, {"reason", f.reason}};
  out["report"] = to_json(f.report);
  return out;
}

Json summary_json(const ScanResult& r) {
  std::map<std::string, std::size_t> kinds;
  for (const auto& f : r.findings) ++kinds[f.kind];
  Json by_kind = Json::object();
  for (const auto& [k, n] : kinds) by_kind[k] = n;
  Json labels = Json::array();
  for (const auto& f : r.findings) labels.push_back(f.report.fixture_label ? *f.report.fixture_label : "unmatched");
  return Json{{"preset", r.preset},     {"examined", r.examined}, {"skipped", r.skipped},
              {"findings", r.findings.size()}, {"by_kind", by_kind}, {"labels", labels},
              {"problems", r.problems}, {"notes", r.notes},       {"incomplete", r.incomplete},
              {"ok", r.ok()}};
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace tamagawa::cli
