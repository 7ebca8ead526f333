#include "tamagawa/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tamagawa {

namespace {

using nlohmann::json;

Integer integer_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw FixtureError(where + ": expected an integer");
}

template <class T>
std::optional<T> optional_field(const json& rec, const char* key, const std::string& where) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw FixtureError(where + ": field '" + key + "' has the wrong type");
  }
}

FixtureCurve parse_record(const json& rec, std::size_t index) {
  std::string where = "fixture #" + std::to_string(index);
  if (!rec.is_object()) throw FixtureError(where + ": not an object");
  FixtureCurve out;
  if (!rec.contains("label") || !rec["label"].is_string()) throw FixtureError(where + ": missing label");
  out.label = rec["label"].get<std::string>();
  where = "fixture " + out.label;
  if (!rec.contains("ai") || !rec["ai"].is_array() || rec["ai"].size() != 5) {
    throw FixtureError(where + ": 'ai' must list five coefficients");
  }
  for (std::size_t i = 0; i < 5; ++i) out.ai[i] = integer_field(rec["ai"][i], where);
  out.torsion = optional_field<std::string>(rec, "torsion", where);
  out.sha = optional_field<long>(rec, "sha", where);
  out.optimal = optional_field<bool>(rec, "optimal", where);
  out.manin = optional_field<int>(rec, "manin", where);
  out.analytic_rank = optional_field<int>(rec, "analytic_rank", where);
  out.c_infinity = optional_field<int>(rec, "c_inf", where);
  out.w3 = optional_field<int>(rec, "w3", where);
  if (rec.contains("tamagawa_product")) out.tamagawa_product = integer_field(rec["tamagawa_product"], where);
  if (rec.contains("conductor")) out.conductor = integer_field(rec["conductor"], where);
  if (rec.contains("local")) {
    if (!rec["local"].is_array()) throw FixtureError(where + ": 'local' must be an array");
    for (const auto& l : rec["local"]) {
      if (!l.contains("p") || !l.contains("kodaira") || !l.contains("cp")) {
        throw FixtureError(where + ": local entries need p, kodaira and cp");
      }
      out.local.push_back({integer_field(l["p"], where), l["kodaira"].get<std::string>(), l["cp"].get<int>()});
    }
  }
  return out;
}

void validate(const FixtureCurve& rec) {
  const std::string where = "fixture " + rec.label;
  WeierstrassCurve e = [&] {
    try {
      return rec.curve();
    } catch (const SingularCurveError&) {
      throw FixtureError(where + ": singular coefficients");
    }
  }();
  if (rec.sha && *rec.sha <= 0) throw FixtureError(where + ": sha must be positive");
  if (rec.manin && *rec.manin <= 0) throw FixtureError(where + ": manin constant must be positive");
  if (rec.c_infinity && *rec.c_infinity != 1 && *rec.c_infinity != 2) throw FixtureError(where + ": c_inf must be 1 or 2");
  if (rec.w3 && *rec.w3 != 1 && *rec.w3 != -1) throw FixtureError(where + ": w3 must be +1 or -1");
  for (const auto& l : rec.local) {
    int components = 0;
    try {
      components = KodairaType::parse(l.kodaira).components();
    } catch (const ArgumentError& err) {
      throw FixtureError(where + ": " + err.what());
    }
    if (l.tamagawa < 1 || l.tamagawa > std::max(4, components)) {
      throw FixtureError(where + ": c_p = " + std::to_string(l.tamagawa) + " impossible for type " + l.kodaira);
    }
  }
  if (rec.tamagawa_product && !rec.local.empty()) {
    Integer prod = 1;
    for (const auto& l : rec.local) prod *= l.tamagawa;
    if (prod != *rec.tamagawa_product) throw FixtureError(where + ": tamagawa_product disagrees with local data");
  }
  if (rec.torsion) {
    try {
      parse_torsion_shape(*rec.torsion);
    } catch (const ArgumentError& err) {
      throw FixtureError(where + ": " + err.what());
    }
    std::string computed = torsion_subgroup(e).shape();
    if (computed != *rec.torsion) {
      throw FixtureError(where + ": torsion " + *rec.torsion + " but the curve has " + computed);
    }
  }
}

}  // namespace

FixtureTable::FixtureTable(std::vector<FixtureCurve> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& rec = records_[i];
    validate(rec);
    if (!by_label_.emplace(rec.label, i).second) throw FixtureError("fixture " + rec.label + ": duplicate label");
    auto [it, inserted] = by_key_.emplace(isomorphism_key(rec.curve()), i);
    if (!inserted) {
      throw FixtureError("fixture " + rec.label + ": same curve as " + records_[it->second].label);
    }
  }
}

const FixtureCurve* FixtureTable::find(const CurveKey& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &records_[it->second];
}

const FixtureCurve* FixtureTable::find_label(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &records_[it->second];
}

FixtureTable parse_fixtures(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return FixtureTable();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw FixtureError(std::string("fixture file is not valid JSON: ") + err.what());
  }
  if (!doc.is_array()) throw FixtureError("fixture file must hold a JSON array");
  std::vector<FixtureCurve> records;
  for (std::size_t i = 0; i < doc.size(); ++i) records.push_back(parse_record(doc[i], i));
  return FixtureTable(std::move(records));
}

FixtureTable load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixtures(buf.str());
}

std::vector<std::string> fixture_mismatches(const FixtureCurve& record, const FactorBudget& budget) {
  std::vector<std::string> out;
  const WeierstrassCurve e = record.curve();
  auto expect = [&](const std::string& what, const std::string& want, const std::string& got) {
    if (want != got) out.push_back(record.label + ": " + what + " expected " + want + ", computed " + got);
  };
  GlobalTamagawa g = global_tamagawa(e, budget);
  if (record.conductor) expect("conductor", to_string(*record.conductor), to_string(g.conductor));
  if (record.tamagawa_product) expect("tamagawa product", to_string(*record.tamagawa_product), to_string(g.product));
  if (record.c_infinity) expect("c_inf", std::to_string(*record.c_infinity), std::to_string(c_infinity(e)));
  if (!record.local.empty()) {
    if (record.local.size() != g.local.size()) {
      out.push_back(record.label + ": " + std::to_string(record.local.size()) + " bad primes expected, " +
                    std::to_string(g.local.size()) + " computed");
    }
    for (const auto& want : record.local) {
      const LocalDatum* got = nullptr;
      for (const auto& d : g.local) {
        if (d.prime == want.prime) got = &d;
      }
      std::string at = " at " + to_string(want.prime);
      if (got == nullptr) {
        out.push_back(record.label + ": no bad reduction" + at);
        continue;
      }
      expect("kodaira" + at, want.kodaira, got->kodaira.to_string());
      expect("c_p" + at, std::to_string(want.tamagawa), std::to_string(got->tamagawa));
    }
  }
  if (record.torsion) expect("torsion", *record.torsion, torsion_subgroup(e, budget).shape());
  return out;
}

}  // namespace tamagawa
