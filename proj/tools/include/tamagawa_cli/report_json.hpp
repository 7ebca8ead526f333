#pragma once

#include "json.hpp"

#include "tamagawa/scan.hpp"

namespace tamagawa::cli {

using Json = nlohmann::ordered_json;

// Big integers are emitted as decimal strings; small counts as numbers.
Json to_json(const Integer& n);
Json to_json(const Rational& q);
Json to_json(const WeierstrassCurve& e);
Json to_json(const Factorization& f);
Json to_json(const LocalDatum& d);
Json to_json(const TorsionStructure& t);
Json to_json(const LedgerEntry& e);
Json to_json(const IsogenyPair& pair);
Json to_json(const VerdictReport& r);
Json to_json(const ScanFinding& f);
Json summary_json(const ScanResult& r);

std::string dump(const Json& j, bool pretty);

}  // namespace tamagawa::cli
