#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tamagawa/local.hpp"
#include "tamagawa/torsion.hpp"

namespace tamagawa {

class FixtureError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

struct FixtureLocal {
  Integer prime;
  std::string kodaira;
  int tamagawa = 1;
};

/// One curve from an external database export.  Everything except the
/// label and coefficients is optional expected data.
struct FixtureCurve {
  std::string label;
  std::array<Integer, 5> ai;
  std::optional<std::string> torsion;
  std::optional<long> sha;
  std::optional<bool> optimal;
  std::optional<int> manin;
  std::optional<int> analytic_rank;
  std::optional<int> c_infinity;
  std::optional<Integer> tamagawa_product;
  std::optional<Integer> conductor;
  std::optional<int> w3;
  std::vector<FixtureLocal> local;

  WeierstrassCurve curve() const { return WeierstrassCurve(ai); }
};

/// Fixture records keyed by the minimal (c4, c6) of their curves.
class FixtureTable {
 public:
  FixtureTable() = default;
  /// Validates every record; throws FixtureError naming the first bad one.
  explicit FixtureTable(std::vector<FixtureCurve> records);

  const std::vector<FixtureCurve>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const FixtureCurve* find(const CurveKey& key) const;
  const FixtureCurve* find(const WeierstrassCurve& e) const { return find(isomorphism_key(e)); }
  const FixtureCurve* find_label(const std::string& label) const;

 private:
  std::vector<FixtureCurve> records_;
  std::map<CurveKey, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_label_;
};

/// Parses the JSON fixture format; an empty file gives an empty table.
FixtureTable parse_fixtures(const std::string& text);
FixtureTable load_fixtures(const std::string& path);

/// Differences between recomputed local data, c_inf, Tamagawa product,
/// conductor and torsion and the record's expectations (empty = agree).
std::vector<std::string> fixture_mismatches(const FixtureCurve& record, const FactorBudget& budget = {});

}  // namespace tamagawa
