#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamagawa/verifier.hpp"

namespace tamagawa {

struct ScanOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  const FixtureTable* fixtures = nullptr;
  FactorBudget budget;
  std::optional<long> bound;  // preset-specific range override
  std::uint64_t seed = 20240601;
  int samples = 1000;
};

/// One isomorphism class picked up by a scan.
struct ScanFinding {
  std::vector<std::string> parameters;  // every parameter that produced it, in scan order
  std::string kind;  // "exception", or "odd-tamagawa" for four-torsion curves with odd c(E)
  std::string reason;
  VerdictReport report;
};

struct ScanResult {
  std::string preset;
  std::size_t examined = 0;
  std::size_t skipped = 0;  // singular or out-of-scope parameters
  std::vector<ScanFinding> findings;
  std::vector<std::string> problems;  // departures from the proven statement
  std::vector<std::string> notes;
  bool incomplete = false;

  bool ok() const { return problems.empty() && !incomplete; }
};

/// Every (s, t) in the list: flags curves with 4 not dividing c * c_inf.
ScanResult scan_four_torsion(const std::vector<std::pair<Integer, Integer>>& params, const ScanOptions& opts = {});

/// Two-six family at t = a/b, |a| <= bound, 1 <= b <= bound: flags curves
/// with 12 not dividing c(E).
ScanResult scan_two_six(long bound, const ScanOptions& opts = {});

/// y^2 = x^3 + a x^2 + b x over b in {1,2,4,8,16}, a^2 < 4b: flags
/// semi-stable curves whose torsion order does not divide c_inf * c(E).
ScanResult scan_two_torsion_ss(const ScanOptions& opts = {});

/// Normalized three-torsion (a, b) with |a| <= bound, 1 <= b <= bound:
/// Tate's algorithm against the reduction table at every bad prime.
ScanResult scan_kozuma(long bound, const ScanOptions& opts = {});
/// Same range, b > 1: flags curves with 3 not dividing c(E).
ScanResult scan_three_torsion_b(long bound, const ScanOptions& opts = {});

/// a in [-bound, bound] \ {3} for the b = 1 normal form: quotient
/// identities and the split prime of the quotient.
ScanResult scan_quotient_split(long bound, const ScanOptions& opts = {});
/// Same range: ledger entries at p != 3 are 1 at split and 0 at nonsplit primes.
ScanResult scan_isogeny_ledger(long bound, const ScanOptions& opts = {});

/// Reduction type predicted by the three-torsion table at p for a
/// normalized (a, b).  `alternatives` lists every acceptable symbol;
/// `tamagawa` and `split` are set where the table fixes them.
struct KozumaRow {
  std::vector<std::string> alternatives;
  std::optional<int> tamagawa;
  bool split = false;
};
KozumaRow kozuma_row(const ThreeTorsionNormalForm& nf, const Integer& p);

const std::vector<std::string>& preset_names();

/// Runs a named preset.  Throws ArgumentError for unknown names.
ScanResult run_preset(const std::string& name, const ScanOptions& opts = {});

}  // namespace tamagawa
