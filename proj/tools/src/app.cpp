#include "tamagawa_cli/app.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tamagawa_cli/report_json.hpp"

namespace tamagawa::cli {

namespace {

struct Options {
  std::string ai;
  std::string family;
  std::optional<std::string> s, t, a, b;
  std::vector<std::string> primes;
  std::string preset;
  std::optional<long> bound;
  unsigned jobs = 0;
  std::optional<std::string> fixtures;
  bool pretty = false;
  bool summary = false;
};

std::array<Integer, 5> parse_ai(const std::string& text) {
  std::array<Integer, 5> out;
  std::stringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 5) throw ArgumentError("--ai takes exactly five comma-separated integers");
    out[n++] = parse_integer(item);
  }
  if (n != 5) throw ArgumentError("--ai takes exactly five comma-separated integers");
  return out;
}

Integer need_integer(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw ArgumentError(std::string("missing ") + flag);
  return parse_integer(*v);
}

WeierstrassCurve select_curve(const Options& o) {
  if (!o.ai.empty() && !o.family.empty()) throw ArgumentError("give either --ai or --family, not both");
  if (!o.ai.empty()) return WeierstrassCurve(parse_ai(o.ai));
  if (o.family == "four-torsion") {
    return four_torsion_curve(o.s ? parse_integer(*o.s) : Integer(1), need_integer(o.t, "--t"));
  }
  if (o.family == "two-six") {
    if (!o.t) throw ArgumentError("missing --t");
    return two_six_curve(parse_rational(*o.t));
  }
  if (o.family == "two-torsion-ss") return two_torsion_ss_curve(need_integer(o.a, "--a"), need_integer(o.b, "--b"));
  if (o.family == "three-torsion") {
    return ThreeTorsionNormalForm::make(need_integer(o.a, "--a"), o.b ? parse_integer(*o.b) : Integer(1)).curve();
  }
  if (o.family.empty()) throw ArgumentError("no curve given: use --ai or --family");
  throw ArgumentError("unknown family '" + o.family +
                      "' (four-torsion, two-six, two-torsion-ss, three-torsion)");
}

std::optional<FixtureTable> fixtures_for(const Options& o, const Environment& env, bool required) {
  std::optional<std::string> path = o.fixtures ? o.fixtures : env.fixtures_env;
  if (!path && !env.default_fixtures.empty() && std::filesystem::exists(env.default_fixtures)) {
    path = env.default_fixtures;
  }
  if (!path) {
    if (required) throw ArgumentError("no fixture file: use --fixtures or TAMAGAWA_FIXTURES");
    return std::nullopt;
  }
  return load_fixtures(*path);
}

int cmd_localdata(const Options& o, std::ostream& out) {
  const WeierstrassCurve e = select_curve(o);
  std::vector<Integer> primes;
  for (const auto& p : o.primes) {
    Integer q = parse_integer(p);
    if (q < 2 || !is_prime(q)) throw ArgumentError("--p " + p + " is not a prime");
    primes.push_back(q);
  }
  const MinimalModel mm = minimal_model(e);
  GlobalTamagawa g = global_tamagawa(mm.curve);
  Json local = Json::array();
  if (primes.empty()) {
    for (const auto& d : g.local) local.push_back(to_json(d));
  } else {
    for (const auto& p : primes) local.push_back(to_json(tate(mm.curve, p)));
  }
  Json j{{"curve", to_json(e)},
         {"minimal", to_json(mm.curve)},
         {"discriminant", to_json(mm.curve.discriminant())},
         {"j", to_json(mm.curve.j_invariant())},
         {"conductor", to_json(g.conductor)},
         {"c_inf", c_infinity(e)},
         {"tamagawa_product", to_json(g.product)},
         {"tamagawa_factored", to_json(factor(g.product))},
         {"local", local}};
  out << dump(j, o.pretty) << "\n";
  return Ok;
}

int cmd_torsion(const Options& o, std::ostream& out) {
  const WeierstrassCurve e = select_curve(o);
  Json j{{"curve", to_json(e)}};
  j.update(to_json(torsion_subgroup(e)));
  out << dump(j, o.pretty) << "\n";
  return Ok;
}

int cmd_check(const Options& o, const Environment& env, std::ostream& out) {
  const WeierstrassCurve e = select_curve(o);
  auto table = fixtures_for(o, env, false);
  const FixtureTable* ft = table ? &*table : nullptr;
  VerdictReport r = check_divisibility(e, ft);
  if (!r.incomplete && r.torsion->order() % 3 == 0) r = classify_three_torsion(e, ft);
  Json j{{"curve", to_json(e)}};
  j.update(to_json(r));
  out << dump(j, o.pretty) << "\n";
  return r.incomplete ? Incomplete : Ok;
}

int cmd_dual3(const Options& o, std::ostream& out) {
  auto nf = ThreeTorsionNormalForm::make(need_integer(o.a, "--a"), o.b ? parse_integer(*o.b) : Integer(1));
  out << dump(to_json(hadano_quotient(nf)), o.pretty) << "\n";
  return Ok;
}

int cmd_scan(const Options& o, const Environment& env, std::ostream& out) {
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), o.preset) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw ArgumentError("unknown preset '" + o.preset + "' (" + known + ")");
  }
  if (o.bound && *o.bound < 0) throw ArgumentError("--bound must be non-negative");
  auto table = fixtures_for(o, env, false);
  ScanOptions so;
  so.jobs = o.jobs;
  so.fixtures = table ? &*table : nullptr;
  so.bound = o.bound;
  ScanResult r = run_preset(o.preset, so);
  if (!o.summary) {
    for (const auto& f : r.findings) out << dump(to_json(f), o.pretty) << "\n";
  }
  out << dump(summary_json(r), o.pretty) << "\n";
  if (r.incomplete) return Incomplete;
  return r.ok() ? Ok : Violation;
}

int cmd_fixtures(const Options& o, const Environment& env, std::ostream& out) {
  FixtureTable table = *fixtures_for(o, env, true);
  std::size_t bad = 0;
  for (const auto& rec : table.records()) {
    auto mismatches = fixture_mismatches(rec);
    if (!mismatches.empty()) ++bad;
    if (!o.summary) {
      out << dump(Json{{"label", rec.label}, {"ok", mismatches.empty()}, {"mismatches", mismatches}}, o.pretty) << "\n";
    }
  }
  out << dump(Json{{"records", table.size()}, {"mismatched", bad}, {"ok", bad == 0}}, o.pretty) << "\n";
  return bad == 0 ? Ok : Violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  Options o;
  CLI::App app("Local data of elliptic curves over Q: Tate's algorithm, Tamagawa numbers, torsion, 3-isogenies.",
               "tamagawa");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fixtures", o.fixtures, "Fixture JSON file (default: $TAMAGAWA_FIXTURES)");
  app.add_flag("--pretty", o.pretty, "Indent JSON output");

  auto curve_options = [&o](CLI::App* sub) {
    sub->add_option("--ai", o.ai, "Coefficients a1,a2,a3,a4,a6");
    sub->add_option("--family", o.family, "four-torsion | two-six | two-torsion-ss | three-torsion");
    sub->add_option("--s", o.s, "four-torsion: s (default 1)");
    sub->add_option("--t", o.t, "four-torsion: integer t; two-six: rational t");
    sub->add_option("--a", o.a, "two-torsion-ss / three-torsion: a");
    sub->add_option("--b", o.b, "two-torsion-ss / three-torsion: b");
  };

  CLI::App* localdata = app.add_subcommand("localdata", "Kodaira types, c_p, conductor and c_inf");
  curve_options(localdata);
  localdata->add_option("--p", o.primes, "Restrict to these primes")->take_all();
  CLI::App* torsion = app.add_subcommand("torsion", "Rational torsion subgroup with generators");
  curve_options(torsion);
  CLI::App* check = app.add_subcommand("check", "Divisibility of c_inf * c(E) by the torsion order");
  curve_options(check);
  CLI::App* dual3 = app.add_subcommand("dual3", "3-isogenous quotient of y^2 + a xy + b y = x^3 with its ledger");
  dual3->add_option("--a", o.a, "a")->required();
  dual3->add_option("--b", o.b, "b (default 1)");
  CLI::App* scan = app.add_subcommand("scan", "Run a named family scan");
  scan->add_option("--preset", o.preset, "Preset name")->required();
  scan->add_option("--bound", o.bound, "Override the preset's range");
  scan->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
  scan->add_flag("--summary", o.summary, "Only print the aggregate line");
  CLI::App* fixtures = app.add_subcommand("fixtures", "Validate a fixture file and recompute every record");
  fixtures->add_flag("--summary", o.summary, "Only print the aggregate line");

  std::vector<std::string> argv_storage{"tamagawa"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return UsageError;
  }

  try {
    if (localdata->parsed()) return cmd_localdata(o, out);
    if (torsion->parsed()) return cmd_torsion(o, out);
    if (check->parsed()) return cmd_check(o, env, out);
    if (dual3->parsed()) return cmd_dual3(o, out);
    if (scan->parsed()) return cmd_scan(o, env, out);
    if (fixtures->parsed()) return cmd_fixtures(o, env, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  } catch (const UnsupportedDomain& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  } catch (const IncompleteFactorization& e) {
    err << "incomplete: " << e.what() << "\n";
    return Incomplete;
  } catch (const PrimalityUnknown& e) {
    err << "incomplete: " << e.what() << "\n";
    return Incomplete;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Bug;
  }
  return UsageError;
}

}  // namespace tamagawa::cli
