#include "tamagawa/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace tamagawa {

namespace {

struct Outcome {
  std::string parameter;
  bool skipped = false;
  bool incomplete = false;
  std::optional<WeierstrassCurve> flagged;  // curve to report
  std::string reason;
  std::string kind = "exception";
  bool is_problem = false;  // a flag here contradicts a proven statement
  std::vector<std::string> side_problems;
};

using Task = std::function<Outcome()>;

std::vector<Outcome> run_parallel(const std::vector<Task>& tasks, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<Outcome> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

// Runs `body` and turns factorization failures and singular parameters
// into outcome flags.
Outcome guarded(std::string parameter, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.parameter = std::move(parameter);
  try {
    body(o);
  } catch (const SingularCurveError&) {
    o.skipped = true;
  } catch (const IncompleteFactorization&) {
    o.incomplete = true;
  }
  return o;
}

ScanResult aggregate(const std::string& preset, const std::vector<Outcome>& outcomes, const ScanOptions& opts) {
  ScanResult r;
  r.preset = preset;
  std::map<CurveKey, std::size_t> index;
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++r.skipped;
      continue;
    }
    ++r.examined;
    if (o.incomplete) {
      r.incomplete = true;
      r.notes.push_back(o.parameter + ": factorization budget exhausted");
      continue;
    }
    for (const auto& p : o.side_problems) r.problems.push_back(o.parameter + ": " + p);
    if (!o.flagged) continue;
    if (o.is_problem) r.problems.push_back(o.parameter + ": " + o.reason);
    CurveKey key = isomorphism_key(*o.flagged);
    auto it = index.find(key);
    if (it != index.end()) {
      r.findings[it->second].parameters.push_back(o.parameter);
      continue;
    }
    index.emplace(key, r.findings.size());
    r.findings.push_back({{o.parameter}, o.kind, o.reason, check_divisibility(*o.flagged, opts.fixtures, opts.budget)});
  }
  return r;
}

// Compares the labels of the findings of one kind (all kinds when
// empty) with the expected set.
void expect_labels(ScanResult& r, const ScanOptions& opts, const std::string& kind, const std::set<std::string>& allowed,
                   bool exact) {
  if (opts.fixtures == nullptr || opts.fixtures->empty()) {
    r.notes.push_back("no fixtures loaded; findings are unmatched");
    return;
  }
  std::set<std::string> seen;
  for (const auto& f : r.findings) {
    if (!kind.empty() && f.kind != kind) continue;
    if (!f.report.fixture_label) {
      r.problems.push_back("finding at " + f.parameters.front() + " matches no fixture curve");
    } else if (!allowed.count(*f.report.fixture_label)) {
      r.problems.push_back("finding " + *f.report.fixture_label + " is not an expected exception");
    } else {
      seen.insert(*f.report.fixture_label);
    }
  }
  if (exact) {
    for (const auto& label : allowed) {
      if (!seen.count(label)) r.problems.push_back("expected exception " + label + " not found");
    }
  }
}

void expect_count(ScanResult& r, const std::string& kind, std::size_t n) {
  auto found = static_cast<std::size_t>(
      std::count_if(r.findings.begin(), r.findings.end(), [&](const ScanFinding& f) { return f.kind == kind; }));
  if (found != n) {
    r.problems.push_back("expected " + std::to_string(n) + " " + kind + " classes, found " + std::to_string(found));
  }
}

bool divisible(const Integer& n, unsigned long d) { return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0; }

std::string param(const char* name, const Integer& v) { return std::string(name) + "=" + to_string(v); }

// Normalized (a, b) pairs of the three-torsion range, in scan order.
std::vector<std::pair<long, long>> three_torsion_range(long bound) {
  std::vector<std::pair<long, long>> out;
  for (long a = -bound; a <= bound; ++a) {
    for (long b = 1; b <= bound; ++b) out.emplace_back(a, b);
  }
  return out;
}

std::optional<ThreeTorsionNormalForm> normalized(long a, long b, const FactorBudget& budget) {
  try {
    return ThreeTorsionNormalForm::make(a, b, budget);
  } catch (const SingularCurveError&) {
    throw;
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
}

std::vector<std::pair<Integer, Integer>> random_four_torsion_params(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Integer, Integer>> out;
  while (static_cast<int>(out.size()) < samples) {
    long s = 1 + static_cast<long>(rng() % 200);
    long t = static_cast<long>(rng() % 401) - 200;
    if (t == 0 || 16 * s + t == 0 || std::gcd(s, t) != 1) continue;
    out.emplace_back(s, t);
  }
  return out;
}

}  // namespace

ScanResult scan_four_torsion(const std::vector<std::pair<Integer, Integer>>& params, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& [s, t] : params) {
    tasks.push_back([s = s, t = t, &opts] {
      return guarded(param("s", s) + "," + param("t", t), [&](Outcome& o) {
        WeierstrassCurve e = four_torsion_curve(s, t);
        GlobalTamagawa g = global_tamagawa(e, opts.budget);
        // Primes dividing s > 1 are split multiplicative with 4 | c_p.
        for (const auto& d : g.local) {
          if (mpz_divisible_p(s.get_mpz_t(), d.prime.get_mpz_t())) {
            if (d.reduction != ReductionClass::Split || d.tamagawa % 4 != 0) {
              o.side_problems.push_back("prime " + to_string(d.prime) + " | s but c_p = " + std::to_string(d.tamagawa));
            }
          }
        }
        if (!divisible(g.product * c_infinity(e), 4)) {
          o.flagged = e;
          if (divisible(g.product, 2)) {
            o.reason = "4 does not divide c * c_inf";
          } else {
            o.kind = "odd-tamagawa";
            o.reason = "c(E) is odd";
          }
        }
      });
    });
  }
  return aggregate("four-torsion", run_parallel(tasks, opts.jobs), opts);
}

ScanResult scan_two_six(long bound, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (long a = -bound; a <= bound; ++a) {
    for (long b = 1; b <= bound; ++b) {
      if (std::gcd(a, b) != 1) continue;
      tasks.push_back([a, b, &opts] {
        Rational t = make_rational(a, b);
        return guarded("t=" + to_string(t), [&](Outcome& o) {
          WeierstrassCurve e = two_six_curve(t);
          GlobalTamagawa g = global_tamagawa(e, opts.budget);
          if (!divisible(g.product, 12)) {
            o.flagged = e;
            o.reason = "12 does not divide c(E) = " + to_string(g.product);
            o.is_problem = true;
          }
        });
      });
    }
  }
  return aggregate("two-six", run_parallel(tasks, opts.jobs), opts);
}

ScanResult scan_two_torsion_ss(const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (long b : {1, 2, 4, 8, 16}) {
    for (long a : {0, 1, -1, 3, -3, 5, -5, 7, -7}) {
      if (a * a >= 4 * b || std::gcd(a, b) != 1) continue;
      tasks.push_back([a, b, &opts] {
        return guarded("a=" + std::to_string(a) + ",b=" + std::to_string(b), [&](Outcome& o) {
          WeierstrassCurve e = two_torsion_ss_curve(a, b);
          GlobalTamagawa g = global_tamagawa(e, opts.budget);
          bool semistable = std::none_of(g.local.begin(), g.local.end(),
                                         [](const LocalDatum& d) { return d.reduction == ReductionClass::Additive; });
          // The designed subgroup is Z/2, whatever the full torsion is.
          if (semistable && !divisible(g.product * c_infinity(e), 2)) {
            o.flagged = e;
            o.reason = "semi-stable and 2 does not divide c_inf * c(E)";
          }
        });
      });
    }
  }
  // Positive a^2 - 4b gives positive discriminant.
  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < 200;) {
    long a = static_cast<long>(rng() % 401) - 200;
    long b = static_cast<long>(rng() % 401) - 200;
    if (b == 0 || a * a - 4 * b <= 0 || std::gcd(a, b) != 1) continue;
    ++i;
    tasks.push_back([a, b] {
      return guarded("a=" + std::to_string(a) + ",b=" + std::to_string(b), [&](Outcome& o) {
        if (c_infinity(two_torsion_ss_curve(a, b)) != 2) o.side_problems.push_back("a^2 - 4b > 0 but c_inf = 1");
      });
    });
  }
  return aggregate("two-torsion-semistable", run_parallel(tasks, opts.jobs), opts);
}

KozumaRow kozuma_row(const ThreeTorsionNormalForm& nf, const Integer& p) {
  const long vb = mpz_divisible_p(nf.b.get_mpz_t(), p.get_mpz_t()) ? ord(nf.b, p) : 0;
  const std::optional<long> va =
      nf.a == 0 ? std::nullopt : std::optional<long>(mpz_divisible_p(nf.a.get_mpz_t(), p.get_mpz_t()) ? ord(nf.a, p) : 0);
  const Integer D = nf.D();
  const long vd = mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()) ? ord(D, p) : 0;
  KozumaRow row;
  if (va && 3 * *va <= vb) {
    if (3 * *va < vb) {
      row.alternatives = {"I" + std::to_string(3 * vb)};
      row.tamagawa = static_cast<int>(3 * vb);
      row.split = true;
    } else {
      row.alternatives = {"I" + std::to_string(vd)};
    }
    return row;
  }
  if (vb == 0) {
    if (p != 3) {
      row.alternatives = {"I0"};
    } else if (vd == 3) {
      row.alternatives = {"II", "III"};
    } else if (vd == 4) {
      row.alternatives = {"II"};
    } else if (vd == 5) {
      row.alternatives = {"IV"};
    } else if (vd >= 6) {
      row.alternatives = {"I" + std::to_string(vd - 6) + "*"};
    }
    return row;
  }
  row.alternatives = {vb == 1 ? "IV" : "IV*"};
  row.tamagawa = 3;
  return row;
}

ScanResult scan_kozuma(long bound, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& [a, b] : three_torsion_range(bound)) {
    tasks.push_back([a = a, b = b, &opts] {
      return guarded("a=" + std::to_string(a) + ",b=" + std::to_string(b), [&](Outcome& o) {
        auto nf = normalized(a, b, opts.budget);
        if (!nf) {
          o.skipped = true;
          return;
        }
        WeierstrassCurve e = nf->curve();
        std::vector<Integer> primes = factor(e.discriminant(), opts.budget).primes();
        if (std::find(primes.begin(), primes.end(), Integer(3)) == primes.end()) primes.push_back(3);
        for (const auto& p : primes) {
          KozumaRow row = kozuma_row(*nf, p);
          LocalDatum d = tate(e, p);
          std::string got = d.kodaira.to_string();
          bool ok = std::find(row.alternatives.begin(), row.alternatives.end(), got) != row.alternatives.end();
          if (row.tamagawa && *row.tamagawa != d.tamagawa) ok = false;
          if (row.split && d.reduction != ReductionClass::Split) ok = false;
          if (!ok) {
            std::string want;
            for (const auto& alt : row.alternatives) want += (want.empty() ? "" : " or ") + alt;
            o.flagged = e;
            o.is_problem = true;
            o.reason += "p=" + to_string(p) + ": table says " + want + ", Tate gives " + got + "/" +
                        std::to_string(d.tamagawa) + "; ";
          }
        }
      });
    });
  }
  return aggregate("kozuma", run_parallel(tasks, opts.jobs), opts);
}

ScanResult scan_three_torsion_b(long bound, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (const auto& [a, b] : three_torsion_range(bound)) {
    if (b == 1) continue;
    tasks.push_back([a = a, b = b, &opts] {
      return guarded("a=" + std::to_string(a) + ",b=" + std::to_string(b), [&](Outcome& o) {
        auto nf = normalized(a, b, opts.budget);
        if (!nf) {
          o.skipped = true;
          return;
        }
        WeierstrassCurve e = nf->curve();
        Integer c = global_tamagawa(e, opts.budget).product;
        if (!divisible(c, 3)) {
          o.flagged = e;
          o.is_problem = true;
          o.reason = "b > 1 but 3 does not divide c(E) = " + to_string(c);
        }
      });
    });
  }
  return aggregate("three-torsion-b", run_parallel(tasks, opts.jobs), opts);
}

ScanResult scan_quotient_split(long bound, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (long a = -bound; a <= bound; ++a) {
    if (a == 3) continue;
    tasks.push_back([a, &opts] {
      return guarded("a=" + std::to_string(a), [&](Outcome& o) {
        auto nf = ThreeTorsionNormalForm::make(a, 1, opts.budget);
        WeierstrassCurve e = nf.curve();
        std::optional<IsogenyPair> found;
        try {
          found = hadano_quotient(nf, opts.budget);
        } catch (const InternalError& err) {
          o.flagged = e;
          o.is_problem = true;
          o.reason = err.what();
          return;
        }
        const IsogenyPair& pair = *found;
        // Independent recomputation of the quotient invariants.
        Integer d = Integer(a) * a * a - 27;
        auto inv = compute_invariants(pair.quotient.coefficients());
        if (inv.discriminant != d * d * d || inv.c4 != Integer(a) * (Integer(a) * a * a + 216)) {
          o.flagged = e;
          o.is_problem = true;
          o.reason = "quotient invariants disagree with the closed forms";
          return;
        }
        auto q = quotient_split_prime(pair);
        bool exceptional = a == 0 || a == -3 || a == -6;
        if (q.has_value() == exceptional) {
          o.flagged = e;
          o.is_problem = true;
          o.reason = q ? "unexpected split prime " + to_string(*q) : "no split prime for a non-exceptional a";
          return;
        }
        if (q) {
          if (tate(pair.quotient, *q).reduction != ReductionClass::Split) {
            o.side_problems.push_back("quotient not split at " + to_string(*q));
          }
          if (tate(e, *q).reduction != ReductionClass::Split) {
            o.flagged = e;
            o.is_problem = true;
            o.reason = "E not split at the quotient's split prime " + to_string(*q);
          }
        }
      });
    });
  }
  return aggregate("quotient-split", run_parallel(tasks, opts.jobs), opts);
}

ScanResult scan_isogeny_ledger(long bound, const ScanOptions& opts) {
  std::vector<Task> tasks;
  for (long a = -bound; a <= bound; ++a) {
    if (a == 3) continue;
    tasks.push_back([a, &opts] {
      return guarded("a=" + std::to_string(a), [&](Outcome& o) {
        auto nf = ThreeTorsionNormalForm::make(a, 1, opts.budget);
        IsogenyPair pair = hadano_quotient(nf, opts.budget);
        for (const auto& entry : pair.ledger) {
          if (entry.prime == 3) continue;
          std::string at = "p=" + to_string(entry.prime) + ": ";
          switch (entry.source.reduction) {
            case ReductionClass::Split:
              if (entry.ord3_ratio != 1) o.reason += at + "split but ratio " + std::to_string(entry.ord3_ratio) + "; ";
              break;
            case ReductionClass::Nonsplit:
              if (entry.ord3_ratio != 0) o.reason += at + "nonsplit but ratio " + std::to_string(entry.ord3_ratio) + "; ";
              break;
            default:
              o.reason += at + "additive reduction away from 3; ";
          }
        }
        if (!o.reason.empty()) {
          o.flagged = nf.curve();
          o.is_problem = true;
        }
      });
    });
  }
  return aggregate("isogeny-ledger", run_parallel(tasks, opts.jobs), opts);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"prop2.1-negative-t", "prop2.1-random", "prop2.2", "prop2.4",
                                                 "kozuma",             "lemma3.3",       "claim3.5", "claim3.7"};
  return names;
}

ScanResult run_preset(const std::string& name, const ScanOptions& opts) {
  auto bound_or = [&](long fallback) {
    long b = opts.bound.value_or(fallback);
    if (b < 0) throw ArgumentError("scan bound must be non-negative");
    return b;
  };
  ScanResult r;
  if (name == "prop2.1-negative-t") {
    std::vector<std::pair<Integer, Integer>> params;
    for (long t = -15; t <= -1; ++t) params.emplace_back(1, t);
    r = scan_four_torsion(params, opts);
    expect_count(r, "exception", 2);
    expect_labels(r, opts, "exception", {"21a4", "24a4"}, true);
    expect_labels(r, opts, "odd-tamagawa", {"15a7", "15a8", "17a4"}, false);
  } else if (name == "prop2.1-random") {
    if (opts.samples < 0) throw ArgumentError("sample count must be non-negative");
    r = scan_four_torsion(random_four_torsion_params(opts.samples, opts.seed), opts);
    expect_labels(r, opts, "", {"15a7", "15a8", "17a4", "21a4", "24a4"}, false);
  } else if (name == "prop2.2") {
    r = scan_two_six(bound_or(30), opts);
  } else if (name == "prop2.4") {
    r = scan_two_torsion_ss(opts);
    expect_count(r, "exception", 3);
    expect_labels(r, opts, "exception", {"15a8", "39a4", "55a4"}, true);
  } else if (name == "kozuma") {
    r = scan_kozuma(bound_or(40), opts);
  } else if (name == "lemma3.3") {
    r = scan_three_torsion_b(bound_or(40), opts);
  } else if (name == "claim3.5") {
    r = scan_quotient_split(bound_or(100), opts);
  } else if (name == "claim3.7") {
    r = scan_isogeny_ledger(bound_or(100), opts);
  } else {
    throw ArgumentError("unknown preset '" + name + "'");
  }
  r.preset = name;
  return r;
}

}  // namespace tamagawa
