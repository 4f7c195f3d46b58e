// bentshift: construct and verify bent functions, run hidden-shift solvers,
// and print the quantum/classical query table.
//
// Exit codes: 0 success (or bent), 1 negative result, 2 usage error, 3 resource cap.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bentshift/bentshift.hpp"

namespace bs = bentshift;
using bs::json;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kFamilies = {"ip", "mm", "mm0", "quadratic", "ps", "dobbertin", "trace"};
const std::vector<std::string> kSolvers = {"a1", "a2", "adaptive", "exhaustive"};

// Largest half-dimension each solver accepts at the command line.
unsigned solver_max_m(const std::string& solver) {
  if (solver == "a1") return bs::kMaxQubits / 2;         // n qubits
  if (solver == "a2") return bs::kMaxA2Variables / 2;    // 2n + 1 qubits
  if (solver == "adaptive") return bs::kMaxVariables / 2;
  return bs::kMaxVariables / 2;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

unsigned resolve_half(const std::string& family, std::optional<unsigned> m, std::optional<unsigned> n) {
  if (m && n && 2 * *m != *n) throw UsageError("--m and --n disagree");
  if (n && *n % 2 != 0) throw UsageError("bent families need an even --n");
  const unsigned half = m ? *m : n ? *n / 2 : 0;
  if (half == 0) throw UsageError("give --m or --n");
  if (2 * half > bs::kMaxVariables) throw bs::ResourceError("n exceeds 26");
  if ((family == "ps" || family == "dobbertin" || family == "trace") && half < 2) {
    throw UsageError(family + " needs m >= 2");
  }
  return half;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string family = "ip";
  std::optional<unsigned> m;
  std::optional<unsigned> n;
  std::uint64_t seed = 0;
  std::string out;
  std::string descriptor;
};

int cmd_construct(const ConstructArgs& a) {
  const unsigned half = resolve_half(a.family, a.m, a.n);
  std::mt19937_64 rng(a.seed);
  const auto family = bs::random_family(a.family, half, rng);
  const auto f = bs::build_function(family);
  const json desc = bs::descriptor_json(family);

  if (a.out.empty()) {
    std::cout << json{{"descriptor", desc}, {"n", f.n()}, {"table", bs::to_hex(f)}}.dump(2) << '\n';
  } else {
    bs::save_truth_table(a.out, f);
    std::string dpath = a.descriptor;
    if (dpath.empty()) dpath = std::filesystem::path(a.out).replace_extension(".json").string();
    write_text(dpath, desc.dump(2) + "\n");
    std::cerr << "wrote " << a.out << " (n=" << f.n() << ") and " << dpath << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string in;
  std::string report;
};

int cmd_verify(const VerifyArgs& a) {
  const auto f = bs::load_truth_table(a.in);
  json r = bs::verify_report(f);
  r["file"] = a.in;
  write_text(a.report, r.dump(2) + "\n");
  return r["bent"].get<bool>() ? kOk : kNegative;
}

// ---------------------------------------------------------------------------

struct ShiftArgs {
  std::string family;
  unsigned m = 2;
  std::string solver = "a1";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool no_dual = false;
  std::optional<std::size_t> max_rounds;
  unsigned threads = 1;
  bool no_timing = false;
  std::string out;
};

struct TrialRow {
  bool success = false;
  std::string error;
  bs::QueryStats queries;
  std::size_t rounds = 0;
  std::string secret;
  std::string recovered;
  double wall_ms = 0.0;
};

TrialRow run_trial(const ShiftArgs& a, const std::string& family_tag, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  const auto family = bs::random_family(family_tag, a.m, rng);
  const auto inst = std::make_shared<const bs::HiddenShiftInstance>(bs::make_instance(family, rng()));
  const std::uint64_t solver_seed = rng();
  auto oracle = a.no_dual ? bs::ShiftOracle::standard(inst) : bs::ShiftOracle::with_dual(inst);
  oracle.keep_log(false);

  TrialRow row;
  row.secret = inst->s.to_string();
  const auto start = std::chrono::steady_clock::now();
  std::optional<bs::BitVec> got;
  if (a.solver == "a1") {
    got = bs::run_a1(oracle, solver_seed);
  } else if (a.solver == "a2") {
    const auto r = bs::run_a2(oracle, a.max_rounds.value_or(bs::default_a2_rounds(inst->n())), solver_seed);
    row.rounds = r.rounds;
    got = r.shift;
  } else if (a.solver == "adaptive") {
    got = bs::adaptive_mm_solve(oracle, std::get<bs::MMDescriptor>(family));
  } else {
    got = bs::exhaustive_solve(oracle);
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.queries = oracle.stats();
  if (got) row.recovered = got->to_string();
  row.success = got && *got == inst->s;
  return row;
}

int cmd_hidden_shift(const ShiftArgs& in) {
  ShiftArgs a = in;
  std::string family = a.family;
  if (family.empty()) family = a.solver == "adaptive" ? "mm0" : "mm";
  if (a.m > solver_max_m(a.solver)) {
    throw bs::ResourceError("solver " + a.solver + " supports m <= " + std::to_string(solver_max_m(a.solver)));
  }
  if (a.no_dual && (a.solver == "a1" || a.solver == "adaptive")) {
    throw bs::AccessDenied("solver " + a.solver + " needs the dual channel; drop --no-dual");
  }
  if (a.solver == "adaptive" && family != "mm0") {
    throw UsageError("adaptive solver needs --family mm0 (Maiorana-McFarland with g = 0)");
  }
  // surface family/size errors before spawning workers
  {
    std::mt19937_64 probe(0);
    bs::random_family(family, a.m, probe);
  }

  std::vector<TrialRow> rows(a.trials);
  bs::parallel_for(a.trials, a.threads,
                   [&](std::size_t t) { rows[t] = run_trial(a, family, bs::derive_seed(a.seed, t)); });

  std::ostringstream os;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    ok += r.success;
    json j{{"trial", t},
           {"family", family},
           {"m", a.m},
           {"n", 2 * a.m},
           {"solver", a.solver},
           {"dual_access", !a.no_dual},
           {"seed", bs::derive_seed(a.seed, t)},
           {"success", r.success},
           {"secret", r.secret},
           {"recovered", r.recovered.empty() ? json(nullptr) : json(r.recovered)},
           {"queries", bs::stats_json(r.queries)}};
    if (a.solver == "a2") j["rounds"] = r.rounds;
    if (!a.no_timing) j["wall_ms"] = r.wall_ms;
    os << j.dump() << '\n';
  }
  write_text(a.out, os.str());
  std::cerr << a.solver << " on " << family << " m=" << a.m << ": " << ok << "/" << rows.size() << " recovered\n";
  return ok == rows.size() ? kOk : kNegative;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string m_range = "1:4";
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  unsigned lo = 0, hi = 0;
  char sep = 0;
  std::istringstream is(s);
  if (!(is >> lo)) throw UsageError("bad --m-range '" + s + "'");
  if (is >> sep) {
    if ((sep != ':' && sep != '-') || !(is >> hi)) throw UsageError("bad --m-range '" + s + "'");
  } else {
    hi = lo;
  }
  if (lo < 1 || hi < lo) throw UsageError("bad --m-range '" + s + "'");
  if (2 * hi > bs::kMaxVariables) throw bs::ResourceError("m-range exceeds n = 26");
  return {lo, hi};
}

struct BenchRow {
  unsigned m;
  std::string solver;
  std::optional<std::uint64_t> budget;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double mean_queries = 0;
  std::uint64_t max_queries = 0;
  std::optional<double> mean_consistent;
};

std::uint64_t oracle_uses(const bs::QueryStats& q) { return q.total(); }

int cmd_bench(const BenchArgs& a) {
  const auto [lo, hi] = parse_range(a.m_range);
  std::vector<BenchRow> rows;

  for (unsigned m = lo; m <= hi; ++m) {
    for (const auto& solver : kSolvers) {
      if (m > solver_max_m(solver)) continue;
      ShiftArgs sa;
      sa.m = m;
      sa.solver = solver;
      const std::string family = solver == "adaptive" ? "mm0" : "mm";
      std::vector<TrialRow> trials(a.trials);
      bs::parallel_for(a.trials, a.threads, [&](std::size_t t) {
        trials[t] = run_trial(sa, family, bs::derive_seed(a.seed + m, t));
      });
      BenchRow row{m, solver, std::nullopt, a.trials, 0, 0.0, 0, std::nullopt};
      double sum = 0;
      for (const auto& t : trials) {
        row.successes += t.success;
        const auto q = oracle_uses(t.queries);
        sum += static_cast<double>(q);
        row.max_queries = std::max(row.max_queries, q);
      }
      row.mean_queries = a.trials ? sum / static_cast<double>(a.trials) : 0.0;
      rows.push_back(row);
    }

    if (m > bs::kMaxCensusHalf) continue;
    const std::uint64_t n = 2 * m;
    const std::set<std::uint64_t> budgets{0, n, std::uint64_t{1} << m, 4 * (std::uint64_t{1} << m), 10 * n * n};
    for (std::uint64_t budget : budgets) {
      std::vector<std::uint64_t> counts(a.trials);
      bs::parallel_for(a.trials, a.threads, [&](std::size_t t) {
        const auto seed = bs::derive_seed(a.seed + 1000 + m, t);
        auto oracle = bs::ShiftOracle::standard(std::make_shared<const bs::HiddenShiftInstance>(bs::census_instance(m, seed)));
        counts[t] = bs::candidate_census(oracle, budget, seed).consistent;
      });
      BenchRow row{m, "census", budget, a.trials, 0, 0.0, 0, std::nullopt};
      double sum = 0;
      for (auto c : counts) sum += static_cast<double>(c);
      row.mean_consistent = a.trials ? sum / static_cast<double>(a.trials) : 0.0;
      row.mean_queries = static_cast<double>(std::min<std::uint64_t>(budget, std::uint64_t{2} << n));
      row.max_queries = std::min<std::uint64_t>(budget, std::uint64_t{2} << n);
      rows.push_back(row);
    }
  }

  // human table
  std::cerr << std::left << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(12) << "solver" << std::setw(8)
            << "budget" << std::setw(10) << "success" << std::setw(14) << "mean_queries" << "consistent\n";
  for (const auto& r : rows) {
    std::cerr << std::setw(4) << r.m << std::setw(4) << 2 * r.m << std::setw(12) << r.solver << std::setw(8)
              << (r.budget ? std::to_string(*r.budget) : "-") << std::setw(10)
              << (r.budget ? std::string("-") : std::to_string(r.successes) + "/" + std::to_string(r.trials))
              << std::setw(14) << r.mean_queries << (r.mean_consistent ? std::to_string(*r.mean_consistent) : "-")
              << '\n';
  }

  const bool csv = std::filesystem::path(a.out).extension() == ".csv";
  std::ostringstream os;
  if (csv) {
    os << "m,n,solver,budget,trials,successes,mean_queries,max_queries,mean_consistent\n";
    for (const auto& r : rows) {
      os << r.m << ',' << 2 * r.m << ',' << r.solver << ',' << (r.budget ? std::to_string(*r.budget) : "") << ','
         << r.trials << ',' << (r.budget ? "" : std::to_string(r.successes)) << ',' << r.mean_queries << ','
         << r.max_queries << ',' << (r.mean_consistent ? std::to_string(*r.mean_consistent) : "") << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json j{{"m", r.m}, {"n", 2 * r.m}, {"solver", r.solver}, {"trials", r.trials},
             {"mean_queries", r.mean_queries}, {"max_queries", r.max_queries}};
      if (r.budget) {
        j["budget"] = *r.budget;
        j["mean_consistent"] = *r.mean_consistent;
      } else {
        j["successes"] = r.successes;
      }
      arr.push_back(j);
    }
    os << json{{"schema", 1}, {"seed", a.seed}, {"rows", arr}}.dump(2) << '\n';
  }
  write_text(a.out, os.str());
  return kOk;
}

// ---------------------------------------------------------------------------

struct ChallengeArgs {
  std::string family = "mm";
  unsigned m = 2;
  std::uint64_t seed = 0;
  std::string dir;
  bool no_secret = false;
};

int cmd_challenge(const ChallengeArgs& a) {
  const unsigned half = resolve_half(a.family, a.m, std::nullopt);
  std::mt19937_64 rng(a.seed);
  const auto family = bs::random_family(a.family, half, rng);
  const auto inst = bs::make_instance(family, rng());
  const auto files = bs::export_instance(inst, a.dir, !a.no_secret);
  std::cerr << "wrote instance to " << a.dir << (a.no_secret ? " (secret withheld)" : "") << '\n';
  (void)files;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bent functions and the hidden shift problem"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a bent function and write its table and descriptor");
  construct->add_option("--family", ca.family, "family")->check(CLI::IsMember(kFamilies));
  construct->add_option("--m", ca.m, "half the variable count");
  construct->add_option("--n", ca.n, "variable count (even)");
  construct->add_option("--seed", ca.seed, "generator seed");
  construct->add_option("--out", ca.out, "truth-table file (stdout JSON when omitted)");
  construct->add_option("--descriptor", ca.descriptor, "descriptor JSON path (default: --out with .json)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "report every bentness predicate for a table file");
  verify->add_option("--in", va.in, "truth-table file")->required();
  verify->add_option("--report", va.report, "report path (default stdout)");

  ShiftArgs sa;
  auto* hidden = app.add_subcommand("hidden-shift", "run a hidden-shift solver on random instances");
  hidden->add_option("--family", sa.family, "family (default mm, or mm0 for adaptive)")
      ->check(CLI::IsMember(kFamilies));
  hidden->add_option("--m", sa.m, "half the variable count");
  hidden->add_option("--solver", sa.solver, "a1 | a2 | adaptive | exhaustive")->check(CLI::IsMember(kSolvers));
  hidden->add_option("--trials", sa.trials, "number of instances");
  hidden->add_option("--seed", sa.seed, "master seed");
  hidden->add_flag("--no-dual", sa.no_dual, "oracle without the dual channel");
  hidden->add_option("--max-rounds", sa.max_rounds, "A2 sampling rounds (default 3(n+1))");
  hidden->add_option("--threads", sa.threads, "worker threads (0 = all cores)");
  hidden->add_flag("--no-timing", sa.no_timing, "omit wall time so output is byte-reproducible");
  hidden->add_option("--out", sa.out, "JSON-lines output (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "query counts per solver and the census curve");
  bench->add_option("--m-range", ba.m_range, "lo:hi");
  bench->add_option("--trials", ba.trials, "instances per cell");
  bench->add_option("--seed", ba.seed, "master seed");
  bench->add_option("--threads", ba.threads, "worker threads (0 = all cores)");
  bench->add_option("--out", ba.out, "output (.csv for CSV, otherwise JSON; default stdout)");

  ChallengeArgs ch;
  auto* challenge = app.add_subcommand("challenge", "export an instance directory");
  challenge->add_option("--family", ch.family, "family")->check(CLI::IsMember(kFamilies));
  challenge->add_option("--m", ch.m, "half the variable count");
  challenge->add_option("--seed", ch.seed, "seed");
  challenge->add_option("--dir", ch.dir, "output directory")->required();
  challenge->add_flag("--no-secret", ch.no_secret, "leave out secret.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(ca);
    if (*verify) return cmd_verify(va);
    if (*hidden) return cmd_hidden_shift(sa);
    if (*bench) return cmd_bench(ba);
    if (*challenge) return cmd_challenge(ch);
  } catch (const bs::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const bs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const bs::AccessDenied& e) {
    std::cerr << "access denied: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const bs::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const bs::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
