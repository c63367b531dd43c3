#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oddweird/classify.hpp"
#include "oddweird/errors.hpp"
#include "oddweird/factored.hpp"
#include "oddweird/oracle.hpp"
#include "oddweird/partition.hpp"
#include "oddweird/primes.hpp"
#include "oddweird/search.hpp"
#include "oddweird/serialize.hpp"

namespace oddweird::cli {

namespace {

namespace fs = std::filesystem;

// Usage errors detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  std::string bound;
  std::string abundance_cap;
  std::string roots;
  std::uint64_t barrier_stride = 1;
  bool no_barrier = false;
  std::uint64_t subset_sum_budget = 0;
  std::size_t sieve_primes = kDefaultSievePrimes;
  bool theorem1 = false;
  bool theorem2 = false;
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
  auto* bound = app->add_option("--bound", f.bound,
                                "Exclusive upper bound, integer or exact scientific (1e9)");
  auto* cap = app->add_option("--abundance-cap", f.abundance_cap,
                              "Only abundant numbers with A(N) <= cap get the subset-sum check");
  app->add_option("--roots", f.roots,
                  "Comma-separated subtree roots (default 3,5 or 3,5,7 by bound); "
                  "'2' searches even numbers, reporting primitive weird numbers");
  app->add_option("--barrier-stride", f.barrier_stride,
                  "Evaluate the deficiency barrier on every k-th child")
      ->check(CLI::PositiveNumber);
  app->add_flag("--no-barrier", f.no_barrier, "Disable barrier pruning (validation only)");
  app->add_option("--subset-sum-budget", f.subset_sum_budget,
                  "Abort when one subset-sum instance needs more nodes (0 = unlimited)");
  app->add_option("--sieve-primes", f.sieve_primes, "Number of sieved primes")
      ->check(CLI::PositiveNumber);
  auto* t1 = app->add_flag("--theorem1", f.theorem1, "Preset: bound 1e21");
  auto* t2 = app->add_flag("--theorem2", f.theorem2, "Preset: bound 1e28, abundance cap 1e14");
  t1->excludes(bound)->excludes(cap)->excludes(t2);
  t2->excludes(bound)->excludes(cap);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Trial division; for command-line inputs only.
FactoredNumber factor_small(std::uint64_t n) {
  std::vector<PrimePower> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.multiplicity;
    }
    factors.push_back(pp);
  }
  if (n > 1) factors.push_back({n, 1});
  return FactoredNumber::from_factors(factors);
}

// Accepts canonical factorizations ("3^2*5") or plain integers below 10^14.
FactoredNumber parse_root(const std::string& text) {
  if (text.find_first_not_of("0123456789") == std::string::npos) {
    Nat v = parse_nat(text);
    if (v < 2u || v > Nat(100'000'000'000'000ull)) {
      throw UsageError("root " + text + " out of range; give its factorization instead");
    }
    return factor_small(to_u64(v));
  }
  return FactoredNumber::parse(text);
}

SearchConfig build_config(const ConfigFlags& f) {
  SearchConfig config;
  if (f.theorem1 || f.theorem2) {
    std::cerr << "warning: the " << (f.theorem1 ? "--theorem1" : "--theorem2")
              << " configuration took roughly " << (f.theorem1 ? "80" : "150")
              << " core-years of volunteer computing; a single machine will not finish it. "
                 "Use split/run-unit to work through it in resumable pieces.\n";
    config.bound = parse_nat(f.theorem1 ? "1e21" : "1e28");
    if (f.theorem2) config.abundance_cap = parse_nat("1e14");
  } else {
    if (f.bound.empty()) throw UsageError("--bound (or --theorem1 / --theorem2) is required");
    config.bound = parse_nat(f.bound);
    if (!f.abundance_cap.empty()) config.abundance_cap = parse_nat(f.abundance_cap);
  }
  if (config.bound <= 1u) throw UsageError("--bound must exceed 1");
  if (f.roots.empty()) {
    config.roots = roots_for_bound(config.bound);
  } else {
    for (const auto& r : split_commas(f.roots)) config.roots.push_back(parse_root(r));
  }
  config.barrier_stride = f.barrier_stride;
  config.barrier_enabled = !f.no_barrier;
  if (f.subset_sum_budget != 0) config.subset_sum_budget = f.subset_sum_budget;
  config.validate();
  return config;
}

int exit_code_for(const SearchReport& r) {
  if (!r.conclusive) return kExitInconclusive;
  return r.weird_found.empty() ? kExitClean : kExitWeirdFound;
}

void print_human_summary(const SearchReport& r) {
  std::cerr << r.nodes_visited << " nodes, " << r.barrier_prunes << " barrier prunes, "
            << r.bound_prunes << " bound prunes, " << r.abundant_found << " abundant ("
            << r.semiperfect_count << " semiperfect, " << r.unchecked_abundant_count
            << " unchecked), " << r.weird_found.size() << " weird";
  for (const auto& w : normalized(r).weird_found) std::cerr << ' ' << w;
  std::cerr << ", " << r.wall_time_seconds << " s, "
            << (r.conclusive ? "conclusive" : "NOT conclusive: " + r.abort_reason) << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so readers never see a partial file.
void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents << '\n';
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Output stream for --out, or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw Error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

fs::path units_path(const fs::path& dir) { return dir / "units"; }
fs::path reports_path(const fs::path& dir) { return dir / "reports"; }

int cmd_search(const ConfigFlags& flags, const std::string& out_path,
               std::uint64_t progress_every, std::uint64_t max_nodes,
               const std::string& checkpoint_path, const std::string& resume_path) {
  const PrimeSource primes(flags.sieve_primes);
  Output out(out_path);
  JsonlSink sink(out.stream());

  std::optional<Searcher> searcher;
  if (!resume_path.empty()) {
    searcher.emplace(Searcher::resume(read_file(resume_path), primes, &sink));
  } else {
    SearchConfig config = build_config(flags);
    config.progress_every = progress_every;
    searcher.emplace(std::move(config), primes, &sink);
  }

  const bool done =
      searcher->run(max_nodes ? std::optional<std::uint64_t>(max_nodes) : std::nullopt);
  if (!done && !checkpoint_path.empty()) {
    write_file_atomic(checkpoint_path, searcher->checkpoint());
    std::cerr << "checkpoint written to " << checkpoint_path << '\n';
  }
  const SearchReport report = searcher->report();
  sink.summary(report);
  print_human_summary(report);
  return exit_code_for(report);
}

int cmd_split(const ConfigFlags& flags, std::uint32_t depth, const fs::path& dir) {
  const SearchConfig config = build_config(flags);
  const PrimeSource primes(flags.sieve_primes);
  SplitResult result = split(config, depth, primes);
  fs::create_directories(units_path(dir));
  fs::create_directories(reports_path(dir));
  for (const auto& unit : result.units) {
    write_file_atomic(units_path(dir) / (unit.id + ".json"), unit_to_json(unit));
  }
  write_file_atomic(reports_path(dir) / (std::string(kFrontierUnitId) + ".json"),
                    unit_report_to_json(result.frontier));
  std::cerr << "split into " << result.units.size() << " unit(s) at depth " << depth
            << "; frontier: ";
  print_human_summary(result.frontier.report);
  return result.frontier.status == UnitStatus::kComplete ? kExitClean : kExitInconclusive;
}

int cmd_run_units(const fs::path& dir, std::vector<std::string> ids, std::size_t sieve_primes,
                  unsigned workers, unsigned redundancy, bool force) {
  if (!fs::is_directory(units_path(dir))) {
    throw UsageError(units_path(dir).string() + " not found; run split first");
  }
  const bool explicit_ids = !ids.empty();
  if (!explicit_ids) {
    for (const auto& entry : fs::directory_iterator(units_path(dir))) {
      if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
  }
  fs::create_directories(reports_path(dir));

  std::vector<std::string> todo;
  for (const auto& id : ids) {
    const fs::path report = reports_path(dir) / (id + ".json");
    if (!explicit_ids && !force && fs::exists(report) &&
        unit_report_from_json(read_file(report)).status == UnitStatus::kComplete) {
      continue;
    }
    todo.push_back(id);
  }

  const PrimeSource primes(sieve_primes);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> aborted{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      const std::string& id = todo[i];
      UnitReport result;
      try {
        const WorkUnit unit = unit_from_json(read_file(units_path(dir) / (id + ".json")));
        result = run_unit(unit, primes);
        for (unsigned r = 1; r < redundancy && result.status == UnitStatus::kComplete; ++r) {
          const UnitReport again = run_unit(unit, primes);
          if (!equivalent(again.report, result.report)) {
            result.status = UnitStatus::kAborted;
            result.report.conclusive = false;
            result.report.abort_reason = "redundant executions disagree";
          }
        }
      } catch (const std::exception& e) {
        result.unit_id = id;
        result.status = UnitStatus::kAborted;
        result.report.conclusive = false;
        result.report.abort_reason = e.what();
      }
      write_file_atomic(reports_path(dir) / (id + ".json"), unit_report_to_json(result));
      if (result.status != UnitStatus::kComplete) ++aborted;
      std::lock_guard lock(log_mutex);
      std::cerr << "unit " << id << ": "
                << (result.status == UnitStatus::kComplete ? "complete" : "ABORTED") << ", "
                << result.report.nodes_visited << " nodes, " << result.report.weird_found.size()
                << " weird\n";
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(workers, todo.size()));
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::cerr << todo.size() << " unit(s) run, " << aborted << " aborted\n";
  return aborted == 0 ? kExitClean : kExitInconclusive;
}

int cmd_merge(const fs::path& dir, const std::string& out_path) {
  const fs::path frontier_file = reports_path(dir) / (std::string(kFrontierUnitId) + ".json");
  if (!fs::exists(frontier_file)) throw UsageError(frontier_file.string() + " not found");
  const UnitReport frontier = unit_report_from_json(read_file(frontier_file));
  std::vector<UnitReport> reports;
  for (const auto& entry : fs::directory_iterator(reports_path(dir))) {
    if (entry.path().extension() != ".json" || entry.path() == frontier_file) continue;
    reports.push_back(unit_report_from_json(read_file(entry.path())));
  }
  std::sort(reports.begin(), reports.end(),
            [](const UnitReport& a, const UnitReport& b) { return a.unit_id < b.unit_id; });
  const SearchReport merged = merge(reports, frontier);
  Output out(out_path);
  JsonlSink(out.stream()).summary(merged);
  print_human_summary(merged);
  return exit_code_for(merged);
}

int cmd_verify(std::optional<std::uint64_t> number, std::vector<std::uint64_t> range) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  if (number) {
    lo = hi = *number;
  } else if (range.size() == 2) {
    lo = range[0];
    hi = range[1];
  } else {
    throw UsageError("verify needs --number N or --range LO HI");
  }
  if (lo < 1 || hi > kOracleMax || lo > hi) {
    throw UsageError("verify supports 1 <= LO <= HI <= " + std::to_string(kOracleMax));
  }
  std::uint64_t mismatches = 0;
  std::uint64_t abundant = 0;
  std::uint64_t weird = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const FactoredNumber f = n == 1 ? FactoredNumber{} : factor_small(n);
    const Classification fast = classify(f);
    const Classification slow = oracle_classify(n);
    const bool mismatch = fast != slow;
    if (fast == Classification::kSemiperfect || fast == Classification::kWeird) ++abundant;
    if (fast == Classification::kWeird) ++weird;
    if (mismatch) ++mismatches;
    if (number || mismatch || fast != Classification::kDeficient) {
      std::cout << n << ' ' << f.to_string() << ' ' << to_string(fast) << ' ' << to_string(slow)
                << (mismatch ? " MISMATCH" : "") << '\n';
    }
  }
  std::cerr << "verified [" << lo << ", " << hi << "]: " << abundant << " abundant, " << weird
            << " weird, " << mismatches << " mismatch(es)\n";
  return mismatches == 0 ? kExitClean : kExitInconclusive;
}

int cmd_bench(const ConfigFlags& flags, unsigned repeat) {
  const auto t0 = std::chrono::steady_clock::now();
  const PrimeSource primes(flags.sieve_primes);
  const double sieve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const SearchConfig config = build_config(flags);
  double best = 0;
  SearchReport report;
  for (unsigned i = 0; i < repeat; ++i) {
    report = search(config, primes);
    if (i == 0 || report.wall_time_seconds < best) best = report.wall_time_seconds;
  }
  std::cout << "{\"bound\":\"" << to_string(config.bound) << "\",\"nodes_visited\":"
            << report.nodes_visited << ",\"abundant_found\":" << report.abundant_found
            << ",\"sieve_seconds\":" << sieve_seconds << ",\"best_seconds\":" << best
            << ",\"nodes_per_second\":" << (best > 0 ? report.nodes_visited / best : 0.0)
            << "}\n";
  print_human_summary(report);
  return exit_code_for(report);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Exhaustive search for odd weird numbers over the factorization tree"};
  app.require_subcommand(1);

  ConfigFlags search_flags;
  std::string search_out;
  std::uint64_t progress_every = 1'000'000;
  std::uint64_t max_nodes = 0;
  std::string checkpoint_path;
  std::string resume_path;
  auto* search_cmd = app.add_subcommand("search", "Run a full search");
  add_config_flags(search_cmd, search_flags);
  search_cmd->add_option("--out", search_out, "Write JSONL events here instead of stdout");
  search_cmd->add_option("--progress-every", progress_every,
                         "Progress event interval in nodes (0 disables)");
  search_cmd->add_option("--max-nodes", max_nodes, "Stop after visiting this many nodes");
  search_cmd->add_option("--checkpoint", checkpoint_path,
                         "Write resumable state here when stopped by --max-nodes");
  search_cmd->add_option("--resume", resume_path, "Continue from a checkpoint file")
      ->check(CLI::ExistingFile);

  ConfigFlags split_flags;
  std::uint32_t frontier_depth = 0;
  std::string split_dir;
  auto* split_cmd = app.add_subcommand("split", "Cut the search tree into work units");
  add_config_flags(split_cmd, split_flags);
  split_cmd->add_option("--frontier-depth", frontier_depth,
                        "Prime factors (with multiplicity) at which subtrees become units")
      ->required()
      ->check(CLI::PositiveNumber);
  split_cmd->add_option("--units-dir", split_dir, "Output directory")->required();

  std::string run_dir;
  std::vector<std::string> run_ids;
  std::size_t run_sieve = kDefaultSievePrimes;
  unsigned workers = 1;
  unsigned redundancy = 1;
  bool force = false;
  auto* run_cmd = app.add_subcommand("run-unit", "Run work units, writing one report each");
  run_cmd->add_option("--units-dir", run_dir, "Directory written by split")->required();
  run_cmd->add_option("ids", run_ids, "Unit ids to (re)run; default: all without a report");
  run_cmd->add_option("--sieve-primes", run_sieve, "Number of sieved primes")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--workers", workers, "Concurrent units")->check(CLI::PositiveNumber);
  run_cmd->add_option("--redundancy", redundancy,
                      "Execute each unit this many times and require identical reports")
      ->check(CLI::Range(1u, 16u));
  run_cmd->add_flag("--force", force, "Re-run units that already have a complete report");

  std::string merge_dir;
  std::string merge_out;
  auto* merge_cmd = app.add_subcommand("merge", "Merge unit reports into one summary");
  merge_cmd->add_option("--units-dir", merge_dir, "Directory written by split")->required();
  merge_cmd->add_option("--out", merge_out, "Write the summary here instead of stdout");

  std::optional<std::uint64_t> verify_number;
  std::vector<std::uint64_t> verify_range;
  auto* verify_cmd =
      app.add_subcommand("verify", "Cross-check classify against the brute-force oracle");
  auto* number_opt = verify_cmd->add_option("--number", verify_number, "A single number");
  auto* range_opt =
      verify_cmd->add_option("--range", verify_range, "Inclusive range LO HI")->expected(2);
  number_opt->excludes(range_opt);

  ConfigFlags bench_flags;
  bench_flags.bound = "1e7";
  unsigned repeat = 3;
  auto* bench_cmd = app.add_subcommand("bench", "Time a search without event output");
  add_config_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--repeat", repeat, "Runs; the fastest is reported")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (*search_cmd) {
      return cmd_search(search_flags, search_out, progress_every, max_nodes, checkpoint_path,
                        resume_path);
    }
    if (*split_cmd) return cmd_split(split_flags, frontier_depth, split_dir);
    if (*run_cmd) return cmd_run_units(run_dir, run_ids, run_sieve, workers, redundancy, force);
    if (*merge_cmd) return cmd_merge(merge_dir, merge_out);
    if (*verify_cmd) return cmd_verify(verify_number, verify_range);
    if (*bench_cmd) return cmd_bench(bench_flags, repeat);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedBound& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInconclusive;
  }
  return kExitUsage;
}

}  // namespace oddweird::cli
