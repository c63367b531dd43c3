#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oddweird/classify.hpp"
#include "oddweird/factored.hpp"
#include "oddweird/nat.hpp"
#include "oddweird/primes.hpp"

namespace oddweird {

struct SearchConfig {
  // Exclusive upper bound M on the values searched.
  Nat bound = 2;
  // When set, abundant nodes with A(N) above the cap are counted as
  // unchecked instead of being run through subset sum.
  std::optional<Nat> abundance_cap;
  std::vector<FactoredNumber> roots;
  // The barrier is evaluated on children 1, k+1, 2k+1, ... of every node.
  std::uint64_t barrier_stride = 1;
  std::uint64_t prime_hard_cap = kU64Max;
  // Off replaces the barrier by constant false (pruning-neutrality checks).
  bool barrier_enabled = true;
  NodeBudget subset_sum_budget;
  // Emit a progress event every this many visited nodes; 0 disables.
  std::uint64_t progress_every = 1'000'000;

  // Throws InvalidInput / UnsupportedBound on a malformed configuration.
  void validate() const;
};

// Roots {3, 5}, plus 7 once M exceeds 2.01e25 (the smallest odd abundant
// number prime to 15 lies below that). Throws UnsupportedBound for
// M >= 4.90e52, past which numbers prime to 105 would need roots too, and
// InvalidInput for M <= 1.
std::vector<FactoredNumber> roots_for_bound(const Nat& bound);

// Config with roots_for_bound(bound).
SearchConfig make_config(const Nat& bound);

struct SearchReport {
  std::uint64_t nodes_visited = 0;
  std::uint64_t barrier_prunes = 0;
  std::uint64_t bound_prunes = 0;
  std::uint64_t abundant_found = 0;
  std::uint64_t semiperfect_count = 0;
  std::uint64_t unchecked_abundant_count = 0;
  // Canonical factorizations, in depth-first discovery order.
  std::vector<std::string> weird_found;
  // Canonical JSON of the configuration that produced the report.
  std::string config_echo;
  double wall_time_seconds = 0;
  // False when the run stopped early or failed; its weird_found is then
  // not a complete answer.
  bool conclusive = true;
  std::string abort_reason;
};

// weird_found sorted ascending by value.
SearchReport normalized(SearchReport report);

// Field-by-field equality except wall time and weird_found order.
bool equivalent(const SearchReport& a, const SearchReport& b);

struct WeirdEvent {
  std::string factorization;
  Nat value;
  Nat abundance;
};

struct AbundantEvent {
  std::string factorization;
  Classification classification;
};

struct ProgressEvent {
  std::uint64_t nodes_visited;
  std::string current_path;
};

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void weird(const WeirdEvent&) {}
  virtual void abundant(const AbundantEvent&) {}
  virtual void progress(const ProgressEvent&) {}
  virtual void summary(const SearchReport&) {}
};

// True when every descendant of n below `bound` (n itself included) is
// deficient: with p* the largest prime of n and k* the largest k such that
// n * p*^k < bound, checks sigma(n) p*^k* < 2 n (p* - 1)^k* exactly.
// Preconditions: 1 < n.value() < bound.
bool check_barrier(const FactoredNumber& n, const Nat& bound);

// Depth-first search over the factorization tree, one root at a time, with
// an explicit stack so it can stop and resume.
class Searcher {
 public:
  Searcher(SearchConfig config, const PrimeSource& primes, EventSink* sink = nullptr);

  // Runs until the search completes, fails, or `node_limit` more nodes have
  // been visited. Returns true once no work is left (complete or aborted).
  bool run(std::optional<std::uint64_t> node_limit = {});

  bool finished() const { return finished_; }
  // Report so far; conclusive only after a successful complete run.
  SearchReport report() const;
  const SearchConfig& config() const { return config_; }

  // Non-abundant nodes whose depth reaches `depth` are handed to `emit`
  // instead of being expanded or counted.
  void set_frontier(std::uint32_t depth, std::function<void(const FactoredNumber&)> emit);

  // Serialized search state (JSON); resume() continues from it.
  std::string checkpoint() const;
  static Searcher resume(std::string_view checkpoint_json, const PrimeSource& primes,
                         EventSink* sink = nullptr);

 private:
  struct Frame {
    FactoredNumber node;
    Nat limit;                      // (bound - 1) / node.value()
    std::uint64_t limit_u64 = 0;    // limit, saturated
    std::uint64_t next_prime = 0;   // next child is node * next_prime
    std::uint64_t child_index = 0;  // children generated so far
    bool exhausted = false;         // no child prime is left below the bound
  };

  void start_root(const FactoredNumber& root);
  void step();
  // Visits the node in stack_[slot]; pushes it when it has to be expanded.
  void enter(std::size_t slot);
  void set_limit(Frame& frame) const;
  void advance(Frame& frame);
  void on_abundant(const FactoredNumber& node);
  Frame& slot(std::size_t i);

  SearchConfig config_;
  const PrimeSource* primes_;
  EventSink* sink_;
  Nat bound_minus_one_;

  std::vector<Frame> stack_;
  std::size_t depth_ = 0;
  std::size_t next_root_ = 0;
  bool finished_ = false;
  SearchReport report_;

  std::optional<std::uint32_t> frontier_depth_;
  std::function<void(const FactoredNumber&)> emit_frontier_;
};

// Runs the whole search and emits a final summary event.
SearchReport search(const SearchConfig& config, const PrimeSource& primes, EventSink& sink);
SearchReport search(const SearchConfig& config, const PrimeSource& primes);

}  // namespace oddweird
