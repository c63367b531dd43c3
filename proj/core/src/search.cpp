#include "oddweird/search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "oddweird/errors.hpp"
#include "json_internal.hpp"
#include "oddweird/serialize.hpp"

namespace oddweird {

namespace {

// 2.01e25 and 4.90e52.
const Nat& seven_threshold() {
  static const Nat v = parse_nat("2.01e25");
  return v;
}

const Nat& max_auto_bound() {
  static const Nat v = parse_nat("4.90e52");
  return v;
}

// k* is the largest k with p^k <= limit, where limit = (M - 1) / N, i.e.
// the largest k with N p^k < M.
bool barrier_holds(const FactoredNumber& n, std::uint64_t p, const Nat& limit) {
  Nat power = 1;
  Nat power_minus_one = 1;
  if (fits_u64(limit)) {
    const std::uint64_t lim = to_u64(limit);
    unsigned __int128 pk = 1;
    while (pk * p <= lim) {
      pk *= p;
      power *= p;
      power_minus_one *= p - 1;
    }
  } else {
    while (power * p <= limit) {
      power *= p;
      power_minus_one *= p - 1;
    }
  }
  return n.sigma() * power < 2 * n.value() * power_minus_one;
}

}  // namespace

void SearchConfig::validate() const {
  if (bound <= 1u) throw InvalidInput("bound must exceed 1");
  if (barrier_stride == 0) throw InvalidInput("barrier stride must be positive");
  if (roots.empty()) throw InvalidInput("at least one root is required");
  for (const auto& r : roots) {
    if (r.is_one()) throw InvalidInput("root 1 is not allowed; use prime roots");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i != j && is_tree_ancestor(roots[i], roots[j])) {
        throw InvalidInput("roots " + roots[i].to_string() + " and " + roots[j].to_string() +
                           " overlap");
      }
    }
  }
}

std::vector<FactoredNumber> roots_for_bound(const Nat& bound) {
  if (bound <= 1u) throw InvalidInput("bound must exceed 1");
  if (bound >= max_auto_bound()) {
    throw UnsupportedBound("bound " + to_string(bound) +
                           " is not below 4.90e52; roots {3, 5, 7} no longer cover every "
                           "odd abundant number");
  }
  std::vector<FactoredNumber> roots;
  for (std::uint64_t p : {3u, 5u, 7u}) {
    if (p == 7 && bound <= seven_threshold()) break;
    const PrimePower pp{p, 1};
    roots.push_back(FactoredNumber::from_factors({&pp, 1}));
  }
  return roots;
}

SearchConfig make_config(const Nat& bound) {
  SearchConfig config;
  config.bound = bound;
  config.roots = roots_for_bound(bound);
  return config;
}

bool check_barrier(const FactoredNumber& n, const Nat& bound) {
  if (n.is_one() || n.value() >= bound) {
    throw ContractViolation("check_barrier needs 1 < n < bound, got n = " + n.to_string());
  }
  try {
    return barrier_holds(n, n.largest_prime(), (bound - 1u) / n.value());
  } catch (const std::overflow_error&) {
    throw OverflowError("overflow in barrier check for " + n.to_string());
  }
}

SearchReport normalized(SearchReport report) {
  std::vector<std::pair<Nat, std::string>> keyed;
  for (auto& s : report.weird_found) keyed.emplace_back(FactoredNumber::parse(s).value(), s);
  std::sort(keyed.begin(), keyed.end());
  report.weird_found.clear();
  for (auto& [v, s] : keyed) report.weird_found.push_back(std::move(s));
  return report;
}

bool equivalent(const SearchReport& a, const SearchReport& b) {
  SearchReport x = normalized(a);
  SearchReport y = normalized(b);
  return x.nodes_visited == y.nodes_visited && x.barrier_prunes == y.barrier_prunes &&
         x.bound_prunes == y.bound_prunes && x.abundant_found == y.abundant_found &&
         x.semiperfect_count == y.semiperfect_count &&
         x.unchecked_abundant_count == y.unchecked_abundant_count &&
         x.weird_found == y.weird_found && x.config_echo == y.config_echo &&
         x.conclusive == y.conclusive && x.abort_reason == y.abort_reason;
}

Searcher::Searcher(SearchConfig config, const PrimeSource& primes, EventSink* sink)
    : config_(std::move(config)), primes_(&primes), sink_(sink) {
  config_.validate();
  bound_minus_one_ = config_.bound - 1u;
  report_.config_echo = config_to_json(config_);
}

void Searcher::set_frontier(std::uint32_t depth,
                            std::function<void(const FactoredNumber&)> emit) {
  frontier_depth_ = depth;
  emit_frontier_ = std::move(emit);
}

SearchReport Searcher::report() const {
  SearchReport r = report_;
  if (!finished_ && r.conclusive) {
    r.conclusive = false;
    r.abort_reason = "search interrupted before completion";
  }
  return r;
}

Searcher::Frame& Searcher::slot(std::size_t i) {
  if (stack_.size() <= i) stack_.resize(i + 1);
  return stack_[i];
}

void Searcher::set_limit(Frame& frame) const {
  frame.limit = bound_minus_one_ / frame.node.value();
  frame.limit_u64 = saturate_u64(frame.limit);
}

bool Searcher::run(std::optional<std::uint64_t> node_limit) {
  if (finished_) return true;
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t stop_at =
      node_limit ? report_.nodes_visited + *node_limit : kU64Max;
  try {
    while (report_.nodes_visited < stop_at) {
      if (depth_ > 0) {
        step();
        continue;
      }
      if (next_root_ == config_.roots.size()) {
        finished_ = true;
        break;
      }
      start_root(config_.roots[next_root_++]);
    }
  } catch (const std::overflow_error& e) {
    finished_ = true;
    report_.conclusive = false;
    report_.abort_reason = std::string("exact arithmetic overflow: ") + e.what();
  } catch (const std::exception& e) {
    finished_ = true;
    report_.conclusive = false;
    report_.abort_reason = e.what();
  }
  report_.wall_time_seconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return finished_;
}

void Searcher::start_root(const FactoredNumber& root) {
  if (root.value() > bound_minus_one_) return;
  Frame& f = slot(0);
  f.node = root;
  set_limit(f);
  enter(0);
}

void Searcher::enter(std::size_t i) {
  Frame& f = stack_[i];
  const bool abundant = f.node.is_abundant();
  if (!abundant && frontier_depth_ && f.node.total_multiplicity() >= *frontier_depth_) {
    emit_frontier_(f.node);
    return;
  }
  ++report_.nodes_visited;
  if (sink_ && config_.progress_every != 0 &&
      report_.nodes_visited % config_.progress_every == 0) {
    sink_->progress({report_.nodes_visited, f.node.to_string()});
  }
  if (abundant) {
    // Descendants of an abundant number are never the smallest weird one.
    on_abundant(f.node);
    return;
  }
  // Children N p for primes p >= p*, in increasing order.
  f.next_prime = f.node.is_one() ? 2 : f.node.largest_prime();
  f.child_index = 0;
  f.exhausted = false;
  depth_ = i + 1;
}

void Searcher::advance(Frame& f) {
  if (f.next_prime >= f.limit_u64) {
    f.exhausted = true;
    return;
  }
  try {
    std::uint64_t q = primes_->next_prime(f.next_prime);
    if (q > config_.prime_hard_cap) {
      throw PrimeRangeExhausted("prime " + std::to_string(q) + " exceeds hard cap " +
                                std::to_string(config_.prime_hard_cap));
    }
    f.next_prime = q;
  } catch (const PrimeRangeExhausted&) {
    // Harmless when the bound would have stopped this node anyway.
    const std::uint64_t cap = std::min(config_.prime_hard_cap, primes_->hard_cap());
    if (f.limit <= cap) {
      f.exhausted = true;
      return;
    }
    throw;
  }
}

void Searcher::step() {
  const std::size_t parent_index = depth_ - 1;
  Frame& child = slot(depth_);
  Frame& parent = stack_[parent_index];

  if (parent.exhausted || parent.next_prime > parent.limit_u64) {
    ++report_.bound_prunes;
    --depth_;
    return;
  }
  const std::uint64_t p = parent.next_prime;
  ++parent.child_index;
  child.node = parent.node;
  child.node.push_prime(p);
  set_limit(child);

  if (config_.barrier_enabled && (parent.child_index - 1) % config_.barrier_stride == 0 &&
      barrier_holds(child.node, p, child.limit)) {
    ++report_.barrier_prunes;
    // The barrier is monotone in p only for p > p*. N p* gains less than
    // N p' from its new factor (p' the next prime), so a hit on N p* clears
    // just that subtree: N = 10, M = 100 holds at 50 yet 70 is abundant.
    if (p == parent.node.largest_prime()) {
      advance(parent);
    } else {
      --depth_;
    }
    return;
  }
  advance(parent);
  enter(depth_);
}

void Searcher::on_abundant(const FactoredNumber& node) {
  ++report_.abundant_found;
  const Classification c = classify(node, config_.abundance_cap, config_.subset_sum_budget);
  switch (c) {
    case Classification::kSemiperfect:
      ++report_.semiperfect_count;
      break;
    case Classification::kUncheckedAbundant:
      ++report_.unchecked_abundant_count;
      break;
    case Classification::kWeird:
      report_.weird_found.push_back(node.to_string());
      if (sink_) {
        sink_->weird({node.to_string(), node.value(), node.sigma() - 2 * node.value()});
      }
      break;
    default:
      throw ContractViolation("abundant node " + node.to_string() + " classified as " +
                              std::string(to_string(c)));
  }
  if (sink_) sink_->abundant({node.to_string(), c});
}

std::string Searcher::checkpoint() const {
  if (frontier_depth_) throw ContractViolation("a splitting search cannot be checkpointed");
  detail::json j;
  j["format"] = "oddweird-checkpoint/1";
  j["config"] = detail::config_json(config_);
  j["progress_every"] = config_.progress_every;
  j["report"] = detail::report_json(report_);
  // Keep discovery order, which the summary form does not.
  j["report"]["weird_found"] = report_.weird_found;
  j["finished"] = finished_;
  j["next_root"] = next_root_;
  detail::json frames = detail::json::array();
  for (std::size_t i = 0; i < depth_; ++i) {
    const Frame& f = stack_[i];
    frames.push_back({{"node", f.node.to_string()},
                      {"next_prime", std::to_string(f.next_prime)},
                      {"child_index", f.child_index},
                      {"exhausted", f.exhausted}});
  }
  j["stack"] = std::move(frames);
  return j.dump();
}

Searcher Searcher::resume(std::string_view checkpoint_json, const PrimeSource& primes,
                          EventSink* sink) {
  using detail::field;
  const detail::json j = detail::parse_json(checkpoint_json);
  if (field<std::string>(j, "format") != "oddweird-checkpoint/1") {
    throw InvalidInput("not an oddweird checkpoint");
  }
  SearchConfig config = detail::config_from(j.at("config"));
  config.progress_every = field<std::uint64_t>(j, "progress_every");
  Searcher s(std::move(config), primes, sink);
  SearchReport saved = detail::report_from(j.at("report"));
  saved.config_echo = s.report_.config_echo;
  s.report_ = std::move(saved);
  s.finished_ = field<bool>(j, "finished");
  s.next_root_ = field<std::size_t>(j, "next_root");
  if (s.next_root_ > s.config_.roots.size()) throw InvalidInput("checkpoint root index out of range");
  for (const auto& fj : field<detail::json>(j, "stack")) {
    Frame& f = s.slot(s.depth_++);
    f.node = FactoredNumber::parse(field<std::string>(fj, "node"));
    s.set_limit(f);
    Nat p = parse_nat(field<std::string>(fj, "next_prime"));
    if (!fits_u64(p)) throw InvalidInput("checkpoint prime out of range");
    f.next_prime = to_u64(p);
    f.child_index = field<std::uint64_t>(fj, "child_index");
    f.exhausted = field<bool>(fj, "exhausted");
  }
  return s;
}

SearchReport search(const SearchConfig& config, const PrimeSource& primes, EventSink& sink) {
  Searcher searcher(config, primes, &sink);
  searcher.run();
  SearchReport report = searcher.report();
  sink.summary(report);
  return report;
}

SearchReport search(const SearchConfig& config, const PrimeSource& primes) {
  EventSink none;
  return search(config, primes, none);
}

}  // namespace oddweird
