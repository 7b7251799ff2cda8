#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ivt/detail/word_enum.hpp"
#include "ivt/digit_codec.hpp"
#include "ivt/error.hpp"
#include "ivt/ivt_core.hpp"
#include "ivt/rule_table.hpp"

namespace ivt {

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

/// Trajectory of x0 up to its first repetition, split into the pre-periodic
/// part and the cycle it falls into.
struct OrbitRecord {
  Value start;
  std::vector<Value> transient;  // starts at x0 when x0 is not on the cycle
  std::vector<Value> cycle;      // apply(cycle.back()) == cycle.front()

  std::size_t steps_to_cycle() const noexcept { return transient.size(); }
  std::size_t cycle_length() const noexcept { return cycle.size(); }

  /// The orbit as a set, sorted ascending.
  std::vector<Value> visited() const {
    std::vector<Value> out = transient;
    out.insert(out.end(), cycle.begin(), cycle.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const Value& v) const {
    return std::find(transient.begin(), transient.end(), v) != transient.end() ||
           std::find(cycle.begin(), cycle.end(), v) != cycle.end();
  }
};

/// As orbit(), but returns nullopt instead of throwing when more than
/// max_steps applications would be needed.
inline std::optional<OrbitRecord> try_orbit(const IvtSystem& sys, const Value& x0,
                                            std::uint64_t max_steps) {
  std::unordered_map<Value, std::size_t> index;
  std::vector<Value> path;
  Value x = x0;
  for (;;) {
    auto [it, inserted] = index.emplace(x, path.size());
    if (!inserted) {
      const auto split = static_cast<std::ptrdiff_t>(it->second);
      OrbitRecord rec;
      rec.start = x0;
      rec.transient.assign(path.begin(), path.begin() + split);
      rec.cycle.assign(path.begin() + split, path.end());
      return rec;
    }
    path.push_back(x);
    if (path.size() > max_steps) return std::nullopt;
    x = sys.apply(x);
  }
}

inline OrbitRecord orbit(const IvtSystem& sys, const Value& x0, std::uint64_t max_steps) {
  sys.word_of(x0);  // domain check
  auto rec = try_orbit(sys, x0, max_steps);
  if (!rec) {
    throw Error(ErrorCode::StepBudgetExceeded,
                "orbit of " + to_string(x0) + " did not close within " +
                    std::to_string(max_steps) + " steps");
  }
  return *std::move(rec);
}

// ---------------------------------------------------------------------------
// Fixed and periodic points
// ---------------------------------------------------------------------------

/// All x <= bound with apply(x) = x, enumerated from the digit characterization:
/// x is fixed iff every digit of its word is a fixed digit of f.
inline std::vector<Value> fixed_points(const IvtSystem& sys, const Value& bound) {
  const Radix p = sys.radix();
  const std::vector<Digit> fixed = sys.table().fixed_digits();
  std::vector<Value> out;
  auto collect = [&](const Value& v) { out.push_back(v); };

  if (auto k = sys.width()) {
    std::vector<std::vector<Digit>> choices(*k, fixed);
    const Value top = power(p, *k) - 1;
    detail::for_each_word_value(p, choices, std::min(bound, top), collect);
    return out;
  }

  // Canonical words: [0] on its own, then lengths 1, 2, ... with a nonzero lead.
  if (!fixed.empty() && fixed.front() == 0) out.push_back(0);
  std::vector<Digit> leading;
  std::copy_if(fixed.begin(), fixed.end(), std::back_inserter(leading),
               [](Digit d) { return d != 0; });
  if (leading.empty()) return out;
  const std::size_t max_len = digit_length(bound, p);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Digit>> choices(len, fixed);
    choices.front() = leading;
    detail::for_each_word_value(p, choices, bound, collect);
  }
  return out;
}

struct PeriodicPoint {
  Value value;
  std::uint64_t period;  // least period
  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

/// Periodic points of F on width-k words: exactly the words whose digits all
/// lie on cycles of f. The least period is the lcm of those digit cycles.
inline std::vector<PeriodicPoint> periodic_points(Radix p, RuleIndex j, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "width must be positive");
  const DigitGraph g = digit_graph(p, j);
  std::vector<Digit> cyclic;
  for (unsigned d = 0; d < p.value(); ++d)
    if (g.on_cycle(static_cast<Digit>(d))) cyclic.push_back(static_cast<Digit>(d));

  std::vector<PeriodicPoint> out;
  std::vector<std::vector<Digit>> choices(k, cyclic);
  detail::for_each_word_value(p, choices, power(p, k) - 1, [&](const Value& v) {
    const DigitWord w = pad(encode(v, p), k);
    std::uint64_t period = 1;
    for (Digit d : w.digits()) period = std::lcm(period, std::uint64_t{g.cycle_length[d]});
    out.push_back({v, period});
  });
  return out;
}

/// Multiset of cycle lengths of the functional graph on the whole
/// fixed-width state space, sorted ascending.
inline std::vector<std::size_t> cycle_lengths(const IvtSystem& sys) {
  auto size = sys.state_space_size();
  if (!size) {
    throw Error(ErrorCode::SemanticsMismatch, "cycle census needs a finite fixed-width state space");
  }
  if (*size > (Value(1) << 24)) {
    throw Error(ErrorCode::InvalidArgument, "state space too large to enumerate");
  }
  const auto n = size->convert_to<std::size_t>();
  std::vector<std::size_t> next(n);
  for (std::size_t x = 0; x < n; ++x) next[x] = sys.apply(Value(x)).convert_to<std::size_t>();

  // 0 = unvisited, 1 = on the current walk, 2 = finished.
  std::vector<std::uint8_t> state(n, 0);
  std::vector<std::size_t> lengths;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t x = s;
    std::vector<std::size_t> walk;
    while (state[x] == 0) {
      state[x] = 1;
      walk.push_back(x);
      x = next[x];
    }
    if (state[x] == 1) {
      std::size_t len = 1;
      for (std::size_t y = next[x]; y != x; y = next[y]) ++len;
      lengths.push_back(len);
    }
    for (std::size_t y : walk) state[y] = 2;
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// ---------------------------------------------------------------------------
// Collatz-like classification
// ---------------------------------------------------------------------------

enum class CollatzPredicate {
  ReachesZero,              // the orbit contains 0
  ReachesFixedPointAnyC,    // the orbit ends in some fixed point
  ReachesFixedPointCommonC  // every orbit ends in the same fixed point
};

inline constexpr std::array<CollatzPredicate, 3> all_predicates{
    CollatzPredicate::ReachesZero, CollatzPredicate::ReachesFixedPointAnyC,
    CollatzPredicate::ReachesFixedPointCommonC};

constexpr std::string_view to_string(CollatzPredicate pred) noexcept {
  switch (pred) {
    case CollatzPredicate::ReachesZero: return "reaches_zero";
    case CollatzPredicate::ReachesFixedPointAnyC: return "reaches_fixed_point_any_c";
    case CollatzPredicate::ReachesFixedPointCommonC: return "reaches_fixed_point_common_c";
  }
  return "unknown";
}

struct CollatzVerdict {
  CollatzPredicate predicate = CollatzPredicate::ReachesZero;
  bool holds = true;
  std::optional<Value> witness;                // least failing x0
  std::optional<OrbitRecord> witness_orbit;    // empty if the step budget ran out
  std::optional<Value> common_fixed_point;     // ReachesFixedPointCommonC only
};

namespace detail {

inline void require_trimmed(const IvtSystem& sys, std::string_view what) {
  if (sys.is_fixed_width()) {
    throw Error(ErrorCode::SemanticsMismatch, std::string(what) + " requires trimmed semantics");
  }
}

/// Scans x0 = 0..bound once, evaluating every requested predicate and
/// stopping as soon as all of them have failed.
inline std::vector<CollatzVerdict> scan_predicates(const IvtSystem& sys, const Value& bound,
                                                   std::uint64_t max_steps,
                                                   std::span<const CollatzPredicate> preds) {
  std::vector<CollatzVerdict> verdicts;
  for (auto pred : preds) {
    verdicts.emplace_back();
    verdicts.back().predicate = pred;
  }
  std::optional<Value> shared;
  bool shared_broken = false;
  std::size_t open = verdicts.size();

  for (Value x0 = 0; x0 <= bound && open > 0; ++x0) {
    const auto rec = try_orbit(sys, x0, max_steps);
    const bool ends_fixed = rec && rec->cycle_length() == 1;
    if (ends_fixed && !shared_broken && !shared) shared = rec->cycle.front();
    const bool same_fixed = ends_fixed && shared && *shared == rec->cycle.front();
    if (!same_fixed) shared_broken = true;

    for (auto& v : verdicts) {
      if (!v.holds) continue;
      bool ok = false;
      switch (v.predicate) {
        case CollatzPredicate::ReachesZero: ok = rec && rec->contains(Value(0)); break;
        case CollatzPredicate::ReachesFixedPointAnyC: ok = ends_fixed; break;
        case CollatzPredicate::ReachesFixedPointCommonC: ok = same_fixed; break;
      }
      if (!ok) {
        v.holds = false;
        v.witness = x0;
        v.witness_orbit = rec;
        --open;
      }
    }
  }
  for (auto& v : verdicts) {
    if (v.predicate == CollatzPredicate::ReachesFixedPointCommonC && v.holds) {
      v.common_fixed_point = shared;
    }
  }
  return verdicts;
}

}  // namespace detail

/// Bounded audit: does every x0 <= bound satisfy `pred` within max_steps?
inline CollatzVerdict classify_collatz(const IvtSystem& sys, const Value& bound,
                                       std::uint64_t max_steps, CollatzPredicate pred) {
  detail::require_trimmed(sys, "Collatz classification");
  const std::array preds{pred};
  return detail::scan_predicates(sys, bound, max_steps, preds).front();
}

struct CensusEntry {
  RuleIndex rule;
  std::vector<Digit> table;
  std::array<CollatzVerdict, 3> verdicts;  // in all_predicates order
};

struct CensusReport {
  Radix radix;
  Value bound;
  std::uint64_t max_steps;
  std::vector<CensusEntry> entries;   // ordered by rule index
  std::array<std::size_t, 3> counts;  // rules satisfying each predicate
  std::uint64_t claim_count;          // p^(p-1) - 1
  std::array<bool, 3> agrees_with_claim;
};

inline std::uint64_t collatz_claim_count(Radix p) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i + 1 < p.value(); ++i) n *= p.value();
  return n - 1;
}

/// Classifies every rule j < p^p under all three predicates. Work is spread
/// over `threads` workers (0 = hardware concurrency); the report does not
/// depend on the thread count.
inline CensusReport census(Radix p, const Value& bound, std::uint64_t max_steps,
                           unsigned threads = 0) {
  const auto count = rule_count(p);
  if (!count || *count > 100'000) {
    throw Error(ErrorCode::InvalidArgument, "census over p^p rules is only supported for p <= 6");
  }
  std::vector<CensusEntry> entries(*count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t j = next++; j < *count; j = next++) {
      const IvtSystem sys(p, j);
      auto verdicts = detail::scan_predicates(sys, bound, max_steps, all_predicates);
      auto table = sys.table().entries();
      entries[j] = CensusEntry{j, {table.begin(), table.end()},
                               {verdicts[0], verdicts[1], verdicts[2]}};
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, *count));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CensusReport report{p, bound, max_steps, std::move(entries), {0, 0, 0},
                      collatz_claim_count(p), {}};
  for (const auto& e : report.entries)
    for (std::size_t k = 0; k < 3; ++k) report.counts[k] += e.verdicts[k].holds ? 1 : 0;
  for (std::size_t k = 0; k < 3; ++k)
    report.agrees_with_claim[k] = report.counts[k] == report.claim_count;
  return report;
}

// ---------------------------------------------------------------------------
// Stability and contraction
// ---------------------------------------------------------------------------

struct StabilityVerdict {
  bool holds = true;
  /// The failing start closest to the equilibrium (the smaller one on ties).
  std::optional<Value> witness;
  /// Every scanned x0 with |x0 - x_bar| < stable_radius converges; empty when
  /// nothing failed.
  std::optional<Value> stable_radius;
};

namespace detail {

inline Value distance(const Value& a, const Value& b) { return a > b ? a - b : b - a; }

inline StabilityVerdict stability_scan(const IvtSystem& sys, const Value& x_bar,
                                       const Value& lo, const Value& hi,
                                       std::uint64_t max_steps) {
  if (!sys.in_state_space(x_bar) || sys.apply(x_bar) != x_bar) {
    throw Error(ErrorCode::NotAFixedPoint, to_string(x_bar) + " is not a steady state");
  }
  StabilityVerdict v;
  for (Value x0 = lo; x0 <= hi; ++x0) {
    if (!sys.in_state_space(x0)) break;
    const auto rec = try_orbit(sys, x0, max_steps);
    const bool converges = rec && rec->cycle_length() == 1 && rec->cycle.front() == x_bar;
    if (converges) continue;
    if (!v.witness || distance(x0, x_bar) < distance(*v.witness, x_bar)) v.witness = x0;
    v.holds = false;
  }
  if (v.witness) v.stable_radius = distance(*v.witness, x_bar);
  return v;
}

}  // namespace detail

/// Does every x0 <= bound eventually become constantly x_bar?
inline StabilityVerdict global_stability_check(const IvtSystem& sys, const Value& x_bar,
                                               const Value& bound, std::uint64_t max_steps) {
  return detail::stability_scan(sys, x_bar, Value(0), bound, max_steps);
}

/// Same question restricted to the neighbourhood |x0 - x_bar| <= radius.
inline StabilityVerdict local_stability_check(const IvtSystem& sys, const Value& x_bar,
                                              const Value& radius, std::uint64_t max_steps) {
  const Value lo = x_bar > radius ? x_bar - radius : Value(0);
  return detail::stability_scan(sys, x_bar, lo, x_bar + radius, max_steps);
}

struct ContractionVerdict {
  bool holds = true;
  std::optional<std::pair<Value, Value>> witness;  // x, y with apply(x) != apply(y)
};

/// Under the discrete metric a contraction with any factor below 1 must be
/// constant, so this checks apply is constant on [0, bound].
inline ContractionVerdict contraction_check(Radix p, RuleIndex j, const Value& bound) {
  const IvtSystem sys(p, j);
  const Value first = sys.apply(0);
  for (Value x = 1; x <= bound; ++x) {
    if (sys.apply(x) != first) return {false, std::pair{Value(0), x}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Invariant sets
// ---------------------------------------------------------------------------

struct InvariantSetReport {
  /// Weakly connected components of the functional graph on [0, bound],
  /// each sorted, ordered by least element. A subset A of [0, bound] has
  /// preimage(A) = A exactly when it is a union of these.
  std::vector<std::vector<Value>> components;

  bool has_nontrivial_invariant_set() const noexcept { return components.size() > 1; }
};

inline InvariantSetReport invariant_set_search(const IvtSystem& sys, const Value& bound) {
  if (bound > Value(1) << 24) {
    throw Error(ErrorCode::InvalidArgument, "bound too large for an explicit graph");
  }
  if (!sys.in_state_space(bound)) {
    throw Error(ErrorCode::ClosureViolation, "bound lies outside the state space");
  }
  const auto n = bound.convert_to<std::size_t>() + 1;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (std::size_t x = 0; x < n; ++x) {
    const Value y = sys.apply(Value(x));
    if (y > bound) {
      throw Error(ErrorCode::ClosureViolation, "apply(" + std::to_string(x) + ") = " +
                                                   to_string(y) + " leaves [0, " +
                                                   to_string(bound) + "]");
    }
    const std::size_t a = find(x);
    const std::size_t b = find(y.convert_to<std::size_t>());
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  InvariantSetReport report;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, inserted] = slot.emplace(find(x), report.components.size());
    if (inserted) report.components.emplace_back();
    report.components[it->second].push_back(Value(x));
  }
  return report;
}

}  // namespace ivt
