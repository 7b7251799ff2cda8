#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivt/digit_codec.hpp"
#include "ivt/error.hpp"

namespace ivt {

/// Index j of the digit map f_j. The i-th least significant base-p digit of j
/// is f_j(i). Valid indices satisfy j < p^p; for p = 16 that is every uint64.
using RuleIndex = std::uint64_t;

/// p^p, or nullopt when it does not fit in 64 bits (p = 16).
inline std::optional<std::uint64_t> rule_count(Radix p) {
  unsigned __int128 n = 1;
  for (unsigned i = 0; i < p.value(); ++i) n *= p.value();
  if (n > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

inline bool is_valid_rule(Radix p, RuleIndex j) {
  const auto count = rule_count(p);
  return !count || j < *count;
}

inline void require_valid_rule(Radix p, RuleIndex j) {
  if (!is_valid_rule(p, j)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "rule index out of range: " + std::to_string(j) + " >= " +
                    std::to_string(p.value()) + "^" + std::to_string(p.value()));
  }
}

/// Index of the identity digit map, sum of i * p^i.
inline RuleIndex identity_index(Radix p) {
  RuleIndex j = 0;
  RuleIndex scale = 1;
  for (unsigned i = 0; i < p.value(); ++i) {
    j += i * scale;
    if (i + 1 < p.value()) scale *= p.value();
  }
  return j;
}

/// The digit map f: {0..p-1} -> {0..p-1} as a lookup table.
class RuleTable {
 public:
  RuleTable(Radix p, std::vector<Digit> table) : p_(p), table_(std::move(table)) {
    if (table_.size() != p_.value()) {
      throw Error(ErrorCode::InvalidArgument, "rule table must have exactly p entries");
    }
    for (Digit d : table_) {
      if (d >= p_.value()) {
        throw Error(ErrorCode::InvalidDigit,
                    "rule table entry " + std::to_string(int{d}) + " out of range");
      }
    }
  }

  static RuleTable identity(Radix p) {
    std::vector<Digit> t(p.value());
    std::iota(t.begin(), t.end(), Digit{0});
    return {p, std::move(t)};
  }

  Radix radix() const noexcept { return p_; }
  std::span<const Digit> entries() const noexcept { return table_; }
  Digit operator()(Digit i) const { return table_[i]; }

  bool is_permutation() const {
    std::vector<Digit> sorted = table_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) return false;
    return true;
  }

  std::vector<Digit> fixed_digits() const {
    std::vector<Digit> out;
    for (unsigned i = 0; i < p_.value(); ++i)
      if (table_[i] == i) out.push_back(static_cast<Digit>(i));
    return out;
  }

  /// this ∘ inner.
  RuleTable after(const RuleTable& inner) const {
    if (!(inner.p_ == p_)) throw Error(ErrorCode::RadixMismatch, "composing rules of different radix");
    std::vector<Digit> t(p_.value());
    for (unsigned i = 0; i < p_.value(); ++i) t[i] = table_[inner.table_[i]];
    return {p_, std::move(t)};
  }

  /// f^n on digits; n = 0 is the identity.
  RuleTable power(std::uint64_t n) const {
    RuleTable result = identity(p_);
    RuleTable base = *this;
    while (n != 0) {
      if (n & 1U) result = base.after(result);
      base = base.after(base);
      n >>= 1U;
    }
    return result;
  }

  friend bool operator==(const RuleTable&, const RuleTable&) = default;

 private:
  Radix p_;
  std::vector<Digit> table_;
};

inline RuleTable rule_from_index(Radix p, RuleIndex j) {
  require_valid_rule(p, j);
  std::vector<Digit> t(p.value());
  for (unsigned i = 0; i < p.value(); ++i) {
    t[i] = static_cast<Digit>(j % p.value());
    j /= p.value();
  }
  return {p, std::move(t)};
}

inline RuleIndex index_from_rule(const RuleTable& t) {
  const unsigned p = t.radix().value();
  RuleIndex j = 0;
  for (unsigned i = p; i-- > 0;) j = j * p + t(static_cast<Digit>(i));
  return j;
}

/// Index of i ↦ f_outer(f_inner(i)).
inline RuleIndex compose_rules(Radix p, RuleIndex outer, RuleIndex inner) {
  return index_from_rule(rule_from_index(p, outer).after(rule_from_index(p, inner)));
}

/// Functional-graph decomposition of a digit map.
struct DigitGraph {
  Radix radix;
  std::vector<std::size_t> cycle_id;      // per digit: which eventual cycle
  std::vector<std::size_t> distance;      // per digit: steps until on a cycle
  std::vector<std::size_t> cycle_length;  // per digit: length of its eventual cycle
  std::vector<std::vector<Digit>> cycles; // each starts at its least digit, in visit order
  std::vector<Digit> fixed_digits;
  bool is_permutation = false;

  bool on_cycle(Digit d) const { return distance[d] == 0; }
};

inline DigitGraph digit_graph(const RuleTable& f) {
  const unsigned p = f.radix().value();
  DigitGraph g{f.radix(), std::vector<std::size_t>(p), std::vector<std::size_t>(p),
               std::vector<std::size_t>(p), {}, f.fixed_digits(), f.is_permutation()};

  // c is on a cycle iff it returns to itself within p steps.
  std::vector<bool> cyclic(p, false);
  for (unsigned c = 0; c < p; ++c) {
    Digit d = f(static_cast<Digit>(c));
    for (unsigned step = 0; step < p && d != c; ++step) d = f(d);
    cyclic[c] = (d == c);
  }

  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> id(p, unassigned);
  for (unsigned c = 0; c < p; ++c) {
    if (!cyclic[c] || id[c] != unassigned) continue;
    std::vector<Digit> cycle{static_cast<Digit>(c)};
    for (Digit d = f(static_cast<Digit>(c)); d != c; d = f(d)) cycle.push_back(d);
    for (Digit d : cycle) id[d] = g.cycles.size();
    g.cycles.push_back(std::move(cycle));
  }

  for (unsigned i = 0; i < p; ++i) {
    Digit d = static_cast<Digit>(i);
    std::size_t steps = 0;
    while (!cyclic[d]) {
      d = f(d);
      ++steps;
    }
    g.distance[i] = steps;
    g.cycle_id[i] = id[d];
    g.cycle_length[i] = g.cycles[id[d]].size();
  }
  return g;
}

inline DigitGraph digit_graph(Radix p, RuleIndex j) { return digit_graph(rule_from_index(p, j)); }

}  // namespace ivt
