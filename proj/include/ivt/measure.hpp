#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ivt/detail/word_enum.hpp"
#include "ivt/digit_codec.hpp"
#include "ivt/dynamics.hpp"
#include "ivt/error.hpp"
#include "ivt/ivt_core.hpp"

namespace ivt {

namespace detail {

inline std::vector<Value> sorted_unique(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace detail

/// {x <= bound : apply(x) in A}, built per target from the inverse image of
/// each digit. Under trimmed semantics a word of length L >= 2 must not start
/// with 0, and its image is the target padded to L digits.
inline std::vector<Value> preimage(const IvtSystem& sys, const std::vector<Value>& targets,
                                   const Value& bound) {
  const Radix p = sys.radix();
  std::vector<std::vector<Digit>> inverse(p.value());
  for (unsigned d = 0; d < p.value(); ++d) {
    inverse[sys.table()(static_cast<Digit>(d))].push_back(static_cast<Digit>(d));
  }

  std::vector<Value> out;
  auto collect = [&](const Value& v) { out.push_back(v); };
  auto choices_for = [&](const DigitWord& target) {
    std::vector<std::vector<Digit>> choices;
    for (Digit d : target.digits()) choices.push_back(inverse[d]);
    return choices;
  };

  for (const Value& a : detail::sorted_unique(targets)) {
    const DigitWord t = encode(a, p);
    if (auto k = sys.width()) {
      if (t.size() > *k) continue;
      const Value top = power(p, *k) - 1;
      detail::for_each_word_value(p, choices_for(pad(t, *k)), std::min(bound, top), collect);
      continue;
    }
    const std::size_t max_len = digit_length(bound, p);
    for (std::size_t len = t.size(); len <= max_len; ++len) {
      auto choices = choices_for(pad(t, len));
      if (len > 1) std::erase(choices.front(), Digit{0});
      detail::for_each_word_value(p, choices, bound, collect);
    }
  }
  return detail::sorted_unique(std::move(out));
}

/// {x <= bound : iterate(x, n) in A} by direct scan of [0, bound].
inline std::vector<Value> iterate_preimage(const IvtSystem& sys, const std::vector<Value>& targets,
                                           const Value& bound, std::uint64_t n) {
  const auto wanted = detail::sorted_unique(targets);
  std::vector<Value> out;
  for (Value x = 0; x <= bound && sys.in_state_space(x); ++x) {
    if (std::binary_search(wanted.begin(), wanted.end(), iterate(sys, x, n))) out.push_back(x);
  }
  return out;
}

/// Counting-measure comparison of A against its preimage, restricted to
/// [0, bound]. growth_flag records whether doubling the bound enlarges the
/// preimage, the finite stand-in for an unbounded preimage.
struct MeasureAudit {
  Radix radix;
  RuleIndex rule;
  std::uint64_t steps = 1;
  std::vector<Value> set;  // A, sorted
  Value bound;
  std::size_t mu_set = 0;           // |A|
  std::size_t mu_set_on_bound = 0;  // |A ∩ [0, bound]|
  std::vector<Value> preimage{};
  std::size_t mu_preimage = 0;
  bool preserving_on_bound = false;
  bool growth_flag = false;
};

/// Audits the n-step map (n = 1 is apply itself).
inline MeasureAudit measure_audit(const IvtSystem& sys, const std::vector<Value>& targets,
                                  const Value& bound, std::uint64_t n = 1) {
  auto pre = [&](const Value& b) {
    return n == 1 ? preimage(sys, targets, b) : iterate_preimage(sys, targets, b, n);
  };
  MeasureAudit audit{.radix = sys.radix(),
                     .rule = sys.rule(),
                     .steps = n,
                     .set = detail::sorted_unique(targets),
                     .bound = bound};
  audit.mu_set = audit.set.size();
  audit.mu_set_on_bound = static_cast<std::size_t>(
      std::count_if(audit.set.begin(), audit.set.end(), [&](const Value& a) { return a <= bound; }));
  audit.preimage = pre(bound);
  audit.mu_preimage = audit.preimage.size();
  audit.preserving_on_bound = audit.mu_set_on_bound == audit.mu_preimage;
  audit.growth_flag = pre(bound * 2).size() > audit.mu_preimage;
  return audit;
}

struct InjectivityAudit {
  bool injective = true;
  /// x < y with apply(x) == apply(y) == image, the first collision found.
  struct Collision {
    Value x;
    Value y;
    Value image;
  };
  std::optional<Collision> witness;
  /// Structural prediction: f is a permutation with f(0) = 0.
  bool predicted_injective = false;
  bool characterization_match = false;
};

inline InjectivityAudit injectivity_audit(const IvtSystem& sys, const Value& bound) {
  detail::require_trimmed(sys, "injectivity audit");
  InjectivityAudit audit;
  audit.predicted_injective = sys.table().is_permutation() && sys.table()(0) == 0;
  std::unordered_map<Value, Value> first_source;
  for (Value x = 0; x <= bound; ++x) {
    Value y = sys.apply(x);
    auto [it, inserted] = first_source.emplace(y, x);
    if (!inserted) {
      audit.injective = false;
      audit.witness = InjectivityAudit::Collision{it->second, x, std::move(y)};
      break;
    }
  }
  audit.characterization_match = audit.injective == audit.predicted_injective;
  return audit;
}

}  // namespace ivt
