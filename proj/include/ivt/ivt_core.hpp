#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ivt/digit_codec.hpp"
#include "ivt/error.hpp"
#include "ivt/rule_table.hpp"

namespace ivt {

/// Canonical re-encoding at every step: leading zeros produced by f vanish.
struct Trimmed {
  friend bool operator==(Trimmed, Trimmed) = default;
};

/// Words of exactly `width` digits; the state space is [0, p^width).
struct FixedWidth {
  std::size_t width;
  friend bool operator==(FixedWidth, FixedWidth) = default;
};

using Semantics = std::variant<Trimmed, FixedWidth>;

inline std::string to_string(const Semantics& s) {
  if (const auto* fw = std::get_if<FixedWidth>(&s)) return "fixed:" + std::to_string(fw->width);
  return "trimmed";
}

/// Maps f elementwise over w. The result keeps the length of w; since a
/// mapped word may start with zero it is always returned in FixedWidth form.
inline DigitWord word_map(const RuleTable& f, const DigitWord& w) {
  if (!(f.radix() == w.radix())) {
    throw Error(ErrorCode::RadixMismatch, "rule and word have different radices");
  }
  std::vector<Digit> out;
  out.reserve(w.size());
  for (Digit d : w.digits()) out.push_back(f(d));
  return DigitWord::fixed(w.radix(), std::move(out));
}

/// One IVT^{p,1}_j dynamical system: radix, digit rule and length semantics.
class IvtSystem {
 public:
  IvtSystem(Radix p, RuleIndex j, Semantics semantics = Trimmed{})
      : p_(p), j_(j), table_(rule_from_index(p, j)), semantics_(semantics) {
    if (const auto* fw = std::get_if<FixedWidth>(&semantics_); fw && fw->width == 0) {
      throw Error(ErrorCode::InvalidArgument, "fixed width must be positive");
    }
  }

  Radix radix() const noexcept { return p_; }
  RuleIndex rule() const noexcept { return j_; }
  const RuleTable& table() const noexcept { return table_; }
  const Semantics& semantics() const noexcept { return semantics_; }

  bool is_fixed_width() const noexcept { return std::holds_alternative<FixedWidth>(semantics_); }
  std::optional<std::size_t> width() const noexcept {
    if (const auto* fw = std::get_if<FixedWidth>(&semantics_)) return fw->width;
    return std::nullopt;
  }

  /// p^k under FixedWidth(k); unbounded under Trimmed.
  std::optional<Value> state_space_size() const {
    if (auto k = width()) return power(p_, *k);
    return std::nullopt;
  }

  bool in_state_space(const Value& x) const {
    auto size = state_space_size();
    return !size || x < *size;
  }

  /// The digit word of x that the rule acts on under this system's semantics.
  DigitWord word_of(const Value& x) const {
    if (auto k = width()) {
      if (!in_state_space(x)) {
        throw Error(ErrorCode::OutOfStateSpace, to_string(x) + " is outside [0, " +
                                                    std::to_string(p_.value()) + "^" +
                                                    std::to_string(*k) + ")");
      }
      return pad(encode(x, p_), *k);
    }
    return encode(x, p_);
  }

  Value apply(const Value& x) const { return decode(word_map(table_, word_of(x))); }

 private:
  Radix p_;
  RuleIndex j_;
  RuleTable table_;
  Semantics semantics_;
};

inline Value apply(const IvtSystem& sys, const Value& x) { return sys.apply(x); }

/// n-fold application; iterate(x, 0) = x. Long runs jump ahead once the
/// trajectory repeats.
inline Value iterate(const IvtSystem& sys, Value x, std::uint64_t n) {
  constexpr std::uint64_t short_run = 256;
  if (n <= short_run) {
    for (std::uint64_t step = 0; step < n; ++step) x = sys.apply(x);
    return x;
  }
  std::unordered_map<Value, std::uint64_t> first_seen;
  std::vector<Value> path;
  for (std::uint64_t step = 0; step < n; ++step) {
    auto [it, inserted] = first_seen.emplace(x, step);
    if (!inserted) {
      const std::uint64_t start = it->second;
      const std::uint64_t period = step - start;
      return path[start + (n - start) % period];
    }
    path.push_back(x);
    x = sys.apply(x);
  }
  return x;
}

/// decode(F^n(pad(encode(x), k))) where F^n maps every digit by f^n.
inline Value iterate_via_decomposition(const IvtSystem& sys, const Value& x, std::uint64_t n) {
  if (!sys.is_fixed_width()) {
    throw Error(ErrorCode::SemanticsMismatch,
                "the word-map decomposition is only exact under fixed-width semantics");
  }
  return decode(word_map(sys.table().power(n), sys.word_of(x)));
}

}  // namespace ivt
