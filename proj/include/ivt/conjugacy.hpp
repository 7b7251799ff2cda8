#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ivt/digit_codec.hpp"
#include "ivt/error.hpp"
#include "ivt/ivt_core.hpp"
#include "ivt/rule_table.hpp"

namespace ivt {

/// A map sigma on digits, lifted elementwise to fixed-width words. It has the
/// same shape as a rule table, so it shares the type.
using DigitMap = RuleTable;

/// sigma(i) = (i + 1) mod p.
inline DigitMap shift_map(Radix p) {
  std::vector<Digit> sigma(p.value());
  for (unsigned i = 0; i < p.value(); ++i) sigma[i] = static_cast<Digit>((i + 1) % p.value());
  return {p, std::move(sigma)};
}

enum class RelationKind {
  Semiconjugacy,  // sigma intertwines the rules but is not onto
  Conjugacy       // sigma is a bijection
};

constexpr std::string_view to_string(RelationKind k) noexcept {
  return k == RelationKind::Conjugacy ? "conjugacy" : "semiconjugacy";
}

/// sigma ∘ f_{j1} = f_{j2} ∘ sigma on digits, and H ∘ F_{j1} = F_{j2} ∘ H on
/// every word of `width` digits.
struct ConjugacyCertificate {
  Radix radix;
  RuleIndex from_rule;  // j1
  RuleIndex to_rule;    // j2
  DigitMap sigma;
  std::size_t width;
  RelationKind kind;
};

struct SemiconjugacyFailure {
  enum class Level { Digit, Word } level;
  Value point;  // failing digit, or the value of the failing word
  Value lhs;    // sigma(f_{j1}(point)) at that level
  Value rhs;    // f_{j2}(sigma(point))
};

using SemiconjugacyResult = std::variant<ConjugacyCertificate, SemiconjugacyFailure>;

namespace detail {

inline void require_same_radix(Radix p, const DigitMap& sigma) {
  if (!(sigma.radix() == p)) throw Error(ErrorCode::RadixMismatch, "digit map has a different radix");
}

inline void require_enumerable_width(Radix p, std::size_t width) {
  if (width == 0) throw Error(ErrorCode::InvalidArgument, "width must be positive");
  if (power(p, width) > Value(1) << 24) {
    throw Error(ErrorCode::InvalidArgument, "too many words to check exhaustively");
  }
}

/// First width-k word (as a value) where outer_l ∘ inner_l and outer_r ∘ inner_r
/// disagree, with both images.
inline std::optional<SemiconjugacyFailure> first_word_mismatch(
    Radix p, std::size_t width, const RuleTable& outer_l, const RuleTable& inner_l,
    const RuleTable& outer_r, const RuleTable& inner_r) {
  const auto count = power(p, width).convert_to<std::uint64_t>();
  for (std::uint64_t x = 0; x < count; ++x) {
    const DigitWord w = pad(encode(Value(x), p), width);
    const Value lhs = decode(word_map(outer_l, word_map(inner_l, w)));
    const Value rhs = decode(word_map(outer_r, word_map(inner_r, w)));
    if (lhs != rhs) {
      return SemiconjugacyFailure{SemiconjugacyFailure::Level::Word, Value(x), lhs, rhs};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks the intertwining equation at digit level, then exhaustively on all
/// p^width words.
inline SemiconjugacyResult check_semiconjugacy(Radix p, RuleIndex j1, RuleIndex j2,
                                               const DigitMap& sigma, std::size_t width) {
  detail::require_same_radix(p, sigma);
  detail::require_enumerable_width(p, width);
  const RuleTable f = rule_from_index(p, j1);
  const RuleTable g = rule_from_index(p, j2);

  for (unsigned i = 0; i < p.value(); ++i) {
    const auto d = static_cast<Digit>(i);
    if (sigma(f(d)) != g(sigma(d))) {
      return SemiconjugacyFailure{SemiconjugacyFailure::Level::Digit, Value(i),
                                  Value(sigma(f(d))), Value(g(sigma(d)))};
    }
  }
  if (auto miss = detail::first_word_mismatch(p, width, sigma, f, g, sigma)) return *miss;

  return ConjugacyCertificate{p, j1, j2, sigma, width,
                              sigma.is_permutation() ? RelationKind::Conjugacy
                                                     : RelationKind::Semiconjugacy};
}

/// Every bijective sigma with sigma ∘ f_{j1} = f_{j2} ∘ sigma, in
/// lexicographic order of the digit table.
inline std::vector<DigitMap> find_digit_conjugacies(Radix p, RuleIndex j1, RuleIndex j2) {
  if (p.value() > 8) {
    throw Error(ErrorCode::InvalidArgument, "permutation search is limited to p <= 8");
  }
  const RuleTable f = rule_from_index(p, j1);
  const RuleTable g = rule_from_index(p, j2);
  std::vector<Digit> perm(p.value());
  for (unsigned i = 0; i < p.value(); ++i) perm[i] = static_cast<Digit>(i);

  std::vector<DigitMap> out;
  do {
    const DigitMap sigma(p, perm);
    if (sigma.after(f) == g.after(sigma)) out.push_back(sigma);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct CrossFactorResult {
  bool holds = true;
  std::optional<SemiconjugacyFailure> witness;
};

/// With H = F_{j1}: H ∘ (F_{j2} ∘ F_{j1}) = (F_{j1} ∘ F_{j2}) ∘ H, and with
/// H' = F_{j2} the mirrored identity, checked on all width-k words.
inline CrossFactorResult cross_factor_check(Radix p, RuleIndex j1, RuleIndex j2, std::size_t width) {
  detail::require_enumerable_width(p, width);
  const RuleTable f1 = rule_from_index(p, j1);
  const RuleTable f2 = rule_from_index(p, j2);
  const RuleTable f12 = f1.after(f2);
  const RuleTable f21 = f2.after(f1);
  if (auto miss = detail::first_word_mismatch(p, width, f1, f21, f12, f1)) return {false, miss};
  if (auto miss = detail::first_word_mismatch(p, width, f2, f12, f21, f2)) return {false, miss};
  return {};
}

struct CompositionCheck {
  bool holds = false;
  RuleIndex lhs_index = 0;  // index of outer_l ∘ inner_l
  RuleIndex rhs_index = 0;  // index of outer_r ∘ inner_r
  std::size_t max_width = 0;
};

/// Does F_{outer_l} ∘ F_{inner_l} = F_{outer_r} ∘ F_{inner_r}, both as digit
/// rules and on every word of width 1..max_width?
inline CompositionCheck check_composition_identity(Radix p, RuleIndex outer_l, RuleIndex inner_l,
                                                   RuleIndex outer_r, RuleIndex inner_r,
                                                   std::size_t max_width) {
  CompositionCheck check{false, compose_rules(p, outer_l, inner_l),
                         compose_rules(p, outer_r, inner_r), max_width};
  if (check.lhs_index != check.rhs_index) return check;
  const RuleTable a = rule_from_index(p, outer_l);
  const RuleTable b = rule_from_index(p, inner_l);
  const RuleTable c = rule_from_index(p, outer_r);
  const RuleTable d = rule_from_index(p, inner_r);
  for (std::size_t k = 1; k <= max_width; ++k) {
    detail::require_enumerable_width(p, k);
    if (detail::first_word_mismatch(p, k, a, b, c, d)) return check;
  }
  check.holds = true;
  return check;
}

/// F_16 ∘ F_18 = F_13 ∘ F_16 = F_13 for p = 3, on words of width up to 4.
inline CompositionCheck compose_check_example() {
  const Radix p(3);
  CompositionCheck check = check_composition_identity(p, 16, 18, 13, 16, 4);
  check.holds = check.holds && check.lhs_index == 13;
  return check;
}

}  // namespace ivt
