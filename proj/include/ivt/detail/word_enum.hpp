#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ivt/digit_codec.hpp"

namespace ivt::detail {

/// Visits, in ascending numeric order, every value whose length-n base-p word
/// has digit i drawn from choices[i] (each list sorted ascending) and which
/// does not exceed `bound`.
template <class Visit>
void for_each_word_value(Radix p, std::span<const std::vector<Digit>> choices,
                         const Value& bound, Visit&& visit) {
  const std::size_t n = choices.size();
  std::vector<Value> scale(n + 1, Value(1));
  for (std::size_t i = n; i-- > 0;) scale[i] = scale[i + 1] * p.value();

  // prefix holds the value of the digits chosen so far, shifted into place.
  auto recurse = [&](auto& self, std::size_t pos, const Value& prefix) -> bool {
    if (prefix > bound) return false;
    if (pos == n) {
      visit(prefix);
      return true;
    }
    for (Digit d : choices[pos]) {
      if (!self(self, pos + 1, prefix + scale[pos + 1] * d)) return false;
    }
    return true;
  };
  recurse(recurse, 0, Value(0));
}

}  // namespace ivt::detail
