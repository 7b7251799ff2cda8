#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ivt/error.hpp"

namespace ivt {

/// Arbitrary-precision nonnegative integer. Expression templates are off so
/// that `auto` on arithmetic results always yields a concrete value.
using Value = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

using Digit = std::uint8_t;

inline std::string to_string(const Value& v) { return v.str(); }

/// Parses a nonnegative decimal integer; anything else is InvalidArgument.
inline Value parse_value(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::InvalidArgument, "not a nonnegative integer: '" + text + "'");
  }
  return Value(text);
}

class Radix {
 public:
  static constexpr unsigned min_value = 2;
  static constexpr unsigned max_value = 16;

  explicit Radix(unsigned p) : p_(p) {
    if (p < min_value || p > max_value) {
      throw Error(ErrorCode::InvalidRadix,
                  "radix must lie in [2, 16], got " + std::to_string(p));
    }
  }

  unsigned value() const noexcept { return p_; }
  operator unsigned() const noexcept { return p_; }

  friend bool operator==(Radix a, Radix b) noexcept { return a.p_ == b.p_; }

 private:
  unsigned p_;
};

/// p^k as an exact Value.
inline Value power(Radix p, std::size_t k) {
  Value result = 1;
  for (std::size_t i = 0; i < k; ++i) result *= p.value();
  return result;
}

enum class WordForm { Canonical, FixedWidth };

/// Base-p digits, most significant first. A FixedWidth word's width is its
/// length; a Canonical word has no leading zero unless it is exactly [0].
class DigitWord {
 public:
  DigitWord(Radix radix, std::vector<Digit> digits, WordForm form)
      : radix_(radix), digits_(std::move(digits)), form_(form) {
    if (digits_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "digit word must not be empty");
    }
    for (Digit d : digits_) {
      if (d >= radix_.value()) {
        throw Error(ErrorCode::InvalidDigit, "digit " + std::to_string(int{d}) +
                                                 " out of range for radix " +
                                                 std::to_string(radix_.value()));
      }
    }
    if (form_ == WordForm::Canonical && digits_.size() > 1 && digits_.front() == 0) {
      throw Error(ErrorCode::InvalidArgument, "canonical word has a leading zero");
    }
  }

  static DigitWord canonical(Radix radix, std::vector<Digit> digits) {
    return {radix, std::move(digits), WordForm::Canonical};
  }
  static DigitWord fixed(Radix radix, std::vector<Digit> digits) {
    return {radix, std::move(digits), WordForm::FixedWidth};
  }

  Radix radix() const noexcept { return radix_; }
  WordForm form() const noexcept { return form_; }
  bool is_canonical() const noexcept { return form_ == WordForm::Canonical; }
  std::size_t size() const noexcept { return digits_.size(); }
  std::span<const Digit> digits() const noexcept { return digits_; }
  Digit operator[](std::size_t i) const { return digits_[i]; }

  friend bool operator==(const DigitWord&, const DigitWord&) = default;

 private:
  Radix radix_;
  std::vector<Digit> digits_;
  WordForm form_;
};

/// Canonical base-p representation of m; encode(0) is [0].
inline DigitWord encode(const Value& m, Radix p) {
  std::vector<Digit> digits;
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    auto x = m.convert_to<std::uint64_t>();
    do {
      digits.push_back(static_cast<Digit>(x % p.value()));
      x /= p.value();
    } while (x != 0);
  } else {
    Value x = m;
    Value q;
    Value r;
    const Value base = p.value();
    while (x != 0) {
      boost::multiprecision::divide_qr(x, base, q, r);
      digits.push_back(static_cast<Digit>(r.convert_to<unsigned>()));
      x = std::move(q);
    }
  }
  std::reverse(digits.begin(), digits.end());
  return DigitWord::canonical(p, std::move(digits));
}

inline Value decode(const DigitWord& w) {
  const unsigned p = w.radix().value();
  // 16^15 < 2^63, so any word this short decodes without overflow.
  if (w.size() <= 15) {
    std::uint64_t acc = 0;
    for (Digit d : w.digits()) acc = acc * p + d;
    return Value(acc);
  }
  Value acc = 0;
  for (Digit d : w.digits()) {
    acc *= p;
    acc += d;
  }
  return acc;
}

/// Number of digits in the canonical representation of m (1 for m = 0).
inline std::size_t digit_length(const Value& m, Radix p) { return encode(m, p).size(); }

/// Removes leading zeros; the all-zero word becomes [0].
inline DigitWord trim(const DigitWord& w) {
  auto digits = w.digits();
  auto first = std::find_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; });
  if (first == digits.end()) return DigitWord::canonical(w.radix(), {0});
  return DigitWord::canonical(w.radix(), std::vector<Digit>(first, digits.end()));
}

/// Left-pads with zeros to exactly k digits.
inline DigitWord pad(const DigitWord& w, std::size_t k) {
  const DigitWord canon = trim(w);
  if (k == 0 || k < canon.size()) {
    throw Error(ErrorCode::WidthTooSmall, "width " + std::to_string(k) +
                                              " cannot hold a " +
                                              std::to_string(canon.size()) + "-digit value");
  }
  std::vector<Digit> digits(k - canon.size(), 0);
  digits.insert(digits.end(), canon.digits().begin(), canon.digits().end());
  return DigitWord::fixed(w.radix(), std::move(digits));
}

}  // namespace ivt
