#include "trachtenberg/digits.hpp"

#include <algorithm>

#include "trachtenberg/errors.hpp"
#include "trachtenberg/random.hpp"

namespace trachtenberg {

DigitString DigitString::from_digits(std::vector<Digit> digits) {
  if (std::any_of(digits.begin(), digits.end(), [](Digit d) { return d > 9; })) {
    throw DomainError("digit out of range 0-9");
  }
  const auto first = std::find_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; });
  if (first == digits.end()) {
    return DigitString{};
  }
  digits.erase(digits.begin(), first);
  return DigitString(std::move(digits));
}

DigitString DigitString::from_reversed_digits(std::span<const Digit> digits) {
  return from_digits(std::vector<Digit>(digits.rbegin(), digits.rend()));
}

DigitString DigitString::from_uint(std::uint64_t value) {
  std::vector<Digit> reversed;
  do {
    reversed.push_back(static_cast<Digit>(value % 10));
    value /= 10;
  } while (value != 0);
  return DigitString(std::vector<Digit>(reversed.rbegin(), reversed.rend()));
}

std::strong_ordering operator<=>(const DigitString& a, const DigitString& b) {
  if (a.digits_.size() != b.digits_.size()) {
    return a.digits_.size() <=> b.digits_.size();
  }
  return std::lexicographical_compare_three_way(a.digits_.begin(), a.digits_.end(),
                                                b.digits_.begin(), b.digits_.end());
}

DigitString parse(std::string_view text) {
  if (text.empty()) {
    throw ParseError("empty number");
  }
  std::vector<Digit> digits;
  digits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') {
      throw ParseError("invalid character at offset " + std::to_string(i) +
                       " in number \"" + std::string(text) + "\"");
    }
    digits.push_back(static_cast<Digit>(ch - '0'));
  }
  return DigitString::from_digits(std::move(digits));
}

std::string to_text(const DigitString& number) {
  std::string text;
  text.reserve(number.size());
  for (const Digit d : number.digits()) {
    text.push_back(static_cast<char>('0' + d));
  }
  return text;
}

DigitString random_multiplicand(Generator& generator, std::size_t length) {
  std::vector<Digit> digits;
  digits.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (i == 0) {
      digits.push_back(static_cast<Digit>(1 + uniform_below(generator, 9)));
    } else {
      digits.push_back(static_cast<Digit>(uniform_below(generator, 10)));
    }
  }
  return DigitString::from_digits(std::move(digits));
}

}  // namespace trachtenberg
