#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "qpromo/errors.hpp"

namespace qpromo {

// A length-n assignment of binary variables, packed into a 64-bit word.
// Bit i of `word` is the value of variable x_i, so the word doubles as the
// basis-state index used by the statevector simulators.
struct BitString {
  int n = 0;
  std::uint64_t word = 0;

  BitString() = default;
  BitString(int n_, std::uint64_t word_) : n(n_), word(word_) {
    if (n_ < 0 || n_ > 63) throw DimensionError("BitString: n out of range");
    if (n_ < 64 && (word_ >> n_) != 0)
      throw DimensionError("BitString: word has bits beyond n");
  }

  int bit(int i) const { return static_cast<int>((word >> i) & 1ULL); }
  int weight() const { return std::popcount(word); }

  bool operator==(const BitString&) const = default;
};

// "0110..." with character k giving x_k.
inline std::string to_string(const BitString& x) {
  std::string s(static_cast<size_t>(x.n), '0');
  for (int i = 0; i < x.n; ++i)
    if (x.bit(i)) s[static_cast<size_t>(i)] = '1';
  return s;
}

inline BitString bitstring_from_string(const std::string& s) {
  if (s.size() > 63) throw DimensionError("bitstring_from_string: too long");
  std::uint64_t w = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      w |= 1ULL << i;
    else if (s[i] != '0')
      throw ParseError("bitstring_from_string: expected only 0/1 characters");
  }
  return BitString(static_cast<int>(s.size()), w);
}

}  // namespace qpromo
