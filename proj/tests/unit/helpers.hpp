#pragma once

#include "carpetq/rational.hpp"
#include "carpetq/word.hpp"

#include <doctest.h>

#include <ostream>
#include <random>
#include <string>

namespace carpetq {

// doctest prints operands of failed comparisons through operator<<.
inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << '"' << w.str() << '"'; }

}  // namespace carpetq

namespace carpetq::test {

inline Word W(const std::string& digits) { return Word::parse(digits); }
inline Rational Q(long p, long q = 1) { return Rational(p, q); }
inline Point Pt(const Rational& x, const Rational& y) { return make_point(x, y); }

inline Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> digit(1, 4);
  std::string s(len(rng), '1');
  for (char& c : s) c = static_cast<char>('0' + digit(rng));
  return Word::parse(s);
}

}  // namespace carpetq::test
