#include "carpetq/word.hpp"

#include "carpetq/errors.hpp"

#include <algorithm>

namespace carpetq {

void check_depth(const Word& w, std::size_t depth_cap) {
  if (w.size() > depth_cap) {
    throw LengthError("word of length " + std::to_string(w.size()) +
                      " exceeds depth cap " + std::to_string(depth_cap));
  }
}

Word Word::parse(std::string_view digits, std::size_t depth_cap) {
  for (char c : digits) {
    if (c < '1' || c > '4') {
      throw ParseError("invalid word digit '" + std::string(1, c) + "' in \"" +
                       std::string(digits) + "\"");
    }
  }
  Word w;
  w.digits_ = std::string(digits);
  check_depth(w, depth_cap);
  return w;
}

std::size_t Word::upper_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(digits_.begin(), digits_.end(), [](char c) { return c >= '3'; }));
}

Word Word::child(int digit, std::size_t depth_cap) const {
  if (digit < 1 || digit > 4) {
    throw PreconditionError("digit out of range: " + std::to_string(digit));
  }
  Word w;
  w.digits_.reserve(digits_.size() + 1);
  w.digits_ = digits_;
  w.digits_.push_back(static_cast<char>('0' + digit));
  check_depth(w, depth_cap);
  return w;
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return digits_.size() <= other.digits_.size() &&
         std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

}  // namespace carpetq
