#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace carpetq {

inline constexpr std::size_t kDefaultDepthCap = 64;

/// Address of a carpet square: a string over {1,2,3,4}. The empty word is the
/// whole unit square. Serialized as its digit string ("" for the empty word).
class Word {
 public:
  Word() = default;

  /// Throws ParseError on a digit outside 1..4 and LengthError past the cap.
  static Word parse(std::string_view digits, std::size_t depth_cap = kDefaultDepthCap);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }

  /// Digit at position i, as an integer in 1..4.
  int operator[](std::size_t i) const { return digits_[i] - '0'; }

  /// Number of digits equal to 3 or 4.
  std::size_t upper_count() const noexcept;

  /// The word followed by `digit`. Throws LengthError past the cap.
  Word child(int digit, std::size_t depth_cap = kDefaultDepthCap) const;

  bool is_prefix_of(const Word& other) const noexcept;

  const std::string& str() const noexcept { return digits_; }

  /// "∅" for the empty word, the digit string otherwise.
  std::string display() const { return digits_.empty() ? "∅" : digits_; }

  /// Shortlex: by length, then lexicographically.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.digits_ <=> b.digits_;
  }
  friend bool operator==(const Word& a, const Word& b) noexcept = default;

 private:
  std::string digits_;
};

/// Throws LengthError when the word is longer than `depth_cap`.
void check_depth(const Word& w, std::size_t depth_cap);

}  // namespace carpetq

template <>
struct std::hash<carpetq::Word> {
  std::size_t operator()(const carpetq::Word& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};
