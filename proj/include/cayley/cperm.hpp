#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayley {

/// A word over the positive integers in which every value between 1 and the
/// maximum occurs at least once. The empty word is a valid Cayley permutation.
class CayleyPerm {
 public:
  CayleyPerm() = default;

  /// Throws std::invalid_argument unless `values` hits every level 1..max.
  explicit CayleyPerm(std::vector<int> values);
  CayleyPerm(std::initializer_list<int> values);

  /// Parses "2121" (digit string) or "10,1,2" (comma separated).
  static CayleyPerm parse(std::string_view text);

  std::span<const int> values() const { return values_; }
  const std::vector<int>& raw() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  int operator[](std::size_t i) const { return values_[i]; }
  int max_value() const { return max_; }

  bool is_permutation() const { return static_cast<std::size_t>(max_) == values_.size(); }

  /// Digit string when every value is at most 9, comma separated otherwise.
  std::string to_string() const;

  bool operator==(const CayleyPerm& other) const { return values_ == other.values_; }

  /// Shortlex: size first, then lexicographic.
  std::strong_ordering operator<=>(const CayleyPerm& other) const;

 private:
  std::vector<int> values_;
  int max_ = 0;
};

/// Relabels values to 1..k preserving order and equalities.
CayleyPerm standardise(std::span<const int> word);

/// True iff some subsequence of `word` standardises to `pattern`.
bool contains(std::span<const int> word, const CayleyPerm& pattern);
inline bool contains(const CayleyPerm& word, const CayleyPerm& pattern) {
  return contains(word.values(), pattern);
}

/// A finite set of non-empty patterns, stored sorted and deduplicated.
/// `normalised()` reduces it to its minimal antichain.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<CayleyPerm> patterns);
  Basis(std::initializer_list<CayleyPerm> patterns)
      : Basis(std::vector<CayleyPerm>(patterns)) {}

  /// Space separated pattern tokens, e.g. "231 312 2121".
  static Basis parse(std::string_view text);

  const std::vector<CayleyPerm>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }
  auto begin() const { return patterns_.begin(); }
  auto end() const { return patterns_.end(); }

  Basis normalised() const;
  std::size_t max_pattern_size() const;
  std::string to_string() const;

  bool operator==(const Basis&) const = default;

 private:
  std::vector<CayleyPerm> patterns_;
};

bool avoids(std::span<const int> word, const Basis& basis);
inline bool avoids(const CayleyPerm& word, const Basis& basis) {
  return avoids(word.values(), basis);
}

/// Elements of `perms` that contain no other element of `perms`.
std::vector<CayleyPerm> minimal_elements(std::vector<CayleyPerm> perms);

}  // namespace cayley
