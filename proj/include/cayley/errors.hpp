#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cayley {

/// A configured size or state limit was hit. Never silently truncated.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The basis misses one of the juxtaposition classes, so the class has no
/// finite automaton in the requested mode.
class NotSlotBounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A letter word that is not the insertion encoding of any Cayley permutation.
/// `position` is 1-based; `word_length + 1` denotes the end of the word.
class InvalidWord : public std::invalid_argument {
 public:
  InvalidWord(std::size_t position, std::string reason)
      : std::invalid_argument("invalid word at position " + std::to_string(position) + ": " +
                              reason),
        position_(position),
        reason_(std::move(reason)) {}

  std::size_t position() const { return position_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

/// The linear system of a rule system has no unique solution.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cayley
