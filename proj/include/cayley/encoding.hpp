#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cayley/cperm.hpp"

namespace cayley {

enum class Mode { vertical, horizontal };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

// ---------------------------------------------------------------------------
// Vertical insertion encoding: points are inserted by value, smallest first,
// and equal values left to right.

enum class VerticalKind : char { left = 'l', middle = 'm', right = 'r', fill = 'f' };

/// One insertion a_{i,j}: `slot` is 1-based from the left, `new_max` is true
/// for a new maximum and false for a repeat of the current maximum.
struct VerticalLetter {
  VerticalKind kind = VerticalKind::fill;
  int slot = 1;
  bool new_max = true;

  auto operator<=>(const VerticalLetter&) const = default;
};

/// A vertical configuration: placed values and slot markers (value 0).
class VerticalConfiguration {
 public:
  static constexpr int kSlot = 0;

  VerticalConfiguration() : items_{kSlot} {}
  explicit VerticalConfiguration(std::vector<int> items);

  /// Parses "2 _ 2 1 _" (the slot marker may also be written as "◊").
  static VerticalConfiguration parse(std::string_view text);

  const std::vector<int>& items() const { return items_; }
  int slot_count() const;
  int placed_count() const;
  int max_value() const;
  bool complete() const { return slot_count() == 0; }

  /// Applies one letter; throws InvalidWord(position, ...) when illegal.
  VerticalConfiguration apply(const VerticalLetter& letter, std::size_t position = 1) const;
  /// Every letter that is legal in this configuration.
  std::vector<VerticalLetter> legal_letters() const;

  /// Placed values with the slots dropped.
  CayleyPerm placed() const;
  std::string to_string() const;

  auto operator<=>(const VerticalConfiguration&) const = default;

 private:
  std::vector<int> items_;
};

// ---------------------------------------------------------------------------
// Horizontal insertion encoding: points are inserted left to right.

enum class HorizontalKind : char { up = 'u', middle = 'm', down = 'd', fill = 'f' };

/// One insertion a_{i,j}: `slot` is 1-based from the bottom, `has_more` is
/// true when further copies of the inserted value are still to come.
struct HorizontalLetter {
  HorizontalKind kind = HorizontalKind::fill;
  int slot = 1;
  bool has_more = false;

  auto operator<=>(const HorizontalLetter&) const = default;
};

/// A slot of a horizontal configuration. A new slot sits in the gap above
/// value `level` (0 = below every value); a repeating slot sits at value `level`.
struct HorizontalSlot {
  bool repeating = false;
  int level = 0;

  /// Gap above value g has height 2g+1; value v has height 2v.
  int height() const { return repeating ? 2 * level : 2 * level + 1; }
  auto operator<=>(const HorizontalSlot&) const = default;
};

class HorizontalConfiguration {
 public:
  HorizontalConfiguration() : slots_{HorizontalSlot{false, 0}} {}
  HorizontalConfiguration(CayleyPerm prefix, std::vector<HorizontalSlot> slots);

  const CayleyPerm& prefix() const { return prefix_; }
  const std::vector<HorizontalSlot>& slots() const { return slots_; }
  int slot_count() const { return static_cast<int>(slots_.size()); }
  bool complete() const { return slots_.empty(); }

  HorizontalConfiguration apply(const HorizontalLetter& letter, std::size_t position = 1) const;
  std::vector<HorizontalLetter> legal_letters() const;

  /// Reads the columns bottom to top, e.g. "21 | gap0 rep2".
  std::string to_string() const;

  auto operator<=>(const HorizontalConfiguration&) const = default;

 private:
  CayleyPerm prefix_;
  std::vector<HorizontalSlot> slots_;  // sorted by height
};

using VerticalWord = std::vector<VerticalLetter>;
using HorizontalWord = std::vector<HorizontalLetter>;

/// Either kind of letter; rule systems carry letters of one mode.
using Letter = std::variant<VerticalLetter, HorizontalLetter>;

std::string to_string(const VerticalLetter& letter);
std::string to_string(const HorizontalLetter& letter);
std::string to_string(const Letter& letter);
std::string to_string(const VerticalWord& word);
std::string to_string(const HorizontalWord& word);

VerticalLetter parse_vertical_letter(std::string_view text);
HorizontalLetter parse_horizontal_letter(std::string_view text);
Letter parse_letter(std::string_view text, Mode mode);
VerticalWord parse_vertical_word(std::string_view text);
HorizontalWord parse_horizontal_word(std::string_view text);

VerticalWord vertical_encode(const CayleyPerm& perm);
CayleyPerm vertical_decode(const VerticalWord& word);
HorizontalWord horizontal_encode(const CayleyPerm& perm);
CayleyPerm horizontal_decode(const HorizontalWord& word);

/// The configurations of an evolution, starting at the single slot and
/// ending at the finished permutation (size + 1 entries).
std::vector<VerticalConfiguration> vertical_evolution(const CayleyPerm& perm);
std::vector<HorizontalConfiguration> horizontal_evolution(const CayleyPerm& perm);

/// Largest number of slots in any configuration of the evolution.
int max_slots(const CayleyPerm& perm, Mode mode);

/// Change in slot count caused by a letter.
int slot_delta(const VerticalLetter& letter);
int slot_delta(const HorizontalLetter& letter);

}  // namespace cayley
