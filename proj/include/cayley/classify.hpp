#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cayley/cperm.hpp"
#include "cayley/encoding.hpp"

namespace cayley {

/// Strictly increasing, strictly decreasing, or constant.
enum class Shape : char { I = 'I', D = 'D', C = 'C' };

/// V_{lower,upper}: entries up to some threshold have shape `lower`, the
/// entries above it have shape `upper`.
struct VerticalJuxClass {
  Shape lower = Shape::I;
  Shape upper = Shape::I;
  auto operator<=>(const VerticalJuxClass&) const = default;
};

/// H_{left,right}: a permutation whose prefix has shape `left` and suffix
/// shape `right` (both I or D).
struct HorizontalJuxClass {
  Shape left = Shape::I;
  Shape right = Shape::I;
  auto operator<=>(const HorizontalJuxClass&) const = default;
};

std::array<VerticalJuxClass, 9> vertical_jux_classes();
std::array<HorizontalJuxClass, 4> horizontal_jux_classes();

std::string to_string(const VerticalJuxClass& c);    // "V(C,I)"
std::string to_string(const HorizontalJuxClass& c);  // "H(I,D)"

bool in_vertical_jux(const CayleyPerm& p, const VerticalJuxClass& c);
bool in_horizontal_jux(const CayleyPerm& p, const HorizontalJuxClass& c);

/// Embedded bases of the nine vertical juxtaposition classes.
Basis vertical_jux_basis(const VerticalJuxClass& c);

/// First juxtaposition class with no member in `basis`, if any.
std::optional<VerticalJuxClass> missing_vertical_class(const Basis& basis);
std::optional<HorizontalJuxClass> missing_horizontal_class(const Basis& basis);

bool is_vertical_regular(const Basis& basis);
bool is_horizontal_regular(const Basis& basis);
bool is_regular(const Basis& basis, Mode mode);

/// The size-2n alternation a1 b1 ... an bn with every b above every a.
CayleyPerm vertical_alternation(const VerticalJuxClass& c, std::size_t n);
/// The size-2n alternation: the odd values in the prefix, the even values after.
CayleyPerm horizontal_alternation(const HorizontalJuxClass& c, std::size_t n);

struct SurveyRow {
  std::size_t basis_size = 0;
  std::size_t classes = 0;
  std::size_t vertical = 0;
  std::size_t horizontal = 0;
  std::size_t either = 0;
  bool operator==(const SurveyRow&) const = default;
};

struct Survey {
  std::vector<SurveyRow> rows;  // basis sizes 1..13
  std::size_t total_either = 0;

  std::string to_text() const;
  std::string to_json() const;
};

/// Regularity of every non-empty set of size-3 patterns. OpenMP-parallel.
Survey survey_size3();
Survey survey_size3_serial();

/// Size-n Cayley permutations whose evolution passes through `c`.
/// Throws ResourceCapExceeded if n > max_size.
std::vector<CayleyPerm> derivations(const VerticalConfiguration& c, std::size_t n,
                                    std::size_t max_size = 10);
std::vector<CayleyPerm> derivations(const HorizontalConfiguration& c, std::size_t n,
                                    std::size_t max_size = 10);

/// The configurations whose derivations form the basis of the horizontal
/// k-slot class: k+1 slots, a permutation prefix, no values outside the slots
/// or next to a repeating slot, no three repeating slots in a row and no two at
/// either end.
std::vector<HorizontalConfiguration> horizontal_basis_configurations(int k);

/// Basis of the class whose vertical evolutions use at most k slots.
/// Throws ResourceCapExceeded if k > max_k.
Basis sb_basis(int k, int max_k = 3);
/// Basis of the class whose horizontal evolutions use at most k slots.
Basis hsb_basis(int k, int max_k = 3);

}  // namespace cayley
