#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayley/cperm.hpp"
#include "cayley/encoding.hpp"

namespace cayley {

/// Grid cell (column, row).
struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

/// A Cayley permutation with one cell per index. Construction rejects
/// griddings that are inconsistent with the pattern.
class GriddedPerm {
 public:
  GriddedPerm() = default;
  GriddedPerm(CayleyPerm pattern, std::vector<Cell> cells);
  /// Every index in the same cell.
  GriddedPerm(CayleyPerm pattern, Cell cell);
  static GriddedPerm point(Cell cell) { return GriddedPerm(CayleyPerm{1}, cell); }

  /// True iff columns are non-decreasing and rows follow the values.
  static bool consistent(std::span<const int> pattern, std::span<const Cell> cells);

  const CayleyPerm& pattern() const { return pattern_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool is_point() const { return cells_.size() == 1; }
  /// True iff every index sits in `c`.
  bool all_in(Cell c) const;

  /// Indices kept in order, standardised.
  GriddedPerm sub(const std::vector<std::size_t>& indices) const;

  /// "231 @ (0,1),(0,1),(1,0)"
  std::string to_string() const;
  static GriddedPerm parse(std::string_view text);

  /// Size, then pattern, then cells.
  std::strong_ordering operator<=>(const GriddedPerm& other) const;
  bool operator==(const GriddedPerm& other) const = default;

 private:
  CayleyPerm pattern_;
  std::vector<Cell> cells_;
};

/// True iff some subsequence of `g` standardises to h's pattern with the same
/// cells index by index.
bool grid_contains(const GriddedPerm& g, const GriddedPerm& h);

using RequirementList = std::vector<GriddedPerm>;

/// Dimensions, obstructions, requirement lists and point rows. All points in a
/// point row share one value. Obstructions and lists are kept sorted.
class Tiling {
 public:
  Tiling() = default;
  Tiling(int width, int height, std::vector<GriddedPerm> obstructions,
         std::vector<RequirementList> requirements, std::vector<int> point_rows = {});

  /// The one-cell tiling for the class Av(basis): each basis pattern as an
  /// obstruction and a point requirement.
  static Tiling root(const Basis& basis);
  /// 1x1 tiling holding exactly one point.
  static Tiling point_tile();

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<GriddedPerm>& obstructions() const { return obstructions_; }
  const std::vector<RequirementList>& requirements() const { return requirements_; }
  const std::vector<int>& point_rows() const { return point_rows_; }
  bool is_point_row(int y) const;

  /// True iff the cell holds a point obstruction.
  bool blocked(Cell c) const;
  /// A cell forced to hold exactly one point that is alone in its column.
  bool is_point_cell(Cell c) const;
  std::vector<Cell> point_cells() const;

  bool is_point_tile() const;
  /// No cells at all (the tiling of the empty gridded permutation).
  bool is_trivial() const { return width_ == 0 && height_ == 0 && requirements_.empty(); }

  /// Does the gridded perm fit the dimensions and the point-row rule?
  bool admits(const GriddedPerm& g) const;
  /// Member of Grid(T): avoids obstructions, meets every requirement list.
  bool accepts(const GriddedPerm& g) const;

  std::string to_string() const;
  static Tiling parse(std::string_view text);
  std::string to_json() const;
  static Tiling from_json(std::string_view text);

  /// Canonical text of the tiling; equal keys iff equal tilings.
  std::string key() const { return to_string(); }

  auto operator<=>(const Tiling&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<GriddedPerm> obstructions_;
  std::vector<RequirementList> requirements_;
  std::vector<int> point_rows_;
};

/// Applies the simplification rules until nothing changes. Returns nullopt
/// when the tiling is recognised as representing the empty set.
std::optional<Tiling> simplify(const Tiling& t);

inline std::string canonical_key(const Tiling& t) { return t.key(); }

/// Number of size-n members of Grid(T). Throws ResourceCapExceeded if n > max_size.
std::uint64_t grid_count(const Tiling& t, std::size_t n, std::size_t max_size = 10);
/// The members themselves, in construction order.
std::vector<GriddedPerm> grid_members(const Tiling& t, std::size_t n, std::size_t max_size = 10);
/// Exact test for Grid(T) being empty.
bool grid_empty(const Tiling& t);

/// The tiling of a vertical configuration with the basis added as obstructions,
/// simplified. nullopt when it has no derivations in the class.
std::optional<Tiling> config_to_tiling(const VerticalConfiguration& c, const Basis& basis);
/// The same construction before any basis obstruction or simplification.
Tiling intermediate_tiling(const VerticalConfiguration& c);

/// Every gridding of `pattern` into cells of t that are not blocked.
std::vector<GriddedPerm> griddings(const CayleyPerm& pattern, const Tiling& t);

/// Splits a tiling into point tiles and at most one residual tiling with no
/// point cells. The residual is omitted when nothing is left.
struct Factors {
  std::size_t points = 0;
  std::optional<Tiling> residual;
};
Factors factor(const Tiling& t);
/// The same split as a list of tilings, point tiles first.
std::vector<Tiling> factor_list(const Tiling& t);

struct Child {
  Letter letter;
  Tiling tiling;  // simplified, point cell still present
};

/// One child per letter whose tiling is not empty.
std::vector<Child> expand(const Tiling& t, Mode mode);

}  // namespace cayley
