#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/cperm.hpp"
#include "cayley/encoding.hpp"
#include "cayley/polynomial.hpp"
#include "cayley/tiling.hpp"

namespace cayley {

inline constexpr std::size_t kDefaultMaxStates = 10000;

/// The point symbol. It stands for one placed point and carries x.
inline constexpr std::string_view kPointSymbol = "P";

struct Production {
  Letter letter;
  /// Point symbols first, then at most one non-terminal.
  std::vector<std::string> children;
  bool operator==(const Production&) const = default;
};

/// Right-linear grammar produced by exploration. A symbol with no productions
/// generates nothing.
struct RuleSystem {
  Mode mode = Mode::vertical;
  std::string start = "S";
  /// Non-terminals in discovery order.
  std::vector<std::string> symbols;
  std::map<std::string, std::vector<Production>> productions;
  /// Canonical factored tiling of each non-terminal (not serialised).
  std::map<std::string, Tiling> tilings;

  /// Throws std::logic_error when an invariant fails.
  void validate() const;

  std::string to_text() const;
  /// {"start": "S", "mode": "vertical", "symbols": [...],
  ///  "productions": {"S": [{"letter": "m1,1", "children": ["P", "A"]}]}}
  std::string to_json() const;
  static RuleSystem from_json(std::string_view text);

  /// Equal start, mode, symbols and productions.
  bool same_grammar(const RuleSystem& other) const;
};

struct ExploreOptions {
  std::size_t max_states = kDefaultMaxStates;
  bool parallel = true;
};

/// Breadth-first fixpoint over canonical factored tilings. Throws
/// NotSlotBounded when the basis is not regular in `mode`, and
/// ResourceCapExceeded past the state cap.
RuleSystem explore(const Basis& basis, Mode mode, const ExploreOptions& options = {});

/// Generating function of the start symbol, without the empty permutation.
RationalGF solve_gf(const RuleSystem& r);

struct Enumeration {
  RuleSystem rules;
  RationalGF gf;
  std::vector<BigInt> terms;  // sizes 1..terms
};

Enumeration enumerate_class(const Basis& basis, Mode mode, std::size_t terms = 10,
                            const ExploreOptions& options = {});

/// The grammar as an automaton: one state per symbol plus ACCEPT, one edge per
/// placed point. Productions placing k points become chains of k edges.
std::string export_automaton_dot(const RuleSystem& r);
std::string export_automaton_json(const RuleSystem& r);

/// Number of accepted words of each length 1..n, counted on the automaton.
std::vector<BigInt> automaton_path_counts(const RuleSystem& r, std::size_t n);

}  // namespace cayley
