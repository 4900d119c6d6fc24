#include "cayley/engine.hpp"

#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cayley/classify.hpp"
#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

namespace {

std::string symbol_name(std::size_t index) {
  static constexpr std::string_view kLetters = "ABCDEFGHIJKLMNOQRTUVWXYZ";
  if (index == 0) return "S";
  const std::size_t j = index - 1;
  std::string out(1, kLetters[j % kLetters.size()]);
  if (j >= kLetters.size()) out += std::to_string(j / kLetters.size());
  return out;
}

bool is_point(const std::string& s) { return s == kPointSymbol; }

struct Expansion {
  Letter letter;
  std::size_t points = 0;
  std::optional<Tiling> residual;
};

std::vector<Expansion> expand_state(const Tiling& t, Mode mode) {
  std::vector<Expansion> out;
  for (auto& child : expand(t, mode)) {
    auto f = factor(child.tiling);
    if (f.residual && f.residual->requirements().empty())
      throw std::logic_error("residual tiling without requirements:\n" + f.residual->to_string());
    out.push_back({child.letter, f.points, std::move(f.residual)});
  }
  return out;
}

std::string basis_text(const Basis& b) { return b.to_string(); }

}  // namespace

// ---------------------------------------------------------------------------

void RuleSystem::validate() const {
  if (std::find(symbols.begin(), symbols.end(), start) == symbols.end())
    throw std::logic_error("start symbol " + start + " is not bound");
  if (productions.size() != symbols.size())
    throw std::logic_error("every symbol needs exactly one production set");
  for (const auto& s : symbols) {
    const auto it = productions.find(s);
    if (it == productions.end()) throw std::logic_error("symbol " + s + " has no production set");
    for (const auto& p : it->second) {
      std::size_t non_terminal = 0;
      bool seen_non_terminal = false;
      for (const auto& c : p.children) {
        if (is_point(c)) {
          if (seen_non_terminal) throw std::logic_error("point symbols must come first");
          continue;
        }
        seen_non_terminal = true;
        ++non_terminal;
        if (!productions.count(c)) throw std::logic_error("child symbol " + c + " is not bound");
      }
      if (non_terminal > 1) throw std::logic_error("production of " + s + " is not right-linear");
    }
  }
}

std::string RuleSystem::to_text() const {
  std::ostringstream out;
  for (const auto& s : symbols) {
    out << s << " ->";
    const auto& ps = productions.at(s);
    if (ps.empty()) out << " (empty)";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      out << (i ? " | " : " ") << to_string(ps[i].letter);
      for (const auto& c : ps[i].children) out << " " << c;
    }
    out << "\n";
  }
  return out.str();
}

std::string RuleSystem::to_json() const {
  nlohmann::ordered_json j;
  j["start"] = start;
  j["mode"] = std::string(to_string(mode));
  j["symbols"] = symbols;
  nlohmann::ordered_json prods = nlohmann::ordered_json::object();
  for (const auto& s : symbols) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& p : productions.at(s)) {
      nlohmann::ordered_json e;
      e["letter"] = to_string(p.letter);
      e["children"] = p.children;
      list.push_back(e);
    }
    prods[s] = list;
  }
  j["productions"] = prods;
  return j.dump();
}

RuleSystem RuleSystem::from_json(std::string_view text) {
  const auto j = nlohmann::ordered_json::parse(text);
  RuleSystem r;
  r.start = j.at("start").get<std::string>();
  r.mode = j.contains("mode") ? parse_mode(j.at("mode").get<std::string>()) : Mode::vertical;
  for (const auto& [sym, list] : j.at("productions").items()) {
    auto& out = r.productions[sym];
    for (const auto& e : list)
      out.push_back({parse_letter(e.at("letter").get<std::string>(), r.mode),
                     e.at("children").get<std::vector<std::string>>()});
  }
  if (j.contains("symbols")) {
    r.symbols = j.at("symbols").get<std::vector<std::string>>();
  } else {
    r.symbols.push_back(r.start);
    for (const auto& [sym, list] : j.at("productions").items())
      if (sym != r.start) r.symbols.push_back(sym);
  }
  r.validate();
  return r;
}

bool RuleSystem::same_grammar(const RuleSystem& o) const {
  return mode == o.mode && start == o.start && symbols == o.symbols && productions == o.productions;
}

// ---------------------------------------------------------------------------

RuleSystem explore(const Basis& basis, Mode mode, const ExploreOptions& options) {
  if (mode == Mode::vertical) {
    if (auto miss = missing_vertical_class(basis))
      throw NotSlotBounded("Av(" + basis_text(basis) + ") contains every member of " +
                           to_string(*miss) + ", so its vertical encodings are not regular");
  } else if (auto miss = missing_horizontal_class(basis)) {
    throw NotSlotBounded("Av(" + basis_text(basis) + ") contains every member of " +
                         to_string(*miss) + ", so its horizontal encodings are not regular");
  }

  RuleSystem r;
  r.mode = mode;
  r.symbols = {"S"};
  r.productions["S"] = {};
  const auto root = simplify(Tiling::root(basis));
  if (!root) return r;
  r.tilings.emplace("S", *root);

  std::unordered_map<std::string, std::string> names{{root->key(), "S"}};
  std::vector<std::string> frontier{"S"};
  while (!frontier.empty()) {
    std::vector<Tiling> states;
    for (const auto& s : frontier) states.push_back(r.tilings.at(s));
    std::vector<std::vector<Expansion>> results(states.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        results[static_cast<std::size_t>(i)] = expand_state(states[static_cast<std::size_t>(i)], mode);
      } catch (...) {
#pragma omp critical(cayley_explore_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    // merge in frontier order so names do not depend on scheduling
    std::vector<std::string> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      auto& prods = r.productions[frontier[i]];
      for (auto& e : results[i]) {
        std::vector<std::string> children(e.points, std::string(kPointSymbol));
        if (e.residual) {
          const auto key = e.residual->key();
          auto it = names.find(key);
          if (it == names.end()) {
            if (r.symbols.size() >= options.max_states)
              throw ResourceCapExceeded("exploration of Av(" + basis_text(basis) +
                                        ") exceeded the cap of " +
                                        std::to_string(options.max_states) + " states");
            const auto name = symbol_name(r.symbols.size());
            it = names.emplace(key, name).first;
            r.symbols.push_back(name);
            r.productions[name] = {};
            r.tilings.emplace(name, std::move(*e.residual));
            next.push_back(name);
          }
          children.push_back(it->second);
        }
        prods.push_back({e.letter, std::move(children)});
      }
    }
    frontier = std::move(next);
  }
  r.validate();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Polynomial row_gcd(const std::vector<Polynomial>& row) {
  Polynomial g;
  for (const auto& p : row) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.primitive() : gcd(g, p);
    if (g.degree() == 0) break;
  }
  return g;
}

}  // namespace

RationalGF solve_gf(const RuleSystem& r) {
  r.validate();
  const std::size_t n = r.symbols.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[r.symbols[i]] = i;
  // augmented rows [M | b] with X_i - sum x^k X_child = sum x^k
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] += Polynomial{1};
    for (const auto& p : r.productions.at(r.symbols[i])) {
      std::size_t points = 0;
      std::optional<std::size_t> child;
      for (const auto& c : p.children) {
        if (is_point(c)) ++points;
        else child = index.at(c);
      }
      const auto term = Polynomial::monomial(1, points);
      if (child) m[i][*child] -= term;
      else m[i][n] += term;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = k; i < n; ++i)
      if (!m[i][k].is_zero() && (!pivot || m[i][k].degree() < m[*pivot][k].degree())) pivot = i;
    if (!pivot) throw SingularSystem("no pivot for symbol " + r.symbols[k]);
    std::swap(m[k], m[*pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k].is_zero()) continue;
      const Polynomial a = m[k][k], b = m[i][k];
      for (std::size_t j = 0; j <= n; ++j) m[i][j] = a * m[i][j] - b * m[k][j];
      const auto g = row_gcd(m[i]);
      if (!g.is_zero() && !(g == Polynomial{1}))
        for (auto& p : m[i])
          if (!p.is_zero()) p = exact_div(p, g);
    }
  }
  // rows were swapped, so find the row whose pivot is the start symbol's column
  const std::size_t s = index.at(r.start);
  return RationalGF(m[s][n], m[s][s]);
}

Enumeration enumerate_class(const Basis& basis, Mode mode, std::size_t terms,
                            const ExploreOptions& options) {
  Enumeration e;
  e.rules = explore(basis, mode, options);
  e.gf = solve_gf(e.rules);
  e.terms = series(e.gf, terms);
  return e;
}

// ---------------------------------------------------------------------------

namespace {

struct Edge {
  std::string from, to, label;
};

struct Automaton {
  std::vector<std::string> states;
  std::vector<Edge> edges;
};

constexpr std::string_view kAccept = "ACCEPT";

Automaton build_automaton(const RuleSystem& r) {
  Automaton a;
  a.states = r.symbols;
  a.states.emplace_back(kAccept);
  for (const auto& s : r.symbols) {
    const auto& ps = r.productions.at(s);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const auto& p = ps[i];
      std::size_t points = 0;
      std::string target(kAccept);
      for (const auto& c : p.children) {
        if (is_point(c)) ++points;
        else target = c;
      }
      if (points == 0) throw std::logic_error("production of " + s + " places no point");
      // the letter places one point; forced extra points follow as P edges
      std::string from = s;
      std::string label = to_string(p.letter);
      for (std::size_t k = 1; k < points; ++k) {
        const auto mid = s + "." + std::to_string(i) + "." + std::to_string(k);
        a.states.push_back(mid);
        a.edges.push_back({from, mid, label});
        from = mid;
        label = std::string(kPointSymbol);
      }
      a.edges.push_back({from, target, label});
    }
  }
  return a;
}

}  // namespace

std::string export_automaton_dot(const RuleSystem& r) {
  const auto a = build_automaton(r);
  std::ostringstream out;
  out << "digraph rules {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (const auto& s : a.states) {
    out << "  \"" << s << "\"";
    if (s == kAccept) out << " [shape=doublecircle]";
    else if (s.find('.') != std::string::npos) out << " [shape=point]";
    out << ";\n";
  }
  out << "  __start -> \"" << r.start << "\";\n";
  for (const auto& e : a.edges)
    out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.label << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string export_automaton_json(const RuleSystem& r) {
  const auto a = build_automaton(r);
  nlohmann::ordered_json j;
  j["start"] = r.start;
  j["accept"] = std::string(kAccept);
  j["states"] = a.states;
  j["transitions"] = nlohmann::ordered_json::array();
  for (const auto& e : a.edges) j["transitions"].push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  return j.dump();
}

std::vector<BigInt> automaton_path_counts(const RuleSystem& r, std::size_t n) {
  const auto a = build_automaton(r);
  std::unordered_map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < a.states.size(); ++i) id[a.states[i]] = i;
  std::vector<BigInt> ways(a.states.size(), 0);
  ways[id.at(r.start)] = 1;
  const std::size_t accept = id.at(std::string(kAccept));
  std::vector<BigInt> out;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<BigInt> next(a.states.size(), 0);
    for (const auto& e : a.edges) next[id.at(e.to)] += ways[id.at(e.from)];
    out.push_back(next[accept]);
    next[accept] = 0;
    ways = std::move(next);
  }
  return out;
}

}  // namespace cayley
