#include <random>

#include "cayley/classify.hpp"
#include "cayley/engine.hpp"
#include "cayley/enumerate.hpp"
#include "cayley/errors.hpp"
#include "doctest.h"

using namespace cayley;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

RationalGF gf(std::string_view s) { return RationalGF::parse(s); }

std::vector<BigInt> brute(const Basis& b, std::size_t n) {
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= n; ++k) out.emplace_back(count_avoiders(b, k));
  return out;
}

Production prod(std::string_view letter, std::vector<std::string> children) {
  return {parse_letter(letter, Mode::vertical), std::move(children)};
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Polynomial a{1, -1};  // 1 - x
  const Polynomial b{1, 1};
  CHECK(a * b == Polynomial{1, 0, -1});
  CHECK(a + b == Polynomial{2});
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK(exact_div(Polynomial{1, 0, -1}, a) == b);
  CHECK_THROWS_AS(exact_div(Polynomial{1, 0, 1}, a), std::domain_error);
  CHECK(Polynomial{0, 2, 0, 0} == Polynomial{0, 2});
  CHECK(Polynomial{4, 6}.content() == 2);
  CHECK(Polynomial{1, -5, 6}.to_string() == "1 - 5x + 6x^2");
  CHECK(Polynomial{0, -1}.to_string() == "-x");
}

TEST_CASE("polynomial gcd") {
  const Polynomial p{1, -3};     // 1 - 3x
  const Polynomial q{2, 1, 1};   // 2 + x + x^2
  const Polynomial r{-1, 0, 5};  // -1 + 5x^2
  CHECK(gcd(p * q, p * r) == -p);
  CHECK(gcd(q, r) == Polynomial{1});
  CHECK(gcd(p.scaled(6) * q, p.scaled(4)) == -p);
  CHECK(gcd(Polynomial{}, q) == q);
}

TEST_CASE("rational normal form is unique") {
  const RationalGF g(Polynomial{0, 1}, Polynomial{1, -3});
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<BigInt> c;
    for (int k = 0; k < 4; ++k) c.emplace_back(static_cast<int>(rng() % 11) - 5);
    const Polynomial m(c);
    if (m.is_zero()) continue;
    CHECK(RationalGF(g.num() * m, g.den() * m) == g);
    CHECK(RationalGF(g.num() * m.scaled(-7), g.den() * m.scaled(-7)) == g);
  }
  const RationalGF neg(Polynomial{0, 1, -2, 2}.scaled(-1), Polynomial{1, -5, 6, -4}.scaled(-1));
  CHECK(neg.num() == Polynomial{0, 1, -2, 2});
  CHECK(neg.den() == Polynomial{1, -5, 6, -4});
  CHECK_THROWS_AS(RationalGF(Polynomial{1}, Polynomial{}), std::domain_error);
  CHECK(RationalGF(Polynomial{}, Polynomial{3, 1}).den() == Polynomial{1});
}

TEST_CASE("generating function text") {
  CHECK(gf("x/(1-3x)") == RationalGF(Polynomial{0, 1}, Polynomial{1, -3}));
  CHECK(gf("(2x^2 - 2x^3 - x)/(4x^3 - 6x^2 + 5x - 1)") ==
        RationalGF(Polynomial{0, 1, -2, 2}, Polynomial{1, -5, 6, -4}));
  CHECK(gf("(4x^{4} - 2x^3 + 7x^2 - 4x + 1)/((x - 1)^3 (2x - 1))").den() ==
        (Polynomial{-1, 1} * Polynomial{-1, 1} * Polynomial{-1, 1} * Polynomial{-1, 2}));
  CHECK(gf("x").to_string() == "x");
  CHECK(gf("x/(1-3x)").to_string() == "x/(1 - 3x)");
  CHECK_THROWS_AS(gf("x/(1-"), std::invalid_argument);
  CHECK_THROWS_AS(gf("y"), std::invalid_argument);
  for (auto s : {"x/(1-3x)", "(x - 2x^2 + 2x^3)/(1 - 5x + 6x^2 - 4x^3)", "0", "x^2"})
    CHECK(RationalGF::from_json(gf(s).to_json()) == gf(s));
  const RationalGF huge(Polynomial::monomial(BigInt("123456789012345678901234567890"), 1),
                        Polynomial{1, -1});
  CHECK(RationalGF::from_json(huge.to_json()) == huge);
}

TEST_CASE("series") {
  CHECK(series(gf("x/(1-3x)"), 6) == big({1, 3, 9, 27, 81, 243}));
  CHECK(series(gf("x"), 3) == big({1, 0, 0}));
  CHECK(series(gf("(x - 2x^2 + 2x^3)/(1 - 5x + 6x^2 - 4x^3)"), 10) ==
        big({1, 3, 11, 41, 151, 553, 2023, 7401, 27079, 99081}));
  CHECK(taylor(gf("1/(1-x)"), 3) == big({1, 1, 1, 1}));
  CHECK_THROWS_AS(series(gf("1/x"), 2), std::domain_error);
}

TEST_CASE("solving hand-built systems") {
  // S = x + xA + xS, A = S + x + xA + xS
  RuleSystem r;
  r.symbols = {"S", "A"};
  r.productions["S"] = {prod("f1,1", {"P"}), prod("l1,1", {"P", "A"}), prod("r1,1", {"P", "S"})};
  r.productions["A"] = {prod("f1,1", {"S"}), prod("f1,0", {"P"}), prod("l1,0", {"P", "A"}),
                        prod("r1,0", {"P", "S"})};
  CHECK(solve_gf(r) == gf("x/(1-3x)"));
  // the same system listed in another order
  RuleSystem swapped = r;
  swapped.symbols = {"A", "S"};
  CHECK(solve_gf(swapped) == gf("x/(1-3x)"));

  RuleSystem one;
  one.symbols = {"S"};
  one.productions["S"] = {prod("f1,1", {"P"})};
  CHECK(solve_gf(one) == gf("x"));

  RuleSystem empty;
  empty.symbols = {"S"};
  empty.productions["S"] = {};
  CHECK(solve_gf(empty).is_zero());
  CHECK(automaton_path_counts(empty, 3) == big({0, 0, 0}));

  RuleSystem loop;
  loop.symbols = {"S"};
  loop.productions["S"] = {prod("f1,1", {"S"})};
  CHECK_THROWS_AS(solve_gf(loop), SingularSystem);

  RuleSystem bad = one;
  bad.productions["S"].push_back(prod("l1,1", {"P", "Q"}));
  CHECK_THROWS_AS(bad.validate(), std::logic_error);
  bad.productions["S"].back() = prod("l1,1", {"P", "S", "S"});
  CHECK_THROWS_AS(bad.validate(), std::logic_error);
}

TEST_CASE("SB(1) class") {
  const auto e = enumerate_class(Basis::parse("112 212 213 312"), Mode::vertical, 10);
  CHECK(e.gf.cross_equal(gf("x/(1-3x)")));
  CHECK(e.terms == big({1, 3, 9, 27, 81, 243, 729, 2187, 6561, 19683}));
  CHECK(automaton_path_counts(e.rules, 6) == big({1, 3, 9, 27, 81, 243}));
  CHECK(e.rules.start == "S");
  CHECK(e.rules.productions.at("S").size() == 4);
}

TEST_CASE("hare pop-stack sortable class") {
  const auto e = enumerate_class(Basis::parse("231 312 2121"), Mode::vertical, 10);
  CHECK(e.gf.cross_equal(gf("(2x^2 - 2x^3 - x)/(4x^3 - 6x^2 + 5x - 1)")));
  CHECK(e.terms == big({1, 3, 11, 41, 151, 553, 2023, 7401, 27079, 99081}));
  CHECK(e.rules.symbols.size() == 9);
  CHECK(automaton_path_counts(e.rules, 8) == series(e.gf, 8));
  CHECK(series(e.gf, 8) == brute(Basis::parse("231 312 2121"), 8));
}

TEST_CASE("exploration errors") {
  CHECK_THROWS_AS(explore(Basis::parse("211 312"), Mode::vertical), NotSlotBounded);
  CHECK_THROWS_AS(explore(Basis::parse("123"), Mode::horizontal), NotSlotBounded);
  ExploreOptions tight;
  tight.max_states = 3;
  CHECK_THROWS_AS(explore(Basis::parse("231 312 2121"), Mode::vertical, tight), ResourceCapExceeded);
  const auto r = explore(Basis::parse("1"), Mode::vertical);
  CHECK(solve_gf(r).is_zero());
}

TEST_CASE("parallel and serial exploration agree") {
  for (auto [text, mode] : {std::pair{"231 312 2121", Mode::vertical},
                            std::pair{"123 231", Mode::horizontal},
                            std::pair{"132 213", Mode::horizontal}}) {
    const auto b = Basis::parse(text);
    ExploreOptions serial;
    serial.parallel = false;
    const auto a = explore(b, mode), s = explore(b, mode, serial);
    CHECK(a.same_grammar(s));
    CHECK(a.to_json() == s.to_json());
  }
}

TEST_CASE("rule system json round trip") {
  for (auto [text, mode] : {std::pair{"231 312 2121", Mode::vertical},
                            std::pair{"123 321", Mode::horizontal}}) {
    const auto r = explore(Basis::parse(text), mode);
    const auto back = RuleSystem::from_json(r.to_json());
    CHECK(back.same_grammar(r));
    CHECK(solve_gf(back) == solve_gf(r));
  }
  CHECK_THROWS(RuleSystem::from_json(R"({"start":"S","productions":{"S":[{"letter":"f1,1","children":["P","A"]}]}})"));
}

TEST_CASE("automaton export") {
  const auto r = explore(Basis::parse("112 212 213 312"), Mode::vertical);
  const auto dot = export_automaton_dot(r);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("ACCEPT") != std::string::npos);
  CHECK(dot.find("[label=\"f1,1\"]") != std::string::npos);
  const auto json = export_automaton_json(r);
  CHECK(json.find("\"transitions\"") != std::string::npos);
}

TEST_CASE("computed series match brute force") {
  std::vector<std::pair<std::string, Mode>> cases;
  for (auto t : {"112 212 213 312", "231 312 2121", "11 231 321", "11 12", "111 123 321",
                 "211 212 213 312"})
    cases.emplace_back(t, Mode::vertical);
  for (auto t : {"123 321", "123 132", "132 213", "123 231", "11 123 321", "112 121 212 213 221 231"})
    cases.emplace_back(t, Mode::horizontal);
  for (const auto& [text, mode] : cases) {
    INFO(text, " ", to_string(mode));
    const auto b = Basis::parse(text);
    const auto e = enumerate_class(b, mode, 8);
    CHECK(e.terms == brute(b, 8));
    CHECK(automaton_path_counts(e.rules, 7) == brute(b, 7));
  }
}
