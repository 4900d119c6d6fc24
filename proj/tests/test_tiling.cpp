#include <random>
#include <set>

#include "cayley/classify.hpp"
#include "cayley/enumerate.hpp"
#include "cayley/errors.hpp"
#include "cayley/tiling.hpp"
#include "doctest.h"

using namespace cayley;

namespace {

GriddedPerm gp(std::string_view s) { return GriddedPerm::parse(s); }

std::uint64_t derivations_in(const VerticalConfiguration& c, const Basis& b, std::size_t n) {
  std::uint64_t k = 0;
  for (const auto& p : derivations(c, n))
    if (avoids(p, b)) ++k;
  return k;
}

std::uint64_t residual_count(const Factors& f, std::size_t n) {
  if (n < f.points) return 0;
  if (!f.residual) return n == f.points ? 1 : 0;
  return grid_count(*f.residual, n - f.points);
}

const std::vector<std::string> kBases = {
    "123", "11 231 321", "211 312", "112 212 213 312", "11", "12", "111", "121", "1221",
    "11 123", "212 1234", "21 111", "231 312 121",
};

}  // namespace

TEST_CASE("gridded containment example") {
  const auto big = gp("35125224 @ (0,1),(0,1),(0,0),(0,0),(1,1),(1,0),(1,0),(1,1)");
  CHECK(grid_contains(big, gp("2311 @ (0,1),(0,1),(1,0),(1,0)")));
  CHECK(grid_contains(big, gp("2311 @ (0,1),(0,1),(0,0),(1,0)")));
  CHECK(grid_contains(big, gp("123 @ (0,0),(0,0),(1,1)")));
  CHECK_FALSE(grid_contains(big, gp("21 @ (0,0),(0,0)")));
  CHECK_FALSE(grid_contains(big, gp("1 @ (1,2)")));
  CHECK(grid_contains(big, gp("11 @ (1,0),(1,0)")));
  CHECK_FALSE(grid_contains(big, gp("11 @ (0,0),(0,0)")));
  CHECK_THROWS_AS(gp("12 @ (1,0),(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(gp("12 @ (0,1),(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(gp("11 @ (0,1),(0,0)"), std::invalid_argument);
}

TEST_CASE("gridded containment agrees with subsequence search") {
  std::mt19937 rng(7);
  const auto big = gp("2413121 @ (0,1),(0,1),(1,0),(1,1),(1,0),(2,1),(2,0)");
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::uint32_t mask = 0; mask < (1u << big.size()); ++mask) {
      if (std::popcount(mask) != static_cast<int>(k)) continue;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < big.size(); ++i)
        if (mask >> i & 1u) idx.push_back(i);
      CHECK(grid_contains(big, big.sub(idx)));
    }
  CHECK_FALSE(grid_contains(big, gp("21 @ (0,1),(0,1)")));
}

TEST_CASE("gridded perm text round trip") {
  for (auto s : {"231 @ (0,1),(0,1),(1,0)", "1 @ (3,2)", "11 @ (0,0),(4,0)"})
    CHECK(gp(s).to_string() == s);
}

TEST_CASE("intermediate tiling of 2 _ 2 1 _") {
  const auto t = intermediate_tiling(VerticalConfiguration::parse("2 _ 2 1 _"));
  CHECK(t.width() == 5);
  CHECK(t.height() == 3);
  CHECK(t.point_rows() == std::vector<int>{0, 1});
  std::set<Cell> blocked;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 3; ++y)
      if (t.blocked({x, y})) blocked.insert({x, y});
  const std::set<Cell> expected{{0, 0}, {1, 0}, {2, 0}, {4, 0}, {1, 1},
                                {3, 1}, {0, 2}, {2, 2}, {3, 2}};
  CHECK(blocked == expected);
  for (Cell c : {Cell{0, 1}, Cell{2, 1}, Cell{3, 0}}) {
    CHECK(t.is_point_cell(c));
    CHECK(std::count(t.obstructions().begin(), t.obstructions().end(),
                     GriddedPerm(CayleyPerm{1, 1}, c)) == 1);
  }
  const std::vector<RequirementList> reqs{
      {gp("1 @ (0,1)")}, {gp("1 @ (1,2)")}, {gp("1 @ (2,1)")}, {gp("1 @ (3,0)")},
      {gp("1 @ (4,1)"), gp("1 @ (4,2)")}};
  auto got = t.requirements();
  std::sort(got.begin(), got.end());
  auto want = reqs;
  std::sort(want.begin(), want.end());
  CHECK(got == want);
  CHECK(t.obstructions().size() == 12);
}

TEST_CASE("root tiling counts the class") {
  for (const auto& text : kBases) {
    const auto b = Basis::parse(text);
    const auto root = simplify(Tiling::root(b));
    for (std::size_t n = 1; n <= 6; ++n)
      CHECK((root ? grid_count(*root, n) : 0) == count_avoiders(b, n));
  }
  const auto t = *simplify(Tiling::root(Basis::parse("11 231 321")));
  std::vector<std::uint64_t> got;
  for (std::size_t n = 1; n <= 6; ++n) got.push_back(grid_count(t, n));
  CHECK(got == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32});
  CHECK_FALSE(simplify(Tiling::root(Basis::parse("1"))));
}

TEST_CASE("point tile and trivial tiling") {
  const auto p = Tiling::point_tile();
  CHECK(p.is_point_tile());
  CHECK(p.is_point_cell({0, 0}));
  CHECK(*simplify(p) == p);
  CHECK(grid_count(p, 0) == 0);
  CHECK(grid_count(p, 1) == 1);
  CHECK(grid_count(p, 2) == 0);
  const Tiling empty(0, 0, {}, {});
  CHECK(empty.is_trivial());
  CHECK(grid_count(empty, 0) == 1);
  CHECK(grid_count(empty, 1) == 0);
  CHECK_THROWS_AS(grid_count(p, 11), ResourceCapExceeded);
}

TEST_CASE("configuration tilings count derivations in the class") {
  const std::vector<std::string> configs = {"_", "1 _", "_ 1 _", "2 _ 2 1 _", "1 _ 1 _",
                                            "_ 2 _ 1", "1 1 _", "_ 1 2 _ 1 _"};
  for (const auto& text : kBases) {
    const auto b = Basis::parse(text);
    for (const auto& ct : configs) {
      const auto c = VerticalConfiguration::parse(ct);
      const auto t = config_to_tiling(c, b);
      for (std::size_t n = c.placed_count(); n <= c.placed_count() + 4 && n <= 7; ++n) {
        INFO(text, " / ", ct, " n=", n);
        CHECK((t ? grid_count(*t, n) : 0) == derivations_in(c, b, n));
      }
    }
  }
}

TEST_CASE("simplification keeps the members") {
  std::mt19937 rng(11);
  const std::vector<CayleyPerm> small = {CayleyPerm{1},    CayleyPerm{1, 1}, CayleyPerm{1, 2},
                                         CayleyPerm{2, 1}, CayleyPerm{1, 2, 1},
                                         CayleyPerm{2, 1, 2}, CayleyPerm{1, 2, 3},
                                         CayleyPerm{1, 1, 2}};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 3), h = 1 + static_cast<int>(rng() % 2);
    Tiling shape(w, h, {}, {}, rng() % 2 ? std::vector<int>{0} : std::vector<int>{});
    std::vector<GriddedPerm> obs;
    std::vector<RequirementList> reqs;
    for (int i = 0; i < 4; ++i) {
      auto options = griddings(small[rng() % small.size()], shape);
      if (!options.empty()) obs.push_back(options[rng() % options.size()]);
    }
    for (int i = 0; i < 2; ++i) {
      RequirementList l;
      for (int j = 0; j < 2; ++j) {
        auto options = griddings(small[rng() % 4], shape);
        if (!options.empty()) l.push_back(options[rng() % options.size()]);
      }
      if (!l.empty()) reqs.push_back(l);
    }
    // sometimes a point cell
    if (rng() % 2 && h == 2) {
      const int x = static_cast<int>(rng() % static_cast<unsigned>(w));
      obs.push_back(GriddedPerm::point({x, 1}));
      obs.emplace_back(CayleyPerm{1, 1}, Cell{x, 0});
      reqs.push_back({GriddedPerm::point({x, 0})});
    }
    const Tiling t(w, h, obs, reqs, shape.point_rows());
    const auto s = simplify(t);
    if (s) CHECK(*simplify(*s) == *s);
    for (std::size_t n = 0; n <= 4; ++n) {
      INFO(t.to_string());
      CHECK(grid_count(t, n) == (s ? grid_count(*s, n) : 0));
    }
    if (s) CHECK(grid_empty(*s) == [&] {
      for (std::size_t n = 0; n <= 6; ++n)
        if (grid_count(*s, n)) return false;
      return true;
    }());
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("first insertion into Av(123)") {
  const auto root = *simplify(Tiling::root(Basis::parse("123")));
  const auto kids = expand(root, Mode::vertical);
  CHECK(kids.size() == 4);
  std::set<std::string> letters;
  for (const auto& k : kids) letters.insert(to_string(k.letter));
  CHECK(letters == std::set<std::string>{"f1,1", "l1,1", "r1,1", "m1,1"});
  // B is the l child: one point and the configuration 1 _
  for (const auto& k : kids)
    if (to_string(k.letter) == "l1,1") {
      const auto f = factor(k.tiling);
      CHECK(f.points == 1);
      REQUIRE(f.residual);
      CHECK(f.residual->width() == 1);
      CHECK(f.residual->height() == 2);
      CHECK(expand(k.tiling, Mode::vertical).empty() == false);
      CHECK(expand(*f.residual, Mode::vertical).size() == 8);
    }
  CHECK(expand(root, Mode::horizontal).size() == 8);
}

TEST_CASE("children partition the parent") {
  for (const auto& text : kBases) {
    const auto b = Basis::parse(text);
    const auto root = simplify(Tiling::root(b));
    if (!root) continue;
    for (Mode mode : {Mode::vertical, Mode::horizontal}) {
      std::vector<Tiling> frontier{*root};
      for (int depth = 0; depth < 3; ++depth) {
        std::vector<Tiling> next;
        for (const auto& t : frontier) {
          const auto kids = expand(t, mode);
          for (std::size_t n = 0; n <= 5; ++n) {
            std::uint64_t sum = 0;
            for (const auto& k : kids) sum += grid_count(k.tiling, n);
            INFO(text, " ", to_string(mode), " n=", n, "\n", t.to_string());
            CHECK(sum == grid_count(t, n));
          }
          for (const auto& k : kids) {
            const auto f = factor(k.tiling);
            CHECK(f.points >= 1);
            for (std::size_t n = 0; n <= 5; ++n) CHECK(grid_count(k.tiling, n) == residual_count(f, n));
            if (f.residual) {
              CHECK(f.residual->point_cells().empty());
              CHECK_FALSE(f.residual->requirements().empty());
              if (next.size() < 40) next.push_back(*f.residual);
            }
          }
        }
        frontier = std::move(next);
      }
    }
  }
}

TEST_CASE("basis {1} has no children") {
  CHECK_FALSE(config_to_tiling(VerticalConfiguration::parse("_"), Basis::parse("1")));
}

TEST_CASE("tiling text and json round trip") {
  const auto t = *config_to_tiling(VerticalConfiguration::parse("2 _ 2 1 _"), Basis::parse("123"));
  CHECK(Tiling::parse(t.to_string()) == t);
  CHECK(Tiling::from_json(t.to_json()) == t);
  CHECK(canonical_key(t) == canonical_key(Tiling::parse(t.to_string())));
  const auto root = *simplify(Tiling::root(Basis::parse("123")));
  CHECK(canonical_key(root) != canonical_key(t));
}
