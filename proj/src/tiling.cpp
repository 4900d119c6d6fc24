#include "cayley/tiling.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// Gridded permutations

bool GriddedPerm::consistent(std::span<const int> pattern, std::span<const Cell> cells) {
  if (pattern.size() != cells.size()) return false;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (cells[i].x > cells[j].x) return false;
      if (pattern[i] < pattern[j] && cells[i].y > cells[j].y) return false;
      if (pattern[i] > pattern[j] && cells[i].y < cells[j].y) return false;
      if (pattern[i] == pattern[j] && cells[i].y != cells[j].y) return false;
    }
  return true;
}

GriddedPerm::GriddedPerm(CayleyPerm pattern, std::vector<Cell> cells)
    : pattern_(std::move(pattern)), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (c.x < 0 || c.y < 0) throw std::invalid_argument("negative cell coordinate");
  if (!consistent(pattern_.values(), cells_))
    throw std::invalid_argument("positions are not consistent with the pattern");
}

GriddedPerm::GriddedPerm(CayleyPerm pattern, Cell cell)
    : GriddedPerm(pattern, std::vector<Cell>(pattern.size(), cell)) {}

bool GriddedPerm::all_in(Cell c) const {
  return std::all_of(cells_.begin(), cells_.end(), [&](const Cell& d) { return d == c; });
}

GriddedPerm GriddedPerm::sub(const std::vector<std::size_t>& indices) const {
  std::vector<int> values;
  std::vector<Cell> cells;
  for (std::size_t i : indices) {
    values.push_back(pattern_[i]);
    cells.push_back(cells_[i]);
  }
  GriddedPerm out;
  out.pattern_ = standardise(values);
  out.cells_ = std::move(cells);
  return out;
}

std::string GriddedPerm::to_string() const {
  std::string out = pattern_.empty() ? std::string("0") : pattern_.to_string();
  out += " @ ";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(cells_[i].x) + "," + std::to_string(cells_[i].y) + ")";
  }
  return out;
}

GriddedPerm GriddedPerm::parse(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) throw std::invalid_argument("gridded perm needs '@'");
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const auto pat_text = trim(text.substr(0, at));
  CayleyPerm pattern = pat_text == "0" ? CayleyPerm() : CayleyPerm::parse(pat_text);
  std::vector<Cell> cells;
  std::string rest(trim(text.substr(at + 1)));
  std::size_t i = 0;
  while (i < rest.size()) {
    const auto open = rest.find('(', i);
    if (open == std::string::npos) break;
    const auto close = rest.find(')', open);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced cell");
    int x = 0, y = 0;
    if (std::sscanf(rest.substr(open, close - open + 1).c_str(), "(%d,%d)", &x, &y) != 2)
      throw std::invalid_argument("bad cell '" + rest.substr(open, close - open + 1) + "'");
    cells.push_back({x, y});
    i = close + 1;
  }
  if (cells.size() != pattern.size()) throw std::invalid_argument("one cell per index needed");
  return GriddedPerm(std::move(pattern), std::move(cells));
}

std::strong_ordering GriddedPerm::operator<=>(const GriddedPerm& other) const {
  if (auto c = size() <=> other.size(); c != 0) return c;
  if (auto c = pattern_ <=> other.pattern_; c != 0) return c;
  return cells_ <=> other.cells_;
}

namespace {

// Backtracking occurrence search shared by containment checks. When
// `last_fixed` is set, h's last index must land on g's last index.
struct GridMatcher {
  std::span<const int> gv;
  std::span<const Cell> gc;
  std::span<const int> hv;
  std::span<const Cell> hc;
  int hmax;
  std::vector<int> image;

  bool fits(int pv, int tv) const {
    if (image[pv] != 0) return image[pv] == tv;
    for (int below = pv - 1; below >= 1; --below)
      if (image[below] != 0) {
        if (tv <= image[below]) return false;
        break;
      }
    for (int above = pv + 1; above <= hmax; ++above)
      if (image[above] != 0) {
        if (tv >= image[above]) return false;
        break;
      }
    return true;
  }

  bool match(std::size_t pi, std::size_t ti, std::size_t tend) {
    if (pi == hv.size()) return true;
    const std::size_t remaining = hv.size() - pi;
    for (std::size_t t = ti; t + remaining <= tend; ++t) {
      if (gc[t] != hc[pi]) continue;
      const int pv = hv[pi];
      if (!fits(pv, gv[t])) continue;
      const bool fresh = image[pv] == 0;
      if (fresh) image[pv] = gv[t];
      if (match(pi + 1, t + 1, tend)) return true;
      if (fresh) image[pv] = 0;
    }
    return false;
  }
};

bool contains_raw(std::span<const int> gv, std::span<const Cell> gc, const GriddedPerm& h,
                  bool last_fixed) {
  if (h.empty()) return true;
  if (h.size() > gv.size()) return false;
  GridMatcher m{gv, gc, h.pattern().values(), h.cells(), h.pattern().max_value(),
                std::vector<int>(static_cast<std::size_t>(h.pattern().max_value()) + 1, 0)};
  if (!last_fixed) return m.match(0, 0, gv.size());
  const std::size_t k = h.size(), n = gv.size();
  if (gc[n - 1] != h.cells()[k - 1]) return false;
  m.image[static_cast<std::size_t>(h.pattern()[k - 1])] = gv[n - 1];
  // the fixed last value must still respect order with the others
  m.hv = h.pattern().values().subspan(0, k - 1);
  m.hc = std::span<const Cell>(h.cells()).subspan(0, k - 1);
  return m.match(0, 0, n - 1);
}

}  // namespace

bool grid_contains(const GriddedPerm& g, const GriddedPerm& h) {
  return contains_raw(g.pattern().values(), g.cells(), h, false);
}

// ---------------------------------------------------------------------------
// Tilings

namespace {

void normalise_lists(std::vector<RequirementList>& lists) {
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  std::sort(lists.begin(), lists.end());
  lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
}

}  // namespace

Tiling::Tiling(int width, int height, std::vector<GriddedPerm> obstructions,
               std::vector<RequirementList> requirements, std::vector<int> point_rows)
    : width_(width),
      height_(height),
      obstructions_(std::move(obstructions)),
      requirements_(std::move(requirements)),
      point_rows_(std::move(point_rows)) {
  if (width_ < 0 || height_ < 0) throw std::invalid_argument("negative tiling dimensions");
  auto inside = [&](const GriddedPerm& g) {
    for (const auto& c : g.cells())
      if (c.x >= width_ || c.y >= height_) return false;
    return true;
  };
  for (const auto& o : obstructions_)
    if (!inside(o)) throw std::invalid_argument("obstruction outside the tiling");
  for (const auto& l : requirements_) {
    if (l.empty()) throw std::invalid_argument("empty requirement list");
    for (const auto& r : l)
      if (!inside(r)) throw std::invalid_argument("requirement outside the tiling");
  }
  for (int y : point_rows_)
    if (y < 0 || y >= height_) throw std::invalid_argument("point row outside the tiling");
  std::sort(obstructions_.begin(), obstructions_.end());
  obstructions_.erase(std::unique(obstructions_.begin(), obstructions_.end()), obstructions_.end());
  normalise_lists(requirements_);
  std::sort(point_rows_.begin(), point_rows_.end());
  point_rows_.erase(std::unique(point_rows_.begin(), point_rows_.end()), point_rows_.end());
}

Tiling Tiling::root(const Basis& basis) {
  std::vector<GriddedPerm> obs;
  for (const auto& p : basis) obs.emplace_back(p, Cell{0, 0});
  return Tiling(1, 1, std::move(obs), {{GriddedPerm::point({0, 0})}});
}

Tiling Tiling::point_tile() {
  return Tiling(1, 1, {GriddedPerm(CayleyPerm{1, 1}, Cell{0, 0})}, {{GriddedPerm::point({0, 0})}},
                {0});
}

bool Tiling::is_point_row(int y) const {
  return std::binary_search(point_rows_.begin(), point_rows_.end(), y);
}

bool Tiling::blocked(Cell c) const {
  return std::binary_search(obstructions_.begin(), obstructions_.end(), GriddedPerm::point(c));
}

bool Tiling::is_point_cell(Cell c) const {
  if (!is_point_row(c.y)) return false;
  const RequirementList single{GriddedPerm::point(c)};
  if (!std::binary_search(requirements_.begin(), requirements_.end(), single)) return false;
  if (!std::binary_search(obstructions_.begin(), obstructions_.end(),
                          GriddedPerm(CayleyPerm{1, 1}, c)))
    return false;
  for (int y = 0; y < height_; ++y)
    if (y != c.y && !blocked({c.x, y})) return false;
  return true;
}

std::vector<Cell> Tiling::point_cells() const {
  std::vector<Cell> out;
  for (const auto& l : requirements_)
    if (l.size() == 1 && l[0].is_point() && is_point_cell(l[0].cells()[0]))
      out.push_back(l[0].cells()[0]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Tiling::is_point_tile() const { return *this == point_tile(); }

bool Tiling::admits(const GriddedPerm& g) const {
  const auto& cells = g.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].x >= width_ || cells[i].y >= height_) return false;
    if (!is_point_row(cells[i].y)) continue;
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (cells[j].y == cells[i].y && g.pattern()[i] != g.pattern()[j]) return false;
  }
  return true;
}

bool Tiling::accepts(const GriddedPerm& g) const {
  if (!admits(g)) return false;
  for (const auto& o : obstructions_)
    if (grid_contains(g, o)) return false;
  for (const auto& l : requirements_) {
    bool met = false;
    for (const auto& r : l) met = met || grid_contains(g, r);
    if (!met) return false;
  }
  return true;
}

std::string Tiling::to_string() const {
  std::string out = "tiling " + std::to_string(width_) + "x" + std::to_string(height_) + "\n";
  out += "point_rows";
  for (int y : point_rows_) out += " " + std::to_string(y);
  out += "\n";
  for (const auto& o : obstructions_) out += "obstruction " + o.to_string() + "\n";
  for (const auto& l : requirements_) {
    out += "requirement ";
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i) out += " | ";
      out += l[i].to_string();
    }
    out += "\n";
  }
  return out;
}

Tiling Tiling::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int w = -1, h = -1;
  std::vector<GriddedPerm> obs;
  std::vector<RequirementList> reqs;
  std::vector<int> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    std::string rest;
    std::getline(ls, rest);
    if (head == "tiling") {
      if (std::sscanf(rest.c_str(), " %dx%d", &w, &h) != 2)
        throw std::invalid_argument("bad tiling header '" + line + "'");
    } else if (head == "point_rows") {
      std::istringstream rs(rest);
      int y;
      while (rs >> y) rows.push_back(y);
    } else if (head == "obstruction") {
      obs.push_back(GriddedPerm::parse(rest));
    } else if (head == "requirement") {
      RequirementList l;
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto bar = rest.find('|', start);
        if (bar == std::string::npos) bar = rest.size();
        l.push_back(GriddedPerm::parse(rest.substr(start, bar - start)));
        start = bar + 1;
      }
      reqs.push_back(std::move(l));
    } else {
      throw std::invalid_argument("unknown tiling line '" + line + "'");
    }
  }
  if (w < 0) throw std::invalid_argument("missing tiling header");
  return Tiling(w, h, std::move(obs), std::move(reqs), std::move(rows));
}

namespace {

nlohmann::json gp_json(const GriddedPerm& g) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : g.cells()) cells.push_back({c.x, c.y});
  return {{"pattern", g.pattern().raw()}, {"cells", cells}};
}

GriddedPerm gp_from_json(const nlohmann::json& j) {
  std::vector<Cell> cells;
  for (const auto& c : j.at("cells")) cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return GriddedPerm(CayleyPerm(j.at("pattern").get<std::vector<int>>()), std::move(cells));
}

}  // namespace

std::string Tiling::to_json() const {
  nlohmann::json j;
  j["width"] = width_;
  j["height"] = height_;
  j["point_rows"] = point_rows_;
  j["obstructions"] = nlohmann::json::array();
  for (const auto& o : obstructions_) j["obstructions"].push_back(gp_json(o));
  j["requirements"] = nlohmann::json::array();
  for (const auto& l : requirements_) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : l) list.push_back(gp_json(r));
    j["requirements"].push_back(list);
  }
  return j.dump();
}

Tiling Tiling::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<GriddedPerm> obs;
  for (const auto& o : j.at("obstructions")) obs.push_back(gp_from_json(o));
  std::vector<RequirementList> reqs;
  for (const auto& l : j.at("requirements")) {
    RequirementList list;
    for (const auto& r : l) list.push_back(gp_from_json(r));
    reqs.push_back(std::move(list));
  }
  return Tiling(j.at("width").get<int>(), j.at("height").get<int>(), std::move(obs),
                std::move(reqs), j.at("point_rows").get<std::vector<int>>());
}

// ---------------------------------------------------------------------------
// Simplification

namespace {

struct Draft {
  int w, h;
  std::vector<GriddedPerm> obs;
  std::vector<RequirementList> reqs;
  std::vector<int> rows;

  Tiling build() const { return Tiling(w, h, obs, reqs, rows); }
};

// Drops the indices of `g` lying in point cells. Returns false when two
// indices share a point cell, so `g` can never occur.
bool strip_point_cells(const GriddedPerm& g, const std::set<Cell>& pcs, GriddedPerm& out) {
  std::vector<std::size_t> keep;
  std::map<Cell, int> hits;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& c = g.cells()[i];
    if (pcs.count(c)) {
      if (++hits[c] > 1) return false;
    } else {
      keep.push_back(i);
    }
  }
  out = keep.size() == g.size() ? g : g.sub(keep);
  return true;
}

// Removes fully blocked rows and columns.
bool drop_empty_lines(Draft& d, const Tiling& t) {
  std::vector<char> col_dead(static_cast<std::size_t>(d.w), 1), row_dead(static_cast<std::size_t>(d.h), 1);
  for (int x = 0; x < d.w; ++x)
    for (int y = 0; y < d.h; ++y)
      if (!t.blocked({x, y})) {
        col_dead[static_cast<std::size_t>(x)] = 0;
        row_dead[static_cast<std::size_t>(y)] = 0;
      }
  const bool any = std::find(col_dead.begin(), col_dead.end(), 1) != col_dead.end() ||
                   std::find(row_dead.begin(), row_dead.end(), 1) != row_dead.end();
  if (!any) return false;
  std::vector<int> new_x(static_cast<std::size_t>(d.w), -1), new_y(static_cast<std::size_t>(d.h), -1);
  int nx = 0, ny = 0;
  for (int x = 0; x < d.w; ++x)
    if (!col_dead[static_cast<std::size_t>(x)]) new_x[static_cast<std::size_t>(x)] = nx++;
  for (int y = 0; y < d.h; ++y)
    if (!row_dead[static_cast<std::size_t>(y)]) new_y[static_cast<std::size_t>(y)] = ny++;
  auto remap = [&](const GriddedPerm& g, GriddedPerm& out) {
    std::vector<Cell> cells;
    for (const auto& c : g.cells()) {
      const int x = new_x[static_cast<std::size_t>(c.x)], y = new_y[static_cast<std::size_t>(c.y)];
      if (x < 0 || y < 0) return false;
      cells.push_back({x, y});
    }
    out = GriddedPerm(g.pattern(), std::move(cells));
    return true;
  };
  std::vector<GriddedPerm> obs;
  for (const auto& o : d.obs) {
    GriddedPerm m;
    if (remap(o, m)) obs.push_back(std::move(m));
  }
  std::vector<RequirementList> reqs;
  for (const auto& l : d.reqs) {
    RequirementList nl;
    for (const auto& r : l) {
      GriddedPerm m;
      if (remap(r, m)) nl.push_back(std::move(m));
    }
    // members through removed cells contain a point obstruction and are gone
    // already; an emptied list would have been caught by the caller
    if (!nl.empty()) reqs.push_back(std::move(nl));
  }
  std::vector<int> rows;
  for (int y : d.rows)
    if (new_y[static_cast<std::size_t>(y)] >= 0) rows.push_back(new_y[static_cast<std::size_t>(y)]);
  d = Draft{nx, ny, std::move(obs), std::move(reqs), std::move(rows)};
  return true;
}

std::optional<Tiling> simplify_once(const Tiling& t) {
  Draft d{t.width(), t.height(), {}, {}, t.point_rows()};
  // obstructions that break the point-row rule never occur
  std::vector<GriddedPerm> obs;
  for (const auto& o : t.obstructions())
    if (t.admits(o)) obs.push_back(o);
  std::vector<RequirementList> reqs;
  for (const auto& l : t.requirements()) {
    RequirementList nl;
    for (const auto& r : l)
      if (t.admits(r)) nl.push_back(r);
    if (nl.empty()) return std::nullopt;
    reqs.push_back(std::move(nl));
  }

  // rule 2: indices in point cells carry no information
  const auto pcs_vec = t.point_cells();
  const std::set<Cell> pcs(pcs_vec.begin(), pcs_vec.end());
  if (!pcs.empty()) {
    std::vector<GriddedPerm> next;
    for (const auto& o : obs) {
      if (o.size() == 2 && o.pattern() == CayleyPerm{1, 1} && pcs.count(o.cells()[0]) &&
          o.all_in(o.cells()[0])) {
        next.push_back(o);
        continue;
      }
      GriddedPerm s;
      if (!strip_point_cells(o, pcs, s)) continue;
      if (s.empty()) return std::nullopt;
      next.push_back(std::move(s));
    }
    obs = std::move(next);
    std::vector<RequirementList> next_reqs;
    for (const auto& l : reqs) {
      if (l.size() == 1 && l[0].is_point() && pcs.count(l[0].cells()[0])) {
        next_reqs.push_back(l);
        continue;
      }
      RequirementList nl;
      bool satisfied = false;
      for (const auto& r : l) {
        GriddedPerm s;
        if (!strip_point_cells(r, pcs, s)) continue;
        if (s.empty()) {
          satisfied = true;
          break;
        }
        nl.push_back(std::move(s));
      }
      if (satisfied) continue;
      if (nl.empty()) return std::nullopt;
      next_reqs.push_back(std::move(nl));
    }
    reqs = std::move(next_reqs);
  }

  // rule 1: keep only obstructions containing no other obstruction
  std::sort(obs.begin(), obs.end());
  obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
  std::vector<GriddedPerm> kept;
  for (const auto& o : obs) {
    bool redundant = false;
    for (const auto& k : kept)
      if (k.size() < o.size() || k != o) {
        if (grid_contains(o, k)) {
          redundant = true;
          break;
        }
      }
    if (!redundant) kept.push_back(o);
  }
  d.obs = std::move(kept);
  for (const auto& o : d.obs)
    if (o.empty()) return std::nullopt;

  // rule 4: requirement members that contain an obstruction cannot occur
  for (auto& l : reqs) {
    RequirementList nl;
    for (const auto& r : l) {
      bool dead = false;
      for (const auto& o : d.obs)
        if (o.size() <= r.size() && grid_contains(r, o)) {
          dead = true;
          break;
        }
      if (!dead) nl.push_back(r);
    }
    if (nl.empty()) return std::nullopt;
    // a member containing another member of its list adds nothing
    std::sort(nl.begin(), nl.end());
    nl.erase(std::unique(nl.begin(), nl.end()), nl.end());
    RequirementList minimal;
    for (const auto& r : nl) {
      bool implied = false;
      for (const auto& m : minimal)
        if (grid_contains(r, m)) {
          implied = true;
          break;
        }
      if (!implied) minimal.push_back(r);
    }
    l = std::move(minimal);
  }
  normalise_lists(reqs);
  // a list implied by another list is redundant
  std::vector<char> drop(reqs.size(), 0);
  for (std::size_t a = 0; a < reqs.size(); ++a) {
    const auto& la = reqs[a];
    if (la.size() == 1 && la[0].is_point() && pcs.count(la[0].cells()[0])) continue;
    for (std::size_t b = 0; b < reqs.size(); ++b) {
      if (a == b || drop[b]) continue;
      bool implies = true;
      for (const auto& r : reqs[b]) {
        bool hit = false;
        for (const auto& m : la) hit = hit || grid_contains(r, m);
        if (!hit) {
          implies = false;
          break;
        }
      }
      if (implies) {
        drop[a] = 1;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < reqs.size(); ++i)
    if (!drop[i]) d.reqs.push_back(reqs[i]);

  // rule 3
  const Tiling mid = d.build();
  if (drop_empty_lines(d, mid)) return d.build();
  return mid;
}

}  // namespace

std::optional<Tiling> simplify(const Tiling& t) {
  Tiling current = t;
  for (int guard = 0; guard < 1000; ++guard) {
    auto next = simplify_once(current);
    if (!next) return std::nullopt;
    if (*next == current) return current;
    current = std::move(*next);
  }
  throw std::logic_error("simplification did not reach a fixpoint");
}

// ---------------------------------------------------------------------------
// Counting gridded permutations

namespace {

// Builds members point by point from the left. Each new point picks a column
// no smaller than the previous one, a row, and either an existing value level
// in that row or a new level whose neighbours' rows allow it.
class GridWalker {
 public:
  GridWalker(const Tiling& t, std::vector<char> usable) : t_(t), usable_(std::move(usable)) {}

  // visit returns true to stop the walk
  bool run(std::size_t n, const std::function<bool(const std::vector<int>&,
                                                   const std::vector<Cell>&)>& visit) {
    n_ = n;
    visit_ = &visit;
    levels_.clear();
    level_of_.clear();
    cells_.clear();
    return step();
  }

 private:
  const Tiling& t_;
  std::vector<char> usable_;  // per cell, x * height + y
  std::size_t n_ = 0;
  const std::function<bool(const std::vector<int>&, const std::vector<Cell>&)>* visit_ = nullptr;
  std::vector<int> levels_;    // level ids bottom to top
  std::vector<int> level_row_;  // by id
  std::vector<int> level_of_;  // per point, level id
  std::vector<Cell> cells_;

  std::vector<int> values() const {
    std::vector<int> rank(level_row_.size(), 0);
    for (std::size_t i = 0; i < levels_.size(); ++i)
      rank[static_cast<std::size_t>(levels_[i])] = static_cast<int>(i) + 1;
    std::vector<int> out;
    out.reserve(level_of_.size());
    for (int id : level_of_) out.push_back(rank[static_cast<std::size_t>(id)]);
    return out;
  }

  bool obstructed() const {
    const auto v = values();
    for (const auto& o : t_.obstructions())
      if (o.size() <= v.size() && contains_raw(v, cells_, o, true)) return true;
    return false;
  }

  bool place(Cell c, int id) {
    level_of_.push_back(id);
    cells_.push_back(c);
    bool stop = false;
    if (!obstructed()) stop = step();
    level_of_.pop_back();
    cells_.pop_back();
    return stop;
  }

  bool step() {
    if (cells_.size() == n_) {
      const auto v = values();
      for (const auto& l : t_.requirements()) {
        bool met = false;
        for (const auto& r : l) met = met || contains_raw(v, cells_, r, false);
        if (!met) return false;
      }
      return (*visit_)(v, cells_);
    }
    const int x0 = cells_.empty() ? 0 : cells_.back().x;
    for (int x = x0; x < t_.width(); ++x)
      for (int y = 0; y < t_.height(); ++y) {
        if (!usable_[static_cast<std::size_t>(x * t_.height() + y)]) continue;
        const Cell c{x, y};
        const bool prow = t_.is_point_row(y);
        bool row_has_level = false;
        // existing levels in this row
        for (std::size_t i = 0; i < levels_.size(); ++i) {
          const int id = levels_[i];
          if (level_row_[static_cast<std::size_t>(id)] != y) continue;
          row_has_level = true;
          if (place(c, id)) return true;
        }
        if (prow && row_has_level) continue;
        // a new level at every rank its neighbours allow
        for (std::size_t pos = 0; pos <= levels_.size(); ++pos) {
          if (pos > 0 && level_row_[static_cast<std::size_t>(levels_[pos - 1])] > y) break;
          if (pos < levels_.size() && level_row_[static_cast<std::size_t>(levels_[pos])] < y) continue;
          const int id = static_cast<int>(level_row_.size());
          level_row_.push_back(y);
          levels_.insert(levels_.begin() + static_cast<std::ptrdiff_t>(pos), id);
          const bool stop = place(c, id);
          levels_.erase(levels_.begin() + static_cast<std::ptrdiff_t>(pos));
          level_row_.pop_back();
          if (stop) return true;
        }
      }
    return false;
  }
};

std::vector<char> open_cells(const Tiling& t) {
  std::vector<char> out(static_cast<std::size_t>(t.width() * t.height()), 0);
  for (int x = 0; x < t.width(); ++x)
    for (int y = 0; y < t.height(); ++y) out[static_cast<std::size_t>(x * t.height() + y)] = !t.blocked({x, y});
  return out;
}

void check_size(std::size_t n, std::size_t max_size) {
  if (n > max_size)
    throw ResourceCapExceeded("gridded size " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(max_size));
}

}  // namespace

std::uint64_t grid_count(const Tiling& t, std::size_t n, std::size_t max_size) {
  check_size(n, max_size);
  std::uint64_t total = 0;
  GridWalker w(t, open_cells(t));
  w.run(n, [&](const std::vector<int>&, const std::vector<Cell>&) {
    ++total;
    return false;
  });
  return total;
}

std::vector<GriddedPerm> grid_members(const Tiling& t, std::size_t n, std::size_t max_size) {
  check_size(n, max_size);
  std::vector<GriddedPerm> out;
  GridWalker w(t, open_cells(t));
  w.run(n, [&](const std::vector<int>& v, const std::vector<Cell>& c) {
    out.emplace_back(CayleyPerm(v), c);
    return false;
  });
  return out;
}

bool grid_empty(const Tiling& t) {
  for (const auto& o : t.obstructions())
    if (o.empty()) return true;
  if (t.requirements().empty()) return false;
  // a smallest member is the union of one occurrence per list, so it only
  // uses requirement cells and has at most sum-of-largest-member points
  std::vector<char> usable(static_cast<std::size_t>(t.width() * t.height()), 0);
  std::size_t bound = 0;
  for (const auto& l : t.requirements()) {
    std::size_t biggest = 0;
    for (const auto& r : l) {
      biggest = std::max(biggest, r.size());
      for (const auto& c : r.cells())
        if (!t.blocked(c)) usable[static_cast<std::size_t>(c.x * t.height() + c.y)] = 1;
    }
    bound += biggest;
  }
  GridWalker w(t, usable);
  for (std::size_t n = 1; n <= bound; ++n)
    if (w.run(n, [](const std::vector<int>&, const std::vector<Cell>&) { return true; }))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Configurations as tilings

std::vector<GriddedPerm> griddings(const CayleyPerm& pattern, const Tiling& t) {
  std::vector<GriddedPerm> out;
  const std::size_t k = pattern.size();
  std::vector<Cell> cells(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      out.emplace_back(pattern, cells);
      return;
    }
    const int x0 = i == 0 ? 0 : cells[i - 1].x;
    for (int x = x0; x < t.width(); ++x)
      for (int y = 0; y < t.height(); ++y) {
        const Cell c{x, y};
        if (t.blocked(c)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          const int a = pattern[j], b = pattern[i];
          if (a < b && cells[j].y > y) ok = false;
          if (a > b && cells[j].y < y) ok = false;
          if (a == b && cells[j].y != y) ok = false;
          if (a != b && cells[j].y == y && t.is_point_row(y)) ok = false;
        }
        if (!ok) continue;
        cells[i] = c;
        rec(i + 1);
      }
  };
  rec(0);
  return out;
}

Tiling intermediate_tiling(const VerticalConfiguration& c) {
  const auto& items = c.items();
  const int w = static_cast<int>(items.size());
  const int m = c.max_value();
  const int h = m + 1;
  std::vector<GriddedPerm> obs;
  std::vector<RequirementList> reqs;
  std::set<Cell> blocked;
  std::set<Cell> point_cells;
  int rightmost_max = -1;
  for (int i = 0; i < w; ++i)
    if (items[static_cast<std::size_t>(i)] == m && m > 0) rightmost_max = i;
  for (int i = 0; i < w; ++i) {
    const int v = items[static_cast<std::size_t>(i)];
    if (v != VerticalConfiguration::kSlot) point_cells.insert({i, v - 1});
  }
  for (const auto& pc : point_cells) {
    reqs.push_back({GriddedPerm::point(pc)});
    obs.emplace_back(CayleyPerm{1, 1}, pc);
    for (int y = 0; y < h; ++y)
      if (y != pc.y) blocked.insert({pc.x, y});
    for (int x = 0; x < pc.x; ++x)
      if (!point_cells.count({x, pc.y})) blocked.insert({x, pc.y});
  }
  for (int i = 0; i < w; ++i) {
    if (items[static_cast<std::size_t>(i)] != VerticalConfiguration::kSlot) continue;
    // only a new maximum, or a repeat of the maximum to its right, may follow
    for (int y = 0; y + 1 < m; ++y) blocked.insert({i, y});
    if (m > 0 && i < rightmost_max) blocked.insert({i, m - 1});
    RequirementList slot;
    for (int y = 0; y < h; ++y)
      if (!blocked.count({i, y})) slot.push_back(GriddedPerm::point({i, y}));
    reqs.push_back(std::move(slot));
  }
  for (const auto& b : blocked) obs.push_back(GriddedPerm::point(b));
  std::vector<int> rows;
  for (int y = 0; y < m; ++y) rows.push_back(y);
  return Tiling(w, h, std::move(obs), std::move(reqs), std::move(rows));
}

std::optional<Tiling> config_to_tiling(const VerticalConfiguration& c, const Basis& basis) {
  const Tiling base = intermediate_tiling(c);
  std::vector<GriddedPerm> obs = base.obstructions();
  for (const auto& p : basis) {
    auto g = griddings(p, base);
    obs.insert(obs.end(), g.begin(), g.end());
  }
  return simplify(Tiling(base.width(), base.height(), std::move(obs), base.requirements(),
                         base.point_rows()));
}

// ---------------------------------------------------------------------------
// Factoring

Factors factor(const Tiling& t) {
  Factors f;
  const auto pcs = t.point_cells();
  f.points = pcs.size();
  if (pcs.empty()) {
    if (!t.is_trivial()) f.residual = t;
    return f;
  }
  std::set<int> cols;
  for (const auto& c : pcs) cols.insert(c.x);
  std::vector<int> new_x(static_cast<std::size_t>(t.width()), -1);
  int nx = 0;
  for (int x = 0; x < t.width(); ++x)
    if (!cols.count(x)) new_x[static_cast<std::size_t>(x)] = nx++;
  auto remap = [&](const GriddedPerm& g, GriddedPerm& out) {
    std::vector<Cell> cells;
    for (const auto& c : g.cells()) {
      const int x = new_x[static_cast<std::size_t>(c.x)];
      if (x < 0) return false;
      cells.push_back({x, c.y});
    }
    out = GriddedPerm(g.pattern(), std::move(cells));
    return true;
  };
  std::vector<GriddedPerm> obs;
  for (const auto& o : t.obstructions()) {
    GriddedPerm m;
    if (remap(o, m)) obs.push_back(std::move(m));
  }
  std::vector<RequirementList> reqs;
  for (const auto& l : t.requirements()) {
    RequirementList nl;
    bool whole = true;
    for (const auto& r : l) {
      GriddedPerm m;
      if (remap(r, m)) nl.push_back(std::move(m));
      else whole = false;
    }
    if (!whole) {
      // only the defining point requirements live in point columns
      if (l.size() == 1) continue;
      throw std::logic_error("requirement list straddles a point column");
    }
    reqs.push_back(std::move(nl));
  }
  auto rest = simplify(Tiling(nx, t.height(), std::move(obs), std::move(reqs), t.point_rows()));
  if (!rest) throw std::logic_error("factoring produced an empty residual");
  if (!rest->is_trivial()) f.residual = std::move(*rest);
  return f;
}

std::vector<Tiling> factor_list(const Tiling& t) {
  const auto f = factor(t);
  std::vector<Tiling> out(f.points, Tiling::point_tile());
  if (f.residual) out.push_back(*f.residual);
  return out;
}

// ---------------------------------------------------------------------------
// Insertion

namespace {

// Where a point goes: column `col` splits into [L] P R, row `row` into B P A
// unless it is already a point row.
struct Placement {
  int col;
  int row;
  bool with_left;
  bool split_row;

  int L() const { return col; }
  int P() const { return with_left ? col + 1 : col; }
  int R() const { return P() + 1; }
  int col_shift() const { return with_left ? 2 : 1; }
  int B() const { return row; }
  int Prow() const { return split_row ? row + 1 : row; }
  int A() const { return row + 2; }
  int row_shift() const { return split_row ? 2 : 0; }
};

// All preimages of g under the placement, skipping those through `blocked`
// cells and those with two indices in the point cell.
void regrid(const GriddedPerm& g, const Placement& pl, const std::set<Cell>& blocked,
            const Tiling& shape, std::vector<GriddedPerm>& out) {
  const std::size_t k = g.size();
  const auto& pat = g.pattern();
  std::vector<std::vector<Cell>> options(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Cell c = g.cells()[i];
    std::vector<int> xs, ys;
    if (c.x < pl.col) xs = {c.x};
    else if (c.x > pl.col) xs = {c.x + pl.col_shift()};
    else if (pl.with_left) xs = {pl.L(), pl.P(), pl.R()};
    else xs = {pl.P(), pl.R()};
    if (c.y < pl.row) ys = {c.y};
    else if (c.y > pl.row) ys = {c.y + pl.row_shift()};
    else if (pl.split_row) ys = {pl.B(), pl.Prow(), pl.A()};
    else ys = {pl.Prow()};
    for (int x : xs)
      for (int y : ys)
        if (!blocked.count({x, y})) options[i].push_back({x, y});
  }
  const Cell pcell{pl.P(), pl.Prow()};
  std::vector<Cell> cells(k);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int in_point) {
    if (i == k) {
      out.emplace_back(pat, cells);
      return;
    }
    for (const auto& c : options[i]) {
      const int here = in_point + (c == pcell ? 1 : 0);
      if (here > 1) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const int a = pat[j], b = pat[i];
        if (cells[j].x > c.x) ok = false;
        else if (a < b && cells[j].y > c.y) ok = false;
        else if (a > b && cells[j].y < c.y) ok = false;
        else if (a == b && cells[j].y != c.y) ok = false;
        else if (a != b && cells[j].y == c.y && shape.is_point_row(c.y)) ok = false;
      }
      if (!ok) continue;
      cells[i] = c;
      rec(i + 1, here);
    }
  };
  rec(0, 0);
}

// Places a point and returns the simplified child, or nullopt if empty.
// `blocked` and `required` are in the new coordinates.
std::optional<Tiling> place(const Tiling& t, const Placement& pl, const std::set<Cell>& blocked,
                            const std::vector<RequirementList>& extra) {
  const int w = t.width() + pl.col_shift();
  const int h = t.height() + pl.row_shift();
  std::vector<int> rows;
  for (int y : t.point_rows()) rows.push_back(y < pl.row ? y : y == pl.row ? pl.Prow() : y + pl.row_shift());
  rows.push_back(pl.Prow());
  const Tiling shape(w, h, {}, {}, rows);
  std::vector<GriddedPerm> obs;
  for (const auto& o : t.obstructions()) regrid(o, pl, blocked, shape, obs);
  for (const auto& b : blocked) obs.push_back(GriddedPerm::point(b));
  const Cell pcell{pl.P(), pl.Prow()};
  obs.emplace_back(CayleyPerm{1, 1}, pcell);
  std::vector<RequirementList> reqs;
  for (const auto& l : t.requirements()) {
    RequirementList nl;
    for (const auto& r : l) regrid(r, pl, blocked, shape, nl);
    if (nl.empty()) return std::nullopt;
    reqs.push_back(std::move(nl));
  }
  reqs.push_back({GriddedPerm::point(pcell)});
  for (const auto& l : extra) {
    RequirementList nl;
    for (const auto& r : l)
      if (!blocked.count(r.cells()[0])) nl.push_back(r);
    if (nl.empty()) return std::nullopt;
    reqs.push_back(std::move(nl));
  }
  return simplify(Tiling(w, h, std::move(obs), std::move(reqs), std::move(rows)));
}

bool keep_child(const std::optional<Tiling>& child) {
  if (!child) return false;
  const auto f = factor(*child);
  return !(f.residual && grid_empty(*f.residual));
}

void expand_vertical(const Tiling& t, std::vector<Child>& out) {
  int top = -1, maxrow = -1;
  for (int y = 0; y < t.height(); ++y) {
    if (t.is_point_row(y)) {
      if (maxrow >= 0) throw std::logic_error("vertical tiling with two point rows");
      maxrow = y;
    } else {
      if (top >= 0) throw std::logic_error("vertical tiling with two free rows");
      top = y;
    }
  }
  for (int col = 0; col < t.width(); ++col) {
    for (bool new_max : {true, false}) {
      if (new_max && top < 0) continue;
      if (!new_max && maxrow < 0) continue;
      const Placement pl{col, new_max ? top : maxrow, true, new_max};
      const int w = t.width() + 2;
      const int h = t.height() + pl.row_shift();
      const auto shift_row = [&](int y) { return y < pl.row ? y : y + pl.row_shift(); };
      for (auto kind : {VerticalKind::fill, VerticalKind::left, VerticalKind::right,
                        VerticalKind::middle}) {
        std::set<Cell> blocked;
        for (int y = 0; y < h; ++y)
          if (y != pl.Prow()) blocked.insert({pl.P(), y});
        for (int x = 0; x < pl.P(); ++x) blocked.insert({x, pl.Prow()});
        if (new_max) {
          for (int x = 0; x < w; ++x) blocked.insert({x, pl.B()});
          if (maxrow >= 0)
            for (int x = 0; x < w; ++x) blocked.insert({x, shift_row(maxrow)});
        }
        const bool keep_left = kind == VerticalKind::right || kind == VerticalKind::middle;
        const bool keep_right = kind == VerticalKind::left || kind == VerticalKind::middle;
        std::vector<RequirementList> extra;
        for (auto [side, keep] : {std::pair{pl.L(), keep_left}, std::pair{pl.R(), keep_right}}) {
          if (!keep) {
            for (int y = 0; y < h; ++y) blocked.insert({side, y});
            continue;
          }
          RequirementList l;
          for (int y = 0; y < h; ++y)
            if (!blocked.count({side, y})) l.push_back(GriddedPerm::point({side, y}));
          extra.push_back(std::move(l));
        }
        auto child = place(t, pl, blocked, extra);
        if (keep_child(child))
          out.push_back({VerticalLetter{kind, col + 1, new_max}, std::move(*child)});
      }
    }
  }
}

void expand_horizontal(const Tiling& t, std::vector<Child>& out) {
  if (t.width() != 1) throw std::logic_error("horizontal tilings have a single column");
  for (int row = 0; row < t.height(); ++row) {
    const bool repeating = t.is_point_row(row);
    const Placement pl{0, row, false, !repeating};
    const int h = t.height() + pl.row_shift();
    for (bool more : {false, true}) {
      for (auto kind : {HorizontalKind::fill, HorizontalKind::up, HorizontalKind::down,
                        HorizontalKind::middle}) {
        if (repeating && kind != HorizontalKind::fill) continue;
        std::set<Cell> blocked;
        for (int y = 0; y < h; ++y)
          if (y != pl.Prow()) blocked.insert({pl.P(), y});
        std::vector<RequirementList> extra;
        auto side = [&](int y, bool keep) {
          if (keep) extra.push_back({GriddedPerm::point({pl.R(), y})});
          else blocked.insert({pl.R(), y});
        };
        side(pl.Prow(), more);
        if (!repeating) {
          side(pl.B(), kind == HorizontalKind::up || kind == HorizontalKind::middle);
          side(pl.A(), kind == HorizontalKind::down || kind == HorizontalKind::middle);
        }
        auto child = place(t, pl, blocked, extra);
        if (keep_child(child))
          out.push_back({HorizontalLetter{kind, row + 1, more}, std::move(*child)});
      }
    }
  }
}

}  // namespace

std::vector<Child> expand(const Tiling& t, Mode mode) {
  std::vector<Child> out;
  if (t.requirements().empty()) return out;
  if (mode == Mode::vertical) expand_vertical(t, out);
  else expand_horizontal(t, out);
  return out;
}

}  // namespace cayley
