#include "cayley/classify.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "cayley/enumerate.hpp"
#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

namespace {

constexpr std::array<Shape, 3> kShapes{Shape::I, Shape::D, Shape::C};

bool has_shape(const std::vector<int>& seq, Shape s) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const int a = seq[i - 1], b = seq[i];
    if (s == Shape::I && !(a < b)) return false;
    if (s == Shape::D && !(a > b)) return false;
    if (s == Shape::C && a != b) return false;
  }
  return true;
}

int shape_index(Shape s) { return s == Shape::I ? 0 : s == Shape::D ? 1 : 2; }

// Rows and columns as printed: row r, column c. The printed row label is the
// part above the threshold, so V(lower, upper) lives at [upper][lower].
const char* const kVerticalTable[3][3] = {
    {"11 321 2143 2413", "11 132 312", "122 132 212 221 312 321"},
    {"11 213 231", "11 123 3142 3412", "122 123 212 213 221 231"},
    {"112 121 211 213 231 321", "112 121 123 132 211 312", "123 132 213 231 312 321"},
};

std::vector<int> shaped(Shape s, std::size_t n, int offset) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s == Shape::I) out[i] = offset + static_cast<int>(i) + 1;
    if (s == Shape::D) out[i] = offset + static_cast<int>(n - i);
    if (s == Shape::C) out[i] = offset + 1;
  }
  return out;
}

}  // namespace

std::array<VerticalJuxClass, 9> vertical_jux_classes() {
  std::array<VerticalJuxClass, 9> out{};
  std::size_t i = 0;
  for (Shape a : kShapes)
    for (Shape b : kShapes) out[i++] = {a, b};
  return out;
}

std::array<HorizontalJuxClass, 4> horizontal_jux_classes() {
  return {HorizontalJuxClass{Shape::I, Shape::I}, HorizontalJuxClass{Shape::I, Shape::D},
          HorizontalJuxClass{Shape::D, Shape::I}, HorizontalJuxClass{Shape::D, Shape::D}};
}

std::string to_string(const VerticalJuxClass& c) {
  return std::string("V(") + static_cast<char>(c.lower) + "," + static_cast<char>(c.upper) + ")";
}

std::string to_string(const HorizontalJuxClass& c) {
  return std::string("H(") + static_cast<char>(c.left) + "," + static_cast<char>(c.right) + ")";
}

bool in_vertical_jux(const CayleyPerm& p, const VerticalJuxClass& c) {
  for (int t = 0; t <= p.max_value(); ++t) {
    std::vector<int> lower, upper;
    for (int v : p.raw()) (v <= t ? lower : upper).push_back(v);
    if (has_shape(lower, c.lower) && has_shape(upper, c.upper)) return true;
  }
  return false;
}

bool in_horizontal_jux(const CayleyPerm& p, const HorizontalJuxClass& c) {
  if (!p.is_permutation()) return false;
  const auto& v = p.raw();
  for (std::size_t split = 0; split <= v.size(); ++split) {
    std::vector<int> left(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<int> right(v.begin() + static_cast<std::ptrdiff_t>(split), v.end());
    if (has_shape(left, c.left) && has_shape(right, c.right)) return true;
  }
  return false;
}

Basis vertical_jux_basis(const VerticalJuxClass& c) {
  return Basis::parse(kVerticalTable[shape_index(c.upper)][shape_index(c.lower)]);
}

std::optional<VerticalJuxClass> missing_vertical_class(const Basis& basis) {
  for (const auto& c : vertical_jux_classes()) {
    bool hit = false;
    for (const auto& p : basis) hit = hit || in_vertical_jux(p, c);
    if (!hit) return c;
  }
  return std::nullopt;
}

std::optional<HorizontalJuxClass> missing_horizontal_class(const Basis& basis) {
  for (const auto& c : horizontal_jux_classes()) {
    bool hit = false;
    for (const auto& p : basis) hit = hit || in_horizontal_jux(p, c);
    if (!hit) return c;
  }
  return std::nullopt;
}

bool is_vertical_regular(const Basis& basis) { return !missing_vertical_class(basis); }
bool is_horizontal_regular(const Basis& basis) { return !missing_horizontal_class(basis); }

bool is_regular(const Basis& basis, Mode mode) {
  return mode == Mode::vertical ? is_vertical_regular(basis) : is_horizontal_regular(basis);
}

CayleyPerm vertical_alternation(const VerticalJuxClass& c, std::size_t n) {
  if (n == 0) throw std::invalid_argument("alternation size must be positive");
  const auto a = shaped(c.lower, n, 0);
  const int top = *std::max_element(a.begin(), a.end());
  const auto b = shaped(c.upper, n, top);
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(a[i]);
    out.push_back(b[i]);
  }
  return CayleyPerm(std::move(out));
}

CayleyPerm horizontal_alternation(const HorizontalJuxClass& c, std::size_t n) {
  if (n == 0) throw std::invalid_argument("alternation size must be positive");
  std::vector<int> out;
  for (int v : shaped(c.left, n, 0)) out.push_back(2 * v - 1);
  for (int v : shaped(c.right, n, 0)) out.push_back(2 * v);
  return CayleyPerm(std::move(out));
}

// ---------------------------------------------------------------------------
// Survey

namespace {

constexpr unsigned kVerticalFull = (1u << 9) - 1;
constexpr unsigned kHorizontalFull = (1u << 4) - 1;

struct Masks {
  std::vector<unsigned> vertical, horizontal;
};

Masks size3_masks() {
  Masks m;
  const auto vcs = vertical_jux_classes();
  const auto hcs = horizontal_jux_classes();
  for (const auto& p : generate_cayley(3)) {
    unsigned v = 0, h = 0;
    for (std::size_t i = 0; i < vcs.size(); ++i)
      if (in_vertical_jux(p, vcs[i])) v |= 1u << i;
    for (std::size_t i = 0; i < hcs.size(); ++i)
      if (in_horizontal_jux(p, hcs[i])) h |= 1u << i;
    m.vertical.push_back(v);
    m.horizontal.push_back(h);
  }
  return m;
}

Survey finish(const std::vector<std::array<std::size_t, 4>>& counts) {
  Survey s;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    s.rows.push_back({k, counts[k][0], counts[k][1], counts[k][2], counts[k][3]});
    s.total_either += counts[k][3];
  }
  return s;
}

void tally(const Masks& m, unsigned subset, std::array<std::size_t, 4>& row) {
  unsigned v = 0, h = 0;
  for (std::size_t i = 0; i < m.vertical.size(); ++i)
    if (subset >> i & 1u) {
      v |= m.vertical[i];
      h |= m.horizontal[i];
    }
  const bool vr = v == kVerticalFull, hr = h == kHorizontalFull;
  row[0] += 1;
  row[1] += vr;
  row[2] += hr;
  row[3] += vr || hr;
}

}  // namespace

Survey survey_size3_serial() {
  const auto m = size3_masks();
  const unsigned n = static_cast<unsigned>(m.vertical.size());
  std::vector<std::array<std::size_t, 4>> counts(n + 1, std::array<std::size_t, 4>{});
  for (unsigned subset = 1; subset < (1u << n); ++subset)
    tally(m, subset, counts[static_cast<std::size_t>(__builtin_popcount(subset))]);
  return finish(counts);
}

Survey survey_size3() {
  const auto m = size3_masks();
  const unsigned n = static_cast<unsigned>(m.vertical.size());
  std::vector<std::array<std::size_t, 4>> counts(n + 1, std::array<std::size_t, 4>{});
#pragma omp parallel
  {
    std::vector<std::array<std::size_t, 4>> local(n + 1, std::array<std::size_t, 4>{});
#pragma omp for schedule(static)
    for (long subset = 1; subset < (1L << n); ++subset)
      tally(m, static_cast<unsigned>(subset),
            local[static_cast<std::size_t>(__builtin_popcountl(static_cast<unsigned long>(subset)))]);
#pragma omp critical
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t j = 0; j < 4; ++j) counts[k][j] += local[k][j];
  }
  return finish(counts);
}

std::string Survey::to_text() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-6s %8s %9s %11s %7s\n", "size", "classes", "vertical",
                "horizontal", "either");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6zu %8zu %9zu %11zu %7zu\n", r.basis_size, r.classes,
                  r.vertical, r.horizontal, r.either);
    out << line;
  }
  out << "total either-regular: " << total_either << "\n";
  return out.str();
}

std::string Survey::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::object();
  for (const auto& r : rows)
    j["rows"][std::to_string(r.basis_size)] = {{"classes", r.classes},
                                               {"vertical", r.vertical},
                                               {"horizontal", r.horizontal},
                                               {"either", r.either}};
  j["total_either"] = total_either;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Derivations and slot-bounded bases

namespace {

template <class Config>
std::vector<CayleyPerm> derive(const Config& start, std::size_t placed, std::size_t n,
                               std::size_t max_size) {
  if (n > max_size)
    throw ResourceCapExceeded("derivation size " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(max_size));
  std::set<CayleyPerm> out;
  if (n < placed) return {};
  auto walk = [&](auto&& self, const Config& c, std::size_t left) -> void {
    if (c.slot_count() > static_cast<int>(left)) return;  // every slot needs a point
    if (left == 0) {
      if constexpr (std::is_same_v<Config, VerticalConfiguration>) out.insert(c.placed());
      else out.insert(c.prefix());
      return;
    }
    for (const auto& l : c.legal_letters()) self(self, c.apply(l), left - 1);
  };
  walk(walk, start, n - placed);
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<CayleyPerm> derivations(const VerticalConfiguration& c, std::size_t n,
                                    std::size_t max_size) {
  return derive(c, static_cast<std::size_t>(c.placed_count()), n, max_size);
}

std::vector<CayleyPerm> derivations(const HorizontalConfiguration& c, std::size_t n,
                                    std::size_t max_size) {
  return derive(c, c.prefix().size(), n, max_size);
}

std::vector<HorizontalConfiguration> horizontal_basis_configurations(int k) {
  std::vector<HorizontalConfiguration> out;
  const int slots = k + 1;
  for (unsigned pattern = 0; pattern < (1u << slots); ++pattern) {
    auto rep = [&](int i) { return (pattern >> i & 1u) != 0; };
    bool ok = true;
    for (int i = 0; i + 2 < slots; ++i) ok = ok && !(rep(i) && rep(i + 1) && rep(i + 2));
    if (slots >= 2) ok = ok && !(rep(0) && rep(1)) && !(rep(slots - 1) && rep(slots - 2));
    if (!ok) continue;
    // levels bottom to top; two adjacent new slots get one value between them
    std::vector<HorizontalSlot> layout;
    int v = 0;
    for (int i = 0; i < slots; ++i) {
      if (rep(i)) {
        layout.push_back({true, ++v});
      } else {
        if (i > 0 && !rep(i - 1)) ++v;
        layout.push_back({false, v});
      }
    }
    std::vector<int> values(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) values[static_cast<std::size_t>(i)] = i + 1;
    do {
      out.emplace_back(CayleyPerm(values), layout);
    } while (std::next_permutation(values.begin(), values.end()));
  }
  return out;
}

Basis sb_basis(int k, int max_k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > max_k)
    throw ResourceCapExceeded("k = " + std::to_string(k) + " exceeds the cap of " +
                              std::to_string(max_k));
  std::vector<CayleyPerm> all;
  for (const auto& a : generate_cayley(static_cast<std::size_t>(k))) {
    std::vector<int> items{VerticalConfiguration::kSlot};
    for (int v : a.raw()) {
      items.push_back(v);
      items.push_back(VerticalConfiguration::kSlot);
    }
    auto d = derivations(VerticalConfiguration(items), static_cast<std::size_t>(2 * k + 1),
                         static_cast<std::size_t>(2 * max_k + 1));
    all.insert(all.end(), d.begin(), d.end());
  }
  return Basis(minimal_elements(std::move(all)));
}

Basis hsb_basis(int k, int max_k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > max_k)
    throw ResourceCapExceeded("k = " + std::to_string(k) + " exceeds the cap of " +
                              std::to_string(max_k));
  std::vector<CayleyPerm> all;
  for (const auto& c : horizontal_basis_configurations(k)) {
    const std::size_t size = c.prefix().size() + static_cast<std::size_t>(c.slot_count());
    auto d = derivations(c, size, static_cast<std::size_t>(2 * max_k + 1));
    all.insert(all.end(), d.begin(), d.end());
  }
  return Basis(minimal_elements(std::move(all)));
}

}  // namespace cayley
