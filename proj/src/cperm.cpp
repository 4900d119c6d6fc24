#include "cayley/cperm.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace cayley {

namespace {

int validated_max(const std::vector<int>& values) {
  if (values.empty()) return 0;
  int m = 0;
  for (int v : values) {
    if (v < 1) throw std::invalid_argument("Cayley permutation values must be positive");
    m = std::max(m, v);
  }
  if (static_cast<std::size_t>(m) > values.size())
    throw std::invalid_argument("not a Cayley permutation: a value below the maximum is missing");
  std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
  for (int v : values) seen[static_cast<std::size_t>(v)] = 1;
  for (int v = 1; v <= m; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a Cayley permutation: value " + std::to_string(v) +
                                  " is missing");
  return m;
}

// Backtracking matcher. `image[v]` is the text value bound to pattern value v
// (0 when unbound). A new binding must fall strictly inside the window left
// by the nearest bound pattern values below and above.
struct Matcher {
  std::span<const int> text;
  std::span<const int> pat;
  int pat_max;
  std::vector<int> image;

  bool fits(int pv, int tv) const {
    if (image[pv] != 0) return image[pv] == tv;
    for (int below = pv - 1; below >= 1; --below)
      if (image[below] != 0) {
        if (tv <= image[below]) return false;
        break;
      }
    for (int above = pv + 1; above <= pat_max; ++above)
      if (image[above] != 0) {
        if (tv >= image[above]) return false;
        break;
      }
    return true;
  }

  bool match(std::size_t pi, std::size_t ti) {
    if (pi == pat.size()) return true;
    const std::size_t remaining = pat.size() - pi;
    for (std::size_t t = ti; t + remaining <= text.size(); ++t) {
      const int pv = pat[pi];
      const int tv = text[t];
      if (!fits(pv, tv)) continue;
      const bool fresh = image[pv] == 0;
      if (fresh) image[pv] = tv;
      if (match(pi + 1, t + 1)) return true;
      if (fresh) image[pv] = 0;
    }
    return false;
  }
};

}  // namespace

CayleyPerm::CayleyPerm(std::vector<int> values) : values_(std::move(values)) {
  max_ = validated_max(values_);
}

CayleyPerm::CayleyPerm(std::initializer_list<int> values)
    : CayleyPerm(std::vector<int>(values)) {}

CayleyPerm CayleyPerm::parse(std::string_view text) {
  std::vector<int> values;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument("bad pattern token '" + std::string(text) + "'");
      values.push_back(c - '0');
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view part = text.substr(start, comma - start);
      int v = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
        throw std::invalid_argument("bad pattern token '" + std::string(text) + "'");
      values.push_back(v);
      start = comma + 1;
    }
  }
  return CayleyPerm(std::move(values));
}

std::string CayleyPerm::to_string() const {
  std::string out;
  if (max_ <= 9) {
    for (int v : values_) out.push_back(static_cast<char>('0' + v));
    return out;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(values_[i]);
  }
  return out;
}

std::strong_ordering CayleyPerm::operator<=>(const CayleyPerm& other) const {
  if (auto c = values_.size() <=> other.values_.size(); c != 0) return c;
  return values_ <=> other.values_;
}

CayleyPerm standardise(std::span<const int> word) {
  std::vector<int> levels(word.begin(), word.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<int> out;
  out.reserve(word.size());
  for (int v : word)
    out.push_back(static_cast<int>(std::lower_bound(levels.begin(), levels.end(), v) -
                                   levels.begin()) +
                  1);
  return CayleyPerm(std::move(out));
}

bool contains(std::span<const int> word, const CayleyPerm& pattern) {
  if (pattern.empty()) return true;
  if (pattern.size() > word.size()) return false;
  Matcher m{word, pattern.values(), pattern.max_value(),
            std::vector<int>(static_cast<std::size_t>(pattern.max_value()) + 1, 0)};
  return m.match(0, 0);
}

Basis::Basis(std::vector<CayleyPerm> patterns) : patterns_(std::move(patterns)) {
  for (const auto& p : patterns_)
    if (p.empty()) throw std::invalid_argument("basis patterns must be non-empty");
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

Basis Basis::parse(std::string_view text) {
  std::vector<CayleyPerm> patterns;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) patterns.push_back(CayleyPerm::parse(token));
  return Basis(std::move(patterns));
}

Basis Basis::normalised() const { return Basis(minimal_elements(patterns_)); }

std::size_t Basis::max_pattern_size() const {
  std::size_t m = 0;
  for (const auto& p : patterns_) m = std::max(m, p.size());
  return m;
}

std::string Basis::to_string() const {
  std::string out;
  for (const auto& p : patterns_) {
    if (!out.empty()) out.push_back(' ');
    out += p.to_string();
  }
  return out;
}

bool avoids(std::span<const int> word, const Basis& basis) {
  for (const auto& p : basis)
    if (contains(word, p)) return false;
  return true;
}

std::vector<CayleyPerm> minimal_elements(std::vector<CayleyPerm> perms) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  std::vector<CayleyPerm> kept;
  for (const auto& p : perms) {
    bool minimal = true;
    for (const auto& q : kept)
      if (contains(p, q)) {
        minimal = false;
        break;
      }
    if (minimal) kept.push_back(p);
  }
  return kept;
}

}  // namespace cayley
