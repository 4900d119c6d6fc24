#include "cayley/encoding.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cayley/errors.hpp"

namespace cayley {

std::string_view to_string(Mode mode) {
  return mode == Mode::vertical ? "vertical" : "horizontal";
}

Mode parse_mode(std::string_view text) {
  if (text == "vertical" || text == "v") return Mode::vertical;
  if (text == "horizontal" || text == "h") return Mode::horizontal;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Letter text format: kind, slot, comma, flag ("m1,1").

namespace {

struct RawLetter {
  char kind;
  int slot;
  int flag;
};

RawLetter parse_raw(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("bad letter '" + std::string(text) + "'"); };
  if (text.size() < 4) throw fail();
  const char kind = text[0];
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || comma < 2 || comma + 2 != text.size()) throw fail();
  int slot = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + comma, slot);
  if (ec != std::errc() || ptr != text.data() + comma || slot < 1) throw fail();
  const char flag = text[comma + 1];
  if (flag != '0' && flag != '1') throw fail();
  return {kind, slot, flag - '0'};
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string to_string(const VerticalLetter& l) {
  return std::string(1, static_cast<char>(l.kind)) + std::to_string(l.slot) + "," +
         (l.new_max ? "1" : "0");
}

std::string to_string(const HorizontalLetter& l) {
  return std::string(1, static_cast<char>(l.kind)) + std::to_string(l.slot) + "," +
         (l.has_more ? "1" : "0");
}

std::string to_string(const Letter& letter) {
  return std::visit([](const auto& l) { return to_string(l); }, letter);
}

std::string to_string(const VerticalWord& word) {
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out.push_back(' ');
    out += to_string(l);
  }
  return out;
}

std::string to_string(const HorizontalWord& word) {
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out.push_back(' ');
    out += to_string(l);
  }
  return out;
}

VerticalLetter parse_vertical_letter(std::string_view text) {
  const auto raw = parse_raw(text);
  switch (raw.kind) {
    case 'l':
    case 'm':
    case 'r':
    case 'f':
      return {static_cast<VerticalKind>(raw.kind), raw.slot, raw.flag == 1};
    default:
      throw std::invalid_argument("bad vertical letter '" + std::string(text) + "'");
  }
}

HorizontalLetter parse_horizontal_letter(std::string_view text) {
  const auto raw = parse_raw(text);
  switch (raw.kind) {
    case 'u':
    case 'm':
    case 'd':
    case 'f':
      return {static_cast<HorizontalKind>(raw.kind), raw.slot, raw.flag == 1};
    default:
      throw std::invalid_argument("bad horizontal letter '" + std::string(text) + "'");
  }
}

Letter parse_letter(std::string_view text, Mode mode) {
  if (mode == Mode::vertical) return parse_vertical_letter(text);
  return parse_horizontal_letter(text);
}

VerticalWord parse_vertical_word(std::string_view text) {
  VerticalWord out;
  for (auto tok : split_ws(text)) out.push_back(parse_vertical_letter(tok));
  return out;
}

HorizontalWord parse_horizontal_word(std::string_view text) {
  HorizontalWord out;
  for (auto tok : split_ws(text)) out.push_back(parse_horizontal_letter(tok));
  return out;
}

int slot_delta(const VerticalLetter& l) {
  switch (l.kind) {
    case VerticalKind::fill:
      return -1;
    case VerticalKind::middle:
      return 1;
    default:
      return 0;
  }
}

int slot_delta(const HorizontalLetter& l) {
  int base = 0;
  if (l.kind == HorizontalKind::fill) base = -1;
  if (l.kind == HorizontalKind::middle) base = 1;
  return base + (l.has_more ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Vertical configurations

VerticalConfiguration::VerticalConfiguration(std::vector<int> items) : items_(std::move(items)) {
  std::vector<int> values;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i] < 0) throw std::invalid_argument("negative configuration entry");
    if (items_[i] == kSlot) {
      if (i > 0 && items_[i - 1] == kSlot)
        throw std::invalid_argument("two adjacent slots in a vertical configuration");
    } else {
      values.push_back(items_[i]);
    }
  }
  CayleyPerm check(std::move(values));
}

VerticalConfiguration VerticalConfiguration::parse(std::string_view text) {
  std::vector<int> items;
  std::string s(text);
  // the diamond is multi-byte; normalise it to the ASCII marker first
  for (std::size_t pos; (pos = s.find("◊")) != std::string::npos;)
    s.replace(pos, std::string("◊").size(), " _ ");
  for (auto tok : split_ws(s)) {
    if (tok == "_") {
      items.push_back(kSlot);
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
      throw std::invalid_argument("bad configuration token '" + std::string(tok) + "'");
    items.push_back(v);
  }
  return VerticalConfiguration(std::move(items));
}

int VerticalConfiguration::slot_count() const {
  return static_cast<int>(std::count(items_.begin(), items_.end(), kSlot));
}

int VerticalConfiguration::placed_count() const {
  return static_cast<int>(items_.size()) - slot_count();
}

int VerticalConfiguration::max_value() const {
  return items_.empty() ? 0 : *std::max_element(items_.begin(), items_.end());
}

CayleyPerm VerticalConfiguration::placed() const {
  std::vector<int> values;
  for (int v : items_)
    if (v != kSlot) values.push_back(v);
  return CayleyPerm(std::move(values));
}

std::string VerticalConfiguration::to_string() const {
  std::string out;
  for (int v : items_) {
    if (!out.empty()) out.push_back(' ');
    out += v == kSlot ? std::string("_") : std::to_string(v);
  }
  return out;
}

VerticalConfiguration VerticalConfiguration::apply(const VerticalLetter& letter,
                                                   std::size_t position) const {
  const int max = max_value();
  int seen = 0;
  std::size_t at = items_.size();
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i] == kSlot && ++seen == letter.slot) {
      at = i;
      break;
    }
  if (at == items_.size()) throw InvalidWord(position, "slot out of range");
  if (!letter.new_max) {
    if (max == 0) throw InvalidWord(position, "no current maximum to repeat");
    std::size_t rightmost = 0;
    for (std::size_t i = 0; i < items_.size(); ++i)
      if (items_[i] == max) rightmost = i;
    if (at < rightmost)
      throw InvalidWord(position, "repeated maximum must lie right of its previous copies");
  }
  const int value = letter.new_max ? max + 1 : max;
  std::vector<int> replacement;
  switch (letter.kind) {
    case VerticalKind::left:
      replacement = {value, kSlot};
      break;
    case VerticalKind::middle:
      replacement = {kSlot, value, kSlot};
      break;
    case VerticalKind::right:
      replacement = {kSlot, value};
      break;
    case VerticalKind::fill:
      replacement = {value};
      break;
  }
  std::vector<int> next(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(at));
  next.insert(next.end(), replacement.begin(), replacement.end());
  next.insert(next.end(), items_.begin() + static_cast<std::ptrdiff_t>(at) + 1, items_.end());
  VerticalConfiguration out;
  out.items_ = std::move(next);
  return out;
}

std::vector<VerticalLetter> VerticalConfiguration::legal_letters() const {
  std::vector<VerticalLetter> out;
  const int max = max_value();
  std::size_t rightmost = 0;
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (max > 0 && items_[i] == max) rightmost = i;
  int slot = 0;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i] != kSlot) continue;
    ++slot;
    for (bool new_max : {true, false}) {
      if (!new_max && (max == 0 || i < rightmost)) continue;
      for (auto kind : {VerticalKind::fill, VerticalKind::left, VerticalKind::right,
                        VerticalKind::middle})
        out.push_back({kind, slot, new_max});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Horizontal configurations

HorizontalConfiguration::HorizontalConfiguration(CayleyPerm prefix,
                                                 std::vector<HorizontalSlot> slots)
    : prefix_(std::move(prefix)), slots_(std::move(slots)) {
  std::sort(slots_.begin(), slots_.end(),
            [](const auto& a, const auto& b) { return a.height() < b.height(); });
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const auto& s = slots_[i];
    if (s.repeating ? (s.level < 1 || s.level > prefix_.max_value())
                    : (s.level < 0 || s.level > prefix_.max_value()))
      throw std::invalid_argument("horizontal slot outside the prefix's value range");
    if (i > 0 && slots_[i - 1].height() == s.height())
      throw std::invalid_argument("two horizontal slots share a level");
  }
}

std::string HorizontalConfiguration::to_string() const {
  std::string out = prefix_.to_string() + " |";
  for (const auto& s : slots_)
    out += (s.repeating ? " rep" : " gap") + std::to_string(s.level);
  return out;
}

HorizontalConfiguration HorizontalConfiguration::apply(const HorizontalLetter& letter,
                                                       std::size_t position) const {
  if (letter.slot < 1 || letter.slot > slot_count())
    throw InvalidWord(position, "slot out of range");
  const auto target = slots_[static_cast<std::size_t>(letter.slot - 1)];
  std::vector<int> values(prefix_.raw());
  std::vector<HorizontalSlot> next;
  if (target.repeating) {
    if (letter.kind != HorizontalKind::fill)
      throw InvalidWord(position, "only f may insert into a repeating slot");
    values.push_back(target.level);
    for (const auto& s : slots_)
      if (s != target || letter.has_more) next.push_back(s);
  } else {
    const int value = target.level + 1;
    for (int& v : values)
      if (v >= value) ++v;
    for (auto s : slots_) {
      if (s == target) continue;
      if (s.level >= value) ++s.level;
      next.push_back(s);
    }
    const bool below = letter.kind == HorizontalKind::up || letter.kind == HorizontalKind::middle;
    const bool above =
        letter.kind == HorizontalKind::down || letter.kind == HorizontalKind::middle;
    if (below) next.push_back({false, target.level});
    if (letter.has_more) next.push_back({true, value});
    if (above) next.push_back({false, value});
    values.push_back(value);
  }
  return HorizontalConfiguration(CayleyPerm(std::move(values)), std::move(next));
}

std::vector<HorizontalLetter> HorizontalConfiguration::legal_letters() const {
  std::vector<HorizontalLetter> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const int slot = static_cast<int>(i) + 1;
    for (bool more : {false, true}) {
      if (slots_[i].repeating) {
        out.push_back({HorizontalKind::fill, slot, more});
        continue;
      }
      for (auto kind : {HorizontalKind::fill, HorizontalKind::up, HorizontalKind::down,
                        HorizontalKind::middle})
        out.push_back({kind, slot, more});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Encoders. A slot survives on one side of the new point exactly when some
// point still to be inserted lies strictly inside that side of the slot.

VerticalWord vertical_encode(const CayleyPerm& perm) {
  if (perm.empty()) throw std::invalid_argument("cannot encode the empty Cayley permutation");
  const std::size_t n = perm.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return perm[a] < perm[b]; });
  std::vector<char> placed(n, 0);
  VerticalWord word;
  int max = 0;
  for (std::size_t q : order) {
    // runs of unplaced positions are the slots
    int slot = 0;
    for (std::size_t i = 0; i <= q; ++i)
      if (!placed[i] && (i == 0 || placed[i - 1])) ++slot;
    const bool left = q > 0 && !placed[q - 1];
    const bool right = q + 1 < n && !placed[q + 1];
    VerticalKind kind = VerticalKind::fill;
    if (left && right) kind = VerticalKind::middle;
    else if (right) kind = VerticalKind::left;
    else if (left) kind = VerticalKind::right;
    const bool new_max = perm[q] > max;
    max = std::max(max, perm[q]);
    placed[q] = 1;
    word.push_back({kind, slot, new_max});
  }
  return word;
}

CayleyPerm vertical_decode(const VerticalWord& word) {
  VerticalConfiguration config;
  for (std::size_t i = 0; i < word.size(); ++i) config = config.apply(word[i], i + 1);
  if (!config.complete()) throw InvalidWord(word.size() + 1, "unfilled slot remains");
  return config.placed();
}

HorizontalWord horizontal_encode(const CayleyPerm& perm) {
  if (perm.empty()) throw std::invalid_argument("cannot encode the empty Cayley permutation");
  const std::size_t n = perm.size();
  const auto& p = perm.raw();
  HorizontalWord word;
  std::set<int> placed;
  for (std::size_t t = 0; t < n; ++t) {
    const int v = p[t];
    // slot keys in final values: repeating at w -> 2w, gap above lo -> 2lo+1
    auto future_new_between = [&](int lo, int hi, std::size_t from) {
      for (std::size_t s = from; s < n; ++s)
        if (p[s] > lo && p[s] < hi && !placed.count(p[s])) return true;
      return false;
    };
    std::set<int> keys;
    {
      std::vector<int> levels(placed.begin(), placed.end());
      for (int w : levels)
        if (std::find(p.begin() + static_cast<std::ptrdiff_t>(t), p.end(), w) != p.end())
          keys.insert(2 * w);
      for (std::size_t g = 0; g <= levels.size(); ++g) {
        const int lo = g == 0 ? 0 : levels[g - 1];
        const int hi = g == levels.size() ? perm.max_value() + 1 : levels[g];
        if (future_new_between(lo, hi, t)) keys.insert(2 * lo + 1);
      }
    }
    HorizontalLetter letter;
    letter.has_more = std::find(p.begin() + static_cast<std::ptrdiff_t>(t) + 1, p.end(), v) !=
                      p.end();
    int key = 0;
    if (placed.count(v)) {
      key = 2 * v;
      letter.kind = HorizontalKind::fill;
    } else {
      auto it = placed.lower_bound(v);
      const int lo = it == placed.begin() ? 0 : *std::prev(it);
      const int hi = it == placed.end() ? perm.max_value() + 1 : *it;
      key = 2 * lo + 1;
      placed.insert(v);
      const bool below = future_new_between(lo, v, t + 1);
      const bool above = future_new_between(v, hi, t + 1);
      if (below && above) letter.kind = HorizontalKind::middle;
      else if (below) letter.kind = HorizontalKind::up;
      else if (above) letter.kind = HorizontalKind::down;
      else letter.kind = HorizontalKind::fill;
    }
    letter.slot = static_cast<int>(std::distance(keys.begin(), keys.find(key))) + 1;
    word.push_back(letter);
  }
  return word;
}

CayleyPerm horizontal_decode(const HorizontalWord& word) {
  HorizontalConfiguration config;
  for (std::size_t i = 0; i < word.size(); ++i) config = config.apply(word[i], i + 1);
  if (!config.complete()) throw InvalidWord(word.size() + 1, "unfilled slot remains");
  return config.prefix();
}

std::vector<VerticalConfiguration> vertical_evolution(const CayleyPerm& perm) {
  std::vector<VerticalConfiguration> out{VerticalConfiguration()};
  if (perm.empty()) return {VerticalConfiguration(std::vector<int>{})};
  for (const auto& l : vertical_encode(perm)) out.push_back(out.back().apply(l));
  return out;
}

std::vector<HorizontalConfiguration> horizontal_evolution(const CayleyPerm& perm) {
  std::vector<HorizontalConfiguration> out{HorizontalConfiguration()};
  if (perm.empty()) return {HorizontalConfiguration(CayleyPerm(), {})};
  for (const auto& l : horizontal_encode(perm)) out.push_back(out.back().apply(l));
  return out;
}

int max_slots(const CayleyPerm& perm, Mode mode) {
  int best = 0;
  if (mode == Mode::vertical) {
    for (const auto& c : vertical_evolution(perm)) best = std::max(best, c.slot_count());
  } else {
    for (const auto& c : horizontal_evolution(perm)) best = std::max(best, c.slot_count());
  }
  return best;
}

}  // namespace cayley
