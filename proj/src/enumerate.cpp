#include "cayley/enumerate.hpp"

#include <algorithm>
#include <string>

#include "cayley/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cayley {

namespace {

void check_cap(std::size_t n, std::size_t max_size) {
  if (n > max_size)
    throw ResourceCapExceeded("size " + std::to_string(n) + " exceeds the enumeration cap of " +
                              std::to_string(max_size));
}

// Depth-first walk over the functions [n] -> [m] that are onto. `word` holds
// the first `pos` values; `used[v]` counts occurrences of v.
template <class Visit>
void surjections(std::vector<int>& word, std::vector<int>& used, std::size_t pos, int m,
                 int missing, Visit&& visit) {
  const std::size_t n = word.size();
  if (pos == n) {
    visit(std::span<const int>(word));
    return;
  }
  const std::size_t left = n - pos;
  for (int v = 1; v <= m; ++v) {
    const bool fresh = used[v] == 0;
    const int still_missing = missing - (fresh ? 1 : 0);
    if (static_cast<std::size_t>(still_missing) > left - 1) continue;
    word[pos] = v;
    ++used[v];
    surjections(word, used, pos + 1, m, still_missing, visit);
    --used[v];
  }
}

struct Subtree {
  int m;
  std::vector<int> prefix;
};

// Splits the generation tree into independent subtrees keyed by the number of
// distinct values and the first two entries.
std::vector<Subtree> subtrees(std::size_t n) {
  std::vector<Subtree> out;
  const std::size_t depth = std::min<std::size_t>(2, n);
  for (int m = 1; m <= static_cast<int>(n); ++m) {
    std::vector<int> prefix(depth, 1);
    while (true) {
      std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
      int distinct = 0;
      for (int v : prefix)
        if (!seen[v]) {
          seen[v] = 1;
          ++distinct;
        }
      if (static_cast<std::size_t>(m - distinct) <= n - depth) out.push_back({m, prefix});
      std::size_t i = depth;
      while (i > 0 && prefix[i - 1] == m) prefix[--i] = 1;
      if (i == 0) break;
      ++prefix[i - 1];
    }
  }
  return out;
}

template <class Visit>
void walk_subtree(std::size_t n, const Subtree& s, Visit&& visit) {
  std::vector<int> word(n, 0);
  std::vector<int> used(static_cast<std::size_t>(s.m) + 1, 0);
  int missing = s.m;
  for (std::size_t i = 0; i < s.prefix.size(); ++i) {
    word[i] = s.prefix[i];
    if (used[s.prefix[i]]++ == 0) --missing;
  }
  surjections(word, used, s.prefix.size(), s.m, missing, visit);
}

}  // namespace

void for_each_cayley(std::size_t n, const std::function<void(std::span<const int>)>& visit,
                     std::size_t max_size) {
  check_cap(n, max_size);
  if (n == 0) {
    visit(std::span<const int>());
    return;
  }
  for (const auto& s : subtrees(n)) walk_subtree(n, s, visit);
}

std::vector<CayleyPerm> generate_cayley(std::size_t n, std::size_t max_size) {
  std::vector<CayleyPerm> out;
  for_each_cayley(
      n, [&](std::span<const int> w) { out.emplace_back(std::vector<int>(w.begin(), w.end())); },
      max_size);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_avoiders_serial(const Basis& basis, std::size_t n, std::size_t max_size) {
  std::uint64_t total = 0;
  for_each_cayley(
      n,
      [&](std::span<const int> w) {
        if (avoids(w, basis)) ++total;
      },
      max_size);
  return total;
}

std::uint64_t count_avoiders(const Basis& basis, std::size_t n, std::size_t max_size) {
  check_cap(n, max_size);
  if (n == 0) return avoids(std::span<const int>(), basis) ? 1 : 0;
  const auto tasks = subtrees(n);
  std::uint64_t total = 0;
  const auto count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (long t = 0; t < count; ++t) {
    std::uint64_t local = 0;
    walk_subtree(n, tasks[static_cast<std::size_t>(t)], [&](std::span<const int> w) {
      if (avoids(w, basis)) ++local;
    });
    total += local;
  }
  return total;
}

std::vector<std::uint64_t> avoider_sequence(const Basis& basis, std::size_t n,
                                            std::size_t max_size) {
  std::vector<std::uint64_t> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(count_avoiders(basis, k, max_size));
  return out;
}

std::vector<CayleyPerm> avoiders(const Basis& basis, std::size_t n, std::size_t max_size) {
  std::vector<CayleyPerm> out;
  for_each_cayley(
      n,
      [&](std::span<const int> w) {
        if (avoids(w, basis)) out.emplace_back(std::vector<int>(w.begin(), w.end()));
      },
      max_size);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t fubini(std::size_t n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

}  // namespace cayley
