#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cayley/cperm.hpp"

namespace cayley {

/// Largest size the exhaustive generators accept unless told otherwise.
inline constexpr std::size_t kDefaultMaxSize = 10;

/// All Cayley permutations of size n in lexicographic order. Built as the
/// surjective functions [n] -> [m] for m = 1..n.
/// Throws ResourceCapExceeded when n > max_size.
std::vector<CayleyPerm> generate_cayley(std::size_t n, std::size_t max_size = kDefaultMaxSize);

/// Streams every Cayley permutation of size n without materialising them.
void for_each_cayley(std::size_t n, const std::function<void(std::span<const int>)>& visit,
                     std::size_t max_size = kDefaultMaxSize);

/// Number of size-n Cayley permutations avoiding every pattern of `basis`.
/// OpenMP-parallel over generation subtrees; the result is deterministic.
std::uint64_t count_avoiders(const Basis& basis, std::size_t n,
                             std::size_t max_size = kDefaultMaxSize);

/// Single-threaded reference for count_avoiders.
std::uint64_t count_avoiders_serial(const Basis& basis, std::size_t n,
                                    std::size_t max_size = kDefaultMaxSize);

/// Counts for sizes 1..n.
std::vector<std::uint64_t> avoider_sequence(const Basis& basis, std::size_t n,
                                            std::size_t max_size = kDefaultMaxSize);

std::vector<CayleyPerm> avoiders(const Basis& basis, std::size_t n,
                                 std::size_t max_size = kDefaultMaxSize);

/// Fubini (ordered Bell) number, used as a closed-form cross-check.
std::uint64_t fubini(std::size_t n);

}  // namespace cayley
