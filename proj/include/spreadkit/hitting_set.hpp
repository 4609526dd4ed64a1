#pragma once

// Exact minimum hitting set by branch and bound.
//
// Sets are sorted lists of element ids in [0, universe). The search branches
// on the unhit set with the fewest still-allowed elements (ties: lowest set
// index), tries its elements in ascending id order and forbids each element
// in the branches after its own. Lower bound: a greedy packing of pairwise
// disjoint unhit sets.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace spreadkit {

struct HittingSetResult {
  std::vector<std::uint32_t> solution;  // sorted element ids
  std::size_t greedy_size = 0;
  std::size_t root_lower_bound = 0;
  std::size_t sets_after_reduction = 0;
  std::uint64_t nodes = 0;
  bool optimal = false;  // false only if node_limit stopped the search
};

/// Greedy: repeatedly take the element hitting the most unhit sets. Ties go to
/// the lowest id, or to a uniformly random tied id when rng is given.
/// Returns nullopt if some set is empty.
std::optional<std::vector<std::uint32_t>> greedy_hitting_set(
    std::span<const std::vector<std::uint32_t>> sets, std::uint32_t universe,
    std::mt19937_64* rng = nullptr, std::size_t size_limit = ~std::size_t{0});

/// Minimum hitting set. Requires every set to be non-empty.
HittingSetResult minimum_hitting_set(std::span<const std::vector<std::uint32_t>> sets,
                                     std::uint32_t universe,
                                     std::uint64_t node_limit = ~std::uint64_t{0});

}  // namespace spreadkit
