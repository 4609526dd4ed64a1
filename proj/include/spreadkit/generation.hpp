#pragma once

// Two-generation tests and element-order spectra.

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>

#include "spreadkit/group.hpp"

namespace spreadkit {

enum class PairFilter { none, transitivity, order_lcm };

std::string_view filter_name(PairFilter f);

struct PairResult {
  bool generates = false;
  /// |<x, y>|; absent when a pre-filter answered without building a chain.
  std::optional<BigInt> subgroup_order;
  PairFilter filter_used = PairFilter::none;
};

struct PairOptions {
  /// Reject pairs whose orbits are strictly finer than G's.
  bool transitivity_filter = true;
  /// Reject commuting pairs with |x|*|y| < |G| (an abelian <x, y> has order at most that).
  bool order_lcm_filter = false;
  /// Sift x and y through G first; hot loops whose inputs are known members may skip it.
  bool check_membership = true;
};

/// Decides <x, y> = G. Filters only ever answer "no"; a "yes" always comes from a
/// chain on <x, y> whose orbit product reached |G|.
PairResult generates_pair(const Permutation& x, const Permutation& y, const GroupHandle& g,
                          const PairOptions& opts = {});

/// Exact |<gens>| from a full chain.
BigInt subgroup_order(std::span<const Permutation> gens, std::size_t degree);

struct Spectrum {
  std::set<std::uint64_t> orders;
  bool contains(std::uint64_t k) const { return orders.count(k) != 0; }
};

inline constexpr std::uint64_t kDefaultSpectrumBudget = 1'000'000;

/// Exact set of element orders by enumeration. Throws BudgetError when |H| > budget.
Spectrum spectrum(const GroupHandle& h, std::uint64_t budget = kDefaultSpectrumBudget,
                  std::size_t workers = 1);

struct OrderQuery {
  bool present = false;
  std::optional<Permutation> exhibit;  // canonical-first element of that order
  std::uint64_t scanned = 0;
};

/// Streams the canonical enumeration and stops at the first element of order k.
OrderQuery find_element_of_order(const GroupHandle& h, std::uint64_t k,
                                 std::uint64_t budget = kDefaultSpectrumBudget,
                                 std::size_t workers = 1);

}  // namespace spreadkit
