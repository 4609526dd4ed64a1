#include "spreadkit/generation.hpp"

#include <mutex>
#include <numeric>
#include <string>

#include "spreadkit/error.hpp"
#include "spreadkit/parallel.hpp"

namespace spreadkit {

std::string_view filter_name(PairFilter f) {
  switch (f) {
    case PairFilter::none:
      return "none";
    case PairFilter::transitivity:
      return "transitivity";
    case PairFilter::order_lcm:
      return "order-lcm";
  }
  return "none";
}

BigInt subgroup_order(std::span<const Permutation> gens, std::size_t degree) {
  return build_chain(GeneratorSet(degree, gens)).order();
}

PairResult generates_pair(const Permutation& x, const Permutation& y, const GroupHandle& g,
                          const PairOptions& opts) {
  if (x.degree() != g.degree() || y.degree() != g.degree())
    throw InputError("degree_mismatch", "pair degree does not match the group");
  if (opts.check_membership && (!g.contains(x) || !g.contains(y)))
    throw InputError("not_a_member", "pair element is not in the group");

  PairResult res;
  const std::array<Permutation, 2> gens{x, y};

  if (opts.transitivity_filter) {
    std::size_t count = 0;
    orbit_ids(gens, g.degree(), &count);
    if (count > g.orbit_count()) {
      res.filter_used = PairFilter::transitivity;
      return res;
    }
  }

  if (opts.order_lcm_filter) {
    Permutation xy = compose(x, y);
    if (xy == compose(y, x)) {
      const BigInt bound = BigInt(element_order(x)) * element_order(y);
      if (bound < g.order()) {
        res.filter_used = PairFilter::order_lcm;
        return res;
      }
    }
  }

  if (const auto ceiling = g.chain().order_u64()) {
    const std::uint64_t ord = bounded_order(gens, g.degree(), *ceiling);
    res.subgroup_order = BigInt(ord);
    res.generates = ord == *ceiling;
  } else {
    res.subgroup_order = subgroup_order(gens, g.degree());
    res.generates = *res.subgroup_order == g.order();
  }
  return res;
}

namespace {

std::uint64_t checked_size(const GroupHandle& h, std::uint64_t budget) {
  if (h.order() > budget)
    throw BudgetError("budget_exceeded", "group order " + h.order().str() +
                                             " exceeds enumeration budget " +
                                             std::to_string(budget));
  return h.order_u64();
}

}  // namespace

Spectrum spectrum(const GroupHandle& h, std::uint64_t budget, std::size_t workers) {
  const std::uint64_t n = checked_size(h, budget);
  const auto ranges = partition_ranges(n, workers);
  std::vector<std::set<std::uint64_t>> partial(ranges.size());
  run_workers(ranges.size(), [&](std::size_t w) {
    for_each_element(h.chain(), ranges[w].first, ranges[w].second,
                     [&](const Permutation& p, std::uint64_t) { partial[w].insert(element_order(p)); });
  });
  Spectrum s;
  for (const auto& part : partial) s.orders.insert(part.begin(), part.end());
  return s;
}

OrderQuery find_element_of_order(const GroupHandle& h, std::uint64_t k, std::uint64_t budget,
                                 std::size_t workers) {
  const std::uint64_t n = checked_size(h, budget);
  OrderQuery q;
  // Lagrange: nothing to find unless k divides |H|.
  if (k == 0 || n % k != 0) {
    q.scanned = 0;
    return q;
  }
  const auto ranges = partition_ranges(n, workers);
  AtomicMin best;
  run_workers(ranges.size(), [&](std::size_t w) {
    for_each_element(h.chain(), ranges[w].first, ranges[w].second,
                     [&](const Permutation& p, std::uint64_t rank) {
                       if (rank >= best.get()) return false;
                       if (element_order(p) == k) {
                         best.offer(rank);
                         return false;
                       }
                       return true;
                     });
  });
  if (best.get() != ~std::uint64_t{0}) {
    q.present = true;
    q.exhibit = h.chain().unrank(best.get());
    q.scanned = best.get() + 1;
  } else {
    q.scanned = n;
  }
  return q;
}

}  // namespace spreadkit
