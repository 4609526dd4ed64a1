#pragma once

// Stabilizer chains (base and strong generating set) for permutation groups.
//
// Chains are built by deterministic Schreier-Sims: identical generators and
// base hint always produce identical chains. A built chain is immutable and
// may be shared between threads.
//
// Canonical element order: g < h iff the tuple (g(b_0), g(b_1), ...) of base
// images is lexicographically smaller. rank()/unrank() are the bijection
// between the group and [0, |G|) in that order.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spreadkit/perm.hpp"

namespace spreadkit {

using BigInt = boost::multiprecision::cpp_int;

/// Generators sharing one degree; identity entries and duplicates are dropped.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::size_t degree, std::span<const Permutation> generators);
  GeneratorSet(std::size_t degree, std::initializer_list<Permutation> generators)
      : GeneratorSet(degree, std::span<const Permutation>(generators.begin(), generators.size())) {}

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  bool empty() const noexcept { return generators_.empty(); }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
};

class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Point> orbit;              // discovery order
    std::vector<std::int16_t> position;    // point -> index in orbit, or -1
    std::vector<Permutation> reps;         // reps[k](base) == orbit[k]
    std::vector<Permutation> inverse_reps;
    std::vector<std::size_t> generators;   // indices into strong_generators()
  };

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }
  std::vector<Point> base() const;

  BigInt order() const;
  /// Order when it fits in 64 bits.
  std::optional<std::uint64_t> order_u64() const;

  /// Sifts g from `from_level`. Returns the residue and the level where sifting
  /// stopped (levels().size() when every level was passed).
  std::pair<Permutation, std::size_t> sift(const Permutation& g, std::size_t from_level = 0) const;

  /// Membership test. Throws InputError on degree mismatch.
  bool contains(const Permutation& g) const;

  /// Position of g in the canonical order. g must be a member and |G| < 2^64.
  std::uint64_t rank(const Permutation& g) const;
  Permutation unrank(std::uint64_t r) const;

  /// Uniform element from independent transversal picks.
  template <class Rng>
  Permutation random_element(Rng& rng) const;

 private:
  friend class SchreierSims;
  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
};

/// Uniform integer in [0, bound) from a 64-bit engine (rejection sampling, so the
/// stream is identical on every standard library).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

template <class Rng>
Permutation StabilizerChain::random_element(Rng& rng) const {
  Permutation g = Permutation::identity(degree_);
  Permutation tmp = g;
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    const std::size_t pick = uniform_below(rng, it->orbit.size());
    compose_into(g, it->reps[pick], tmp);
    std::swap(g, tmp);
  }
  return g;
}

/// Deterministic Schreier-Sims. Base points are taken from `base_hint` first,
/// then in natural order, skipping points fixed by the element that needs a new
/// base point.
StabilizerChain build_chain(const GeneratorSet& gens, std::span<const Point> base_hint = {});

/// Order of <gens>, stopping early once the product of basic orbit lengths
/// reaches `ceiling`. The product is a lower bound for the order at every stage,
/// so when <gens> is known to lie in a group of order `ceiling` an early stop
/// proves equality. Returns the exact order, or `ceiling` on an early stop.
std::uint64_t bounded_order(std::span<const Permutation> gens, std::size_t degree,
                            std::uint64_t ceiling);

/// Walks the canonical order from a given rank.
class ElementCursor {
 public:
  ElementCursor(const StabilizerChain& chain, std::uint64_t start);

  const Permutation& current() const noexcept { return prefix_.back(); }
  std::uint64_t rank() const noexcept { return rank_; }
  /// Moves to the next element; returns false past the last one.
  bool advance();

 private:
  void rebuild_from(std::size_t level);
  void resort(std::size_t level);

  const StabilizerChain* chain_;
  std::uint64_t rank_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::size_t> digits_;
  std::vector<std::vector<std::uint16_t>> sorted_;
  std::vector<Permutation> prefix_;
};

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_ranges(std::uint64_t total,
                                                                      std::size_t parts);

/// Calls fn(element, rank) for each rank in [begin, end), in canonical order.
template <class F>
void for_each_element(const StabilizerChain& chain, std::uint64_t begin, std::uint64_t end,
                      F&& fn) {
  if (begin >= end) return;
  ElementCursor cur(chain, begin);
  while (true) {
    if constexpr (std::is_same_v<std::invoke_result_t<F, const Permutation&, std::uint64_t>,
                                 bool>) {
      if (!fn(cur.current(), cur.rank())) return;
    } else {
      fn(cur.current(), cur.rank());
    }
    if (cur.rank() + 1 >= end || !cur.advance()) return;
  }
}

/// A group together with its chain, order and orbit structure. Cheap to copy.
class GroupHandle {
 public:
  GroupHandle() = default;
  explicit GroupHandle(GeneratorSet gens, std::span<const Point> base_hint = {});

  std::size_t degree() const noexcept { return state_->gens.degree(); }
  const GeneratorSet& generators() const noexcept { return state_->gens; }
  const StabilizerChain& chain() const noexcept { return state_->chain; }
  const BigInt& order() const noexcept { return state_->order; }
  /// Throws BudgetError when the order does not fit in 64 bits.
  std::uint64_t order_u64() const;

  bool contains(const Permutation& g) const { return state_->chain.contains(g); }

  /// orbit_ids()[p] is the index of p's orbit; orbits are numbered by least point.
  const std::vector<std::uint16_t>& orbit_ids() const noexcept { return state_->orbit_ids; }
  std::size_t orbit_count() const noexcept { return state_->orbit_count; }
  std::size_t orbit_size(Point p) const;
  bool transitive() const noexcept { return state_->orbit_count <= 1; }

 private:
  struct State {
    GeneratorSet gens;
    StabilizerChain chain;
    BigInt order;
    std::vector<std::uint16_t> orbit_ids;
    std::vector<std::size_t> orbit_sizes;
    std::size_t orbit_count = 0;
  };
  std::shared_ptr<const State> state_;
};

/// Orbits of <gens> on the points, as ids numbered by least point.
std::vector<std::uint16_t> orbit_ids(std::span<const Permutation> gens, std::size_t degree,
                                     std::size_t* count = nullptr);

Permutation random_element(const StabilizerChain& chain, std::uint64_t seed);

/// Stabilizer of `point` in G, with its own chain.
GroupHandle point_stabilizer(const GroupHandle& g, Point point);

}  // namespace spreadkit
