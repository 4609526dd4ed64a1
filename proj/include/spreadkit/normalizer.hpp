#pragma once

// Normalizers of cyclic subgroups by orbit-stabilizer.
//
// G acts by conjugation on its cyclic subgroups; a subgroup is named by its
// cyclic_subgroup_key. The orbit of <x> is walked breadth-first over G's
// generators, and N_G(<x>) -- the stabilizer of the key -- is generated by
// Schreier generators until its order reaches |G| / |orbit|.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spreadkit/group.hpp"

namespace spreadkit {

class CyclicOrbit {
 public:
  /// Throws BudgetError when the orbit grows beyond max_orbit.
  CyclicOrbit(const GroupHandle& g, const Permutation& x, std::uint64_t max_orbit = 1u << 22);

  const Permutation& representative() const noexcept { return x_; }
  std::size_t size() const noexcept { return keys_.size(); }
  /// keys()[0] is the key of <x>; the rest are in breadth-first order.
  const std::vector<Permutation>& keys() const noexcept { return keys_; }
  std::optional<std::uint32_t> find(const Permutation& key) const;

  /// c with key(<x>^c) = keys()[i], i.e. conjugate(x, c) generates that subgroup.
  Permutation conjugator(std::uint32_t i) const;

  /// N_G(<x>), with order exactly |G| / size().
  const GroupHandle& normalizer() const noexcept { return normalizer_; }

 private:
  GroupHandle g_;
  Permutation x_;
  std::vector<Permutation> keys_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> via_;
  std::unordered_map<Permutation, std::uint32_t> index_;
  GroupHandle normalizer_;
};

}  // namespace spreadkit
