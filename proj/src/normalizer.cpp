#include "spreadkit/normalizer.hpp"

#include "spreadkit/error.hpp"

namespace spreadkit {

CyclicOrbit::CyclicOrbit(const GroupHandle& g, const Permutation& x, std::uint64_t max_orbit)
    : g_(g), x_(x) {
  const auto& gens = g.generators().generators();
  if (gens.size() > 255) throw InputError("too_many_generators", "at most 255 generators");
  keys_.push_back(cyclic_subgroup_key(x));
  parent_.push_back(0);
  via_.push_back(0);
  index_.emplace(keys_[0], 0);

  Permutation conj = Permutation::identity(g.degree());
  std::vector<Permutation> inv;
  for (const auto& s : gens) inv.push_back(inverse(s));
  for (std::uint32_t i = 0; i < keys_.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      compose3_into(inv[s], keys_[i], gens[s], conj);
      Permutation key = cyclic_subgroup_key(conj);
      if (index_.contains(key)) continue;
      if (keys_.size() >= max_orbit)
        throw BudgetError("orbit_budget", "conjugacy orbit exceeds " + std::to_string(max_orbit));
      index_.emplace(key, static_cast<std::uint32_t>(keys_.size()));
      keys_.push_back(std::move(key));
      parent_.push_back(i);
      via_.push_back(static_cast<std::uint8_t>(s));
    }
  }

  // Schreier generators t_i s t_j^-1 fix keys_[0]; keep the ones that enlarge N.
  if (g.order() % keys_.size() != 0)
    throw VerificationError("orbit_stabilizer", "orbit length does not divide |G|");
  const BigInt target = g.order() / keys_.size();
  std::vector<Permutation> ngens{x};
  GroupHandle n(GeneratorSet(g.degree(), ngens));
  for (std::uint32_t i = 0; i < keys_.size() && n.order() < target; ++i) {
    const Permutation ti = conjugator(i);
    for (std::size_t s = 0; s < gens.size() && n.order() < target; ++s) {
      compose3_into(inv[s], keys_[i], gens[s], conj);
      const std::uint32_t j = index_.at(cyclic_subgroup_key(conj));
      const Permutation sch = compose(compose(ti, gens[s]), inverse(conjugator(j)));
      if (sch.is_identity() || n.contains(sch)) continue;
      ngens.push_back(sch);
      n = GroupHandle(GeneratorSet(g.degree(), ngens));
    }
  }
  if (n.order() != target)
    throw VerificationError("orbit_stabilizer", "normalizer order " + n.order().str() +
                                                    " != |G| / orbit = " + target.str());
  normalizer_ = n;
}

std::optional<std::uint32_t> CyclicOrbit::find(const Permutation& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Permutation CyclicOrbit::conjugator(std::uint32_t i) const {
  const auto& gens = g_.generators().generators();
  std::vector<std::uint8_t> path;
  while (i != 0) {
    path.push_back(via_[i]);
    i = parent_[i];
  }
  Permutation c = Permutation::identity(g_.degree());
  for (auto it = path.rbegin(); it != path.rend(); ++it) c = compose(c, gens[*it]);
  return c;
}

}  // namespace spreadkit
