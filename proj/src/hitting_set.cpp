#include "spreadkit/hitting_set.hpp"

#include <algorithm>
#include <bit>

#include "spreadkit/error.hpp"
#include "spreadkit/group.hpp"

namespace spreadkit {

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  bool intersects(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  void operator|=(const Bits& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  }
  std::size_t count_without(const Bits& mask) const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) n += std::popcount(words_[w] & ~mask.words_[w]);
    return n;
  }
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

class Solver {
 public:
  Solver(std::span<const std::vector<std::uint32_t>> sets, std::uint32_t universe,
         std::uint64_t node_limit)
      : universe_(universe), node_limit_(node_limit) {
    reduce(sets);
    element_hits_.assign(universe_, Bits(sets_.size()));
    for (std::size_t s = 0; s < sets_.size(); ++s)
      for (std::uint32_t x : sets_[s]) element_hits_[x].set(s);
  }

  HittingSetResult solve() {
    HittingSetResult res;
    res.sets_after_reduction = sets_.size();
    auto greedy = greedy_hitting_set(sets_, universe_);
    best_ = std::move(*greedy);
    res.greedy_size = best_.size();

    Bits hit(sets_.size());
    Bits forbidden(universe_);
    std::vector<std::uint32_t> chosen;
    res.root_lower_bound = lower_bound(hit, forbidden);
    search(hit, forbidden, chosen);
    std::sort(best_.begin(), best_.end());
    res.solution = best_;
    res.nodes = nodes_;
    res.optimal = !aborted_;
    return res;
  }

 private:
  // Drops duplicate sets and supersets of other sets: hitting the smaller one
  // already hits them.
  void reduce(std::span<const std::vector<std::uint32_t>> sets) {
    std::vector<Bits> bits;
    std::vector<std::size_t> order(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      Bits b(universe_);
      for (std::uint32_t x : sets[i]) b.set(x);
      bits.push_back(std::move(b));
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sets[a].size() < sets[b].size(); });
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
      bool dominated = false;
      for (std::size_t k : kept)
        if (bits[k].subset_of(bits[i])) {
          dominated = true;
          break;
        }
      if (!dominated) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    for (std::size_t i : kept) {
      sets_.push_back(sets[i]);
      set_bits_.push_back(bits[i]);
    }
  }

  std::size_t lower_bound(const Bits& hit, const Bits& forbidden) const {
    std::vector<std::pair<std::size_t, std::size_t>> open;  // (allowed size, set)
    for (std::size_t s = 0; s < sets_.size(); ++s)
      if (!hit.test(s)) open.emplace_back(set_bits_[s].count_without(forbidden), s);
    std::sort(open.begin(), open.end());
    Bits used(universe_);
    std::size_t packed = 0;
    for (auto [size, s] : open) {
      if (size == 0) return universe_ + 1;  // unhittable under this branch
      Bits allowed = set_bits_[s];
      for (std::size_t w = 0; w < allowed.words().size(); ++w)
        allowed.words()[w] &= ~forbidden.words()[w];
      if (allowed.intersects(used)) continue;
      used |= allowed;
      ++packed;
    }
    return packed;
  }

  void search(Bits& hit, Bits& forbidden, std::vector<std::uint32_t>& chosen) {
    ++nodes_;
    if (nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    // Branch set: fewest allowed elements, lowest index on ties.
    std::size_t branch = sets_.size();
    std::size_t branch_size = ~std::size_t{0};
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hit.test(s)) continue;
      const std::size_t n = set_bits_[s].count_without(forbidden);
      if (n < branch_size) {
        branch_size = n;
        branch = s;
      }
    }
    if (branch == sets_.size()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (branch_size == 0) return;
    if (chosen.size() + lower_bound(hit, forbidden) >= best_.size()) return;

    std::vector<std::uint32_t> newly_forbidden;
    for (std::uint32_t x : sets_[branch]) {
      if (forbidden.test(x)) continue;
      Bits saved = hit;
      hit |= element_hits_[x];
      chosen.push_back(x);
      search(hit, forbidden, chosen);
      chosen.pop_back();
      hit = std::move(saved);
      if (aborted_) break;
      forbidden.set(x);
      newly_forbidden.push_back(x);
      if (chosen.size() + 1 >= best_.size()) break;
    }
    for (std::uint32_t x : newly_forbidden) forbidden.reset(x);
  }

  std::uint32_t universe_;
  std::uint64_t node_limit_;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<Bits> set_bits_;
  std::vector<Bits> element_hits_;
  std::vector<std::uint32_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::optional<std::vector<std::uint32_t>> greedy_hitting_set(
    std::span<const std::vector<std::uint32_t>> sets, std::uint32_t universe, std::mt19937_64* rng,
    std::size_t size_limit) {
  std::vector<bool> hit(sets.size(), false);
  std::vector<std::vector<std::uint32_t>> containing(universe);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].empty()) return std::nullopt;
    for (std::uint32_t x : sets[s]) containing[x].push_back(static_cast<std::uint32_t>(s));
  }
  std::vector<std::size_t> gain(universe);
  for (std::uint32_t x = 0; x < universe; ++x) gain[x] = containing[x].size();
  std::size_t open = sets.size();
  std::vector<std::uint32_t> chosen;
  while (open > 0) {
    if (chosen.size() >= size_limit) return std::nullopt;
    const std::size_t top = *std::max_element(gain.begin(), gain.end());
    std::vector<std::uint32_t> tied;
    for (std::uint32_t x = 0; x < universe; ++x)
      if (gain[x] == top) tied.push_back(x);
    const std::uint32_t pick = rng != nullptr ? tied[uniform_below(*rng, tied.size())] : tied.front();
    chosen.push_back(pick);
    for (std::uint32_t s : containing[pick]) {
      if (hit[s]) continue;
      hit[s] = true;
      --open;
      for (std::uint32_t x : sets[s]) --gain[x];
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

HittingSetResult minimum_hitting_set(std::span<const std::vector<std::uint32_t>> sets,
                                     std::uint32_t universe, std::uint64_t node_limit) {
  for (const auto& s : sets)
    if (s.empty()) throw InputError("empty_set", "an empty set cannot be hit");
  if (sets.empty()) return HittingSetResult{{}, 0, 0, 0, 1, true};
  return Solver(sets, universe, node_limit).solve();
}

}  // namespace spreadkit
