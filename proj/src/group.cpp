#include "spreadkit/group.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "spreadkit/error.hpp"

namespace spreadkit {

GeneratorSet::GeneratorSet(std::size_t degree, std::span<const Permutation> generators)
    : degree_(degree) {
  if (degree > kMaxDegree)
    throw InputError("degree_out_of_range", "degree " + std::to_string(degree) + " exceeds 255");
  for (const Permutation& g : generators) {
    if (g.degree() != degree)
      throw InputError("degree_mismatch", "generator of degree " + std::to_string(g.degree()) +
                                              " in a degree-" + std::to_string(degree) + " set");
    if (g.is_identity()) continue;
    if (std::find(generators_.begin(), generators_.end(), g) != generators_.end()) continue;
    generators_.push_back(g);
  }
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  while (true) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

// ---------------------------------------------------------------------------
// Schreier-Sims
// ---------------------------------------------------------------------------

class SchreierSims {
 public:
  SchreierSims(std::size_t degree, std::span<const Point> hint, std::uint64_t ceiling)
      : degree_(degree), hint_(hint.begin(), hint.end()), ceiling_(ceiling) {
    chain_.degree_ = degree;
  }

  void run(std::span<const Permutation> gens) {
    Permutation scratch = Permutation::identity(degree_);
    // Hinted points moved by the group lead the base, in hint order.
    for (Point p : hint_) {
      if (p >= degree_ || is_base(p)) continue;
      if (std::any_of(gens.begin(), gens.end(), [&](const Permutation& g) { return g[p] != p; }))
        new_level(p);
    }
    for (const Permutation& g : gens) {
      if (g.is_identity()) continue;
      const std::size_t idx = add_strong(g);
      // Every level whose base points g fixes gets g.
      std::size_t l = 0;
      for (; l < chain_.levels_.size(); ++l) {
        add_to_level(l, idx);
        if (g[chain_.levels_[l].base] != chain_.levels_[l].base) break;
      }
      if (l == chain_.levels_.size()) {
        new_level(pick_base(g));
        add_to_level(l, idx);
      }
      if (reached_ceiling()) return;
    }

    std::size_t i = chain_.levels_.size();
    while (i > 0) {
      const std::size_t level = i - 1;
      const std::size_t deeper = process_level(level, scratch);
      if (stopped_) return;
      if (deeper == kDone) {
        --i;
      } else {
        i = deeper + 1;
      }
    }
  }

  StabilizerChain take() { return std::move(chain_); }
  bool stopped() const { return stopped_; }
  std::uint64_t product() const { return product_; }

 private:
  static constexpr std::size_t kDone = static_cast<std::size_t>(-1);

  std::size_t add_strong(const Permutation& g) {
    chain_.strong_.push_back(g);
    strong_inv_.push_back(inverse(g));
    return chain_.strong_.size() - 1;
  }

  Point pick_base(const Permutation& g) const {
    for (Point p : hint_)
      if (p < degree_ && g[p] != p && !is_base(p)) return p;
    for (std::size_t p = 0; p < degree_; ++p)
      if (g[p] != p) return static_cast<Point>(p);
    return 0;
  }

  bool is_base(Point p) const {
    for (const auto& lv : chain_.levels_)
      if (lv.base == p) return true;
    return false;
  }

  void new_level(Point base) {
    StabilizerChain::Level lv;
    lv.base = base;
    lv.orbit.push_back(base);
    lv.position.assign(degree_, -1);
    lv.position[base] = 0;
    lv.reps.push_back(Permutation::identity(degree_));
    lv.inverse_reps.push_back(Permutation::identity(degree_));
    chain_.levels_.push_back(std::move(lv));
    checked_.emplace_back();
  }

  // Adds strong generator idx to level l and closes the orbit.
  void add_to_level(std::size_t l, std::size_t idx) {
    auto& lv = chain_.levels_[l];
    const std::size_t old_size = lv.orbit.size();
    lv.generators.push_back(idx);
    checked_[l].push_back(0);
    // New generator on old points, then all generators on new points.
    for (std::size_t k = 0; k < old_size; ++k) extend(lv, k, idx);
    for (std::size_t k = old_size; k < lv.orbit.size(); ++k)
      for (std::size_t gi : lv.generators) extend(lv, k, gi);
    if (lv.orbit.size() != old_size) update_product();
  }

  void extend(StabilizerChain::Level& lv, std::size_t k, std::size_t gi) {
    const Permutation& s = chain_.strong_[gi];
    const Point img = s[lv.orbit[k]];
    if (lv.position[img] >= 0) return;
    lv.position[img] = static_cast<std::int16_t>(lv.orbit.size());
    lv.orbit.push_back(img);
    Permutation rep = Permutation::identity(degree_);
    compose_into(lv.reps[k], s, rep);
    Permutation inv = Permutation::identity(degree_);
    compose_into(strong_inv_[gi], lv.inverse_reps[k], inv);
    lv.reps.push_back(std::move(rep));
    lv.inverse_reps.push_back(std::move(inv));
  }

  void update_product() {
    std::uint64_t p = 1;
    for (const auto& lv : chain_.levels_) {
      const std::uint64_t n = lv.orbit.size();
      if (p > ~std::uint64_t{0} / n) {
        p = ~std::uint64_t{0};
        break;
      }
      p *= n;
    }
    product_ = p;
    if (ceiling_ != 0 && product_ >= ceiling_) stopped_ = true;
  }

  bool reached_ceiling() const { return stopped_; }

  // Tests the pending Schreier generators of level l. Returns kDone when all
  // of them sift, otherwise the deepest level that received a new generator.
  std::size_t process_level(std::size_t l, Permutation& schreier) {
    for (std::size_t gl = 0; gl < chain_.levels_[l].generators.size(); ++gl) {
      while (checked_[l][gl] < chain_.levels_[l].orbit.size()) {
        const auto& lv = chain_.levels_[l];
        const std::size_t k = checked_[l][gl]++;
        const Permutation& s = chain_.strong_[lv.generators[gl]];
        const Point beta = lv.orbit[k];
        const auto target = static_cast<std::size_t>(lv.position[s[beta]]);
        compose3_into(lv.reps[k], s, lv.inverse_reps[target], schreier);
        if (schreier.is_identity()) continue;
        auto [residue, stop] = chain_.sift(schreier, l + 1);
        if (residue.is_identity()) continue;
        const std::size_t idx = add_strong(residue);
        if (stop == chain_.levels_.size()) new_level(pick_base(residue));
        for (std::size_t m = l + 1; m <= stop; ++m) add_to_level(m, idx);
        return stop;
      }
    }
    return kDone;
  }

  std::size_t degree_;
  std::vector<Point> hint_;
  std::uint64_t ceiling_;
  StabilizerChain chain_;
  std::vector<Permutation> strong_inv_;
  std::vector<std::vector<std::size_t>> checked_;  // per level, per generator: orbit prefix done
  std::uint64_t product_ = 1;
  bool stopped_ = false;
};

StabilizerChain build_chain(const GeneratorSet& gens, std::span<const Point> base_hint) {
  SchreierSims ss(gens.degree(), base_hint, 0);
  ss.run(gens.generators());
  return ss.take();
}

std::uint64_t bounded_order(std::span<const Permutation> gens, std::size_t degree,
                            std::uint64_t ceiling) {
  SchreierSims ss(degree, {}, ceiling);
  ss.run(gens);
  return ss.stopped() ? ceiling : ss.product();
}

// ---------------------------------------------------------------------------
// Chain queries
// ---------------------------------------------------------------------------

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

std::optional<std::uint64_t> StabilizerChain::order_u64() const {
  std::uint64_t o = 1;
  for (const auto& lv : levels_) {
    const std::uint64_t n = lv.orbit.size();
    if (o > ~std::uint64_t{0} / n) return std::nullopt;
    o *= n;
  }
  return o;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(const Permutation& g,
                                                          std::size_t from_level) const {
  Permutation cur = g;
  Permutation tmp = g;
  for (std::size_t l = from_level; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    const std::int16_t pos = lv.position[cur[lv.base]];
    if (pos < 0) return {std::move(cur), l};
    compose_into(cur, lv.inverse_reps[static_cast<std::size_t>(pos)], tmp);
    std::swap(cur, tmp);
  }
  return {std::move(cur), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_)
    throw InputError("degree_mismatch", "element of degree " + std::to_string(g.degree()) +
                                            " tested against a degree-" +
                                            std::to_string(degree_) + " group");
  auto [residue, stop] = sift(g);
  return stop == levels_.size() && residue.is_identity();
}

namespace {

// Number of orbit points o with prefix(o) < value.
std::size_t count_below(const std::vector<Point>& orbit, const Permutation& prefix, Point value) {
  std::size_t n = 0;
  for (Point o : orbit) n += prefix[o] < value ? 1 : 0;
  return n;
}

}  // namespace

std::uint64_t StabilizerChain::rank(const Permutation& g) const {
  if (!order_u64()) throw BudgetError("order_too_large", "group order exceeds 64 bits");
  if (g.degree() != degree_) throw InputError("degree_mismatch", "rank: degree mismatch");
  Permutation prefix = Permutation::identity(degree_);
  Permutation residue = g;
  Permutation tmp = g;
  std::uint64_t r = 0;
  for (const auto& lv : levels_) {
    const std::int16_t pos = lv.position[residue[lv.base]];
    if (pos < 0) throw InputError("not_a_member", "rank: element is not in the group");
    r = r * lv.orbit.size() + count_below(lv.orbit, prefix, g[lv.base]);
    compose_into(residue, lv.inverse_reps[static_cast<std::size_t>(pos)], tmp);
    std::swap(residue, tmp);
    compose_into(lv.reps[static_cast<std::size_t>(pos)], prefix, tmp);
    std::swap(prefix, tmp);
  }
  if (!residue.is_identity()) throw InputError("not_a_member", "rank: element is not in the group");
  return r;
}

Permutation StabilizerChain::unrank(std::uint64_t r) const {
  ElementCursor cur(*this, r);
  return cur.current();
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

ElementCursor::ElementCursor(const StabilizerChain& chain, std::uint64_t start)
    : chain_(&chain), rank_(start) {
  const auto total = chain.order_u64();
  if (!total) throw BudgetError("order_too_large", "group order exceeds 64 bits");
  total_ = *total;
  if (start >= total_) throw InputError("rank_out_of_range", "rank beyond group order");
  const auto& levels = chain.levels();
  digits_.assign(levels.size(), 0);
  std::uint64_t rest = start;
  for (std::size_t l = levels.size(); l-- > 0;) {
    digits_[l] = rest % levels[l].orbit.size();
    rest /= levels[l].orbit.size();
  }
  sorted_.resize(levels.size());
  prefix_.assign(levels.size() + 1, Permutation::identity(chain.degree()));
  rebuild_from(0);
}

void ElementCursor::resort(std::size_t l) {
  const auto& lv = chain_->levels()[l];
  const Permutation& v = prefix_[l];
  auto& s = sorted_[l];
  s.resize(lv.orbit.size());
  std::iota(s.begin(), s.end(), std::uint16_t{0});
  std::sort(s.begin(), s.end(),
            [&](std::uint16_t a, std::uint16_t b) { return v[lv.orbit[a]] < v[lv.orbit[b]]; });
}

void ElementCursor::rebuild_from(std::size_t level) {
  const auto& levels = chain_->levels();
  for (std::size_t l = level; l < levels.size(); ++l) {
    if (l != level || sorted_[l].empty()) resort(l);
    compose_into(levels[l].reps[sorted_[l][digits_[l]]], prefix_[l], prefix_[l + 1]);
  }
}

bool ElementCursor::advance() {
  if (rank_ + 1 >= total_) return false;
  ++rank_;
  const auto& levels = chain_->levels();
  std::size_t l = levels.size();
  while (l-- > 0) {
    if (digits_[l] + 1 < levels[l].orbit.size()) break;
    digits_[l] = 0;
  }
  ++digits_[l];
  // Level l keeps its sort order (it depends only on prefix_[l]).
  compose_into(levels[l].reps[sorted_[l][digits_[l]]], prefix_[l], prefix_[l + 1]);
  for (std::size_t m = l + 1; m < levels.size(); ++m) {
    resort(m);
    compose_into(levels[m].reps[sorted_[m][digits_[m]]], prefix_[m], prefix_[m + 1]);
  }
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_ranges(std::uint64_t total,
                                                                      std::size_t parts) {
  parts = std::max<std::size_t>(parts, 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t begin = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroupHandle
// ---------------------------------------------------------------------------

std::vector<std::uint16_t> orbit_ids(std::span<const Permutation> gens, std::size_t degree,
                                     std::size_t* count) {
  std::vector<std::uint16_t> parent(degree);
  std::iota(parent.begin(), parent.end(), std::uint16_t{0});
  auto find = [&](std::uint16_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Permutation& g : gens)
    for (std::size_t i = 0; i < degree; ++i) {
      const std::uint16_t a = find(static_cast<std::uint16_t>(i));
      const std::uint16_t b = find(g[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  // Roots are least points; number orbits in order of least point.
  std::vector<std::uint16_t> ids(degree);
  std::vector<int> root_id(degree, -1);
  std::size_t next = 0;
  for (std::size_t i = 0; i < degree; ++i) {
    const std::uint16_t r = find(static_cast<std::uint16_t>(i));
    if (root_id[r] < 0) root_id[r] = static_cast<int>(next++);
    ids[i] = static_cast<std::uint16_t>(root_id[r]);
  }
  if (count != nullptr) *count = next;
  return ids;
}

GroupHandle::GroupHandle(GeneratorSet gens, std::span<const Point> base_hint) {
  auto st = std::make_shared<State>();
  st->chain = build_chain(gens, base_hint);
  st->order = st->chain.order();
  st->orbit_ids = spreadkit::orbit_ids(gens.generators(), gens.degree(), &st->orbit_count);
  st->orbit_sizes.assign(st->orbit_count, 0);
  for (auto id : st->orbit_ids) ++st->orbit_sizes[id];
  st->gens = std::move(gens);
  state_ = std::move(st);
}

std::uint64_t GroupHandle::order_u64() const {
  const auto o = state_->chain.order_u64();
  if (!o) throw BudgetError("order_too_large", "group order exceeds 64 bits");
  return *o;
}

std::size_t GroupHandle::orbit_size(Point p) const {
  if (p >= degree()) throw InputError("point_out_of_range", "point out of range");
  return state_->orbit_sizes[state_->orbit_ids[p]];
}

Permutation random_element(const StabilizerChain& chain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return chain.random_element(rng);
}

GroupHandle point_stabilizer(const GroupHandle& g, Point point) {
  if (point >= g.degree())
    throw InputError("point_out_of_range", "point " + std::to_string(point + 1) +
                                               " outside 1.." + std::to_string(g.degree()));
  const std::array<Point, 1> hint{point};
  const StabilizerChain chain = build_chain(g.generators(), hint);
  if (chain.levels().empty() || chain.levels().front().base != point) return g;  // point is fixed
  std::vector<Permutation> gens;
  if (chain.levels().size() > 1)
    for (std::size_t idx : chain.levels()[1].generators) gens.push_back(chain.strong_generators()[idx]);
  return GroupHandle(GeneratorSet(g.degree(), gens));
}

}  // namespace spreadkit
