#include "spreadkit/m23.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "spreadkit/error.hpp"
#include "spreadkit/io.hpp"
#include "spreadkit/parallel.hpp"

namespace spreadkit::m23 {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PairOptions members_known() {
  PairOptions o;
  o.check_membership = false;
  return o;
}

Permutation random_of_order(const GroupHandle& g, std::mt19937_64& rng, std::uint64_t order,
                            std::uint64_t max_draws = 1'000'000) {
  for (std::uint64_t i = 0; i < max_draws; ++i) {
    Permutation p = g.chain().random_element(rng);
    if (element_order(p) == order) return p;
  }
  throw BudgetError("search_budget", "no element of order " + std::to_string(order) + " in " +
                                         std::to_string(max_draws) + " draws; try another --seed");
}

Permutation random_nonidentity(const GroupHandle& g, std::mt19937_64& rng) {
  while (true) {
    Permutation p = g.chain().random_element(rng);
    if (!p.is_identity()) return p;
  }
}

std::vector<Permutation> elements_of(const GroupHandle& h) {
  std::vector<Permutation> out;
  for_each_element(h.chain(), 0, h.order_u64(),
                   [&](const Permutation& p, std::uint64_t) { out.push_back(p); });
  return out;
}

std::string describe(const Permutation& p) { return format_cycles(p); }

std::uint64_t mask_of(const Permutation& p) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p[i] == i) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

Permutation evaluate_word(std::string_view word, const Permutation& a, const Permutation& b) {
  const Permutation ai = inverse(a), bi = inverse(b);
  Permutation w = Permutation::identity(a.degree());
  for (char c : word) {
    switch (c) {
      case 'a':
        w = compose(w, a);
        break;
      case 'b':
        w = compose(w, b);
        break;
      case 'A':
        w = compose(w, ai);
        break;
      case 'B':
        w = compose(w, bi);
        break;
      default:
        throw InputError("parse_error", std::string("invalid letter '") + c + "' in word");
    }
  }
  return w;
}

DataFiles DataFiles::in(const std::filesystem::path& dir) {
  DataFiles f;
  f.generators = dir / "m23-generators.txt";
  f.m11_words = dir / "m23-m11-words.txt";
  return f;
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::verified_exhaustive:
      return "verified-exhaustive";
    case CheckStatus::verified_sampled:
      return "verified-sampled";
    case CheckStatus::degraded:
      return "degraded";
    case CheckStatus::failed:
      return "failed";
  }
  return "failed";
}

nlohmann::ordered_json IngredientReport::to_json() const {
  nlohmann::ordered_json j{{"name", name}, {"status", status_name(status)}, {"counts", counts}};
  j["notes"] = notes;
  if (exhibit) j["exhibit"] = *exhibit;
  return j;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

std::optional<std::size_t> Tables::sylow_index(const Permutation& p) const {
  const Permutation key = cyclic_subgroup_key(p);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

std::vector<std::uint16_t> Tables::copies_of_rank(std::uint64_t rank, std::uint64_t order) const {
  if (order == 11) {
    const auto it = std::lower_bound(ranks11_.begin(), ranks11_.end(), rank);
    if (it == ranks11_.end() || *it != rank) return {};
    const auto& c = copies11_[static_cast<std::size_t>(it - ranks11_.begin())];
    return {c.begin(), c.end()};
  }
  if (order == 23) {
    const auto it = std::lower_bound(ranks23_.begin(), ranks23_.end(), rank);
    if (it == ranks23_.end() || *it != rank) return {};
    return {copies23_[static_cast<std::size_t>(it - ranks23_.begin())]};
  }
  return {};
}

Permutation Tables::first_order23(const StabilizerChain& chain, std::size_t copy) const {
  const Permutation& p = keys_[copy];
  Permutation cur = p;
  std::uint64_t best = chain.rank(cur);
  for (std::size_t k = 2; k < 23; ++k) {
    cur = compose(cur, p);
    best = std::min(best, chain.rank(cur));
  }
  return chain.unrank(best);
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

Context Context::load(const DataFiles& files) {
  const PermutationFile gen = read_generator_file(files.generators);
  std::optional<std::vector<std::string>> words;
  std::string missing;
  if (files.m11_words && std::filesystem::exists(*files.m11_words)) {
    std::vector<std::string> w;
    const std::string text = read_text_file(*files.m11_words);
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(start, end - start);
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                 line.end());
      if (!line.empty()) w.push_back(line);
      start = end + 1;
    }
    words = std::move(w);
  } else if (files.m11_words) {
    missing = files.m11_words->string();
  }
  Context ctx = from_generators(gen.perms, words);
  ctx.s_->hashes[files.generators.filename().string()] = sha256_file(files.generators);
  if (words) ctx.s_->hashes[files.m11_words->filename().string()] = sha256_file(*files.m11_words);
  if (!missing.empty()) ctx.s_->m11_status = "missing: " + missing;
  return ctx;
}

Context Context::from_generators(std::span<const Permutation> gens,
                                 std::optional<std::vector<std::string>> m11_words) {
  Context ctx;
  ctx.s_ = std::make_shared<State>();
  State& s = *ctx.s_;
  const std::size_t degree = gens.empty() ? kDegree : gens.front().degree();
  for (const auto& p : gens)
    if (p.degree() != degree)
      throw InputError("degree_mismatch", "generators have different degrees");
  s.g = GroupHandle(GeneratorSet(degree, gens));
  if (s.g.order() != kOrder)
    throw VerificationError("order_mismatch", "order mismatch: generators give order " +
                                                  s.g.order().str() + ", expected " +
                                                  std::to_string(kOrder));
  if (degree != kDegree)
    throw VerificationError("degree_mismatch", "M23 generators must act on 23 points");
  if (gens.size() != 2 || gens[0].is_identity() || gens[1].is_identity())
    throw VerificationError("generator_count", "expected two non-identity generators");
  if (!s.g.transitive()) throw VerificationError("not_transitive", "action is not transitive");

  // Second chain on the reversed base.
  for (std::size_t i = 0; i < degree; ++i) s.second_base.push_back(static_cast<Point>(degree - 1 - i));
  const GroupHandle second(GeneratorSet(degree, gens), s.second_base);
  s.second_order = second.order();
  s.second_base = second.chain().base();
  if (s.second_order != kOrder)
    throw VerificationError("order_mismatch", "order mismatch between independently based chains");

  s.m22 = point_stabilizer(s.g, 0);
  if (s.m22.order() != kM22Order)
    throw VerificationError("m22_order", "point stabilizer has order " + s.m22.order().str());

  if (m11_words) {
    std::vector<Permutation> w;
    for (const auto& word : *m11_words) w.push_back(evaluate_word(word, gens[0], gens[1]));
    GroupHandle m11(GeneratorSet(degree, w));
    if (m11.order() != kM11Order)
      throw VerificationError("m11_order", "M11 words generate a group of order " + m11.order().str());
    s.m11 = m11;
    s.m11_status = "ok";
  } else {
    s.m11_status = "missing";
  }
  return ctx;
}

const Tables& Context::tables() const {
  if (!s_->tables) throw InputError("tables_missing", "M23 tables have not been built");
  return *s_->tables;
}

void Context::build_tables(std::uint64_t seed, std::size_t workers) {
  auto t = std::make_shared<Tables>();
  const GroupHandle& g = s_->g;
  std::mt19937_64 rng(seed);
  std::uint64_t draws = 0;
  Permutation p23;
  for (;; ++draws) {
    if (draws == 100'000)
      throw BudgetError("search_budget", "no element of order 23 found; try another --seed");
    p23 = g.chain().random_element(rng);
    if (element_order(p23) == 23) break;
  }
  t->seed23_ = p23;
  t->seed_draws_ = draws + 1;

  const CyclicOrbit orbit(g, p23, 2 * kCopies);
  if (orbit.size() != kCopies)
    throw VerificationError("sylow_count", "found " + std::to_string(orbit.size()) +
                                               " Sylow-23 subgroups, expected 40320");
  if (orbit.normalizer().order() != kCopyOrder)
    throw VerificationError("normalizer_order", "Sylow normalizer has order " +
                                                    orbit.normalizer().order().str());

  std::vector<std::uint32_t> perm(orbit.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(),
            [&](std::uint32_t a, std::uint32_t b) { return orbit.keys()[a] < orbit.keys()[b]; });
  for (std::size_t i = 0; i < perm.size(); ++i) {
    t->keys_.push_back(orbit.keys()[perm[i]]);
    t->conjugators_.push_back(orbit.conjugator(perm[i]));
    if (perm[i] == 0) t->reference_copy_ = i;
  }
  for (std::size_t i = 1; i < t->keys_.size(); ++i)
    if (!(t->keys_[i - 1] < t->keys_[i]))
      throw VerificationError("sylow_keys", "Sylow keys are not pairwise distinct");
  t->reference_ = orbit.normalizer();
  t->ref_elements_ = elements_of(t->reference_);

  std::vector<Permutation> ref11, ref23;
  for (const auto& e : t->ref_elements_) {
    const auto o = element_order(e);
    if (o == 11) ref11.push_back(e);
    else if (o == 23) ref23.push_back(e);
    else if (o != 1) throw VerificationError("copy_spectrum", "23:11 copy has an element of order " + std::to_string(o));
  }
  if (ref11.size() != kOrder11PerCopy || ref23.size() != kOrder23PerCopy)
    throw VerificationError("copy_counts", "reference copy does not have 230 + 22 elements of order 11 + 23");

  // Per copy: conjugate the reference elements in, record (rank, copy).
  workers = std::max<std::size_t>(workers, 1);
  const auto ranges = partition_ranges(kCopies, workers);
  std::vector<std::vector<std::uint64_t>> part11(ranges.size()), part23(ranges.size());
  run_workers(ranges.size(), [&](std::size_t w) {
    Permutation conj = Permutation::identity(kDegree);
    auto& out11 = part11[w];
    auto& out23 = part23[w];
    out11.reserve((ranges[w].second - ranges[w].first) * kOrder11PerCopy);
    for (std::uint64_t c = ranges[w].first; c < ranges[w].second; ++c) {
      const Permutation& ci = t->conjugators_[c];
      const Permutation cinv = inverse(ci);
      for (const auto& e : ref11) {
        compose3_into(cinv, e, ci, conj);
        out11.push_back(g.chain().rank(conj) << 16 | c);
      }
      for (const auto& e : ref23) {
        compose3_into(cinv, e, ci, conj);
        out23.push_back(g.chain().rank(conj) << 16 | c);
      }
    }
  });
  std::vector<std::uint64_t> all11, all23;
  for (auto& v : part11) {
    all11.insert(all11.end(), v.begin(), v.end());
    std::vector<std::uint64_t>().swap(v);
  }
  for (auto& v : part23) all23.insert(all23.end(), v.begin(), v.end());
  std::sort(all11.begin(), all11.end());
  std::sort(all23.begin(), all23.end());

  if (all11.size() != kCopies * kOrder11PerCopy)
    throw VerificationError("cover_map", "unexpected number of order-11 incidences");
  for (std::size_t i = 0; i < all11.size();) {
    const std::uint64_t rank = all11[i] >> 16;
    std::size_t j = i;
    std::array<std::uint16_t, kCopiesPerOrder11> copies{};
    while (j < all11.size() && (all11[j] >> 16) == rank) {
      if (j - i >= kCopiesPerOrder11)
        throw VerificationError("five_copies", "an order-11 element lies in more than five copies");
      copies[j - i] = static_cast<std::uint16_t>(all11[j] & 0xFFFF);
      ++j;
    }
    if (j - i != kCopiesPerOrder11)
      throw VerificationError("five_copies", "an order-11 element lies in " + std::to_string(j - i) +
                                                 " copies, expected five");
    t->ranks11_.push_back(static_cast<std::uint32_t>(rank));
    t->copies11_.push_back(copies);
    i = j;
  }
  for (std::size_t i = 0; i < all23.size(); ++i) {
    const std::uint64_t rank = all23[i] >> 16;
    if (i > 0 && (all23[i - 1] >> 16) == rank)
      throw VerificationError("unique_copy", "an order-23 element lies in two copies");
    t->ranks23_.push_back(static_cast<std::uint32_t>(rank));
    t->copies23_.push_back(static_cast<std::uint16_t>(all23[i] & 0xFFFF));
  }
  if (t->ranks11_.size() != kOrder11Count || t->ranks23_.size() != kOrder23Count)
    throw VerificationError("cover_map", "cover map totals differ from 1854720 / 887040");

  t->counts_ = {{"sylow_subgroups", t->keys_.size()},
                {"normalizer_order", kCopyOrder},
                {"orbit_times_normalizer", static_cast<std::uint64_t>(t->keys_.size()) * kCopyOrder},
                {"order11_incidences", all11.size()},
                {"order11_elements", t->ranks11_.size()},
                {"order23_elements", t->ranks23_.size()},
                {"order11_per_copy", kOrder11PerCopy},
                {"order23_per_copy", kOrder23PerCopy}};
  s_->tables = std::move(t);
}

GroupHandle Context::sylow_normalizer(std::size_t copy) const {
  const Tables& t = tables();
  if (copy >= t.copies()) throw InputError("copy_out_of_range", "copy index out of range");
  const Permutation& c = t.conjugator(copy);
  std::vector<Permutation> gens;
  for (const auto& s : t.reference_normalizer().generators().generators()) gens.push_back(conjugate(s, c));
  GroupHandle h(GeneratorSet(kDegree, gens));
  if (h.order() != kCopyOrder)
    throw VerificationError("normalizer_order", "normalizer of copy " + std::to_string(copy) +
                                                    " has order " + h.order().str());
  return h;
}

std::vector<std::uint16_t> Context::copies_containing(const Permutation& x) const {
  if (x.degree() != kDegree) throw InputError("degree_mismatch", "expected a permutation of 23 points");
  if (x.is_identity()) throw InputError("identity_input", "the identity has no copy list");
  if (!group().contains(x)) throw InputError("not_a_member", "element is not in M23");
  const std::uint64_t o = element_order(x);
  if (o != 11 && o != 23) return {};
  return tables().copies_of_rank(group().chain().rank(x), o);
}

bool Context::in_copy(const Permutation& x, std::size_t copy) const {
  const Permutation& key = tables().sylow_key(copy);
  return cyclic_subgroup_key(conjugate(key, x)) == key;
}

const Permutation& Context::first_order14() const {
  std::call_once(s_->order14_once, [&] {
    const auto q = find_element_of_order(group(), 14, kOrder);
    if (!q.present) throw VerificationError("order14_missing", "M23 has no element of order 14");
    s_->order14 = *q.exhibit;
  });
  return *s_->order14;
}

const std::map<std::uint64_t, std::uint64_t>& Context::order_census(std::size_t workers) const {
  std::call_once(s_->census_once, [&] {
    const auto ranges = partition_ranges(kOrder, std::max<std::size_t>(workers, 1));
    std::vector<std::array<std::uint64_t, 24>> part(ranges.size());
    run_workers(ranges.size(), [&](std::size_t w) {
      part[w].fill(0);
      for_each_element(group().chain(), ranges[w].first, ranges[w].second,
                       [&](const Permutation& p, std::uint64_t) { ++part[w][element_order(p)]; });
    });
    for (const auto& a : part)
      for (std::size_t k = 1; k < a.size(); ++k)
        if (a[k] != 0) s_->census[k] += a[k];
  });
  return s_->census;
}

const CyclicOrbit& Context::order11_orbit() const {
  std::call_once(s_->orbit11_once, [&] {
    // Reference: the canonical-first order-11 element of the reference copy.
    const Tables& t = tables();
    std::optional<Permutation> x0;
    for (const auto& e : elements_of(t.reference_normalizer()))
      if (element_order(e) == 11) {
        x0 = e;
        break;
      }
    s_->orbit11 = std::make_unique<CyclicOrbit>(group(), *x0, 1u << 20);
  });
  return *s_->orbit11;
}

GroupHandle Context::order11_normalizer(const Permutation& x) const {
  if (x.degree() != kDegree || !group().contains(x))
    throw InputError("not_a_member", "element is not in M23");
  if (element_order(x) != 11)
    throw InputError("wrong_order", "expected an element of order 11, got order " +
                                        std::to_string(element_order(x)));
  const CyclicOrbit& orbit = order11_orbit();
  const Permutation key = cyclic_subgroup_key(x);
  const auto i = orbit.find(key);
  if (!i) throw VerificationError("order11_class", "<x> is not conjugate to the reference subgroup");
  const Permutation c = orbit.conjugator(*i);
  std::vector<Permutation> gens;
  for (const auto& s : orbit.normalizer().generators().generators()) {
    Permutation n = conjugate(s, c);
    if (cyclic_subgroup_key(conjugate(x, n)) != key)
      throw VerificationError("order11_normalizer", "transported generator does not normalize <x>");
    gens.push_back(std::move(n));
  }
  return GroupHandle(GeneratorSet(kDegree, gens));
}

// ---------------------------------------------------------------------------
// The mate algorithm
// ---------------------------------------------------------------------------

MateReport Context::proof_guided_mate(const ChallengeSet& x_set, const MateOptions& opts) const {
  const Tables& t = tables();
  MateReport rep;
  rep.strategy = "proof_guided";
  std::vector<std::uint64_t> covered((kCopies + 63) / 64, 0);
  std::size_t covered_count = 0;
  bool only_order11 = true;
  for (const auto& x : x_set.elements) {
    const auto o = element_order(x);
    only_order11 &= o == 11;
    if (o != 11 && o != 23) continue;
    for (std::uint16_t c : t.copies_of_rank(group().chain().rank(x), o)) {
      auto& word = covered[c / 64];
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      if (!(word & bit)) ++covered_count;
      word |= bit;
    }
  }
  const bool beyond = x_set.size() > kMateGuarantee;
  rep.detail = "X covers " + std::to_string(covered_count) + " of " + std::to_string(kCopies) +
               " copies of 23:11";
  if (beyond) rep.detail += "; |X| > 8064, best effort only";

  std::optional<Permutation> y;
  if (!opts.force_order14_branch && covered_count < kCopies) {
    std::size_t c = 0;
    while (covered[c / 64] >> (c % 64) & 1) ++c;
    y = t.first_order23(group().chain(), c);
    rep.branch = "uncovered-copy";
    rep.detail += "; mate is the canonical-first order-23 element of copy " + std::to_string(c);
  } else if (only_order11) {
    y = first_order14();
    rep.branch = "order-14";
  } else if (opts.force_order14_branch) {
    throw InputError("precondition", "the order-14 branch needs X of order-11 elements only");
  } else {
    // All copies covered by a set with other orders: only possible beyond 8064.
    y = first_order14();
    rep.branch = "best-effort order-14";
  }
  rep.candidates_tried = 1;

  if (!opts.verify) {
    rep.mate = y;
    return rep;
  }
  MateCheck check = is_mate(*y, x_set, group(), true);
  const bool ok = check.is_mate;
  rep.verified = ok;
  rep.pair_tests = check.evidence.size();
  rep.evidence = std::move(check.evidence);
  if (ok) {
    rep.mate = y;
  } else {
    rep.detail += beyond ? "; no mate found by this strategy" : "; VERIFICATION FAILED";
  }
  return rep;
}

KillSetShortcut Context::order23_shortcut() const {
  return [ctx = *this](const Permutation& y) -> std::optional<KillSet> {
    if (element_order(y) != 23) return std::nullopt;
    const auto c = ctx.tables().sylow_index(y);
    if (!c) throw VerificationError("sylow_lookup", "order-23 element has no Sylow table entry");
    KillSet ks;
    ks.center = y;
    ks.source = "order23-unique-maximal";
    const GroupHandle h = ctx.sylow_normalizer(*c);
    for (const auto& e : elements_of(h))
      if (!e.is_identity()) ks.killers.push_back(ctx.group().chain().rank(e));
    std::sort(ks.killers.begin(), ks.killers.end());
    return ks;
  };
}

KillerHint Context::killer_hint(const ChallengeSet& x_set) const {
  constexpr std::size_t none = ~std::size_t{0};
  struct Index {
    std::array<std::size_t, kDegree> by_fixed;
    std::vector<std::size_t> by_copy;
    std::unordered_map<Permutation, std::size_t> by_value;
  };
  auto idx = std::make_shared<Index>();
  idx->by_fixed.fill(none);
  idx->by_copy.assign(kCopies, none);
  const Tables& t = tables();
  for (std::size_t i = 0; i < x_set.size(); ++i) {
    const Permutation& x = x_set.elements[i];
    idx->by_value.emplace(x, i);
    for (std::size_t p = 0; p < kDegree; ++p)
      if (x[p] == p && idx->by_fixed[p] == none) idx->by_fixed[p] = i;
    const auto o = element_order(x);
    if (o == 11 || o == 23)
      for (auto c : t.copies_of_rank(group().chain().rank(x), o))
        if (idx->by_copy[c] == none) idx->by_copy[c] = i;
  }
  const bool empty = x_set.empty();
  return [ctx = *this, idx, empty](const Permutation& y) -> std::optional<std::size_t> {
    if (empty) return std::nullopt;
    if (y.is_identity()) return 0;  // <x, 1> is cyclic
    if (auto it = idx->by_value.find(y); it != idx->by_value.end()) return it->second;
    std::size_t best = none;
    std::uint64_t fixed = mask_of(y);
    while (fixed != 0) {  // common fixed point: both in a point stabilizer
      const int p = std::countr_zero(fixed);
      fixed &= fixed - 1;
      best = std::min(best, idx->by_fixed[static_cast<std::size_t>(p)]);
    }
    if (best != none) return best;
    const auto o = element_order(y);
    if (o == 11 || o == 23)  // shared copy of 23:11
      for (auto c : ctx.tables().copies_of_rank(ctx.group().chain().rank(y), o))
        best = std::min(best, idx->by_copy[c]);
    if (best != none) return best;
    return std::nullopt;
  };
}

// ---------------------------------------------------------------------------
// Ingredient checks
// ---------------------------------------------------------------------------

IngredientReport Context::verify_order(std::size_t) const {
  const auto t0 = Clock::now();
  IngredientReport r;
  r.name = "m23_order";
  const auto base = group().chain().base();
  r.counts["order"] = group().order_u64();
  r.counts["second_base_order"] = static_cast<std::uint64_t>(second_base_order());
  auto one_based = [](std::span<const Point> pts) {
    std::vector<int> v;
    for (Point p : pts) v.push_back(p + 1);
    return v;
  };
  r.counts["base"] = one_based(base);
  r.counts["second_base"] = one_based(second_base());
  r.counts["transitive"] = group().transitive();
  r.counts["m22_order"] = m22().order_u64();
  r.counts["m11_order"] = m11() ? m11()->order_u64() : 0;
  const bool ok = group().order() == kOrder && second_base_order() == kOrder && group().transitive() &&
                  m22().order() == kM22Order;
  r.status = ok ? CheckStatus::verified_exhaustive : CheckStatus::failed;
  if (!m11()) r.notes.push_back("M11 data " + m11_status());
  r.seconds = since(t0);
  return r;
}

IngredientReport Context::verify_sylow_table(std::size_t sampled_copies, std::uint64_t seed) const {
  const auto t0 = Clock::now();
  const Tables& t = tables();
  IngredientReport r;
  r.name = "sylow_table";
  r.counts = t.build_counts();
  bool ok = t.copies() == kCopies;
  std::mt19937_64 rng(seed);
  std::uint64_t normalizers_253 = 0, spectra_ok = 0, contains_p = 0;
  for (std::size_t k = 0; k < sampled_copies && ok; ++k) {
    const std::size_t c = uniform_below(rng, t.copies());
    const GroupHandle h = sylow_normalizer(c);
    normalizers_253 += h.order() == kCopyOrder;
    const auto sp = spectrum(h);
    if (sp.orders == std::set<std::uint64_t>{1, 11, 23}) ++spectra_ok;
    else if (!r.exhibit) r.exhibit = "copy " + std::to_string(c) + " spectrum mismatch";
    contains_p += h.contains(t.sylow_key(c)) && in_copy(t.sylow_key(c), c);
  }
  r.counts["sampled_copies"] = sampled_copies;
  r.counts["normalizers_of_order_253"] = normalizers_253;
  r.counts["spectrum_1_11_23"] = spectra_ok;
  r.counts["normalizer_contains_sylow"] = contains_p;
  ok = ok && normalizers_253 == sampled_copies && spectra_ok == sampled_copies && contains_p == sampled_copies;
  r.status = ok ? CheckStatus::verified_sampled : CheckStatus::failed;
  r.seconds = since(t0);
  return r;
}

IngredientReport Context::verify_five_copies(std::uint64_t n11, std::uint64_t n23,
                                             std::uint64_t n_other, std::uint64_t seed) const {
  const auto t0 = Clock::now();
  const Tables& t = tables();
  IngredientReport r;
  r.name = "five_copies";
  std::mt19937_64 rng(seed);
  std::uint64_t got11 = 0, got23 = 0, got_other = 0, bad = 0, equivariant = 0, equivariance_checked = 0;
  auto fail = [&](const Permutation& x, const std::string& why) {
    ++bad;
    if (!r.exhibit) r.exhibit = describe(x) + ": " + why;
  };
  while (got11 < n11 || got23 < n23 || got_other < n_other) {
    const Permutation x = random_nonidentity(group(), rng);
    const auto o = element_order(x);
    std::uint64_t* slot = o == 11 ? &got11 : o == 23 ? &got23 : &got_other;
    const std::uint64_t want = o == 11 ? n11 : o == 23 ? n23 : n_other;
    if (*slot >= want) continue;
    ++*slot;
    const auto copies = copies_containing(x);
    const std::size_t expected = o == 11 ? 5 : o == 23 ? 1 : 0;
    if (copies.size() != expected) {
      fail(x, "lies in " + std::to_string(copies.size()) + " copies");
      continue;
    }
    // Independent check: x normalizes each listed Sylow subgroup.
    for (auto c : copies)
      if (!in_copy(x, c)) fail(x, "does not normalize copy " + std::to_string(c));
    if (o == 23 && t.sylow_index(x) != std::optional<std::size_t>(copies[0]))
      fail(x, "copy differs from its own Sylow subgroup");
    // Equivariance: copies of x^g are the copies of x moved by g.
    if (!copies.empty() && equivariance_checked < 100) {
      ++equivariance_checked;
      const Permutation g = group().chain().random_element(rng);
      std::vector<std::uint16_t> moved;
      for (auto c : copies) moved.push_back(static_cast<std::uint16_t>(*t.sylow_index(conjugate(t.sylow_key(c), g))));
      std::sort(moved.begin(), moved.end());
      auto direct = copies_containing(conjugate(x, g));
      std::sort(direct.begin(), direct.end());
      if (moved == direct) ++equivariant;
      else fail(x, "copy list is not conjugation equivariant");
    }
  }
  r.counts["order11_sampled"] = got11;
  r.counts["order23_sampled"] = got23;
  r.counts["other_sampled"] = got_other;
  r.counts["equivariance_checked"] = equivariance_checked;
  r.counts["equivariance_ok"] = equivariant;
  r.counts["order11_elements"] = t.order11_ranks().size();
  r.counts["order23_elements"] = t.order23_ranks().size();
  r.counts["copy_incidences_order11"] = t.order11_ranks().size() * kCopiesPerOrder11;
  r.counts["failures"] = bad;
  const bool totals = t.order11_ranks().size() * kCopiesPerOrder11 == kCopies * kOrder11PerCopy &&
                      t.order23_ranks().size() == kCopies * kOrder23PerCopy;
  r.status = bad == 0 && totals ? CheckStatus::verified_sampled : CheckStatus::failed;
  r.seconds = since(t0);
  return r;
}

IngredientReport Context::verify_order11_normalizers(std::uint64_t samples, std::uint64_t seed) const {
  const auto t0 = Clock::now();
  IngredientReport r;
  r.name = "order11_normalizer";
  const CyclicOrbit& orbit = order11_orbit();
  r.counts["cyclic_subgroups_of_order_11"] = orbit.size();
  r.counts["reference_normalizer_order"] = static_cast<std::uint64_t>(orbit.normalizer().order());
  std::mt19937_64 rng(seed);
  std::uint64_t ok55 = 0, same_as_cube = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Permutation x = random_of_order(group(), rng, 11);
    const GroupHandle n = order11_normalizer(x);
    if (n.order() == 55) ++ok55;
    else if (!r.exhibit) r.exhibit = describe(x) + ": normalizer order " + n.order().str();
    if (i < 10) {
      const GroupHandle n3 = order11_normalizer(power(x, 3));
      bool same = n3.order() == n.order();
      for (const auto& s : n3.generators().generators()) same = same && n.contains(s);
      same_as_cube += same;
    }
  }
  const auto sp = spectrum(orbit.normalizer());
  r.counts["samples"] = samples;
  r.counts["normalizer_order_55"] = ok55;
  r.counts["x_and_x3_same_normalizer"] = same_as_cube;
  r.counts["normalizer_spectrum"] = std::vector<std::uint64_t>(sp.orders.begin(), sp.orders.end());
  const bool ok = ok55 == samples && same_as_cube == std::min<std::uint64_t>(samples, 10) &&
                  orbit.size() * 55 == kOrder;
  r.status = ok ? CheckStatus::verified_sampled : CheckStatus::failed;
  r.notes.push_back("every sampled <x> lies in the conjugacy orbit of the reference subgroup");
  r.seconds = since(t0);
  return r;
}

IngredientReport Context::verify_spectra(std::size_t workers) const {
  const auto t0 = Clock::now();
  IngredientReport r;
  r.name = "spectra";
  bool ok = true;
  auto check_maximal = [&](const std::string& label, const GroupHandle& h) {
    const std::uint64_t n = h.order_u64();
    const auto q14 = find_element_of_order(h, 14, n, workers);
    const auto q11 = find_element_of_order(h, 11, n, workers);
    r.counts[label] = {{"order", n},
                       {"has_order_14", q14.present},
                       {"has_order_11", q11.present},
                       {"scanned_for_14", q14.scanned},
                       {"scanned_for_11", q11.scanned}};
    ok = ok && !q14.present && q11.present;
    if (q14.present && !r.exhibit) r.exhibit = label + " contains " + describe(*q14.exhibit);
  };
  check_maximal("M22", m22());
  if (m11()) check_maximal("M11", *m11());
  else r.notes.push_back("M11 copy unavailable (" + m11_status() + "); checked M22 and 23:11 only");
  const GroupHandle copy = tables().reference_normalizer();
  const auto sp = spectrum(copy);
  r.counts["23:11"] = {{"order", copy.order_u64()},
                       {"spectrum", std::vector<std::uint64_t>(sp.orders.begin(), sp.orders.end())}};
  ok = ok && sp.orders == std::set<std::uint64_t>{1, 11, 23};

  const Permutation& y = first_order14();
  const bool power_ok = element_order(y) == 14 && group().contains(y) &&
                        element_order(power(y, 2)) == 7 && element_order(power(y, 7)) == 2;
  r.counts["M23"] = {{"has_order_14", power_ok}, {"exhibit", describe(y)}};
  ok = ok && power_ok;
  r.notes.push_back("the list M22, M11, 23:11 of maximal subgroups containing order-11 elements is external input");
  r.status = !ok ? CheckStatus::failed : m11() ? CheckStatus::verified_exhaustive : CheckStatus::degraded;
  r.seconds = since(t0);
  return r;
}

namespace {

struct KillAcc {
  std::uint64_t scanned = 0, killers = 0, in_copy = 0, failures = 0;
  std::optional<std::uint64_t> first_failure;
  void merge(const KillAcc& o) {
    scanned += o.scanned;
    killers += o.killers;
    in_copy += o.in_copy;
    failures += o.failures;
    if (!first_failure) first_failure = o.first_failure;
  }
  bool stop() const { return first_failure.has_value(); }
  nlohmann::json to_json() const {
    nlohmann::json j{{"scanned", scanned}, {"killers", killers}, {"in_copy", in_copy}, {"failures", failures}};
    if (first_failure) j["first_failure"] = *first_failure;
    return j;
  }
  static KillAcc from_json(const nlohmann::json& j) {
    KillAcc a;
    a.scanned = j.at("scanned");
    a.killers = j.at("killers");
    a.in_copy = j.at("in_copy");
    a.failures = j.at("failures");
    if (j.contains("first_failure")) a.first_failure = j.at("first_failure").get<std::uint64_t>();
    return a;
  }
};

struct PairAcc {
  std::uint64_t tested = 0, failures = 0;
  std::optional<std::uint64_t> first_failure;  // index * reps + rep
  void merge(const PairAcc& o) {
    tested += o.tested;
    failures += o.failures;
    if (!first_failure) first_failure = o.first_failure;
  }
  bool stop() const { return first_failure.has_value(); }
  nlohmann::json to_json() const {
    nlohmann::json j{{"tested", tested}, {"failures", failures}};
    if (first_failure) j["first_failure"] = *first_failure;
    return j;
  }
  static PairAcc from_json(const nlohmann::json& j) {
    PairAcc a;
    a.tested = j.at("tested");
    a.failures = j.at("failures");
    if (j.contains("first_failure")) a.first_failure = j.at("first_failure").get<std::uint64_t>();
    return a;
  }
};

}  // namespace

IngredientReport Context::verify_unique_maximal(const VerifyMode& mode) const {
  const auto t0 = Clock::now();
  IngredientReport r;
  r.name = "unique_maximal";
  const auto q = find_element_of_order(group(), 23, kOrder);
  const Permutation y = *q.exhibit;
  const std::size_t c = *tables().sylow_index(y);
  const GroupHandle h = sylow_normalizer(c);
  r.counts["y"] = describe(y);
  r.counts["copy"] = c;

  // Inside the copy: every pair stays in H.
  std::uint64_t inside = 0, inside_ok = 0;
  for (const auto& x : elements_of(h)) {
    if (x.is_identity()) continue;
    ++inside;
    const BigInt o = subgroup_order(std::vector<Permutation>{x, y}, kDegree);
    if (kCopyOrder % static_cast<std::uint64_t>(o) == 0) ++inside_ok;
  }
  r.counts["copy_nonidentity"] = inside;
  r.counts["copy_pairs_dividing_253"] = inside_ok;
  bool ok = inside == 252 && inside_ok == 252;

  if (!mode.exhaustive) {
    std::mt19937_64 rng(mode.seed);
    std::vector<Permutation> xs;
    for (std::uint64_t i = 0; i < mode.samples; ++i) xs.push_back(random_nonidentity(group(), rng));
    const auto ranges = partition_ranges(xs.size(), mode.scan.workers);
    std::vector<std::uint64_t> fails(ranges.size(), 0), in_h(ranges.size(), 0);
    std::vector<std::optional<std::size_t>> first(ranges.size());
    run_workers(ranges.size(), [&](std::size_t w) {
      for (std::size_t i = ranges[w].first; i < ranges[w].second; ++i) {
        const bool member = in_copy(xs[i], c);
        in_h[w] += member;
        const bool good = member ? kCopyOrder % static_cast<std::uint64_t>(subgroup_order(
                                                    std::vector<Permutation>{xs[i], y}, kDegree)) == 0
                                 : generates_pair(xs[i], y, group(), members_known()).generates;
        if (!good) {
          ++fails[w];
          if (!first[w]) first[w] = i;
        }
      }
    });
    std::uint64_t total_fail = 0, total_in = 0;
    for (std::size_t w = 0; w < ranges.size(); ++w) {
      total_fail += fails[w];
      total_in += in_h[w];
      if (first[w] && !r.exhibit) r.exhibit = describe(xs[*first[w]]);
    }
    r.counts["samples"] = mode.samples;
    r.counts["samples_in_copy"] = total_in;
    r.counts["counterexamples"] = total_fail;
    ok = ok && total_fail == 0;
    r.status = ok ? CheckStatus::verified_sampled : CheckStatus::failed;
  } else {
    ScanControl ctl = mode.scan;
    ctl.fingerprint += "|unique_maximal|" + describe(y);
    ScanInfo info;
    const KillAcc acc = chunked_scan<KillAcc>(
        kOrder, ctl,
        [&](std::uint64_t begin, std::uint64_t end) {
          KillAcc a;
          for_each_element(group().chain(), begin, end, [&](const Permutation& x, std::uint64_t rank) {
            ++a.scanned;
            if (x.is_identity()) return true;
            const bool member = in_copy(x, c);
            const bool gen = generates_pair(x, y, group(), members_known()).generates;
            a.in_copy += member;
            a.killers += !gen;
            if (gen == member) {  // killer outside H, or generator inside H
              ++a.failures;
              a.first_failure = rank;
              return false;
            }
            return true;
          });
          return a;
        },
        &info);
    r.counts["scanned"] = acc.scanned;
    r.counts["killers"] = acc.killers;
    r.counts["killers_in_copy"] = acc.in_copy;
    r.counts["failures"] = acc.failures;
    if (info.resumed) r.notes.push_back("resumed from checkpoint");
    if (acc.first_failure) r.exhibit = describe(group().chain().unrank(*acc.first_failure));
    ok = ok && acc.failures == 0 && acc.scanned == kOrder && acc.killers == 252;
    r.status = ok ? CheckStatus::verified_exhaustive : CheckStatus::failed;
    if (ok) r.notes.push_back("kill set of y is exactly the 252 non-identity elements of its copy");
  }
  r.seconds = since(t0);
  return r;
}

IngredientReport Context::verify_order14_step(const VerifyMode& mode) const {
  const auto t0 = Clock::now();
  IngredientReport r;
  r.name = "order14_step";
  std::mt19937_64 rng(mode.seed);
  const Permutation y = random_of_order(group(), rng, 14);
  std::vector<Permutation> reps;
  for (long long k : {1, 3, 5, 9, 11, 13}) reps.push_back(power(y, k));
  r.counts["representative"] = describe(y);
  r.counts["representatives"] = reps.size();

  // Scope: every order-14 element generates a conjugate of <y>.
  const auto& census = order_census(mode.scan.workers);
  const CyclicOrbit orbit(group(), y, 1u << 20);
  const std::uint64_t count14 = census.count(14) ? census.at(14) : 0;
  r.counts["order14_elements"] = count14;
  r.counts["order14_cyclic_subgroup_orbit"] = orbit.size();
  r.counts["order14_normalizer_order"] = static_cast<std::uint64_t>(orbit.normalizer().order());
  const bool scope = orbit.size() * reps.size() == count14;
  r.counts["representatives_cover_all_order14"] = scope;
  bool ok = scope;

  // Negative control: x and an order-11 element of a shared copy cannot generate.
  const Permutation x0 = random_of_order(group(), rng, 11);
  const auto copies = copies_containing(x0);
  bool control_ok = false;
  for (const auto& u : elements_of(sylow_normalizer(copies.front())))
    if (element_order(u) == 11 && cyclic_subgroup_key(u) != cyclic_subgroup_key(x0)) {
      control_ok = !generates_pair(x0, u, group()).generates;
      break;
    }
  r.counts["negative_control_non_generating"] = control_ok;
  ok = ok && control_ok;

  if (!mode.exhaustive) {
    std::vector<Permutation> xs;
    for (std::uint64_t i = 0; i < mode.samples; ++i) xs.push_back(random_of_order(group(), rng, 11));
    const auto ranges = partition_ranges(xs.size(), mode.scan.workers);
    std::vector<std::uint64_t> fails(ranges.size(), 0);
    std::vector<std::optional<std::size_t>> first(ranges.size());
    run_workers(ranges.size(), [&](std::size_t w) {
      for (std::size_t i = ranges[w].first; i < ranges[w].second; ++i)
        for (const auto& rep : reps)
          if (!generates_pair(xs[i], rep, group(), members_known()).generates) {
            ++fails[w];
            if (!first[w]) first[w] = i;
          }
    });
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < ranges.size(); ++w) {
      total += fails[w];
      if (first[w] && !r.exhibit) r.exhibit = describe(xs[*first[w]]);
    }
    r.counts["samples"] = mode.samples;
    r.counts["pairs_tested"] = mode.samples * reps.size();
    r.counts["failures"] = total;
    ok = ok && total == 0;
    r.status = ok ? CheckStatus::verified_sampled : CheckStatus::failed;
  } else {
    const auto& ranks = tables().order11_ranks();
    const std::uint64_t count11 = census.count(11) ? census.at(11) : 0;
    r.counts["order11_elements"] = ranks.size();
    r.counts["order11_census"] = count11;
    ok = ok && count11 == ranks.size();
    ScanControl ctl = mode.scan;
    ctl.chunk_size = std::min<std::uint64_t>(ctl.chunk_size, 1u << 13);
    ctl.fingerprint += "|order14|" + describe(y);
    ScanInfo info;
    const PairAcc acc = chunked_scan<PairAcc>(
        ranks.size(), ctl,
        [&](std::uint64_t begin, std::uint64_t end) {
          PairAcc a;
          for (std::uint64_t i = begin; i < end && !a.first_failure; ++i) {
            const Permutation x = group().chain().unrank(ranks[i]);
            for (std::size_t k = 0; k < reps.size(); ++k) {
              ++a.tested;
              if (!generates_pair(x, reps[k], group(), members_known()).generates) {
                ++a.failures;
                a.first_failure = i * reps.size() + k;
                break;
              }
            }
          }
          return a;
        },
        &info);
    r.counts["pairs_tested"] = acc.tested;
    r.counts["failures"] = acc.failures;
    if (info.resumed) r.notes.push_back("resumed from checkpoint");
    if (acc.first_failure)
      r.exhibit = describe(group().chain().unrank(ranks[*acc.first_failure / reps.size()]));
    ok = ok && acc.failures == 0 && acc.tested == ranks.size() * reps.size();
    r.status = ok ? CheckStatus::verified_exhaustive : CheckStatus::failed;
  }
  r.seconds = since(t0);
  return r;
}

CertificateReport Context::verify_witness_certificate(const ChallengeSet& x_set,
                                                      const VerifyMode& mode) const {
  CertificateReport rep;
  rep.exhaustive = mode.exhaustive;
  rep.y_total = kOrder;
  rep.outcome.kills_per_element.assign(x_set.size(), 0);

  if (!x_set.empty() && x_set.size() <= kMateGuarantee) {
    const MateReport m = proof_guided_mate(x_set);
    if (m.mate && m.verified) {
      rep.outcome.mate = m.mate;
      rep.outcome.mate_rank = group().chain().rank(*m.mate);
      rep.refuted_by = "proof_guided_mate";
      return rep;
    }
  }
  const KillerHint hint = killer_hint(x_set);
  if (mode.exhaustive) {
    ScanControl ctl = mode.scan;
    ctl.fingerprint += "|certificate";
    rep.outcome = verify_mateless(group(), x_set, &hint, ctl);
    if (rep.outcome.mate) rep.refuted_by = "scan";
    return rep;
  }
  // Sampled: seeded random y; any survivor refutes, but no survivor proves nothing.
  std::mt19937_64 rng(mode.seed);
  for (std::uint64_t i = 0; i < mode.samples; ++i) {
    const Permutation y = group().chain().random_element(rng);
    ++rep.outcome.scanned;
    if (auto k = hint(y)) {
      ++rep.outcome.hint_kills;
      ++rep.outcome.kills_per_element[*k];
      continue;
    }
    bool killed = false;
    for (std::size_t k = 0; k < x_set.size() && !killed; ++k)
      if (!generates_pair(x_set.elements[k], y, group(), members_known()).generates) {
        killed = true;
        ++rep.outcome.scan_kills;
        ++rep.outcome.kills_per_element[k];
      }
    if (!killed) {
      rep.outcome.mate = y;
      rep.outcome.mate_rank = group().chain().rank(y);
      rep.refuted_by = "scan";
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Challenge sets
// ---------------------------------------------------------------------------

std::string_view challenge_kind_name(ChallengeKind k) {
  switch (k) {
    case ChallengeKind::uniform:
      return "uniform";
    case ChallengeKind::order11:
      return "order11";
    case ChallengeKind::order11_packed:
      return "order11_packed";
    case ChallengeKind::mixed:
      return "mixed";
  }
  return "uniform";
}

ChallengeSet random_challenge(const Context& ctx, ChallengeKind kind, std::size_t size,
                              std::uint64_t seed) {
  const GroupHandle& g = ctx.group();
  std::mt19937_64 rng(seed);
  std::unordered_set<Permutation> seen;
  ChallengeSet cs;
  auto add = [&](Permutation p) {
    if (p.is_identity() || !seen.insert(p).second) return false;
    cs.elements.push_back(std::move(p));
    return true;
  };
  switch (kind) {
    case ChallengeKind::uniform:
      while (cs.size() < size) add(g.chain().random_element(rng));
      break;
    case ChallengeKind::order11:
      while (cs.size() < size) add(random_of_order(g, rng, 11));
      break;
    case ChallengeKind::order11_packed: {
      std::vector<bool> covered(kCopies, false);
      std::uint64_t misses = 0;
      while (cs.size() < size && misses < 20'000) {
        Permutation x = random_of_order(g, rng, 11);
        const auto copies = ctx.copies_containing(x);
        if (std::any_of(copies.begin(), copies.end(), [&](auto c) { return covered[c]; })) {
          ++misses;
          continue;
        }
        if (add(std::move(x)))
          for (auto c : copies) covered[c] = true;
      }
      while (cs.size() < size) add(random_of_order(g, rng, 11));
      break;
    }
    case ChallengeKind::mixed:
      while (cs.size() < size / 2) add(random_of_order(g, rng, 11));
      while (cs.size() < size / 2 + size / 4) add(random_of_order(g, rng, 23));
      while (cs.size() < size) add(g.chain().random_element(rng));
      break;
  }
  return cs;
}

}  // namespace spreadkit::m23
