#include "spreadkit/spread.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "spreadkit/error.hpp"
#include "spreadkit/hitting_set.hpp"
#include "spreadkit/parallel.hpp"
#include "spreadkit/scan.hpp"

namespace spreadkit {

namespace {

PairOptions members_known() {
  PairOptions o;
  o.check_membership = false;
  return o;
}

void require_member(const Permutation& p, const GroupHandle& g, const char* what) {
  if (p.degree() != g.degree())
    throw InputError("degree_mismatch", std::string(what) + " has the wrong degree");
  if (!g.contains(p)) throw InputError("not_a_member", std::string(what) + " is not in the group");
}

void require_budget(const GroupHandle& g, std::uint64_t budget, const char* op) {
  if (g.order() > budget)
    throw BudgetError("budget_exceeded", std::string(op) + ": group order " + g.order().str() +
                                             " exceeds budget " + std::to_string(budget));
}

}  // namespace

ChallengeSet validate_challenge(std::span<const Permutation> raw, const GroupHandle& g) {
  ChallengeSet out;
  std::unordered_set<Permutation> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Permutation& p = raw[i];
    if (p.degree() != g.degree())
      throw InputError("degree_mismatch",
                       "challenge element " + std::to_string(i + 1) + " has the wrong degree");
    if (p.is_identity())
      throw InputError("identity_in_challenge",
                       "challenge element " + std::to_string(i + 1) + " is the identity");
    if (!g.contains(p))
      throw InputError("not_a_member",
                       "challenge element " + std::to_string(i + 1) + " is not in the group");
    if (!seen.insert(p).second) {
      ++out.duplicates_removed;
      continue;
    }
    out.elements.push_back(p);
  }
  return out;
}

MateCheck is_mate(const Permutation& y, const ChallengeSet& x_set, const GroupHandle& g,
                  bool full_evidence) {
  require_member(y, g, "candidate mate");
  MateCheck check;
  check.is_mate = true;
  for (const Permutation& x : x_set.elements) {
    PairResult r = generates_pair(x, y, g, members_known());
    const bool ok = r.generates;
    check.evidence.push_back(std::move(r));
    if (!ok) {
      check.is_mate = false;
      if (!full_evidence) break;
    }
  }
  return check;
}

namespace {

void fill_from_check(MateReport& rep, MateCheck&& check) {
  rep.verified = check.is_mate;
  rep.pair_tests = check.evidence.size();
  rep.filter_hits = static_cast<std::uint64_t>(
      std::count_if(check.evidence.begin(), check.evidence.end(),
                    [](const PairResult& r) { return r.filter_used != PairFilter::none; }));
  rep.evidence = std::move(check.evidence);
}

// Canonical-first element of the given order with the predicate, or ~0.
template <class Pred>
std::uint64_t first_rank_where(const GroupHandle& g, std::size_t workers, Pred&& pred) {
  const auto ranges = partition_ranges(g.order_u64(), workers);
  AtomicMin best;
  run_workers(ranges.size(), [&](std::size_t w) {
    for_each_element(g.chain(), ranges[w].first, ranges[w].second,
                     [&](const Permutation& p, std::uint64_t rank) {
                       if (rank >= best.get()) return false;
                       if (pred(p)) {
                         best.offer(rank);
                         return false;
                       }
                       return true;
                     });
  });
  return best.get();
}

}  // namespace

MateReport find_mate(const ChallengeSet& x_set, const GroupHandle& g, const ScanOptions& opts) {
  require_budget(g, opts.budget, "find_mate");
  MateReport rep;
  rep.strategy = "full_scan";
  const std::uint64_t n = g.order_u64();

  if (x_set.empty()) {
    // Vacuous: every y is a mate; take the canonical-first non-identity element.
    Permutation y = g.chain().unrank(0);
    if (y.is_identity() && n > 1) y = g.chain().unrank(1);
    rep.mate = y;
    rep.verified = true;
    rep.branch = "vacuous";
    rep.candidates_tried = 1;
    return rep;
  }

  // Element orders present, with counts, for the candidate order.
  const auto ranges = partition_ranges(n, opts.workers);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(ranges.size());
  run_workers(ranges.size(), [&](std::size_t w) {
    for_each_element(g.chain(), ranges[w].first, ranges[w].second,
                     [&](const Permutation& p, std::uint64_t) { ++partial[w][element_order(p)]; });
  });
  std::map<std::uint64_t, std::uint64_t, std::greater<>> counts;
  for (const auto& part : partial)
    for (auto [k, c] : part) counts[k] += c;

  std::uint64_t tried_before = 0;
  for (auto [k, count] : counts) {
    const std::uint64_t hit = first_rank_where(g, opts.workers, [&](const Permutation& p) {
      return element_order(p) == k && is_mate(p, x_set, g).is_mate;
    });
    if (hit == ~std::uint64_t{0}) {
      tried_before += count;
      continue;
    }
    std::uint64_t same_order_before = 0;
    for_each_element(g.chain(), 0, hit, [&](const Permutation& p, std::uint64_t) {
      same_order_before += element_order(p) == k ? 1 : 0;
    });
    rep.candidates_tried = tried_before + same_order_before + 1;
    rep.mate = g.chain().unrank(hit);
    rep.branch = "order " + std::to_string(k);
    fill_from_check(rep, is_mate(*rep.mate, x_set, g, true));
    return rep;
  }
  rep.candidates_tried = n;
  rep.exhausted = true;
  return rep;
}

KillSet kill_set(const Permutation& y, const GroupHandle& g, const ScanOptions& opts,
                 const KillSetShortcut* shortcut) {
  require_member(y, g, "kill-set center");
  if (shortcut != nullptr && *shortcut) {
    if (auto ks = (*shortcut)(y)) return std::move(*ks);
  }
  require_budget(g, opts.budget, "kill_set");
  KillSet ks;
  ks.center = y;
  ks.source = "exhaustive";
  const auto ranges = partition_ranges(g.order_u64(), opts.workers);
  std::vector<std::vector<std::uint64_t>> partial(ranges.size());
  run_workers(ranges.size(), [&](std::size_t w) {
    for_each_element(g.chain(), ranges[w].first, ranges[w].second,
                     [&](const Permutation& x, std::uint64_t rank) {
                       if (x.is_identity()) return;
                       if (!generates_pair(x, y, g, members_known()).generates)
                         partial[w].push_back(rank);
                     });
  });
  for (auto& part : partial) ks.killers.insert(ks.killers.end(), part.begin(), part.end());
  return ks;
}

// ---------------------------------------------------------------------------
// GroupTable
// ---------------------------------------------------------------------------

GroupTable::GroupTable(const GroupHandle& g, std::uint64_t budget, std::size_t workers)
    : group_(g) {
  require_budget(g, budget, "group table");
  const std::size_t n = g.order_u64();
  elements_.reserve(n);
  for_each_element(g.chain(), 0, n, [&](const Permutation& p, std::uint64_t) {
    elements_.push_back(p);
    orders_.push_back(element_order(p));
  });
  identity_ = static_cast<std::size_t>(
      std::find_if(elements_.begin(), elements_.end(), [](const Permutation& p) { return p.is_identity(); }) -
      elements_.begin());

  gen_.assign(n * n, 0);
  workers = std::max<std::size_t>(workers, 1);
  run_workers(workers, [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers)
      for (std::size_t j = i; j < n; ++j) {
        const bool gen = generates_pair(elements_[i], elements_[j], group_, members_known()).generates;
        gen_[i * n + j] = gen ? 1 : 0;
      }
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) gen_[i * n + j] = gen_[j * n + i];
  two_generated_ = std::any_of(gen_.begin(), gen_.end(), [](std::uint8_t v) { return v != 0; });

  kills_.resize(n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (x != identity_ && !gen_[y * n + x]) kills_[y].push_back(static_cast<std::uint32_t>(x));
}

std::size_t GroupTable::index_of(const Permutation& p) const {
  return static_cast<std::size_t>(group_.chain().rank(p));
}

// ---------------------------------------------------------------------------
// Exact spread
// ---------------------------------------------------------------------------

std::string_view spread_kind_name(SpreadKind k) {
  switch (k) {
    case SpreadKind::exact:
      return "exact";
    case SpreadKind::lower_bound:
      return "lower_bound";
    case SpreadKind::upper_bound:
      return "upper_bound";
    case SpreadKind::unbounded:
      return "unbounded";
    case SpreadKind::zero:
      return "zero";
  }
  return "exact";
}

namespace {

ChallengeSet set_from_indices(const GroupTable& t, std::span<const std::uint32_t> idx) {
  ChallengeSet cs;
  for (std::uint32_t i : idx) cs.elements.push_back(t.element(i));
  return cs;
}

}  // namespace

SpreadResult exact_spread_small(const GroupHandle& g, std::uint64_t budget, std::size_t workers) {
  return exact_spread_small(GroupTable(g, budget, workers));
}

SpreadResult exact_spread_small(const GroupTable& t) {
  SpreadResult res;
  const std::size_t n = t.size();

  if (!t.two_generated()) {
    res.kind = SpreadKind::zero;
    res.value = 0;
    const std::size_t first = t.identity_index() == 0 ? 1 : 0;
    res.witness = set_from_indices(t, std::array<std::uint32_t, 1>{static_cast<std::uint32_t>(first)});
    res.witness_verified = verify_mateless(t.group(), *res.witness).mateless_confirmed;
    res.search_complete = true;
    res.log.push_back("no pair generates the group; every singleton is mateless");
    return res;
  }

  for (std::size_t y = 0; y < n; ++y) {
    if (t.kill_set(y).empty()) {
      res.kind = SpreadKind::unbounded;
      res.universal_mate = t.element(y);
      res.search_complete = true;
      res.log.push_back("element of canonical index " + std::to_string(y) +
                        " generates with every non-identity element");
      return res;
    }
  }

  std::vector<std::vector<std::uint32_t>> family;
  for (std::size_t y = 0; y < n; ++y)
    if (y != t.identity_index()) family.push_back(t.kill_set(y));

  const HittingSetResult hs = minimum_hitting_set(family, static_cast<std::uint32_t>(n));
  res.kind = SpreadKind::exact;
  res.value = hs.solution.size() - 1;
  res.witness = set_from_indices(t, hs.solution);
  res.search_complete = hs.optimal;
  res.nodes_explored = hs.nodes;
  res.greedy_upper_bound = hs.greedy_size;
  res.root_lower_bound = hs.root_lower_bound;
  res.kill_sets_after_reduction = hs.sets_after_reduction;
  res.witness_verified = verify_mateless(t.group(), *res.witness).mateless_confirmed;
  res.log.push_back("minimum hitting set of " + std::to_string(family.size()) + " kill sets (" +
                    std::to_string(hs.sets_after_reduction) + " after dominance reduction): size " +
                    std::to_string(hs.solution.size()));
  return res;
}

GreedyMateless greedy_mateless_search(const GroupTable& t, std::size_t size_limit,
                                      std::uint64_t seed) {
  GreedyMateless out;
  std::vector<std::vector<std::uint32_t>> family;
  for (std::size_t y = 0; y < t.size(); ++y) {
    if (y == t.identity_index()) continue;
    if (t.kill_set(y).empty()) return out;  // y is a mate for everything
    family.push_back(t.kill_set(y));
  }
  if (t.size() > 1 && t.kill_set(t.identity_index()).empty()) return out;
  std::mt19937_64 rng(seed);
  const auto picked = greedy_hitting_set(family, static_cast<std::uint32_t>(t.size()), &rng, size_limit);
  if (!picked || picked->empty()) return out;
  out.set = set_from_indices(t, *picked);
  out.verified = verify_mateless(t.group(), *out.set).mateless_confirmed;
  return out;
}

// ---------------------------------------------------------------------------
// Randomized falsification
// ---------------------------------------------------------------------------

RandomizedSpreadReport spread_at_least_randomized(const GroupHandle& g, std::uint64_t r,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  const ElementSampler& sampler,
                                                  const MateFinder& finder) {
  RandomizedSpreadReport rep;
  rep.r = r;
  if (g.order() <= r) return rep;  // no r-set of non-identity elements exists
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const bool biased = (t % 2) == 1;
    std::unordered_set<Permutation> seen;
    ChallengeSet cs;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000 + 200 * r;
    while (cs.size() < r && attempts++ < max_attempts) {
      Permutation p = sampler(rng, biased && attempts < max_attempts / 2);
      if (p.is_identity() || !seen.insert(p).second) continue;
      cs.elements.push_back(std::move(p));
    }
    // Fill any shortfall uniformly.
    while (cs.size() < r) {
      Permutation p = sampler(rng, false);
      if (p.is_identity() || !seen.insert(p).second) continue;
      cs.elements.push_back(std::move(p));
    }
    ++rep.trials;
    ++(biased ? rep.biased_trials : rep.uniform_trials);
    const MateReport m = finder(cs);
    if (!m.mate) {
      rep.counterexample = std::move(cs);
      break;
    }
  }
  return rep;
}

RandomizedSpreadReport spread_at_least_randomized(const GroupTable& t, std::uint64_t r,
                                                  std::uint64_t trials, std::uint64_t seed) {
  const std::size_t n = t.size();
  // Bias weight of x: number of y it kills.
  std::vector<std::uint64_t> cumulative(n, 0);
  std::vector<std::uint64_t> weight(n, 0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::uint32_t x : t.kill_set(y)) ++weight[x];
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) cumulative[i] = (acc += weight[i]);

  ElementSampler sampler = [&](std::mt19937_64& rng, bool biased) {
    if (biased && acc > 0) {
      const std::uint64_t v = uniform_below(rng, acc);
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), v);
      return t.element(static_cast<std::size_t>(it - cumulative.begin()));
    }
    return t.element(uniform_below(rng, n));
  };

  // Exact table-driven search in find_mate's candidate order.
  std::vector<std::size_t> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = i;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return t.order_of(a) > t.order_of(b); });
  MateFinder finder = [&](const ChallengeSet& cs) {
    std::vector<std::uint32_t> idx;
    for (const auto& p : cs.elements) idx.push_back(static_cast<std::uint32_t>(t.index_of(p)));
    MateReport rep;
    rep.strategy = "table_scan";
    for (std::size_t y : candidates) {
      ++rep.candidates_tried;
      const auto& ks = t.kill_set(y);
      const bool killed = std::any_of(idx.begin(), idx.end(), [&](std::uint32_t x) {
        return std::binary_search(ks.begin(), ks.end(), x);
      });
      if (!killed) {
        rep.mate = t.element(y);
        rep.verified = true;
        return rep;
      }
    }
    rep.exhausted = true;
    return rep;
  };
  return spread_at_least_randomized(t.group(), r, trials, seed, sampler, finder);
}

// ---------------------------------------------------------------------------
// Matelessness certificates
// ---------------------------------------------------------------------------

namespace {

struct CertAcc {
  std::uint64_t scanned = 0;
  std::uint64_t hint_kills = 0;
  std::uint64_t scan_kills = 0;
  std::vector<std::uint64_t> per_element;
  std::optional<std::uint64_t> survivor;

  void merge(const CertAcc& o) {
    scanned += o.scanned;
    hint_kills += o.hint_kills;
    scan_kills += o.scan_kills;
    if (per_element.size() < o.per_element.size()) per_element.resize(o.per_element.size(), 0);
    for (std::size_t i = 0; i < o.per_element.size(); ++i) per_element[i] += o.per_element[i];
    if (!survivor) survivor = o.survivor;
  }
  bool stop() const { return survivor.has_value(); }
  nlohmann::json to_json() const {
    nlohmann::json j{{"scanned", scanned},
                     {"hint_kills", hint_kills},
                     {"scan_kills", scan_kills},
                     {"per_element", per_element}};
    if (survivor) j["survivor"] = *survivor;
    return j;
  }
  static CertAcc from_json(const nlohmann::json& j) {
    CertAcc a;
    a.scanned = j.at("scanned");
    a.hint_kills = j.at("hint_kills");
    a.scan_kills = j.at("scan_kills");
    a.per_element = j.at("per_element").get<std::vector<std::uint64_t>>();
    if (j.contains("survivor")) a.survivor = j.at("survivor").get<std::uint64_t>();
    return a;
  }
};

}  // namespace

CertificateOutcome verify_mateless(const GroupHandle& g, const ChallengeSet& x_set,
                                   const KillerHint* hint, std::size_t workers) {
  ScanControl ctl;
  ctl.workers = workers;
  ctl.chunk_size = 1u << 12;
  return verify_mateless(g, x_set, hint, ctl);
}

CertificateOutcome verify_mateless(const GroupHandle& g, const ChallengeSet& x_set,
                                   const KillerHint* hint, const ScanControl& ctl) {
  const std::size_t m = x_set.size();
  const CertAcc acc = chunked_scan<CertAcc>(
      g.order_u64(), ctl, [&](std::uint64_t begin, std::uint64_t end) {
        CertAcc a;
        a.per_element.assign(m, 0);
        for_each_element(g.chain(), begin, end, [&](const Permutation& y, std::uint64_t rank) {
          ++a.scanned;
          if (hint != nullptr && *hint) {
            if (auto i = (*hint)(y)) {
              ++a.hint_kills;
              ++a.per_element[*i];
              return true;
            }
          }
          for (std::size_t i = 0; i < m; ++i) {
            if (!generates_pair(x_set.elements[i], y, g, members_known()).generates) {
              ++a.scan_kills;
              ++a.per_element[i];
              return true;
            }
          }
          a.survivor = rank;
          return false;
        });
        return a;
      });

  CertificateOutcome out;
  out.scanned = acc.scanned;
  out.hint_kills = acc.hint_kills;
  out.scan_kills = acc.scan_kills;
  out.kills_per_element = acc.per_element;
  out.kills_per_element.resize(m, 0);
  if (acc.survivor) {
    out.mate_rank = *acc.survivor;
    out.mate = g.chain().unrank(*acc.survivor);
  } else {
    out.mateless_confirmed = acc.scanned == g.order_u64();
  }
  return out;
}

}  // namespace spreadkit
