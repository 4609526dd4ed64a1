#pragma once

// Mates, kill sets and spread.
//
// y is a mate to X when <x, y> = G for every x in X. The kill set of y is
// every non-identity x with <x, y> != G, so y is a mate to X iff X avoids the
// kill set of y. G has spread r when every r-set of distinct non-identity
// elements has a mate; the exact spread is the largest such r, i.e. one less
// than the smallest set meeting every kill set.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spreadkit/generation.hpp"
#include "spreadkit/scan.hpp"

namespace spreadkit {

/// Distinct non-identity members of G.
struct ChallengeSet {
  std::vector<Permutation> elements;
  std::size_t duplicates_removed = 0;

  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
};

/// Deduplicates (counting the duplicates) and rejects the identity and non-members.
ChallengeSet validate_challenge(std::span<const Permutation> raw, const GroupHandle& g);

struct MateCheck {
  bool is_mate = false;
  std::vector<PairResult> evidence;  // per x, stopping at the first failure unless full
};

/// y may be the identity (never a mate of a non-empty X in a non-trivial group).
MateCheck is_mate(const Permutation& y, const ChallengeSet& x_set, const GroupHandle& g,
                  bool full_evidence = false);

struct MateReport {
  std::optional<Permutation> mate;
  bool verified = false;
  bool exhausted = false;  // the strategy ran to completion without a mate
  std::string strategy;
  std::string branch;  // which rule chose the mate
  std::string detail;  // strategy-specific notes
  std::vector<PairResult> evidence;
  std::uint64_t candidates_tried = 0;
  std::uint64_t pair_tests = 0;
  std::uint64_t filter_hits = 0;
};

struct ScanOptions {
  std::uint64_t budget = 20'000'000;  // largest |G| a full scan will touch
  std::size_t workers = 1;
};

/// Full scan: candidates by decreasing element order, then canonical order.
/// Finds a mate whenever one exists. An empty X returns the canonical-first
/// non-identity element (the identity for the trivial group).
MateReport find_mate(const ChallengeSet& x_set, const GroupHandle& g, const ScanOptions& opts = {});

/// Kill set of y as sorted canonical ranks.
struct KillSet {
  Permutation center;
  std::vector<std::uint64_t> killers;
  std::string source;  // "exhaustive" or the shortcut's name
};

/// Returns killers for y when a structural argument applies, nullopt otherwise.
using KillSetShortcut = std::function<std::optional<KillSet>(const Permutation& y)>;

KillSet kill_set(const Permutation& y, const GroupHandle& g, const ScanOptions& opts = {},
                 const KillSetShortcut* shortcut = nullptr);

/// Exhaustive view of a small group: elements in canonical order, element
/// orders, the pair-generation matrix and all kill sets.
class GroupTable {
 public:
  GroupTable(const GroupHandle& g, std::uint64_t budget, std::size_t workers = 1);

  const GroupHandle& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const Permutation& p) const;
  std::size_t identity_index() const noexcept { return identity_; }
  std::uint64_t order_of(std::size_t i) const { return orders_[i]; }
  bool generates(std::size_t i, std::size_t j) const { return gen_[i * size() + j] != 0; }
  bool two_generated() const noexcept { return two_generated_; }
  /// killers of element i (identity excluded), sorted indices.
  const std::vector<std::uint32_t>& kill_set(std::size_t i) const { return kills_[i]; }

 private:
  GroupHandle group_;
  std::vector<Permutation> elements_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint8_t> gen_;
  std::vector<std::vector<std::uint32_t>> kills_;
  std::size_t identity_ = 0;
  bool two_generated_ = false;
};

enum class SpreadKind { exact, lower_bound, upper_bound, unbounded, zero };

std::string_view spread_kind_name(SpreadKind k);

struct SpreadResult {
  SpreadKind kind = SpreadKind::exact;
  std::optional<std::uint64_t> value;
  /// Mateless set of size value + 1 (exact), or a mateless singleton (zero).
  std::optional<ChallengeSet> witness;
  bool witness_verified = false;  // re-checked by scanning every y with generates_pair
  /// For unbounded: an element generating G with every non-identity element.
  std::optional<Permutation> universal_mate;
  // Certificate that no smaller mateless set exists.
  bool search_complete = false;
  std::uint64_t nodes_explored = 0;
  std::size_t greedy_upper_bound = 0;
  std::size_t root_lower_bound = 0;
  std::size_t kill_sets_after_reduction = 0;
  std::vector<std::string> log;
};

inline constexpr std::uint64_t kDefaultSpreadBudget = 2000;

SpreadResult exact_spread_small(const GroupHandle& g, std::uint64_t budget = kDefaultSpreadBudget,
                                std::size_t workers = 1);
SpreadResult exact_spread_small(const GroupTable& table);

struct GreedyMateless {
  std::optional<ChallengeSet> set;
  bool verified = false;
};

/// Greedily adds the element killing the most not-yet-killed y (seeded ties)
/// until every y is killed or size_limit is reached.
GreedyMateless greedy_mateless_search(const GroupTable& table, std::size_t size_limit,
                                      std::uint64_t seed);

/// Draws an element; `biased` asks for elements that kill many y.
using ElementSampler = std::function<Permutation(std::mt19937_64& rng, bool biased)>;
using MateFinder = std::function<MateReport(const ChallengeSet&)>;

struct RandomizedSpreadReport {
  std::uint64_t r = 0;
  std::uint64_t trials = 0;
  std::uint64_t uniform_trials = 0;
  std::uint64_t biased_trials = 0;
  std::optional<ChallengeSet> counterexample;  // a mateless r-set: disproves spread r
  /// Always false: surviving random trials is not a proof of spread r.
  bool proof = false;
};

/// Alternates uniform and biased trials. Stops at the first counterexample.
RandomizedSpreadReport spread_at_least_randomized(const GroupHandle& g, std::uint64_t r,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  const ElementSampler& sampler,
                                                  const MateFinder& finder);

/// Small-group convenience: table-driven sampler and exact mate search.
RandomizedSpreadReport spread_at_least_randomized(const GroupTable& table, std::uint64_t r,
                                                  std::uint64_t trials, std::uint64_t seed);

/// Returns the index into X of an element known to kill y, if a shortcut applies.
using KillerHint = std::function<std::optional<std::size_t>(const Permutation& y)>;

struct CertificateOutcome {
  bool mateless_confirmed = false;
  std::optional<Permutation> mate;  // refutation exhibit (canonical-first surviving y)
  std::uint64_t mate_rank = 0;
  std::uint64_t scanned = 0;        // y dispatched before the verdict
  std::uint64_t hint_kills = 0;
  std::uint64_t scan_kills = 0;
  /// kills_per_element[i] = number of y whose recorded killer is X[i].
  std::vector<std::uint64_t> kills_per_element;
};

/// Checks that X has no mate: every y in G (canonical order) must have a
/// recorded killer in X. Any survivor is a mate and refutes the claim.
CertificateOutcome verify_mateless(const GroupHandle& g, const ChallengeSet& x_set,
                                   const KillerHint* hint = nullptr, std::size_t workers = 1);
/// Same, with chunking and checkpointing under the caller's control.
CertificateOutcome verify_mateless(const GroupHandle& g, const ChallengeSet& x_set,
                                   const KillerHint* hint, const ScanControl& ctl);

}  // namespace spreadkit
