#pragma once

// The Mathieu group M23 and the ingredients of the proof that every set of
// 8064 non-identity elements has a mate:
//
//   * an element of order 23 lies in exactly one maximal subgroup, the
//     normalizer 23:11 of its Sylow subgroup;
//   * an element of order 11 lies in exactly five copies of 23:11;
//   * the maximal subgroups containing elements of order 11 (M22, M11, 23:11)
//     have no elements of order 14.
//
// So X covers at most 5|X| of the 40320 copies; an uncovered copy supplies a
// mate of order 23, and if every copy is covered then |X| = 8064, X consists
// of order-11 elements only, and any element of order 14 is a mate.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spreadkit/normalizer.hpp"
#include "spreadkit/spread.hpp"

namespace spreadkit::m23 {

inline constexpr std::uint64_t kOrder = 10'200'960;
inline constexpr std::size_t kDegree = 23;
inline constexpr std::size_t kCopies = 40'320;           // Sylow-23 subgroups = copies of 23:11
inline constexpr std::uint64_t kCopyOrder = 253;
inline constexpr std::uint64_t kM22Order = 443'520;
inline constexpr std::uint64_t kM11Order = 7'920;
inline constexpr std::size_t kOrder11PerCopy = 230;
inline constexpr std::size_t kOrder23PerCopy = 22;
inline constexpr std::size_t kCopiesPerOrder11 = 5;
inline constexpr std::uint64_t kOrder11Count = 1'854'720;
inline constexpr std::uint64_t kOrder23Count = 887'040;
inline constexpr std::size_t kMateGuarantee = 8'064;     // |X| up to this always has a mate

/// Words in a, b (A = a^-1, B = b^-1), applied left to right.
Permutation evaluate_word(std::string_view word, const Permutation& a, const Permutation& b);

struct DataFiles {
  std::filesystem::path generators;
  std::optional<std::filesystem::path> m11_words;
  static DataFiles in(const std::filesystem::path& dir);
};

/// Sylow-23 subgroups and which order-11 / order-23 elements lie in which
/// copy of 23:11. Copy indices are positions in the sorted list of Sylow keys,
/// so they do not depend on the search seed.
class Tables {
 public:
  std::size_t copies() const noexcept { return keys_.size(); }
  const Permutation& sylow_key(std::size_t copy) const { return keys_[copy]; }
  /// Index of the copy whose Sylow subgroup is <p>, p of order 23.
  std::optional<std::size_t> sylow_index(const Permutation& p) const;

  /// Conjugator c_i with N_i = N_0^{c_i}.
  const Permutation& conjugator(std::size_t copy) const { return conjugators_[copy]; }
  const GroupHandle& reference_normalizer() const noexcept { return reference_; }
  std::size_t reference_copy() const noexcept { return reference_copy_; }
  const std::vector<Permutation>& reference_elements() const noexcept { return ref_elements_; }

  /// Copies containing the element of the given canonical rank (order 11: five; order 23: one).
  std::vector<std::uint16_t> copies_of_rank(std::uint64_t rank, std::uint64_t order) const;

  const std::vector<std::uint32_t>& order11_ranks() const noexcept { return ranks11_; }
  const std::vector<std::uint32_t>& order23_ranks() const noexcept { return ranks23_; }

  /// Canonical-first order-23 element of a copy.
  Permutation first_order23(const StabilizerChain& chain, std::size_t copy) const;

  const Permutation& order23_seed_element() const noexcept { return seed23_; }
  std::uint64_t seed_draws() const noexcept { return seed_draws_; }
  const nlohmann::ordered_json& build_counts() const noexcept { return counts_; }

 private:
  friend class Context;
  std::vector<Permutation> keys_;
  std::vector<Permutation> conjugators_;
  GroupHandle reference_;
  std::size_t reference_copy_ = 0;
  std::vector<Permutation> ref_elements_;
  std::vector<std::uint32_t> ranks11_;
  std::vector<std::array<std::uint16_t, kCopiesPerOrder11>> copies11_;
  std::vector<std::uint32_t> ranks23_;
  std::vector<std::uint16_t> copies23_;
  Permutation seed23_;
  std::uint64_t seed_draws_ = 0;
  nlohmann::ordered_json counts_;
};

enum class CheckStatus { verified_exhaustive, verified_sampled, degraded, failed };
std::string_view status_name(CheckStatus s);

struct IngredientReport {
  std::string name;
  CheckStatus status = CheckStatus::failed;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  std::vector<std::string> notes;
  std::optional<std::string> exhibit;  // counterexample, when failed
  double seconds = 0;                  // wall time; excluded from determinism checks

  bool ok() const { return status != CheckStatus::failed; }
  nlohmann::ordered_json to_json() const;  // without timing
};

struct VerifyMode {
  bool exhaustive = false;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  ScanControl scan;  // workers, chunking, checkpointing for exhaustive scans
};

struct MateOptions {
  bool verify = true;
  /// Test hook: skip the uncovered-copy branch (X must consist of order-11 elements).
  bool force_order14_branch = false;
};

struct CertificateReport {
  CertificateOutcome outcome;
  std::string refuted_by;  // "", "proof_guided_mate" or "scan"
  bool exhaustive = false;
  std::uint64_t y_total = 0;
};

class Context {
 public:
  /// Loads and validates the generators (order 10200960 from two bases,
  /// transitivity). Throws VerificationError("order_mismatch") and friends.
  static Context load(const DataFiles& files);
  static Context from_generators(std::span<const Permutation> gens,
                                 std::optional<std::vector<std::string>> m11_words = {});

  const GroupHandle& group() const noexcept { return s_->g; }
  const BigInt& second_base_order() const noexcept { return s_->second_order; }
  const std::vector<Point>& second_base() const noexcept { return s_->second_base; }
  /// Stabilizer of point 1 (0-based 0).
  const GroupHandle& m22() const noexcept { return s_->m22; }
  const std::optional<GroupHandle>& m11() const noexcept { return s_->m11; }
  const std::string& m11_status() const noexcept { return s_->m11_status; }
  /// File name -> SHA-256, for report stamping.
  const std::map<std::string, std::string>& data_hashes() const noexcept { return s_->hashes; }

  /// Builds the Sylow table and cover map. Deterministic in content for any seed.
  void build_tables(std::uint64_t seed, std::size_t workers = 1);
  bool has_tables() const noexcept { return s_->tables != nullptr; }
  const Tables& tables() const;

  /// Normalizer of the indexed Sylow subgroup; order 253 or VerificationError.
  GroupHandle sylow_normalizer(std::size_t copy) const;

  /// Copies of 23:11 containing x (x in G, not the identity).
  std::vector<std::uint16_t> copies_containing(const Permutation& x) const;

  /// Direct test that x normalizes the copy's Sylow subgroup (independent of the cover map).
  bool in_copy(const Permutation& x, std::size_t copy) const;

  /// Canonical-first element of order 14 in G (streamed search, cached).
  const Permutation& first_order14() const;

  /// N_G(<x>) for x of order 11: the normalizer of a fixed reference <x0>
  /// (orbit-stabilizer over the conjugacy orbit of <x0>) transported to <x> by
  /// the orbit conjugator. Throws InputError for other orders.
  GroupHandle order11_normalizer(const Permutation& x) const;
  const CyclicOrbit& order11_orbit() const;

  /// Number of elements of each order, by full enumeration (cached).
  const std::map<std::uint64_t, std::uint64_t>& order_census(std::size_t workers = 1) const;

  MateReport proof_guided_mate(const ChallengeSet& x, const MateOptions& opts = {}) const;

  /// Kill-set shortcut for order-23 elements: the 252 non-identity elements of its copy.
  KillSetShortcut order23_shortcut() const;

  /// Structural killer hint for certificate scans: common fixed point (both in a
  /// point stabilizer), shared copy of 23:11, y equal to some x, y the identity.
  KillerHint killer_hint(const ChallengeSet& x) const;

  // Ingredient checks.
  IngredientReport verify_order(std::size_t workers = 1) const;
  IngredientReport verify_sylow_table(std::size_t sampled_copies, std::uint64_t seed) const;
  IngredientReport verify_five_copies(std::uint64_t n11, std::uint64_t n23, std::uint64_t n_other,
                                      std::uint64_t seed) const;
  IngredientReport verify_order11_normalizers(std::uint64_t samples, std::uint64_t seed) const;
  IngredientReport verify_spectra(std::size_t workers = 1) const;
  IngredientReport verify_unique_maximal(const VerifyMode& mode) const;
  IngredientReport verify_order14_step(const VerifyMode& mode) const;
  CertificateReport verify_witness_certificate(const ChallengeSet& x, const VerifyMode& mode) const;

 private:
  struct State {
    GroupHandle g;
    BigInt second_order;
    std::vector<Point> second_base;
    GroupHandle m22;
    std::optional<GroupHandle> m11;
    std::string m11_status;
    std::map<std::string, std::string> hashes;
    std::shared_ptr<const Tables> tables;
    mutable std::once_flag order14_once, census_once, orbit11_once;
    mutable std::optional<Permutation> order14;
    mutable std::map<std::uint64_t, std::uint64_t> census;
    mutable std::unique_ptr<CyclicOrbit> orbit11;
  };
  std::shared_ptr<State> s_;
};

/// Seeded challenge sets for tests and benchmarks.
enum class ChallengeKind { uniform, order11, order11_packed, mixed };
std::string_view challenge_kind_name(ChallengeKind k);
/// uniform: distinct random non-identity elements; order11: random order-11
/// elements; order11_packed: order-11 elements chosen greedily so their copy
/// lists are disjoint (maximal coverage), topped up with random order-11
/// elements; mixed: half order-11, a quarter order-23, the rest uniform.
ChallengeSet random_challenge(const Context& ctx, ChallengeKind kind, std::size_t size,
                              std::uint64_t seed);

}  // namespace spreadkit::m23
