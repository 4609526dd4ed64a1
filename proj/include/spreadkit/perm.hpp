#pragma once

// Permutations of n <= 255 points.
//
// Composition is left-to-right everywhere in this library:
//   compose(p, q)(i) == q(p(i))      -- apply p first, then q.
// Points are 0-based internally; the cycle text format is 1-based.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spreadkit/kernels.hpp"

namespace spreadkit {

using Point = kernels::Point;

inline constexpr std::size_t kMaxDegree = 255;

class Permutation {
 public:
  /// Degree-0 permutation.
  Permutation() { init_padding(0); }

  /// Identity on `degree` points.
  static Permutation identity(std::size_t degree);

  /// Validating constructor from a 0-based image list.
  static Permutation from_images(std::span<const Point> images);
  static Permutation from_images(std::span<const int> images);

  std::size_t degree() const noexcept { return degree_; }
  Point operator[](std::size_t i) const noexcept { return data()[i]; }

  std::span<const Point> images() const noexcept { return {data(), degree_}; }
  /// Image array padded with fixed points to a multiple of kernels::kBlock.
  std::span<const Point> padded() const noexcept { return {data(), padded_size()}; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept;
  /// Orders by degree, then lexicographically by image array.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) noexcept;

  std::size_t hash() const noexcept;

  // Raw access for kernels and hot loops. Callers must keep the bijection
  // and the identity padding intact.
  Point* mutable_data() noexcept { return heap_.empty() ? inline_.data() : heap_.data(); }
  const Point* data() const noexcept { return heap_.empty() ? inline_.data() : heap_.data(); }
  std::size_t padded_size() const noexcept {
    return heap_.empty() ? kernels::kBlock : heap_.size();
  }

 private:
  void init_padding(std::size_t degree);

  std::uint16_t degree_ = 0;
  std::array<Point, kernels::kBlock> inline_{};
  std::vector<Point> heap_;  // non-empty only when degree > kBlock
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

/// Sorted (descending) multiset of cycle lengths, fixed points included.
struct CycleType {
  std::vector<std::size_t> lengths;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// compose(p, q)(i) = q(p(i)). Throws InputError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
/// Writes compose(p, q) into out without allocating (out must share the degree).
void compose_into(const Permutation& p, const Permutation& q, Permutation& out);
/// compose(compose(p, r), q) in one pass.
void compose3_into(const Permutation& p, const Permutation& r, const Permutation& q,
                   Permutation& out);

Permutation inverse(const Permutation& p);
void inverse_into(const Permutation& p, Permutation& out);

/// g^-1 p g, i.e. the image of p under relabelling points by g.
Permutation conjugate(const Permutation& p, const Permutation& g);

/// p^k for any integer k.
Permutation power(const Permutation& p, long long k);

CycleType cycle_type(const Permutation& p);

/// Least k >= 1 with p^k = identity (lcm of cycle lengths).
std::uint64_t element_order(const Permutation& p);

/// Disjoint cycles, each listed from its least point, sorted by that point.
std::vector<std::vector<Point>> cycles(const Permutation& p);

/// 1-based cycle notation, e.g. "(1,2)(3,4,5)"; the identity is "()".
std::string format_cycles(const Permutation& p);
/// Accepts 1-based disjoint cycles separated by commas and/or whitespace.
Permutation parse_cycles(std::string_view text, std::size_t degree);

/// 0-based image list, e.g. "[2,0,1]".
std::string format_images(const Permutation& p);
Permutation parse_images(std::string_view text);

/// Dispatches on the first non-blank character: '[' image list, '(' cycles.
Permutation parse_permutation(std::string_view text, std::size_t degree);

/// Lexicographically least image array among the generators p^k (gcd(k, |p|) = 1)
/// of the cyclic group <p>. Two elements generate the same cyclic subgroup iff
/// their keys agree.
Permutation cyclic_subgroup_key(const Permutation& p);

}  // namespace spreadkit

template <>
struct std::hash<spreadkit::Permutation> {
  std::size_t operator()(const spreadkit::Permutation& p) const noexcept { return p.hash(); }
};
