#pragma once

// Byte-table kernels underneath Permutation.
//
// All kernels operate on padded image arrays: the length is a multiple of
// kBlock (32) and entries past the degree map to themselves, so a kernel can
// process whole blocks without a tail loop. A scalar reference table is
// always available; SIMD tables are registered when the build and the
// running CPU both support them, and the fastest one is selected on first use.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace spreadkit::kernels {

using Point = std::uint8_t;

inline constexpr std::size_t kBlock = 32;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  /// out[i] = q[p[i]] for i < padded (apply p, then q).
  void (*compose)(const Point* p, const Point* q, Point* out, std::size_t padded);
  /// out[i] = q[r[p[i]]] (apply p, then r, then q).
  void (*compose3)(const Point* p, const Point* r, const Point* q, Point* out,
                   std::size_t padded);
  /// True iff p[i] == i for all i < padded.
  bool (*is_identity)(const Point* p, std::size_t padded);
  /// Bit i of words[i / 64] is set iff p[i] == i. words holds padded / 64 words (rounded up).
  void (*fixed_mask)(const Point* p, std::size_t padded, std::uint64_t* words);
};

const KernelTable& scalar_table();

/// Tables usable on this machine, scalar first.
std::vector<const KernelTable*> available();

/// The table used by Permutation. Defaults to the fastest available.
const KernelTable& active();

/// Force a particular table (tests and benchmarks). Returns false if unavailable.
bool select(Isa isa);

}  // namespace spreadkit::kernels
