#include "kernel_tables.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace spreadkit::kernels {
namespace {

// tbl returns 0 for out-of-range indices, so lookups into a table longer
// than 64 bytes are OR-ed over 64-byte slices with a rebased index.
inline uint8x16_t lookup(uint8x16_t idx, const Point* table, std::size_t padded) {
  if (padded == kBlock) {
    const uint8x16x2_t t{{vld1q_u8(table), vld1q_u8(table + 16)}};
    return vqtbl2q_u8(t, idx);
  }
  uint8x16_t acc = vdupq_n_u8(0);
  for (std::size_t c = 0; c < padded; c += 64) {
    uint8x16x4_t t;
    t.val[0] = vld1q_u8(table + c);
    t.val[1] = c + 16 < padded ? vld1q_u8(table + c + 16) : vdupq_n_u8(0);
    t.val[2] = c + 32 < padded ? vld1q_u8(table + c + 32) : vdupq_n_u8(0);
    t.val[3] = c + 48 < padded ? vld1q_u8(table + c + 48) : vdupq_n_u8(0);
    acc = vorrq_u8(acc, vqtbl4q_u8(t, vsubq_u8(idx, vdupq_n_u8(static_cast<uint8_t>(c)))));
  }
  return acc;
}

void compose_neon(const Point* p, const Point* q, Point* out, std::size_t padded) {
  for (std::size_t b = 0; b < padded; b += 16)
    vst1q_u8(out + b, lookup(vld1q_u8(p + b), q, padded));
}

void compose3_neon(const Point* p, const Point* r, const Point* q, Point* out,
                   std::size_t padded) {
  for (std::size_t b = 0; b < padded; b += 16)
    vst1q_u8(out + b, lookup(lookup(vld1q_u8(p + b), r, padded), q, padded));
}

inline uint8x16_t iota16(std::size_t base) {
  static const uint8_t kIota[16] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  return vaddq_u8(vld1q_u8(kIota), vdupq_n_u8(static_cast<uint8_t>(base)));
}

bool is_identity_neon(const Point* p, std::size_t padded) {
  for (std::size_t b = 0; b < padded; b += 16)
    if (vminvq_u8(vceqq_u8(vld1q_u8(p + b), iota16(b))) != 0xFF) return false;
  return true;
}

void fixed_mask_neon(const Point* p, std::size_t padded, std::uint64_t* words) {
  const std::size_t nwords = (padded + 63) / 64;
  for (std::size_t w = 0; w < nwords; ++w) words[w] = 0;
  static const uint8_t kBits[16] = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
  const uint8x16_t bitv = vld1q_u8(kBits);
  for (std::size_t b = 0; b < padded; b += 16) {
    const uint8x16_t m = vandq_u8(vceqq_u8(vld1q_u8(p + b), iota16(b)), bitv);
    const std::uint64_t lo = vaddv_u8(vget_low_u8(m));
    const std::uint64_t hi = vaddv_u8(vget_high_u8(m));
    words[b / 64] |= (lo | (hi << 8)) << (b % 64);
  }
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{Isa::neon, compose_neon, compose3_neon, is_identity_neon,
                                 fixed_mask_neon};
  return &table;
}

}  // namespace spreadkit::kernels

#else

namespace spreadkit::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace spreadkit::kernels

#endif
