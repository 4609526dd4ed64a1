// Compiled with -mavx2 on x86-64; only reached after a runtime cpuid check.
#include "kernel_tables.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace spreadkit::kernels {
namespace {

// Table lookup out[i] = table[idx[i]] for a 32-entry table (degree <= 32).
// vpshufb only shuffles inside 128-bit lanes, so the table is broadcast as two
// 16-byte halves and the results are blended on bit 4 of the index.
inline __m256i lookup32(__m256i idx, const Point* table) {
  const __m256i lo = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(table)));
  const __m256i hi = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(table + 16)));
  const __m256i use_hi = _mm256_cmpgt_epi8(idx, _mm256_set1_epi8(15));
  return _mm256_blendv_epi8(_mm256_shuffle_epi8(lo, idx), _mm256_shuffle_epi8(hi, idx),
                            use_hi);
}

// General table (padded <= 256): one shuffle per 16-byte slice of the table,
// kept where the high nibble of the index selects that slice.
inline __m256i lookup_any(__m256i idx, const Point* table, std::size_t padded) {
  const __m256i nibble_mask = _mm256_set1_epi8(static_cast<char>(0xF0));
  const __m256i high = _mm256_and_si256(idx, nibble_mask);
  // vpshufb zeroes lanes whose index has bit 7 set, so shuffle on the low nibble only.
  const __m256i low = _mm256_andnot_si256(nibble_mask, idx);
  __m256i acc = _mm256_setzero_si256();
  for (std::size_t c = 0; c < padded; c += 16) {
    const __m256i slice = _mm256_broadcastsi128_si256(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(table + c)));
    const __m256i sel = _mm256_cmpeq_epi8(high, _mm256_set1_epi8(static_cast<char>(c)));
    acc = _mm256_or_si256(acc, _mm256_and_si256(sel, _mm256_shuffle_epi8(slice, low)));
  }
  return acc;
}

inline __m256i load(const Point* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(Point* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void compose_avx2(const Point* p, const Point* q, Point* out, std::size_t padded) {
  if (padded == kBlock) {
    store(out, lookup32(load(p), q));
    return;
  }
  for (std::size_t b = 0; b < padded; b += kBlock)
    store(out + b, lookup_any(load(p + b), q, padded));
}

void compose3_avx2(const Point* p, const Point* r, const Point* q, Point* out,
                   std::size_t padded) {
  if (padded == kBlock) {
    store(out, lookup32(lookup32(load(p), r), q));
    return;
  }
  for (std::size_t b = 0; b < padded; b += kBlock)
    store(out + b, lookup_any(lookup_any(load(p + b), r, padded), q, padded));
}

inline __m256i iota_block(std::size_t base) {
  const __m256i iota = _mm256_setr_epi8(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15,
                                        16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28,
                                        29, 30, 31);
  return _mm256_add_epi8(iota, _mm256_set1_epi8(static_cast<char>(base)));
}

bool is_identity_avx2(const Point* p, std::size_t padded) {
  for (std::size_t b = 0; b < padded; b += kBlock) {
    const __m256i eq = _mm256_cmpeq_epi8(load(p + b), iota_block(b));
    if (static_cast<std::uint32_t>(_mm256_movemask_epi8(eq)) != 0xFFFFFFFFu) return false;
  }
  return true;
}

void fixed_mask_avx2(const Point* p, std::size_t padded, std::uint64_t* words) {
  const std::size_t nwords = (padded + 63) / 64;
  for (std::size_t w = 0; w < nwords; ++w) words[w] = 0;
  for (std::size_t b = 0; b < padded; b += kBlock) {
    const auto bits = static_cast<std::uint32_t>(
        _mm256_movemask_epi8(_mm256_cmpeq_epi8(load(p + b), iota_block(b))));
    words[b / 64] |= std::uint64_t{bits} << (b % 64);
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::avx2, compose_avx2, compose3_avx2, is_identity_avx2,
                                 fixed_mask_avx2};
  return &table;
}

}  // namespace spreadkit::kernels

#else

namespace spreadkit::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace spreadkit::kernels

#endif
