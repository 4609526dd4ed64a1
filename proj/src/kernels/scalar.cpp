#include "kernel_tables.hpp"

namespace spreadkit::kernels {
namespace {

void compose_scalar(const Point* p, const Point* q, Point* out, std::size_t padded) {
  for (std::size_t i = 0; i < padded; ++i) out[i] = q[p[i]];
}

void compose3_scalar(const Point* p, const Point* r, const Point* q, Point* out,
                     std::size_t padded) {
  for (std::size_t i = 0; i < padded; ++i) out[i] = q[r[p[i]]];
}

bool is_identity_scalar(const Point* p, std::size_t padded) {
  for (std::size_t i = 0; i < padded; ++i)
    if (p[i] != static_cast<Point>(i)) return false;
  return true;
}

void fixed_mask_scalar(const Point* p, std::size_t padded, std::uint64_t* words) {
  const std::size_t nwords = (padded + 63) / 64;
  for (std::size_t w = 0; w < nwords; ++w) words[w] = 0;
  for (std::size_t i = 0; i < padded; ++i)
    if (p[i] == static_cast<Point>(i)) words[i / 64] |= std::uint64_t{1} << (i % 64);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, compose_scalar, compose3_scalar,
                                 is_identity_scalar, fixed_mask_scalar};
  return table;
}

}  // namespace spreadkit::kernels
