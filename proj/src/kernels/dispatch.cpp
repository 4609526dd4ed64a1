#include <atomic>

#include "kernel_tables.hpp"

namespace spreadkit::kernels {
namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
      // NEON is mandatory on AArch64.
      return neon_table() != nullptr;
  }
  return false;
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_table();
    case Isa::avx2:
      return avx2_table();
    case Isa::neon:
      return neon_table();
  }
  return nullptr;
}

const KernelTable* best() {
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    const KernelTable* t = table_for(isa);
    if (t != nullptr && cpu_has(isa)) return t;
  }
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{best()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    const KernelTable* t = table_for(isa);
    if (t != nullptr && cpu_has(isa)) out.push_back(t);
  }
  return out;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (t == nullptr || !cpu_has(isa)) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace spreadkit::kernels
