#include <atomic>
#include <cstdlib>
#include <string>

#include "scenopt/error.hpp"
#include "scenopt/kernels.hpp"

namespace scenopt::kernels {

namespace {

std::atomic<int> g_forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(SCENOPT_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detected_isa() {
  if (const char* env = std::getenv("SCENOPT_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = detected_isa();
  return detected;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("ISA " + std::string(isa_name(isa)) + " not supported on this machine");
  }
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("ISA " + std::string(isa_name(isa)) + " not supported on this machine");
  }
#if defined(SCENOPT_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

const KernelTable& active() { return table(active_isa()); }

}  // namespace scenopt::kernels
