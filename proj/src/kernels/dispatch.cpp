#include <cstdlib>
#include <string>

#include "superframe/kernels.hpp"

namespace superframe::kernels {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::weighted_conj_dot, &scalar::sum_abs2,
                              &scalar::identity_deviation};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::weighted_conj_dot, &avx2::sum_abs2, &avx2::identity_deviation};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::Neon, &neon::weighted_conj_dot, &neon::sum_abs2, &neon::identity_deviation};
#endif

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& choose() {
  const char* forced = std::getenv("SUPERFRAME_SIMD");
  if (forced) {
    const std::string want(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (want == name(isa)) return supported(isa) ? table(isa) : kScalar;
  }
  const auto isas = available();
  return table(isas.back());
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (supported(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) return kScalar;
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& chosen = choose();
  return chosen;
}

}  // namespace superframe::kernels
