#include "finmet/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace finmet::kernels {

#if defined(FINMET_HAVE_AVX2_TU)
const Kernels* avx2_table();  // defined in kernels_avx2.cpp
#endif

const Kernels* avx2() {
#if defined(FINMET_HAVE_AVX2_TU)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table();
#endif
  return nullptr;
}

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("FINMET_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar();
    const Kernels* wide = avx2();
    if (env && std::strcmp(env, "avx2") == 0 && wide) return wide;
    if (env && std::strcmp(env, "avx2") == 0) return &scalar();
    return wide ? wide : &scalar();
  }();
  return *chosen;
}

}  // namespace finmet::kernels
