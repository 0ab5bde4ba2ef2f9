#include <cassert>
#include <cstdlib>
#include <string>

#include "kernel_variants.hpp"

namespace radnlw::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(RADNLW_HAVE_AVX2_VARIANT) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* select() {
  const auto tables = available();
  if (const char* env = std::getenv("RADNLW_KERNELS")) {
    const std::string want(env);
    for (const KernelTable* t : tables)
      if (to_string(t->isa) == want) return t;
  }
  return tables.back();
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&detail::kScalarTable};
#if defined(RADNLW_HAVE_AVX2_VARIANT)
  if (cpu_has_avx2()) out.push_back(&detail::kAvx2Table);
#endif
#if defined(RADNLW_HAVE_NEON_VARIANT)
  out.push_back(&detail::kNeonTable);
#endif
  return out;
}

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable& active() {
  static const KernelTable* table = select();
  return *table;
}

void leapfrog_update(std::span<double> out, std::span<const double> v, std::span<const double> prev,
                     std::span<const double> force, double dt2, double inv_dr2) {
  assert(out.size() == v.size() && prev.size() == v.size() && force.size() == v.size());
  active().leapfrog(out.data(), v.data(), prev.data(), force.data(), dt2, inv_dr2, v.size());
}

void centered_difference(std::span<double> out, std::span<const double> next,
                         std::span<const double> prev, double scale) {
  assert(out.size() == next.size() && prev.size() == next.size());
  active().centered_difference(out.data(), next.data(), prev.data(), scale, out.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

}  // namespace radnlw::kernels
