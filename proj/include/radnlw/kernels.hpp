#pragma once

// Data-parallel inner loops of the solver and the diagnostics.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, AVX2 and NEON variants. All variants perform the same
// floating-point operations in the same order (no FMA contraction, fixed
// four-lane reduction tree), so their results are bit-identical. The variant
// is chosen once at startup from the CPU features; the environment variable
// RADNLW_KERNELS=scalar|avx2|neon forces a particular one.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace radnlw::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // Interior leapfrog update for j in [1, n_nodes - 2]:
  //   out[j] = (2 v[j] - prev[j]) + dt2 * (((v[j+1] + v[j-1]) - 2 v[j]) * inv_dr2 - force[j])
  // out[0] and out[n_nodes - 1] are left untouched.
  void (*leapfrog)(double* out, const double* v, const double* prev, const double* force,
                   double dt2, double inv_dr2, std::size_t n_nodes);

  // out[j] = (next[j] - prev[j]) * scale
  void (*centered_difference)(double* out, const double* next, const double* prev, double scale,
                              std::size_t count);

  // sum x[j] * y[j], four interleaved partial sums combined as (s0 + s1) + (s2 + s3),
  // then the remainder added in index order.
  double (*dot)(const double* x, const double* y, std::size_t count);

  // max |x[j]|, NaN counted as +inf. Zero for an empty range.
  double (*max_abs)(const double* x, std::size_t count);
};

/// The table selected for this process.
const KernelTable& active();

/// All variants usable on this CPU, scalar first.
std::vector<const KernelTable*> available();

const KernelTable& scalar_table();

// Span front ends on the active table.

void leapfrog_update(std::span<double> out, std::span<const double> v, std::span<const double> prev,
                     std::span<const double> force, double dt2, double inv_dr2);

void centered_difference(std::span<double> out, std::span<const double> next,
                         std::span<const double> prev, double scale);

double dot(std::span<const double> x, std::span<const double> y);

double max_abs(std::span<const double> x);

}  // namespace radnlw::kernels
