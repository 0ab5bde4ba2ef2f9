#include <arm_neon.h>

#include <cmath>
#include <limits>

#include "kernel_variants.hpp"

namespace radnlw::kernels::detail {
namespace {

void leapfrog(double* out, const double* v, const double* prev, const double* force, double dt2,
              double inv_dr2, std::size_t n_nodes) {
  if (n_nodes < 3) return;
  const std::size_t last = n_nodes - 1;
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t vdt2 = vdupq_n_f64(dt2);
  const float64x2_t vinv = vdupq_n_f64(inv_dr2);
  std::size_t j = 1;
  for (; j + 2 <= last; j += 2) {
    const float64x2_t c = vld1q_f64(v + j);
    const float64x2_t l = vld1q_f64(v + j - 1);
    const float64x2_t r = vld1q_f64(v + j + 1);
    // vmulq/vaddq only: vfmaq would change rounding relative to the scalar path.
    const float64x2_t lap = vmulq_f64(vsubq_f64(vaddq_f64(r, l), vmulq_f64(two, c)), vinv);
    const float64x2_t acc = vsubq_f64(lap, vld1q_f64(force + j));
    const float64x2_t base = vsubq_f64(vmulq_f64(two, c), vld1q_f64(prev + j));
    vst1q_f64(out + j, vaddq_f64(base, vmulq_f64(vdt2, acc)));
  }
  for (; j < last; ++j) {
    const double lap = ((v[j + 1] + v[j - 1]) - 2.0 * v[j]) * inv_dr2;
    out[j] = (2.0 * v[j] - prev[j]) + dt2 * (lap - force[j]);
  }
}

void centered_difference(double* out, const double* next, const double* prev, double scale,
                         std::size_t count) {
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t j = 0;
  for (; j + 2 <= count; j += 2)
    vst1q_f64(out + j, vmulq_f64(vsubq_f64(vld1q_f64(next + j), vld1q_f64(prev + j)), s));
  for (; j < count; ++j) out[j] = (next[j] - prev[j]) * scale;
}

double dot(const double* x, const double* y, std::size_t count) {
  // Lanes (0,1) and (2,3) of the four-way reduction tree.
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + j), vld1q_f64(y + j)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + j + 2), vld1q_f64(y + j + 2)));
  }
  double sum = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; j < count; ++j) sum = sum + x[j] * y[j];
  return sum;
}

double max_abs(const double* x, std::size_t count) {
  double out = 0.0;
  float64x2_t m = vdupq_n_f64(0.0);
  const float64x2_t inf = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t j = 0;
  for (; j + 2 <= count; j += 2) {
    const float64x2_t raw = vld1q_f64(x + j);
    const uint64x2_t ordered = vceqq_f64(raw, raw);
    const float64x2_t a = vbslq_f64(ordered, vabsq_f64(raw), inf);
    m = vmaxq_f64(m, a);
  }
  out = vgetq_lane_f64(m, 0);
  if (vgetq_lane_f64(m, 1) > out) out = vgetq_lane_f64(m, 1);
  for (; j < count; ++j) {
    double a = std::fabs(x[j]);
    if (std::isnan(a)) a = std::numeric_limits<double>::infinity();
    if (a > out) out = a;
  }
  return out;
}

}  // namespace

const KernelTable kNeonTable{Isa::neon, leapfrog, centered_difference, dot, max_abs};

}  // namespace radnlw::kernels::detail
