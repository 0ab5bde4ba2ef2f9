// Built with -mavx2 (no -mfma); only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernel_variants.hpp"

namespace radnlw::kernels::detail {
namespace {

void leapfrog(double* out, const double* v, const double* prev, const double* force, double dt2,
              double inv_dr2, std::size_t n_nodes) {
  if (n_nodes < 3) return;
  const std::size_t last = n_nodes - 1;  // exclusive end of the interior
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vdt2 = _mm256_set1_pd(dt2);
  const __m256d vinv = _mm256_set1_pd(inv_dr2);
  std::size_t j = 1;
  for (; j + 4 <= last; j += 4) {
    const __m256d c = _mm256_loadu_pd(v + j);
    const __m256d l = _mm256_loadu_pd(v + j - 1);
    const __m256d r = _mm256_loadu_pd(v + j + 1);
    const __m256d lap = _mm256_mul_pd(_mm256_sub_pd(_mm256_add_pd(r, l), _mm256_mul_pd(two, c)), vinv);
    const __m256d acc = _mm256_sub_pd(lap, _mm256_loadu_pd(force + j));
    const __m256d base = _mm256_sub_pd(_mm256_mul_pd(two, c), _mm256_loadu_pd(prev + j));
    _mm256_storeu_pd(out + j, _mm256_add_pd(base, _mm256_mul_pd(vdt2, acc)));
  }
  for (; j < last; ++j) {
    const double lap = ((v[j + 1] + v[j - 1]) - 2.0 * v[j]) * inv_dr2;
    out[j] = (2.0 * v[j] - prev[j]) + dt2 * (lap - force[j]);
  }
}

void centered_difference(double* out, const double* next, const double* prev, double scale,
                         std::size_t count) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(next + j), _mm256_loadu_pd(prev + j));
    _mm256_storeu_pd(out + j, _mm256_mul_pd(d, s));
  }
  for (; j < count; ++j) out[j] = (next[j] - prev[j]) * scale;
}

double dot(const double* x, const double* y, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; j < count; ++j) sum = sum + x[j] * y[j];
  return sum;
}

double max_abs(const double* x, std::size_t count) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d raw = _mm256_loadu_pd(x + j);
    __m256d a = _mm256_andnot_pd(sign, raw);
    a = _mm256_blendv_pd(a, inf, _mm256_cmp_pd(raw, raw, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, a);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > out) out = lanes[l];
  for (; j < count; ++j) {
    double a = std::fabs(x[j]);
    if (std::isnan(a)) a = std::numeric_limits<double>::infinity();
    if (a > out) out = a;
  }
  return out;
}

}  // namespace

const KernelTable kAvx2Table{Isa::avx2, leapfrog, centered_difference, dot, max_abs};

}  // namespace radnlw::kernels::detail
