#include <cmath>
#include <limits>

#include "kernel_variants.hpp"

namespace radnlw::kernels::detail {
namespace {

void leapfrog(double* out, const double* v, const double* prev, const double* force, double dt2,
              double inv_dr2, std::size_t n_nodes) {
  for (std::size_t j = 1; j + 1 < n_nodes; ++j) {
    const double lap = ((v[j + 1] + v[j - 1]) - 2.0 * v[j]) * inv_dr2;
    out[j] = (2.0 * v[j] - prev[j]) + dt2 * (lap - force[j]);
  }
}

void centered_difference(double* out, const double* next, const double* prev, double scale,
                         std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) out[j] = (next[j] - prev[j]) * scale;
}

double dot(const double* x, const double* y, std::size_t count) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + x[j + l] * y[j + l];
  }
  double sum = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; j < count; ++j) sum = sum + x[j] * y[j];
  return sum;
}

double max_abs(const double* x, std::size_t count) {
  double m = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    double a = std::fabs(x[j]);
    if (std::isnan(a)) a = std::numeric_limits<double>::infinity();
    if (a > m) m = a;
  }
  return m;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, leapfrog, centered_difference, dot, max_abs};

}  // namespace radnlw::kernels::detail
