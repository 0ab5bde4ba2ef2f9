#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "radnlw/kernels.hpp"

using namespace radnlw::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::vector<double> out(n);
  for (auto& x : out) x = d(rng);
  return out;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("every available kernel variant matches the scalar reference bit for bit") {
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(20240611);
  for (const KernelTable* table : available()) {
    CAPTURE(to_string(table->isa));
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 257u, 1025u}) {
      CAPTURE(n);
      const auto prev = random_vec(rng, n), cur = random_vec(rng, n), lap = random_vec(rng, n);
      std::vector<double> a(n, -1.0), b(n, -1.0);
      ref.leapfrog(a.data(), cur.data(), prev.data(), lap.data(), 1.7e-4, 6.1e3, n);
      table->leapfrog(b.data(), cur.data(), prev.data(), lap.data(), 1.7e-4, 6.1e3, n);
      CHECK(same_bits(a, b));
      if (n >= 2) {
        CHECK(a[0] == -1.0);
        CHECK(a[n - 1] == -1.0);
      }

      std::vector<double> c(n), d(n);
      ref.centered_difference(c.data(), cur.data(), prev.data(), 1.0 / 0.0123, n);
      table->centered_difference(d.data(), cur.data(), prev.data(), 1.0 / 0.0123, n);
      CHECK(same_bits(c, d));

      const double x = ref.dot(prev.data(), cur.data(), n);
      const double y = table->dot(prev.data(), cur.data(), n);
      CHECK(std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y));
      CHECK(ref.max_abs(lap.data(), n) == table->max_abs(lap.data(), n));
    }
  }
}

TEST_CASE("max_abs treats NaN as infinite in every variant") {
  std::vector<double> v{1.0, -2.0, 3.0, 0.5, -7.0, 2.0, 1.0, 0.0, 4.0};
  for (std::size_t pos : {0u, 3u, 4u, 8u}) {
    auto w = v;
    w[pos] = std::numeric_limits<double>::quiet_NaN();
    for (const KernelTable* table : available()) {
      CAPTURE(to_string(table->isa));
      CAPTURE(pos);
      CHECK(table->max_abs(w.data(), w.size()) == std::numeric_limits<double>::infinity());
    }
  }
  for (const KernelTable* table : available()) CHECK(table->max_abs(v.data(), v.size()) == 7.0);
}

TEST_CASE("kernel results are correct") {
  {
    std::vector<double> v{0, 1, 4, 9, 16}, prev{0, 1, 4, 9, 16}, force{0, 0, 0, 0, 0}, out(5, 0.0);
    leapfrog_update(out, v, prev, force, 0.5, 1.0);
    // static quadratic: 2v - prev + 0.5 * 2
    CHECK(out[1] == 2.0);
    CHECK(out[2] == 5.0);
    CHECK(out[3] == 10.0);
  }
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{2, 2, 2, 2, 2};
  CHECK(dot(x, y) == 30.0);
  CHECK(max_abs(std::vector<double>{-9.0, 3.0}) == 9.0);
  CHECK(max_abs(std::vector<double>{}) == 0.0);
}

TEST_CASE("active table is one of the available ones") {
  bool found = false;
  for (const KernelTable* t : available()) found = found || (t == &active());
  CHECK(found);
}
