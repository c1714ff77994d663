#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace mpmcs {

// Seeded random source with bounded-draw helpers implemented on top of the
// raw mt19937_64 stream. The standard pins that stream bit for bit, while
// <random> distributions vary between library implementations; routing every
// draw through these helpers keeps the seed-to-output mapping stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased uniform draw from [0, n) via bitmask rejection.
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    if (n == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    for (;;) {
      std::uint64_t r = engine_() & mask;
      if (r < n) return r;
    }
  }

  // Uniform draw from [lo, hi) with 53-bit resolution.
  double real(double lo, double hi) {
    double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    assert(k <= n);
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint32_t> picked;
    picked.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(pool[i], pool[j]);
      picked.push_back(pool[i]);
    }
    return picked;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpmcs
