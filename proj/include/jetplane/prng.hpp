#pragma once

#include <array>
#include <cstdint>

#include "jetplane/ratlin.hpp"

namespace jetplane {

// xoshiro256** (Blackman & Vigna), state seeded with splitmix64. Chosen over
// std::mt19937 because the algorithm is pinned here in ~30 lines: a seed
// yields the same stream on every platform and toolchain, which the
// reproducibility contract of every randomized report relies on.
class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed) {
    // splitmix64 stream expands the seed into the four state words.
    uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Deterministic modulo mapping; the tiny bias is irrelevant here, identical
  // streams across platforms are not.
  uint64_t below(uint64_t bound) { return next() % bound; }

  long int_in(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Numerator uniform in [-max_num, max_num], denominator in [1, max_den].
  Rational rational(long max_num = 10, long max_den = 4) {
    long num = int_in(-max_num, max_num);
    long den = int_in(1, max_den);
    return rat(num, den);
  }

  Rational nonzero_rational(long max_num = 10, long max_den = 4) {
    for (;;) {
      Rational q = rational(max_num, max_den);
      if (q != 0) return q;
    }
  }

  RatMatrix matrix(int rows, int cols, long max_num = 10, long max_den = 4) {
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rational(max_num, max_den);
    return m;
  }

  // Rejection-samples an n x s matrix of full column rank s.
  RatMatrix full_rank_matrix(int n, int s, long max_num = 10, long max_den = 4) {
    for (;;) {
      RatMatrix m = matrix(n, s, max_num, max_den);
      if (rank(m) == s) return m;
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<uint64_t, 4> s_;
};

}  // namespace jetplane
