#pragma once

#include <cstdint>

namespace tribelang {

// splitmix64; used to expand one 64-bit seed into generator state.
inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256**. Fixed, published state transition, so identical seeds give
// identical streams on every platform and in the mirror implementations used
// to freeze test expectations.
class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased draw from [0, n) by modulo rejection.
  uint64_t below(uint64_t n) {
    const uint64_t rem = (0 - n) % n;  // 2^64 mod n
    uint64_t x = next();
    while (x < rem) x = next();
    return x % n;
  }

  // Fisher-Yates, used by the generator for deterministic shuffles.
  template <typename T>
  void shuffle(T& seq) {
    for (uint64_t i = seq.size(); i > 1; --i) {
      const uint64_t j = below(i);
      using std::swap;
      swap(seq[i - 1], seq[j]);
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

}  // namespace tribelang
