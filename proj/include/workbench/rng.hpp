#pragma once

#include <cstdint>

namespace workbench {

// splitmix64; chosen over std::mt19937_64 + distributions so that streams are
// reproducible byte-for-byte across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1, by rejection
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // derive an independent child stream deterministically
  Rng child(uint64_t tag) {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    r.next();
    return r;
  }

 private:
  uint64_t state_;
};

}  // namespace workbench
