#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nnt {

/* mt19937_64 with hand-rolled draws. std::uniform_int_distribution is
 * implementation-defined, so corpora would not be byte-stable across
 * standard libraries; plain modulo is, and its bias is irrelevant for
 * test-data generation. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }

  // inclusive on both ends
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() & 1) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nnt
