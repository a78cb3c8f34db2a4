#pragma once

// Counter-based random numbers. A draw is a pure function of
// (seed, stream, counter), so results do not depend on call order
// across threads or on any global state.

#include <cstdint>
#include <initializer_list>

namespace glt {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Hash a base seed with a list of integer keys into a new 64-bit seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = detail::splitmix64(base ^ 0x6a09e667f3bcc909ULL);
  for (auto k : keys) h = detail::splitmix64(h ^ detail::splitmix64(k + 0x3c6ef372fe94f82bULL));
  return h;
}

/// Well-known stream identifiers; each purpose draws from its own stream.
enum class Stream : std::uint64_t {
  Shift = 1,
  Uniform = 2,
  LhsPermutation = 3,
  LhsJitter = 4,
  Init = 5,
  Trial = 6,
};

/// One independent stream of a counter-based generator.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(derive_seed(seed, {stream})) {}
  CounterRng(std::uint64_t seed, Stream stream)
      : CounterRng(seed, static_cast<std::uint64_t>(stream)) {}

  /// Stateless access: the value at an arbitrary counter position.
  std::uint64_t at(std::uint64_t counter) const {
    return detail::splitmix64(key_ ^ detail::splitmix64(counter));
  }

  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace glt
