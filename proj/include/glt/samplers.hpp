#pragma once

// Collocation-point samplers behind one interface: uniformly random,
// uniformly spaced grid, Latin hypercube, Sobol, and shifted good lattice.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glt/lattice.hpp"
#include "glt/point_set.hpp"
#include "glt/random.hpp"
#include "glt/sobol.hpp"

namespace glt {

enum class SamplerTag { UniformRandom, UniformGrid, Lhs, Sobol, GoodLattice };

inline std::string_view to_string(SamplerTag tag) {
  switch (tag) {
    case SamplerTag::UniformRandom: return "mc";
    case SamplerTag::UniformGrid: return "grid";
    case SamplerTag::Lhs: return "lhs";
    case SamplerTag::Sobol: return "sobol";
    case SamplerTag::GoodLattice: return "glt";
  }
  return "?";
}

inline SamplerTag parse_sampler_tag(std::string_view name) {
  if (name == "mc" || name == "random" || name == "uniform") return SamplerTag::UniformRandom;
  if (name == "grid") return SamplerTag::UniformGrid;
  if (name == "lhs") return SamplerTag::Lhs;
  if (name == "sobol") return SamplerTag::Sobol;
  if (name == "glt" || name == "lattice") return SamplerTag::GoodLattice;
  throw std::invalid_argument("unknown sampler kind '" + std::string(name) +
                              "' (expected mc, grid, lhs, sobol, glt)");
}

struct SamplerKind {
  SamplerTag tag = SamplerTag::UniformRandom;
  /// GoodLattice only.
  std::optional<GeneratingVector> lattice;
  /// UniformGrid points per axis; 0 derives m from n = m^s.
  std::int64_t grid_m = 0;
  /// Add a uniform shift modulo 1 drawn from the seed. On by default for
  /// GoodLattice and UniformGrid, off by default for Sobol.
  bool random_shift = false;
  /// Sobol only: start at index 1 instead of the origin.
  bool skip_origin = false;

  static SamplerKind uniform_random() { return {SamplerTag::UniformRandom}; }
  static SamplerKind lhs() { return {SamplerTag::Lhs}; }
  static SamplerKind sobol(bool shifted = false, bool skip_origin = false) {
    SamplerKind k{SamplerTag::Sobol};
    k.random_shift = shifted;
    k.skip_origin = skip_origin;
    return k;
  }
  static SamplerKind grid(std::int64_t m = 0, bool shifted = true) {
    SamplerKind k{SamplerTag::UniformGrid};
    k.grid_m = m;
    k.random_shift = shifted;
    return k;
  }
  static SamplerKind good_lattice(GeneratingVector gv, bool shifted = true) {
    SamplerKind k{SamplerTag::GoodLattice};
    k.lattice = std::move(gv);
    k.random_shift = shifted;
    return k;
  }
};

struct SampleBatch {
  PointSet points;
  SamplerKind kind;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> shift;
};

namespace detail {

inline std::uint64_t axis_stream(Stream purpose, std::size_t axis) {
  return (static_cast<std::uint64_t>(purpose) << 32) | static_cast<std::uint64_t>(axis);
}

inline std::vector<double> draw_shift(std::uint64_t seed, std::size_t s) {
  CounterRng rng(seed, Stream::Shift);
  std::vector<double> r(s);
  for (auto& v : r) v = rng.uniform();
  return r;
}

inline void apply_shift(PointSet& pts, const std::vector<double>& shift) {
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t k = 0; k < pts.dim(); ++k) pts(j, k) = frac(pts(j, k) + shift[k]);
}

inline std::int64_t integer_root(std::int64_t n, std::size_t s) {
  auto m = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(s))));
  for (std::int64_t c : {m - 1, m, m + 1}) {
    if (c < 1) continue;
    std::int64_t p = 1;
    bool overflow = false;
    for (std::size_t k = 0; k < s && !overflow; ++k) overflow = __builtin_mul_overflow(p, c, &p);
    if (!overflow && p == n) return c;
  }
  return 0;
}

inline bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace detail

/// First n Sobol points in s <= 8 dimensions, n a power of two.
inline SampleBatch sobol_points(std::int64_t n, std::size_t s, std::uint64_t seed,
                                SamplerKind kind = SamplerKind::sobol()) {
  if (!detail::is_power_of_two(n))
    throw std::invalid_argument("sobol: n = " + std::to_string(n) + " is not a power of two");
  SampleBatch batch{sobol_sequence(static_cast<std::size_t>(n), s, kind.skip_origin ? 1 : 0), kind, seed,
                    std::nullopt};
  if (kind.random_shift) {
    batch.shift = detail::draw_shift(seed, s);
    detail::apply_shift(batch.points, *batch.shift);
  }
  return batch;
}

/// Latin hypercube: per axis, coordinate j is (pi(j) + u_j) / n for a
/// seeded permutation pi and jitter u_j in [0, 1).
inline SampleBatch lhs_points(std::int64_t n, std::size_t s, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("lhs: n must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  PointSet pts(un, s);
  std::vector<std::int64_t> perm(un);
  for (std::size_t k = 0; k < s; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    CounterRng prng(seed, detail::axis_stream(Stream::LhsPermutation, k));
    for (std::size_t i = un; i > 1; --i) std::swap(perm[i - 1], perm[prng.below(i)]);
    CounterRng jitter(seed, detail::axis_stream(Stream::LhsJitter, k));
    for (std::size_t j = 0; j < un; ++j) {
      double x = (static_cast<double>(perm[j]) + jitter.uniform()) / static_cast<double>(n);
      const double upper = static_cast<double>(perm[j] + 1) / static_cast<double>(n);
      if (x >= upper) x = std::nextafter(upper, 0.0);
      pts(j, k) = x;
    }
  }
  return {std::move(pts), SamplerKind::lhs(), seed, std::nullopt};
}

/// Deterministic in (kind, n, s, seed).
inline SampleBatch sample(const SamplerKind& kind, std::int64_t n, std::size_t s, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  if (s < 1) throw std::invalid_argument("sample: s must be >= 1");
  switch (kind.tag) {
    case SamplerTag::UniformRandom: {
      PointSet pts(static_cast<std::size_t>(n), s);
      for (std::size_t k = 0; k < s; ++k) {
        CounterRng rng(seed, detail::axis_stream(Stream::Uniform, k));
        for (std::size_t j = 0; j < pts.size(); ++j) pts(j, k) = rng.uniform();
      }
      return {std::move(pts), kind, seed, std::nullopt};
    }
    case SamplerTag::Lhs: {
      auto batch = lhs_points(n, s, seed);
      batch.kind = kind;
      return batch;
    }
    case SamplerTag::Sobol:
      return sobol_points(n, s, seed, kind);
    case SamplerTag::UniformGrid: {
      const std::int64_t m = kind.grid_m > 0 ? kind.grid_m : detail::integer_root(n, s);
      std::int64_t expect = 1;
      for (std::size_t k = 0; k < s && m > 0; ++k) expect = detail::checked_mul(expect, m);
      if (m < 1 || expect != n)
        throw std::invalid_argument("grid: n = " + std::to_string(n) + " is not m^" + std::to_string(s) +
                                    (kind.grid_m > 0 ? " for m = " + std::to_string(kind.grid_m) : ""));
      PointSet pts(static_cast<std::size_t>(n), s);
      // Axis 0 varies slowest.
      for (std::int64_t j = 0; j < n; ++j) {
        std::int64_t rest = j;
        for (std::size_t k = s; k-- > 0;) {
          pts(static_cast<std::size_t>(j), k) = static_cast<double>(rest % m) / static_cast<double>(m);
          rest /= m;
        }
      }
      SampleBatch batch{std::move(pts), kind, seed, std::nullopt};
      batch.kind.grid_m = m;
      if (kind.random_shift) {
        batch.shift = detail::draw_shift(seed, s);
        detail::apply_shift(batch.points, *batch.shift);
      }
      return batch;
    }
    case SamplerTag::GoodLattice: {
      if (!kind.lattice) throw std::invalid_argument("glt: sampler kind carries no generating vector");
      const auto& gv = *kind.lattice;
      if (gv.n() != n || gv.dim() != s)
        throw std::invalid_argument("glt: generating vector has n = " + std::to_string(gv.n()) +
                                    ", s = " + std::to_string(gv.dim()) + "; requested n = " +
                                    std::to_string(n) + ", s = " + std::to_string(s));
      SampleBatch batch{{}, kind, seed, std::nullopt};
      if (kind.random_shift) {
        batch.shift = detail::draw_shift(seed, s);
        batch.points = generate_points(gv, std::span<const double>(*batch.shift)).points;
      } else {
        batch.points = generate_points(gv).points;
      }
      return batch;
    }
  }
  throw std::invalid_argument("sample: unknown sampler kind");
}

}  // namespace glt
