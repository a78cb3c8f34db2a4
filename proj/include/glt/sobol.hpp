#pragma once

// Base-2 Sobol sequence, first eight dimensions, using the primitive
// polynomials and initial direction numbers of Joe & Kuo (new-joe-kuo-6.21201).

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "glt/point_set.hpp"

namespace glt {

inline constexpr std::size_t kSobolMaxDim = 8;
inline constexpr int kSobolBits = 32;

namespace detail {

struct SobolPolynomial {
  int degree;
  std::uint32_t a;  // interior coefficients, highest first
  std::array<std::uint32_t, 5> m;
};

// Dimension 1 is the van der Corput sequence and has no entry here.
inline constexpr std::array<SobolPolynomial, kSobolMaxDim - 1> kSobolTable{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
}};

using DirectionNumbers = std::array<std::uint32_t, kSobolBits>;

inline DirectionNumbers sobol_directions(std::size_t dim) {
  DirectionNumbers v{};
  if (dim == 0) {
    for (int i = 0; i < kSobolBits; ++i) v[i] = 1u << (kSobolBits - 1 - i);
    return v;
  }
  const auto& poly = kSobolTable[dim - 1];
  const int d = poly.degree;
  std::array<std::uint32_t, kSobolBits> m{};
  for (int i = 0; i < d; ++i) m[i] = poly.m[i];
  for (int i = d; i < kSobolBits; ++i) {
    std::uint32_t x = m[i - d] ^ (m[i - d] << d);
    for (int k = 1; k < d; ++k)
      if ((poly.a >> (d - 1 - k)) & 1u) x ^= m[i - k] << k;
    m[i] = x;
  }
  for (int i = 0; i < kSobolBits; ++i) v[i] = m[i] << (kSobolBits - 1 - i);
  return v;
}

}  // namespace detail

/// Points with indices [first, first + count) of the s-dimensional Sobol
/// sequence, in index order. Index 0 is the origin.
inline PointSet sobol_sequence(std::size_t count, std::size_t s, std::uint64_t first = 0) {
  if (s < 1 || s > kSobolMaxDim)
    throw std::invalid_argument("sobol: dimension " + std::to_string(s) + " not supported (max " +
                                std::to_string(kSobolMaxDim) + ")");
  if (first + count > (std::uint64_t{1} << kSobolBits))
    throw std::invalid_argument("sobol: index range exceeds 2^32");
  std::array<detail::DirectionNumbers, kSobolMaxDim> dirs;
  for (std::size_t k = 0; k < s; ++k) dirs[k] = detail::sobol_directions(k);

  // Gray-code state for index `first`.
  std::array<std::uint32_t, kSobolMaxDim> x{};
  const std::uint64_t gray = first ^ (first >> 1);
  for (int b = 0; b < kSobolBits; ++b)
    if ((gray >> b) & 1u)
      for (std::size_t k = 0; k < s; ++k) x[k] ^= dirs[k][b];

  PointSet pts(count, s);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t k = 0; k < s; ++k) pts(j, k) = static_cast<double>(x[k]) * 0x1.0p-32;
    const std::uint64_t idx = first + j;
    const int c = std::countr_one(idx);  // lowest zero bit of idx
    if (c < kSobolBits)
      for (std::size_t k = 0; k < s; ++k) x[k] ^= dirs[k][c];
  }
  return pts;
}

}  // namespace glt
