#pragma once

// Rank-1 lattices: generating vectors, point generation, dual-lattice
// queries, Fibonacci lattices and continued-fraction diagnostics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glt/parallel.hpp"
#include "glt/point_set.hpp"

namespace glt {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiply");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
  return r;
}

/// Euclidean remainder in [0, n).
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace detail

/// Modulus n and integer vector z defining the rank-1 lattice {frac(j z / n)}.
class GeneratingVector {
 public:
  GeneratingVector(std::int64_t n, std::vector<std::int64_t> z) : n_(n), z_(std::move(z)) {
    if (n_ < 2) throw std::invalid_argument("GeneratingVector: modulus must be >= 2");
    if (z_.empty()) throw std::invalid_argument("GeneratingVector: dimension must be >= 1");
    for (auto zk : z_)
      if (zk < 0 || zk >= n_)
        throw std::invalid_argument("GeneratingVector: component " + std::to_string(zk) +
                                    " outside [0, " + std::to_string(n_) + ")");
  }

  std::int64_t n() const { return n_; }
  std::span<const std::int64_t> z() const { return z_; }
  std::int64_t z(std::size_t k) const { return z_.at(k); }
  std::size_t dim() const { return z_.size(); }

  friend bool operator==(const GeneratingVector&, const GeneratingVector&) = default;

 private:
  std::int64_t n_;
  std::vector<std::int64_t> z_;
};

struct LatticePointSet {
  PointSet points;
  GeneratingVector source;
  std::optional<std::vector<double>> shift;
};

/// Residue (j * z_k) mod n computed exactly.
inline std::int64_t lattice_residue(const GeneratingVector& gv, std::int64_t j, std::size_t k) {
  return detail::mod(detail::checked_mul(j, gv.z(k)), gv.n());
}

/// Point j is frac(j z / n + shift), j = 0..n-1 in ascending order.
inline LatticePointSet generate_points(const GeneratingVector& gv,
                                       std::optional<std::span<const double>> shift = std::nullopt) {
  const std::size_t s = gv.dim();
  if (shift && shift->size() != s)
    throw std::invalid_argument("generate_points: shift has length " + std::to_string(shift->size()) +
                                ", lattice dimension is " + std::to_string(s));
  const auto n = static_cast<std::size_t>(gv.n());
  const double inv_n = 1.0 / static_cast<double>(gv.n());
  PointSet pts(n, s);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < s; ++k) {
      double x = static_cast<double>(lattice_residue(gv, static_cast<std::int64_t>(j), k)) * inv_n;
      pts(j, k) = shift ? frac(x + (*shift)[k]) : x;
    }
  }
  LatticePointSet out{std::move(pts), gv, std::nullopt};
  if (shift) out.shift.emplace(shift->begin(), shift->end());
  return out;
}

/// F_k with F_1 = F_2 = 1. Throws when F_k does not fit in 64 bits.
inline std::int64_t fibonacci(int k) {
  if (k < 1) throw std::invalid_argument("fibonacci: index must be >= 1");
  std::int64_t a = 1, b = 1;  // F_1, F_2
  for (int i = 2; i < k; ++i) {
    std::int64_t c = detail::checked_add(a, b);
    a = b;
    b = c;
  }
  return k == 1 ? a : b;
}

/// The 2-d Fibonacci lattice n = F_k, z = (1, F_{k-1}).
inline GeneratingVector fibonacci_generating_vector(int k) {
  if (k < 3) throw std::invalid_argument("fibonacci_generating_vector: k must be >= 3");
  return GeneratingVector(fibonacci(k), {1, fibonacci(k - 1)});
}

/// True when n >= 2 is a Fibonacci number; sets k to its index (largest k).
inline std::optional<int> fibonacci_index(std::int64_t n) {
  for (int k = 3; k < 93; ++k) {
    std::int64_t f = fibonacci(k);
    if (f == n) return k;
    if (f > n) break;
  }
  return std::nullopt;
}

/// (h . z) mod n in exact arithmetic.
inline std::int64_t dual_residue(const GeneratingVector& gv, std::span<const std::int64_t> h) {
  if (h.size() != gv.dim())
    throw std::invalid_argument("dual lattice query: h has length " + std::to_string(h.size()) +
                                ", lattice dimension is " + std::to_string(gv.dim()));
  const std::int64_t n = gv.n();
  std::int64_t acc = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::int64_t term = detail::checked_mul(detail::mod(h[k], n), gv.z(k));
    acc = detail::mod(detail::checked_add(acc, detail::mod(term, n)), n);
  }
  return acc;
}

/// h belongs to the dual lattice iff h . z = 0 (mod n).
inline bool dual_lattice_contains(const GeneratingVector& gv, std::span<const std::int64_t> h) {
  return dual_residue(gv, h) == 0;
}

/// (1/n) sum_j exp(2 pi i h . x_j) over the unshifted lattice.
/// Phases are reduced modulo n in integers before the complex exponential.
inline std::complex<double> character_sum(const GeneratingVector& gv, std::span<const std::int64_t> h) {
  const std::int64_t n = gv.n();
  const std::int64_t m = dual_residue(gv, h);
  if (m == 0) return {1.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t r = detail::mod(detail::checked_mul(m, j), n);
    const double phase = two_pi_over_n * static_cast<double>(r);
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(n);
}

/// Zaremba index: min over nonzero dual vectors h in [-box, box]^s of
/// prod_k max(1, |h_k|). Returns nullopt if the box contains no nonzero
/// dual vector.
///
/// Cost is O((2 box + 1)^s) in the worst case; partial products at least
/// as large as the current best are pruned. For s = 2, box = n is
/// exhaustive: (n, 0) is always a dual vector with product n, and any
/// vector with a component larger than n in magnitude has product > n.
inline std::optional<std::int64_t> min_product_dual(const GeneratingVector& gv,
                                                    std::optional<std::int64_t> box = std::nullopt,
                                                    unsigned workers = 1) {
  const std::int64_t H = box.value_or(gv.n());
  if (H < 1) throw std::invalid_argument("min_product_dual: box must be >= 1");
  const std::size_t s = gv.dim();
  const std::int64_t n = gv.n();
  constexpr std::int64_t none = std::numeric_limits<std::int64_t>::max();

  // Depth-first over coordinates carrying the partial residue and product.
  auto search_from = [&](std::int64_t h0, std::int64_t best) {
    std::vector<std::int64_t> h(s, 0);
    h[0] = h0;
    auto rec = [&](auto&& self, std::size_t k, std::int64_t residue, std::int64_t product,
                   bool nonzero) -> void {
      if (k == s) {
        if (nonzero && residue == 0 && product < best) best = product;
        return;
      }
      for (std::int64_t v = -H; v <= H; ++v) {
        const std::int64_t w = std::max<std::int64_t>(1, v < 0 ? -v : v);
        const __int128 p = static_cast<__int128>(product) * w;
        if (p >= best) continue;
        const std::int64_t r =
            detail::mod(residue + detail::checked_mul(detail::mod(v, n), gv.z(k)) % n, n);
        self(self, k + 1, r, static_cast<std::int64_t>(p), nonzero || v != 0);
      }
    };
    const std::int64_t w0 = std::max<std::int64_t>(1, h0 < 0 ? -h0 : h0);
    const std::int64_t r0 = detail::mod(detail::checked_mul(detail::mod(h0, n), gv.z(0)), n);
    if (w0 < best) rec(rec, 1, r0, w0, h0 != 0);
    return best;
  };

  const auto span = static_cast<std::size_t>(2 * H + 1);
  std::vector<std::int64_t> partial(workers == 0 ? default_workers() : workers, none);
  parallel_chunks(span, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    std::int64_t best = none;
    for (std::size_t i = begin; i < end; ++i)
      best = std::min(best, search_from(static_cast<std::int64_t>(i) - H, best));
    partial[w] = best;
  });
  const std::int64_t best = *std::min_element(partial.begin(), partial.end());
  if (best == none) return std::nullopt;
  return best;
}

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t p, std::int64_t q) : num(p), den(q) {
    if (q == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

struct Convergent {
  std::int64_t p;
  std::int64_t q;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Partial quotients a_0; a_1, ..., a_k and convergents p_i / q_i.
struct ContinuedFraction {
  std::vector<std::int64_t> a;
  std::vector<Convergent> convergents;

  /// max a_i over i >= 1.
  std::int64_t max_partial_quotient() const {
    return a.size() < 2 ? 0 : *std::max_element(a.begin() + 1, a.end());
  }
};

/// Continued fraction of z2 / n by the Euclidean algorithm, with
/// p_0 = a_0, p_1 = a_0 a_1 + 1, q_0 = 1, q_1 = a_1 and
/// p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2}.
inline ContinuedFraction continued_fraction(std::int64_t z2, std::int64_t n) {
  if (n < 2 || z2 < 1 || z2 >= n)
    throw std::invalid_argument("continued_fraction: need 1 <= z2 < n");
  if (std::gcd(z2, n) != 1)
    throw std::invalid_argument("continued_fraction: gcd(" + std::to_string(z2) + ", " +
                                std::to_string(n) + ") != 1");
  ContinuedFraction cf;
  std::int64_t num = z2, den = n;
  while (den != 0) {
    const std::int64_t q = num / den;
    cf.a.push_back(q);
    num -= q * den;
    std::swap(num, den);
  }
  const auto& a = cf.a;
  cf.convergents.push_back({a[0], 1});
  if (a.size() > 1) cf.convergents.push_back({a[0] * a[1] + 1, a[1]});
  for (std::size_t i = 2; i < a.size(); ++i) {
    const auto& c1 = cf.convergents[i - 1];
    const auto& c2 = cf.convergents[i - 2];
    cf.convergents.push_back({detail::checked_add(detail::checked_mul(a[i], c1.p), c2.p),
                              detail::checked_add(detail::checked_mul(a[i], c1.q), c2.q)});
  }
  return cf;
}

struct ZarembaBracket {
  Rational lower;
  Rational upper;
  std::int64_t max_partial_quotient;

  bool contains(std::int64_t rho) const {
    const Rational r(rho, 1);
    return lower <= r && r <= upper;
  }
};

/// Bounds n / (max a_i + 2) <= rho <= n / max a_i for z = (1, z2).
inline ZarembaBracket zaremba_bracket(const GeneratingVector& gv) {
  if (gv.dim() != 2 || gv.z(0) != 1)
    throw std::invalid_argument("zaremba_bracket: requires z = (1, z2)");
  const auto cf = continued_fraction(gv.z(1), gv.n());
  const std::int64_t amax = cf.max_partial_quotient();
  return {Rational(gv.n(), amax + 2), Rational(gv.n(), amax), amax};
}

}  // namespace glt
