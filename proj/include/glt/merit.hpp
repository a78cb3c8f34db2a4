#pragma once

// Korobov figure of merit P_alpha(z, n) = sum over nonzero dual vectors h
// of prod_k max(1, |h_k|)^-alpha, evaluated exactly for even alpha via
// Bernoulli polynomials, and by truncated dual-lattice summation.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glt/lattice.hpp"
#include "glt/parallel.hpp"

namespace glt {

/// Smoothness exponent; exact evaluation exists only for alpha in {2, 4, 6}.
struct Smoothness {
  double alpha = 2.0;

  bool exact_mode() const { return alpha == 2.0 || alpha == 4.0 || alpha == 6.0; }
  int even_order() const {
    if (!exact_mode()) throw std::invalid_argument("alpha must be one of 2, 4, 6");
    return static_cast<int>(alpha);
  }
};

struct MeritValue {
  double p_alpha;
  GeneratingVector gv;
  Smoothness alpha;
};

namespace detail {

inline void require_exact_alpha(int alpha) {
  if (alpha != 2 && alpha != 4 && alpha != 6)
    throw std::invalid_argument("unsupported alpha " + std::to_string(alpha) +
                                " (exact evaluation supports 2, 4, 6)");
}

/// Neumaier variant of compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace detail

/// B_alpha(x) for alpha in {2, 4, 6}, x in [0, 1].
inline double bernoulli_polynomial(int alpha, double x) {
  detail::require_exact_alpha(alpha);
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("bernoulli_polynomial: x outside [0, 1]");
  const double x2 = x * x;
  switch (alpha) {
    case 2:
      return x2 - x + 1.0 / 6.0;
    case 4:
      return x2 * x2 - 2.0 * x2 * x + x2 - 1.0 / 30.0;
    default:
      return x2 * x2 * x2 - 3.0 * x2 * x2 * x + 2.5 * x2 * x2 - 0.5 * x2 + 1.0 / 42.0;
  }
}

/// 1 + sum_{h != 0} exp(2 pi i h x) / |h|^alpha, via
/// 1 - (-1)^(alpha/2) (2 pi)^alpha B_alpha(frac(x)) / alpha!.
inline double f_alpha(int alpha, double x) {
  detail::require_exact_alpha(alpha);
  double factorial = 1.0;
  for (int i = 2; i <= alpha; ++i) factorial *= i;
  const double sign = (alpha / 2) % 2 == 0 ? 1.0 : -1.0;
  const double scale = std::pow(2.0 * std::numbers::pi, alpha) / factorial;
  return 1.0 - sign * scale * bernoulli_polynomial(alpha, frac(x));
}

namespace detail {

/// F_alpha(r / n) for r = 0..n-1, symmetrised so table[r] == table[n - r]
/// bitwise. Mirror-image lattices then score identically.
inline std::vector<double> f_alpha_table(std::int64_t n, int alpha) {
  std::vector<double> table(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    const std::int64_t m = std::min(r, n - r);
    table[static_cast<std::size_t>(r)] =
        f_alpha(alpha, static_cast<double>(m) / static_cast<double>(n));
  }
  return table;
}

inline double p_alpha_from_table(const GeneratingVector& gv, const std::vector<double>& table) {
  const std::int64_t n = gv.n();
  const std::size_t s = gv.dim();
  CompensatedSum sum;
  std::vector<std::int64_t> residue(s, 0);
  for (std::int64_t j = 0; j < n; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < s; ++k) prod *= table[static_cast<std::size_t>(residue[k])];
    sum.add(prod);
    for (std::size_t k = 0; k < s; ++k) {
      residue[k] += gv.z(k);
      if (residue[k] >= n) residue[k] -= n;
    }
  }
  return sum.value() / static_cast<double>(n) - 1.0;
}

}  // namespace detail

/// P_alpha = -1 + (1/n) sum_j prod_k F_alpha(x_jk) over the unshifted lattice. O(n s).
inline MeritValue p_alpha_exact(const GeneratingVector& gv, int alpha) {
  detail::require_exact_alpha(alpha);
  const auto table = detail::f_alpha_table(gv.n(), alpha);
  return {detail::p_alpha_from_table(gv, table), gv, Smoothness{static_cast<double>(alpha)}};
}

/// Sum of prod_k max(1, |h_k|)^-alpha over nonzero dual vectors in [-box, box]^s.
///
/// This is the plain truncated dual sum; it underestimates P_alpha by the
/// mass outside the box, which for alpha = 2 decays like 1/box. The box is
/// summed exactly by grouping each axis by residue h_k z_k mod n and
/// convolving the per-axis residue weights, O(s (box + n^2)) instead of
/// O((2 box + 1)^s) while visiting the same set of terms.
inline double p_alpha_bruteforce(const GeneratingVector& gv, double alpha, std::int64_t box) {
  if (box < 1) throw std::invalid_argument("p_alpha_bruteforce: box must be >= 1");
  if (!(alpha > 1.0)) throw std::invalid_argument("p_alpha_bruteforce: alpha must be > 1");
  const std::int64_t n = gv.n();
  const auto un = static_cast<std::size_t>(n);

  std::vector<double> weight(static_cast<std::size_t>(box) + 1, 1.0);
  for (std::int64_t h = 2; h <= box; ++h)
    weight[static_cast<std::size_t>(h)] = std::pow(static_cast<double>(h), -alpha);

  auto axis_weights = [&](std::int64_t zk) {
    std::vector<detail::CompensatedSum> acc(un);
    for (std::int64_t h = -box; h <= box; ++h) {
      const double w = weight[static_cast<std::size_t>(h < 0 ? -h : h)];
      const auto r = detail::mod(detail::checked_mul(detail::mod(h, n), zk), n);
      acc[static_cast<std::size_t>(r)].add(w);
    }
    std::vector<double> out(un);
    for (std::size_t r = 0; r < un; ++r) out[r] = acc[r].value();
    return out;
  };

  // dist[c]: total weight of partial vectors (h_1..h_k) with residue c.
  std::vector<double> dist = axis_weights(gv.z(0));
  for (std::size_t k = 1; k < gv.dim(); ++k) {
    const auto w = axis_weights(gv.z(k));
    std::vector<double> next(un);
    for (std::size_t c = 0; c < un; ++c) {
      detail::CompensatedSum acc;
      for (std::size_t d = 0; d < un; ++d) {
        if (w[d] == 0.0) continue;
        const std::size_t src = c >= d ? c - d : c + un - d;
        acc.add(dist[src] * w[d]);
      }
      next[c] = acc.value();
    }
    dist = std::move(next);
  }
  // h = 0 contributes exactly 1 to residue 0.
  return dist[0] - 1.0;
}

/// Merit for any alpha: exact for {2, 4, 6}, truncated dual sum otherwise.
inline double p_alpha(const GeneratingVector& gv, Smoothness alpha, std::int64_t box = 1 << 14) {
  if (alpha.exact_mode()) return p_alpha_exact(gv, alpha.even_order()).p_alpha;
  if (!(alpha.alpha > 1.0)) throw std::invalid_argument("merit requires alpha > 1");
  return p_alpha_bruteforce(gv, alpha.alpha, box);
}

/// z(l) = (1, l, l^2 mod n, ..., l^{s-1} mod n).
inline GeneratingVector korobov_vector(std::int64_t n, std::size_t s, std::int64_t l) {
  std::vector<std::int64_t> z(s);
  std::int64_t p = 1;
  for (std::size_t k = 0; k < s; ++k) {
    z[k] = p;
    p = detail::mod(detail::checked_mul(p, l), n);
  }
  return GeneratingVector(n, std::move(z));
}

/// Relative tolerance under which two merit values count as tied.
inline constexpr double kMeritTieTolerance = 1e-12;

namespace detail {

/// First index of the minimum; later candidates must be smaller by more
/// than the tie tolerance to win.
inline std::size_t tie_aware_argmin(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best] - kMeritTieTolerance * std::abs(values[best])) best = i;
  return best;
}

template <class MakeVector>
MeritValue search_candidates(std::int64_t n, int alpha, unsigned workers, MakeVector make) {
  require_exact_alpha(alpha);
  const auto table = f_alpha_table(n, alpha);
  const auto count = static_cast<std::size_t>(n - 1);
  std::vector<double> merit(count);
  parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i)
      merit[i] = p_alpha_from_table(make(static_cast<std::int64_t>(i) + 1), table);
  });
  const std::size_t best = tie_aware_argmin(merit);
  return {merit[best], make(static_cast<std::int64_t>(best) + 1), Smoothness{static_cast<double>(alpha)}};
}

}  // namespace detail

/// Best Korobov-form vector over l = 1..n-1; ties go to the smallest l.
/// O(n^2 s). Candidates sharing a factor with n are scored, not skipped.
inline MeritValue korobov_search(std::int64_t n, std::size_t s, int alpha, unsigned workers = 1) {
  if (n < 2) throw std::invalid_argument("korobov_search: n must be >= 2");
  if (s < 1) throw std::invalid_argument("korobov_search: s must be >= 1");
  return detail::search_candidates(n, alpha, workers,
                                   [&](std::int64_t l) { return korobov_vector(n, s, l); });
}

inline constexpr std::int64_t kExhaustiveSearchLimit = 1000;

/// Best z = (1, z2) over all 1 <= z2 < n. Verification oracle for the
/// Korobov search in two dimensions.
inline MeritValue exhaustive_search_2d(std::int64_t n, int alpha, unsigned workers = 1) {
  if (n < 2) throw std::invalid_argument("exhaustive_search_2d: n must be >= 2");
  if (n > kExhaustiveSearchLimit)
    throw std::invalid_argument("exhaustive_search_2d: n = " + std::to_string(n) + " exceeds limit " +
                                std::to_string(kExhaustiveSearchLimit));
  return detail::search_candidates(n, alpha, workers,
                                   [&](std::int64_t z2) { return GeneratingVector(n, {1, z2}); });
}

}  // namespace glt
