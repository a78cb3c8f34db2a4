#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace glt {

/// Fractional part x - floor(x), in [0, 1).
inline double frac(double x) {
  double f = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.0
  return f < 1.0 ? f : 0.0;
}

/// Dense row-major block of n points in s dimensions.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t n, std::size_t s) : n_(n), s_(s), data_(n * s, 0.0) {
    if (s == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return s_; }
  bool empty() const { return n_ == 0; }

  double& operator()(std::size_t j, std::size_t k) { return data_[j * s_ + k]; }
  double operator()(std::size_t j, std::size_t k) const { return data_[j * s_ + k]; }

  std::span<double> row(std::size_t j) { return {data_.data() + j * s_, s_}; }
  std::span<const double> row(std::size_t j) const { return {data_.data() + j * s_, s_}; }

  std::span<const double> data() const { return data_; }

  /// Append one point; the dimension must match.
  void push_back(std::span<const double> x) {
    if (x.size() != s_) throw std::invalid_argument("PointSet: dimension mismatch");
    data_.insert(data_.end(), x.begin(), x.end());
    ++n_;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t s_ = 1;
  std::vector<double> data_;
};

}  // namespace glt
