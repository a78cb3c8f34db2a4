#pragma once

// Transforms between the sampling cube and PDE inputs that make the loss
// integrand periodic: time folding, circle embedding of periodic axes,
// Dirichlet masking, initial-condition blending, and polynomial variable
// transforms with vanishing end derivatives.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glt {

/// Tent map: 2 t_hat on [0, 0.5), 2 (1 - t_hat) on [0.5, 1].
inline double time_fold(double t_hat) {
  if (!(t_hat >= 0.0 && t_hat <= 1.0)) throw std::domain_error("time_fold: input outside [0, 1]");
  return t_hat < 0.5 ? 2.0 * t_hat : 2.0 * (1.0 - t_hat);
}

inline std::array<double, 2> circle_embed(double x) {
  const double phase = 2.0 * std::numbers::pi * x;
  return {std::cos(phase), std::sin(phase)};
}

/// exp(-t) u0 + (1 - exp(-t)) net. Returns u0 unchanged at t = 0.
inline std::vector<double> ic_blend(double t, std::span<const double> u0_val, std::span<const double> net_val) {
  if (!(t >= 0.0)) throw std::domain_error("ic_blend: t must be >= 0");
  if (u0_val.size() != net_val.size()) throw std::invalid_argument("ic_blend: shape mismatch");
  std::vector<double> out(u0_val.begin(), u0_val.end());
  if (t == 0.0) return out;
  const double w = std::exp(-t);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w * u0_val[i] + (1.0 - w) * net_val[i];
  return out;
}

/// prod over masked axes of x_k (1 - x_k).
inline double dirichlet_mask(std::span<const double> x, std::span<const std::size_t> masked_axes) {
  double m = 1.0;
  for (auto k : masked_axes) {
    if (k >= x.size()) throw std::invalid_argument("dirichlet_mask: axis out of range");
    m *= x[k] * (1.0 - x[k]);
  }
  return m;
}

struct PolynomialMap {
  double y;
  double dy;
};

/// Degree 3: y = 3z^2 - 2z^3. Degree 5: y = 10z^3 - 15z^4 + 6z^5.
inline PolynomialMap polynomial_transform(double z, int degree) {
  if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("polynomial_transform: z outside [0, 1]");
  const double w = z * (1.0 - z);
  switch (degree) {
    case 3:
      return {z * z * (3.0 - 2.0 * z), 6.0 * w};
    case 5:
      return {z * z * z * (10.0 + z * (-15.0 + 6.0 * z)), 30.0 * w * w};
    default:
      throw std::invalid_argument("polynomial_transform: degree must be 3 or 5");
  }
}

enum class AxisTransformTag { Identity, TimeFold, CircleEmbed, DirichletMask, PolynomialTransform };

struct AxisTransform {
  AxisTransformTag tag = AxisTransformTag::Identity;
  int degree = 0;  // PolynomialTransform only

  friend bool operator==(const AxisTransform&, const AxisTransform&) = default;
};

inline std::string to_string(const AxisTransform& t) {
  switch (t.tag) {
    case AxisTransformTag::Identity: return "id";
    case AxisTransformTag::TimeFold: return "fold";
    case AxisTransformTag::CircleEmbed: return "circle";
    case AxisTransformTag::DirichletMask: return "mask";
    case AxisTransformTag::PolynomialTransform: return "poly" + std::to_string(t.degree);
  }
  return "?";
}

inline AxisTransform parse_axis_transform(std::string_view name) {
  if (name == "id" || name == "identity") return {AxisTransformTag::Identity};
  if (name == "fold") return {AxisTransformTag::TimeFold};
  if (name == "circle") return {AxisTransformTag::CircleEmbed};
  if (name == "mask") return {AxisTransformTag::DirichletMask};
  if (name == "poly3") return {AxisTransformTag::PolynomialTransform, 3};
  if (name == "poly5") return {AxisTransformTag::PolynomialTransform, 5};
  throw std::invalid_argument("unknown axis transform '" + std::string(name) +
                              "' (expected id, fold, circle, mask, poly3, poly5)");
}

/// Result of pushing one cube point through a chain.
struct ChainPoint {
  std::vector<double> coords;  // s + (number of circle axes) entries
  double jacobian = 1.0;       // product of polynomial-transform derivatives
  double mask = 1.0;           // product of Dirichlet masks
};

/// Per-axis transforms applied between sampler output and loss evaluation.
class TransformChain {
 public:
  TransformChain() = default;
  explicit TransformChain(std::vector<AxisTransform> axes) : axes_(std::move(axes)) {
    int folds = 0;
    for (const auto& a : axes_) {
      if (a.tag == AxisTransformTag::TimeFold) ++folds;
      if (a.tag == AxisTransformTag::PolynomialTransform && a.degree != 3 && a.degree != 5)
        throw std::invalid_argument("TransformChain: polynomial degree must be 3 or 5");
    }
    if (folds > 1) throw std::invalid_argument("TransformChain: time folding allowed on at most one axis");
  }

  /// All-identity chain of dimension s.
  static TransformChain identity(std::size_t s) {
    return TransformChain(std::vector<AxisTransform>(s, AxisTransform{}));
  }

  /// Comma-separated per-axis spec, e.g. "fold,circle".
  static TransformChain parse(std::string_view spec) {
    std::vector<AxisTransform> axes;
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = spec.find(',', start);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      axes.push_back(parse_axis_transform(spec.substr(start, end - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return TransformChain(std::move(axes));
  }

  std::size_t dim() const { return axes_.size(); }
  const std::vector<AxisTransform>& axes() const { return axes_; }

  std::size_t output_dim() const {
    std::size_t d = axes_.size();
    for (const auto& a : axes_) d += a.tag == AxisTransformTag::CircleEmbed ? 1 : 0;
    return d;
  }

  bool is_identity() const {
    for (const auto& a : axes_)
      if (a.tag != AxisTransformTag::Identity) return false;
    return true;
  }

  ChainPoint apply(std::span<const double> x) const {
    if (x.size() != axes_.size())
      throw std::invalid_argument("TransformChain: point dimension " + std::to_string(x.size()) +
                                  " != chain dimension " + std::to_string(axes_.size()));
    ChainPoint out;
    out.coords.reserve(output_dim());
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      const auto& a = axes_[k];
      switch (a.tag) {
        case AxisTransformTag::Identity:
          out.coords.push_back(x[k]);
          break;
        case AxisTransformTag::TimeFold:
          out.coords.push_back(time_fold(x[k]));
          break;
        case AxisTransformTag::CircleEmbed: {
          const auto c = circle_embed(x[k]);
          out.coords.push_back(c[0]);
          out.coords.push_back(c[1]);
          break;
        }
        case AxisTransformTag::DirichletMask:
          out.coords.push_back(x[k]);
          out.mask *= x[k] * (1.0 - x[k]);
          break;
        case AxisTransformTag::PolynomialTransform: {
          const auto p = polynomial_transform(x[k], a.degree);
          out.coords.push_back(p.y);
          out.jacobian *= p.dy;
          break;
        }
      }
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < axes_.size(); ++k) os << (k ? "," : "") << glt::to_string(axes_[k]);
    return os.str();
  }

 private:
  std::vector<AxisTransform> axes_;
};

}  // namespace glt
