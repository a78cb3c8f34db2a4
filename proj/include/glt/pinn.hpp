#pragma once

// Small tanh multilayer perceptron trained as a physics-informed network on
// Poisson's equation Laplace(u) + f = 0 over [0, 1]^s with zero Dirichlet
// data. Spatial derivatives are carried forward as second-order jets
// (value, d/dx_k, d^2/dx_k^2 per axis); parameter gradients are obtained
// by reverse accumulation through that forward pass.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glt/point_set.hpp"
#include "glt/random.hpp"
#include "glt/samplers.hpp"

namespace glt {

/// Raised when a non-finite value appears in the forward or backward pass.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully connected tanh network R^s -> R with a linear output layer.
/// Parameters live in one flat vector: for each layer, the weight matrix
/// (column-major, out x in) followed by its bias.
class Mlp {
 public:
  using Matrix = Eigen::MatrixXd;
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using MatrixMap = Eigen::Map<Matrix>;
  using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

  Mlp() = default;

  /// widths = {s, hidden..., 1}; all parameters zero.
  explicit Mlp(std::vector<int> widths) : widths_(std::move(widths)) {
    if (widths_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output widths");
    if (widths_.back() != 1) throw std::invalid_argument("Mlp: output width must be 1");
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
      if (widths_[l] < 1 || widths_[l + 1] < 1) throw std::invalid_argument("Mlp: widths must be positive");
      offsets_.push_back(offset);
      offset += static_cast<std::size_t>(widths_[l + 1]) * (widths_[l] + 1);
    }
    params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(offset));
  }

  /// Weights and biases uniform in +-1/sqrt(fan_in), drawn from the seed.
  static Mlp initialized(std::vector<int> widths, std::uint64_t seed) {
    Mlp net(std::move(widths));
    CounterRng rng(seed, Stream::Init);
    for (std::size_t l = 0; l < net.layers(); ++l) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(net.widths_[l]));
      auto W = net.weight(l);
      for (Eigen::Index i = 0; i < W.rows(); ++i)
        for (Eigen::Index j = 0; j < W.cols(); ++j) W(i, j) = rng.uniform(-bound, bound);
      auto b = net.bias(l);
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = rng.uniform(-bound, bound);
    }
    return net;
  }

  std::size_t layers() const { return offsets_.size(); }
  std::size_t input_dim() const { return static_cast<std::size_t>(widths_.front()); }
  const std::vector<int>& widths() const { return widths_; }
  std::size_t num_params() const { return static_cast<std::size_t>(params_.size()); }

  const Eigen::VectorXd& params() const { return params_; }
  Eigen::VectorXd& params() { return params_; }

  ConstMatrixMap weight(std::size_t l) const {
    return ConstMatrixMap(params_.data() + offsets_[l], widths_[l + 1], widths_[l]);
  }
  MatrixMap weight(std::size_t l) {
    return MatrixMap(params_.data() + offsets_[l], widths_[l + 1], widths_[l]);
  }
  ConstVectorMap bias(std::size_t l) const {
    return ConstVectorMap(params_.data() + offsets_[l] + weight_size(l), widths_[l + 1]);
  }
  Eigen::Map<Eigen::VectorXd> bias(std::size_t l) {
    return Eigen::Map<Eigen::VectorXd>(params_.data() + offsets_[l] + weight_size(l), widths_[l + 1]);
  }

  std::size_t weight_offset(std::size_t l) const { return offsets_[l]; }
  std::size_t bias_offset(std::size_t l) const { return offsets_[l] + weight_size(l); }

  bool finite() const { return params_.allFinite(); }

 private:
  std::size_t weight_size(std::size_t l) const {
    return static_cast<std::size_t>(widths_[l + 1]) * static_cast<std::size_t>(widths_[l]);
  }

  std::vector<int> widths_;
  std::vector<std::size_t> offsets_;
  Eigen::VectorXd params_;
};

struct SecondOrderJet {
  double value = 0.0;
  std::vector<double> grad;       // du/dx_k
  std::vector<double> hess_diag;  // d^2u/dx_k^2
};

/// Jets for a batch: row vectors over the batch, one per axis for derivatives.
struct JetBatch {
  Eigen::RowVectorXd value;
  std::vector<Eigen::RowVectorXd> grad;
  std::vector<Eigen::RowVectorXd> hess;

  SecondOrderJet at(Eigen::Index j) const {
    SecondOrderJet out{value(j), {}, {}};
    for (const auto& g : grad) out.grad.push_back(g(j));
    for (const auto& h : hess) out.hess_diag.push_back(h(j));
    return out;
  }
};

namespace detail {

/// Per-layer forward state needed by the backward pass.
struct JetLayer {
  Eigen::MatrixXd in_value;                // input to the layer
  std::vector<Eigen::MatrixXd> in_grad;    // empty for the first layer (unit vectors)
  std::vector<Eigen::MatrixXd> in_hess;    // empty for the first layer (zero)
  std::vector<Eigen::MatrixXd> pre_grad;   // W * in_grad (hidden layers only)
  std::vector<Eigen::MatrixXd> pre_hess;
  Eigen::MatrixXd t, d1, d2;               // tanh and its derivatives at the pre-activation
};

struct JetTape {
  std::vector<JetLayer> layers;
};

inline Eigen::MatrixXd to_matrix(const PointSet& pts) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(pts.dim()), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t k = 0; k < pts.dim(); ++k)
      X(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = pts(j, k);
  return X;
}

/// Forward pass carrying value, first and second derivative along each
/// input axis. X is s x B.
inline JetBatch forward_jets(const Mlp& net, const Eigen::MatrixXd& X, JetTape* tape) {
  const auto s = static_cast<std::size_t>(X.rows());
  if (s != net.input_dim())
    throw std::invalid_argument("network input dimension " + std::to_string(net.input_dim()) +
                                " != point dimension " + std::to_string(s));
  const Eigen::Index B = X.cols();
  Eigen::MatrixXd hv = X;
  std::vector<Eigen::MatrixXd> hg, hq;  // empty means "unit vector" / "zero" at the input
  if (tape) tape->layers.clear();

  for (std::size_t l = 0; l < net.layers(); ++l) {
    const auto W = net.weight(l);
    const auto b = net.bias(l);
    Eigen::MatrixXd av = (W * hv).colwise() + b;
    std::vector<Eigen::MatrixXd> ag(s), aq(s);
    for (std::size_t k = 0; k < s; ++k) {
      if (l == 0) {
        ag[k] = W.col(static_cast<Eigen::Index>(k)).replicate(1, B);
        aq[k] = Eigen::MatrixXd::Zero(W.rows(), B);
      } else {
        ag[k].noalias() = W * hg[k];
        aq[k].noalias() = W * hq[k];
      }
    }
    const bool last = l + 1 == net.layers();
    JetLayer* rec = nullptr;
    if (tape) {
      tape->layers.emplace_back();
      rec = &tape->layers.back();
      rec->in_value = hv;
      if (l > 0) {
        rec->in_grad = hg;
        rec->in_hess = hq;
      }
    }
    if (last) {
      JetBatch out{av.row(0), {}, {}};
      for (std::size_t k = 0; k < s; ++k) {
        out.grad.push_back(ag[k].row(0));
        out.hess.push_back(aq[k].row(0));
      }
      if (!out.value.allFinite()) throw DivergenceError("non-finite network output");
      return out;
    }
    Eigen::MatrixXd t = av.array().tanh().matrix();
    Eigen::MatrixXd d1 = (1.0 - t.array().square()).matrix();
    Eigen::MatrixXd d2 = (-2.0 * t.array() * d1.array()).matrix();
    hv = t;
    hg.assign(s, {});
    hq.assign(s, {});
    for (std::size_t k = 0; k < s; ++k) {
      hg[k] = (d1.array() * ag[k].array()).matrix();
      hq[k] = (d2.array() * ag[k].array().square() + d1.array() * aq[k].array()).matrix();
    }
    if (rec) {
      rec->pre_grad = std::move(ag);
      rec->pre_hess = std::move(aq);
      rec->t = std::move(t);
      rec->d1 = std::move(d1);
      rec->d2 = std::move(d2);
    }
  }
  throw std::logic_error("network has no layers");
}

/// Reverse accumulation through forward_jets. Inputs are adjoints of the
/// output jet (1 x B each); the parameter gradient is added into grad.
inline void backward_jets(const Mlp& net, const JetTape& tape, const Eigen::RowVectorXd& d_value,
                          const std::vector<Eigen::RowVectorXd>& d_grad,
                          const std::vector<Eigen::RowVectorXd>& d_hess, Eigen::VectorXd& grad) {
  const std::size_t s = d_grad.size();
  Eigen::MatrixXd dav = d_value;
  std::vector<Eigen::MatrixXd> dag(s), daq(s);
  for (std::size_t k = 0; k < s; ++k) {
    dag[k] = d_grad[k];
    daq[k] = d_hess[k];
  }
  for (std::size_t l = net.layers(); l-- > 0;) {
    const auto& rec = tape.layers[l];
    const auto W = net.weight(l);
    Eigen::Map<Eigen::MatrixXd> dW(grad.data() + net.weight_offset(l), W.rows(), W.cols());
    Eigen::Map<Eigen::VectorXd> db(grad.data() + net.bias_offset(l), W.rows());
    dW.noalias() += dav * rec.in_value.transpose();
    db += dav.rowwise().sum();
    if (l == 0) {
      // Input jets are unit vectors (grad) and zero (hess).
      for (std::size_t k = 0; k < s; ++k) dW.col(static_cast<Eigen::Index>(k)) += dag[k].rowwise().sum();
      break;
    }
    for (std::size_t k = 0; k < s; ++k) {
      dW.noalias() += dag[k] * rec.in_grad[k].transpose();
      dW.noalias() += daq[k] * rec.in_hess[k].transpose();
    }
    // Adjoints of this layer's input, which is the previous layer's activation.
    const auto& prev = tape.layers[l - 1];
    Eigen::MatrixXd dhv = W.transpose() * dav;
    const auto t = prev.t.array();
    const auto d1 = prev.d1.array();
    const auto d2 = prev.d2.array();
    const Eigen::ArrayXXd d3 = d1 * (4.0 * t.square() - 2.0 * d1);
    Eigen::ArrayXXd new_dav = d1 * dhv.array();
    for (std::size_t k = 0; k < s; ++k) {
      const Eigen::ArrayXXd dhg = (W.transpose() * dag[k]).array();
      const Eigen::ArrayXXd dhq = (W.transpose() * daq[k]).array();
      const auto ag = prev.pre_grad[k].array();
      const auto aq = prev.pre_hess[k].array();
      new_dav += d2 * ag * dhg + (d3 * ag.square() + d2 * aq) * dhq;
      dag[k] = (d1 * dhg + 2.0 * d2 * ag * dhq).matrix();
      daq[k] = (d1 * dhq).matrix();
    }
    dav = new_dav.matrix();
  }
}

}  // namespace detail

/// Value, gradient and diagonal second derivatives of the raw network at x.
inline SecondOrderJet evaluate_jet(const Mlp& net, std::span<const double> x) {
  Eigen::MatrixXd X = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return detail::forward_jets(net, X, nullptr).at(0);
}

/// Network values only, for a batch of points.
inline Eigen::RowVectorXd evaluate_values(const Mlp& net, const PointSet& pts) {
  if (pts.dim() != net.input_dim()) throw std::invalid_argument("evaluate_values: dimension mismatch");
  Eigen::MatrixXd h = detail::to_matrix(pts);
  for (std::size_t l = 0; l < net.layers(); ++l) {
    Eigen::MatrixXd a = (net.weight(l) * h).colwise() + net.bias(l);
    h = l + 1 == net.layers() ? a : a.array().tanh().matrix();
  }
  return h.row(0);
}

/// Poisson problem on [0, 1]^s with f(x) = prod sin(k pi x_k) and zero
/// Dirichlet data. The exact solution of Laplace(u) + f = 0 is
/// u*(x) = prod sin(k pi x_k) / (s k^2 pi^2).
struct PoissonProblem {
  std::size_t s = 2;
  int k = 2;

  double forcing(std::span<const double> x) const {
    double f = 1.0;
    for (double v : x) f *= std::sin(k * std::numbers::pi * v);
    return f;
  }

  double scale() const { return static_cast<double>(s) * k * k * std::numbers::pi * std::numbers::pi; }

  double exact(std::span<const double> x) const { return forcing(x) / scale(); }

  /// Jet of u* computed analytically.
  SecondOrderJet exact_jet(std::span<const double> x) const {
    const double w = k * std::numbers::pi;
    SecondOrderJet jet{exact(x), std::vector<double>(s), std::vector<double>(s)};
    for (std::size_t a = 0; a < s; ++a) {
      double rest = 1.0;
      for (std::size_t b = 0; b < s; ++b)
        if (b != a) rest *= std::sin(w * x[b]);
      jet.grad[a] = w * std::cos(w * x[a]) * rest / scale();
      jet.hess_diag[a] = -w * w * std::sin(w * x[a]) * rest / scale();
    }
    return jet;
  }

  /// Laplace(u) + f for a given solution jet.
  double residual_of(const SecondOrderJet& jet, std::span<const double> x) const {
    double lap = 0.0;
    for (double h : jet.hess_diag) lap += h;
    return lap + forcing(x);
  }
};

namespace detail {

/// Mask m = prod x_k (1 - x_k) and its per-axis first and second derivatives.
struct MaskJet {
  Eigen::RowVectorXd m;
  std::vector<Eigen::RowVectorXd> mk, mkk;
};

inline MaskJet mask_jet(const Eigen::MatrixXd& X) {
  const auto s = static_cast<std::size_t>(X.rows());
  const Eigen::Index B = X.cols();
  MaskJet out{Eigen::RowVectorXd::Ones(B), {}, {}};
  Eigen::MatrixXd g = (X.array() * (1.0 - X.array())).matrix();
  for (std::size_t k = 0; k < s; ++k) out.m = (out.m.array() * g.row(static_cast<Eigen::Index>(k)).array()).matrix();
  for (std::size_t k = 0; k < s; ++k) {
    Eigen::RowVectorXd rest = Eigen::RowVectorXd::Ones(B);
    for (std::size_t j = 0; j < s; ++j)
      if (j != k) rest = (rest.array() * g.row(static_cast<Eigen::Index>(j)).array()).matrix();
    const auto xk = X.row(static_cast<Eigen::Index>(k)).array();
    out.mk.push_back(((1.0 - 2.0 * xk) * rest.array()).matrix());
    out.mkk.push_back((-2.0 * rest.array()).matrix());
  }
  return out;
}

inline JetBatch mask_product(const MaskJet& m, const JetBatch& net) {
  JetBatch u{(m.m.array() * net.value.array()).matrix(), {}, {}};
  for (std::size_t k = 0; k < net.grad.size(); ++k) {
    const auto N = net.value.array();
    const auto G = net.grad[k].array();
    const auto Q = net.hess[k].array();
    u.grad.push_back((m.mk[k].array() * N + m.m.array() * G).matrix());
    u.hess.push_back((m.mkk[k].array() * N + 2.0 * m.mk[k].array() * G + m.m.array() * Q).matrix());
  }
  return u;
}

inline Eigen::RowVectorXd forcing_row(const PoissonProblem& problem, const Eigen::MatrixXd& X) {
  const double w = problem.k * std::numbers::pi;
  Eigen::RowVectorXd f = Eigen::RowVectorXd::Ones(X.cols());
  for (Eigen::Index k = 0; k < X.rows(); ++k) f = (f.array() * (w * X.row(k).array()).sin()).matrix();
  return f;
}

}  // namespace detail

/// Jet of x -> prod x_k (1 - x_k) * net(x).
inline SecondOrderJet masked_output(const Mlp& net, std::span<const double> x) {
  Eigen::MatrixXd X = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const auto jets = detail::forward_jets(net, X, nullptr);
  return detail::mask_product(detail::mask_jet(X), jets).at(0);
}

/// Laplacian of the masked network plus the forcing, at x.
inline double residual(const Mlp& net, const PoissonProblem& problem, std::span<const double> x) {
  return problem.residual_of(masked_output(net, x), x);
}

struct LossAndGradient {
  double loss;
  Eigen::VectorXd gradient;
};

namespace detail {

inline LossAndGradient loss_impl(const Mlp& net, const PoissonProblem& problem, const PointSet& batch,
                                 bool want_gradient) {
  if (batch.empty()) throw std::invalid_argument("physics-informed loss: empty batch");
  if (batch.dim() != problem.s) throw std::invalid_argument("physics-informed loss: dimension mismatch");
  const Eigen::MatrixXd X = to_matrix(batch);
  JetTape tape;
  const auto jets = forward_jets(net, X, want_gradient ? &tape : nullptr);
  const auto mask = mask_jet(X);
  const auto u = mask_product(mask, jets);
  Eigen::RowVectorXd r = forcing_row(problem, X);
  for (const auto& h : u.hess) r += h;
  const double B = static_cast<double>(batch.size());
  LossAndGradient out{r.squaredNorm() / B, {}};
  if (!std::isfinite(out.loss)) throw DivergenceError("non-finite loss");
  if (!want_gradient) return out;

  // L = mean r^2, r = sum_k (m_kk N + 2 m_k G_k + m Q_k) + f.
  const Eigen::RowVectorXd dr = (2.0 / B) * r;
  Eigen::RowVectorXd dN = Eigen::RowVectorXd::Zero(X.cols());
  std::vector<Eigen::RowVectorXd> dG, dQ;
  for (std::size_t k = 0; k < problem.s; ++k) {
    dN += (mask.mkk[k].array() * dr.array()).matrix();
    dG.push_back((2.0 * mask.mk[k].array() * dr.array()).matrix());
    dQ.push_back((mask.m.array() * dr.array()).matrix());
  }
  out.gradient = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.num_params()));
  backward_jets(net, tape, dN, dG, dQ, out.gradient);
  if (!out.gradient.allFinite()) throw DivergenceError("non-finite gradient");
  return out;
}

}  // namespace detail

/// Mean squared residual over the batch.
inline double physics_informed_loss(const Mlp& net, const PoissonProblem& problem, const PointSet& batch) {
  return detail::loss_impl(net, problem, batch, false).loss;
}

/// Loss and its exact gradient with respect to the flat parameter vector.
inline LossAndGradient loss_gradient(const Mlp& net, const PoissonProblem& problem, const PointSet& batch) {
  return detail::loss_impl(net, problem, batch, true);
}

/// Uniformly spaced grid with m points per axis including both faces.
inline PointSet evaluation_grid(std::size_t s, std::size_t m) {
  if (m < 2) throw std::invalid_argument("evaluation_grid: need at least 2 points per axis");
  std::size_t total = 1;
  for (std::size_t k = 0; k < s; ++k) total *= m;
  PointSet pts(total, s);
  for (std::size_t j = 0; j < total; ++j) {
    std::size_t rest = j;
    for (std::size_t k = s; k-- > 0;) {
      pts(j, k) = static_cast<double>(rest % m) / static_cast<double>(m - 1);
      rest /= m;
    }
  }
  return pts;
}

/// (sum |u~ - u*|^2)^(1/2) / (sum |u*|^2)^(1/2) over the grid, u~ the masked network.
inline double relative_error(const Mlp& net, const PoissonProblem& problem, const PointSet& grid) {
  if (grid.empty()) throw std::invalid_argument("relative_error: empty grid");
  const Eigen::RowVectorXd values = evaluate_values(net, grid);
  const Eigen::MatrixXd X = detail::to_matrix(grid);
  const Eigen::RowVectorXd mask = detail::mask_jet(X).m;
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double exact = problem.exact(grid.row(j));
    const double diff = mask(static_cast<Eigen::Index>(j)) * values(static_cast<Eigen::Index>(j)) - exact;
    num += diff * diff;
    den += exact * exact;
  }
  if (den == 0.0) throw std::domain_error("relative_error: exact solution vanishes on the grid");
  return std::sqrt(num / den);
}

struct TrainConfig {
  SamplerKind kind = SamplerKind::uniform_random();
  std::int64_t n = 89;
  std::int64_t iterations = 20000;
  std::vector<int> hidden = {32, 32};
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  bool resample = true;
  std::int64_t checkpoint_every = 1000;
  std::size_t eval_points_per_axis = 201;
};

struct Checkpoint {
  std::int64_t iteration;
  double loss;
  double rel_error;
};

struct TrainReport {
  std::vector<Checkpoint> checkpoints;
  double final_loss = 0.0;
  double final_rel_error = 0.0;
  std::optional<std::int64_t> diverged_at;
  TrainConfig config;
  Mlp net;
};

/// Step size at iteration t of T: single cosine cycle from lr0 to zero.
inline double cosine_learning_rate(double lr0, std::int64_t t, std::int64_t total) {
  if (total <= 0) return lr0;
  return 0.5 * lr0 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(t) / static_cast<double>(total)));
}

/// Collocation batch for iteration t.
inline PointSet training_batch(const TrainConfig& cfg, std::size_t s, std::int64_t t) {
  const std::uint64_t seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(Stream::Trial),
                                                    static_cast<std::uint64_t>(cfg.resample ? t : 0)});
  return sample(cfg.kind, cfg.n, s, seed).points;
}

/// Adam with bias correction and a cosine-decayed step size; a fresh batch
/// every iteration when resampling is enabled.
inline TrainReport train(const PoissonProblem& problem, Mlp net, const TrainConfig& cfg) {
  if (cfg.iterations < 0) throw std::invalid_argument("train: iterations must be >= 0");
  if (cfg.checkpoint_every < 1) throw std::invalid_argument("train: checkpoint interval must be >= 1");
  if (net.input_dim() != problem.s) throw std::invalid_argument("train: network input dimension mismatch");
  const auto grid = evaluation_grid(problem.s, cfg.eval_points_per_axis);
  TrainReport report;
  report.config = cfg;

  auto checkpoint = [&](std::int64_t t) {
    const double loss = physics_informed_loss(net, problem, training_batch(cfg, problem.s, t));
    report.checkpoints.push_back({t, loss, relative_error(net, problem, grid)});
  };

  Eigen::VectorXd m1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.num_params()));
  Eigen::VectorXd m2 = m1;
  double b1 = 1.0, b2 = 1.0;
  std::int64_t t = 0;
  try {
    checkpoint(0);
    for (; t < cfg.iterations; ++t) {
      const auto lg = loss_gradient(net, problem, training_batch(cfg, problem.s, t));
      b1 *= cfg.beta1;
      b2 *= cfg.beta2;
      m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * lg.gradient;
      m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * lg.gradient.cwiseAbs2();
      const double lr = cosine_learning_rate(cfg.learning_rate, t, cfg.iterations);
      net.params().array() -=
          lr * (m1.array() / (1.0 - b1)) / ((m2.array() / (1.0 - b2)).sqrt() + cfg.epsilon);
      if (!net.finite()) throw DivergenceError("non-finite parameters");
      if ((t + 1) % cfg.checkpoint_every == 0 || t + 1 == cfg.iterations) checkpoint(t + 1);
    }
  } catch (const DivergenceError&) {
    report.diverged_at = t;
  }
  if (!report.checkpoints.empty()) {
    report.final_loss = report.checkpoints.back().loss;
    report.final_rel_error = report.checkpoints.back().rel_error;
  }
  report.net = std::move(net);
  return report;
}

/// Network widths {s, hidden..., 1} for a config.
inline std::vector<int> network_widths(std::size_t s, const std::vector<int>& hidden) {
  std::vector<int> w{static_cast<int>(s)};
  w.insert(w.end(), hidden.begin(), hidden.end());
  w.push_back(1);
  return w;
}

/// Initialize from the config seed and train.
inline TrainReport train(const PoissonProblem& problem, const TrainConfig& cfg) {
  return train(problem,
               Mlp::initialized(network_widths(problem.s, cfg.hidden),
                                derive_seed(cfg.seed, {static_cast<std::uint64_t>(Stream::Init)})),
               cfg);
}

}  // namespace glt
