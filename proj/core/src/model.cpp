#include "gsift/model.hpp"

#include <cmath>

#include "gsift/errors.hpp"

namespace gsift {

namespace {

double glorot_limit(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

void fill_uniform(Matrix& m, double limit, Rng& rng) {
  for (double& x : m.data()) x = rng.uniform(-limit, limit);
}

void check_consistent(const ModelParams& p) {
  const std::size_t h = p.hidden();
  if (p.w1.rows() != kNumFeatures || p.w1.cols() != h || p.w2.rows() != h || p.w2.cols() != h ||
      p.b2.size() != h || p.w3.rows() != h || p.w3.cols() != 2 || p.b3.size() != 2)
    throw ShapeError("model params", p.w1.rows(), p.w1.cols(), p.w2.rows(), p.w2.cols());
}

}  // namespace

ModelParams ModelParams::zeros(std::size_t hidden) {
  ModelParams p;
  p.w1 = Matrix(kNumFeatures, hidden);
  p.b1.assign(hidden, 0.0);
  p.w2 = Matrix(hidden, hidden);
  p.b2.assign(hidden, 0.0);
  p.w3 = Matrix(hidden, 2);
  p.b3.assign(2, 0.0);
  return p;
}

ModelParams ModelParams::glorot(std::size_t hidden, Rng& rng) {
  ModelParams p = zeros(hidden);
  fill_uniform(p.w1, glorot_limit(kNumFeatures, hidden), rng);
  fill_uniform(p.w2, glorot_limit(hidden, hidden), rng);
  fill_uniform(p.w3, glorot_limit(hidden, 2), rng);
  return p;
}

std::array<std::span<double>, 6> ModelParams::tensor_views() {
  return {w1.data(), std::span<double>(b1), w2.data(), std::span<double>(b2),
          w3.data(), std::span<double>(b3)};
}

std::array<std::span<const double>, 6> ModelParams::tensor_views() const {
  return {w1.data(), std::span<const double>(b1), w2.data(), std::span<const double>(b2),
          w3.data(), std::span<const double>(b3)};
}

bool ModelParams::finite() const {
  for (const auto view : tensor_views())
    if (!all_finite(view)) return false;
  return true;
}

Gradients Gradients::zeros_like(const ModelParams& p) {
  Gradients g;
  g.w1 = Matrix(p.w1.rows(), p.w1.cols());
  g.b1.assign(p.b1.size(), 0.0);
  g.w2 = Matrix(p.w2.rows(), p.w2.cols());
  g.b2.assign(p.b2.size(), 0.0);
  g.w3 = Matrix(p.w3.rows(), p.w3.cols());
  g.b3.assign(p.b3.size(), 0.0);
  return g;
}

std::array<std::span<double>, 6> Gradients::tensor_views() {
  return {w1.data(), std::span<double>(b1), w2.data(), std::span<double>(b2),
          w3.data(), std::span<double>(b3)};
}

std::array<std::span<const double>, 6> Gradients::tensor_views() const {
  return {w1.data(), std::span<const double>(b1), w2.data(), std::span<const double>(b2),
          w3.data(), std::span<const double>(b3)};
}

void Gradients::accumulate(const Gradients& other) {
  auto mine = tensor_views();
  const auto theirs = other.tensor_views();
  for (std::size_t t = 0; t < mine.size(); ++t) axpy_inplace(1.0, theirs[t], mine[t]);
}

void Gradients::scale(double alpha) {
  for (auto view : tensor_views())
    for (double& x : view) x *= alpha;
}

Vec2 forward(const ModelParams& params, const EventGraph& graph, ForwardCache* cache) {
  if (graph.features.cols() != kNumFeatures)
    throw ShapeError("forward", graph.features.rows(), graph.features.cols(), kNumFeatures, 1);
  check_consistent(params);

  const Matrix ahat = normalized_adjacency(graph.num_nodes());
  Matrix ahat_x = matmul(ahat, graph.features);
  Matrix z1 = add_row_broadcast(matmul(ahat_x, params.w1), params.b1);
  Matrix h1 = relu(z1);
  Matrix ahat_h1 = matmul(ahat, h1);
  Matrix z2 = add_row_broadcast(matmul(ahat_h1, params.w2), params.b2);
  Matrix h2 = relu(z2);
  std::vector<double> pooled = column_mean(h2);

  Vec2 logits{params.b3[0], params.b3[1]};
  for (std::size_t h = 0; h < pooled.size(); ++h) {
    logits[0] += pooled[h] * params.w3(h, 0);
    logits[1] += pooled[h] * params.w3(h, 1);
  }

  if (cache) {
    cache->ahat_x = std::move(ahat_x);
    cache->z1 = std::move(z1);
    cache->h1 = std::move(h1);
    cache->ahat_h1 = std::move(ahat_h1);
    cache->z2 = std::move(z2);
    cache->h2 = std::move(h2);
    cache->pooled = std::move(pooled);
    cache->logits = logits;
  }
  return logits;
}

double cross_entropy(const Vec2& logits, int label) {
  if (label != 0 && label != 1) throw std::invalid_argument("cross_entropy: label must be 0 or 1");
  return -log_softmax(logits)[label];
}

namespace {

/// d(loss)/d(logits) for cross-entropy: softmax - onehot.
Vec2 logit_gradient(const Vec2& logits, int label) {
  Vec2 d = softmax(logits);
  d[label] -= 1.0;
  return d;
}

/// Elementwise product with the ReLU derivative mask (z > 0), in place.
void apply_relu_mask(Matrix& grad, const Matrix& z) {
  auto g = grad.data();
  const auto zs = z.data();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!(zs[i] > 0.0)) g[i] = 0.0;
}

}  // namespace

BackwardResult backward(const ModelParams& params, const EventGraph& graph, int label) {
  ForwardCache c;
  forward(params, graph, &c);

  const std::size_t n = graph.num_nodes();
  const std::size_t h = params.hidden();
  const Vec2 dlogits = logit_gradient(c.logits, label);

  BackwardResult out;
  out.loss = cross_entropy(c.logits, label);
  out.grads.b3.assign(dlogits.begin(), dlogits.end());
  out.grads.w3 = outer(c.pooled, dlogits);

  // pooled = column mean of H2, so every row of dH2 is dpooled / n.
  std::vector<double> dpooled(h, 0.0);
  for (std::size_t k = 0; k < h; ++k)
    dpooled[k] = params.w3(k, 0) * dlogits[0] + params.w3(k, 1) * dlogits[1];

  Matrix dz2(n, h);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < h; ++k) dz2(i, k) = dpooled[k] / static_cast<double>(n);
  apply_relu_mask(dz2, c.z2);

  out.grads.w2 = matmul_at(c.ahat_h1, dz2);
  out.grads.b2 = column_sum(dz2);

  const Matrix ahat = normalized_adjacency(n);
  Matrix dz1 = matmul(ahat, matmul_bt(dz2, params.w2));  // Â is symmetric
  apply_relu_mask(dz1, c.z1);

  out.grads.w1 = matmul_at(c.ahat_x, dz1);
  out.grads.b1 = column_sum(dz1);
  return out;
}

LastLayerGradient last_layer_gradient(const ModelParams& params, const EventGraph& graph,
                                      int label) {
  ForwardCache c;
  forward(params, graph, &c);
  const Vec2 dlogits = logit_gradient(c.logits, label);
  return {outer(c.pooled, dlogits), dlogits};
}

}  // namespace gsift
