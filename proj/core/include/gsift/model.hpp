#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gsift/graph.hpp"
#include "gsift/matrix.hpp"
#include "gsift/rng.hpp"

namespace gsift {

/// Trainable tensors of the classifier: two graph-convolution layers of
/// width H followed by a linear head over the mean-pooled node embedding.
struct ModelParams {
  Matrix w1;               // 6 x H
  std::vector<double> b1;  // H
  Matrix w2;               // H x H
  std::vector<double> b2;  // H
  Matrix w3;               // H x 2
  std::vector<double> b3;  // 2

  std::size_t hidden() const noexcept { return b1.size(); }

  static ModelParams zeros(std::size_t hidden);

  /// Glorot-uniform weights, zero biases. Consumes the rng deterministically
  /// in the order w1, w2, w3 (row-major within each).
  static ModelParams glorot(std::size_t hidden, Rng& rng);

  /// Flat views over all tensors in the fixed order w1, b1, w2, b2, w3, b3.
  std::array<std::span<double>, 6> tensor_views();
  std::array<std::span<const double>, 6> tensor_views() const;
  static constexpr std::array<const char*, 6> kTensorNames = {"w1", "b1", "w2",
                                                              "b2", "w3", "b3"};

  bool finite() const;

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2 && a.w3 == b.w3 &&
           a.b3 == b.b3;
  }
};

/// Loss gradients, one tensor per parameter, shape-matched to ModelParams.
struct Gradients {
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;
  Matrix w3;
  std::vector<double> b3;

  static Gradients zeros_like(const ModelParams& p);

  std::array<std::span<double>, 6> tensor_views();
  std::array<std::span<const double>, 6> tensor_views() const;

  /// this += other, in place (batch accumulation).
  void accumulate(const Gradients& other);
  /// this *= alpha, in place.
  void scale(double alpha);
};

/// Intermediates retained by forward for the backward pass.
struct ForwardCache {
  Matrix ahat_x;               // Â X, n x 6
  Matrix z1, h1;               // n x H
  Matrix ahat_h1;              // Â H1, n x H
  Matrix z2, h2;               // n x H
  std::vector<double> pooled;  // H
  Vec2 logits{};
};

/// Logits for one event:
///   H1 = ReLU(Â X W1 + b1), H2 = ReLU(Â H1 W2 + b2),
///   pooled = column mean of H2, logits = pooled W3 + b3,
/// with Â the uniform 1/n adjacency of the complete graph on n nodes.
/// The uniform Â plus mean pooling make the output invariant to node-row
/// permutations.
Vec2 forward(const ModelParams& params, const EventGraph& graph, ForwardCache* cache = nullptr);

/// Cross-entropy: negative log-softmax at the true class. Always >= 0.
double cross_entropy(const Vec2& logits, int label);

struct BackwardResult {
  double loss = 0.0;
  Gradients grads;
};

/// Loss and exact analytic gradients for every parameter. The ReLU
/// subgradient at 0 is taken as 0.
BackwardResult backward(const ModelParams& params, const EventGraph& graph, int label);

/// Head-only gradient in closed form:
///   d = softmax(logits) - onehot(label),
///   dW3 = pooled ⊗ d, db3 = d.
/// Identical to the w3/b3 slices of backward().
struct LastLayerGradient {
  Matrix w3;  // H x 2
  Vec2 b3{};
};
LastLayerGradient last_layer_gradient(const ModelParams& params, const EventGraph& graph,
                                      int label);

}  // namespace gsift
