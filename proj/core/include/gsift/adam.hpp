#pragma once

#include <cstddef>

#include "gsift/model.hpp"

namespace gsift {

/// Adam moment estimates, shape-matched to the parameters they update.
struct AdamState {
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  Gradients first_moment;
  Gradients second_moment;
  std::size_t step = 0;

  static AdamState zeros_like(const ModelParams& p) {
    return {Gradients::zeros_like(p), Gradients::zeros_like(p), 0};
  }
};

/// One Adam update with bias correction. Weight decay is the classic L2
/// form, added to the gradient before the moment updates (not decoupled).
/// Mutates params and state in place; fully deterministic.
void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, double lr,
               double weight_decay);

}  // namespace gsift
