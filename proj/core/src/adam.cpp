#include "gsift/adam.hpp"

#include <cmath>

#include "gsift/errors.hpp"

namespace gsift {

void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, double lr,
               double weight_decay) {
  auto theta = params.tensor_views();
  const auto grad = grads.tensor_views();
  auto m = state.first_moment.tensor_views();
  auto v = state.second_moment.tensor_views();

  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(AdamState::kBeta1, t);
  const double bias2 = 1.0 - std::pow(AdamState::kBeta2, t);

  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (theta[k].size() != grad[k].size())
      throw ShapeError("adam_step", 1, theta[k].size(), 1, grad[k].size());
    for (std::size_t i = 0; i < theta[k].size(); ++i) {
      const double g = grad[k][i] + weight_decay * theta[k][i];
      m[k][i] = AdamState::kBeta1 * m[k][i] + (1.0 - AdamState::kBeta1) * g;
      v[k][i] = AdamState::kBeta2 * v[k][i] + (1.0 - AdamState::kBeta2) * g * g;
      const double m_hat = m[k][i] / bias1;
      const double v_hat = v[k][i] / bias2;
      theta[k][i] -= lr * m_hat / (std::sqrt(v_hat) + AdamState::kEpsilon);
    }
  }
}

}  // namespace gsift
