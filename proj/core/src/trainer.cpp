#include "gsift/trainer.hpp"

#include <cmath>
#include <sstream>

#include "gsift/adam.hpp"
#include "gsift/errors.hpp"
#include "gsift/rng.hpp"

namespace gsift {

namespace {

constexpr std::uint64_t kInitTag = 0x696e6974ULL;
constexpr std::uint64_t kShuffleTag = 0x73687566ULL;

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs", "must be >= 1");
  if (!(lr > 0.0)) throw ConfigError("lr", "must be > 0");
  if (weight_decay < 0.0) throw ConfigError("weight_decay", "must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size", "must be >= 1");
  if (checkpoint_every < 1) throw ConfigError("checkpoint_every", "must be >= 1");
  if (hidden < 1) throw ConfigError("hidden", "must be >= 1");
}

std::string TrainConfig::canonical_string() const {
  std::ostringstream os;
  os << "epochs=" << epochs << ";lr=" << std::hexfloat << lr << ";weight_decay=" << weight_decay
     << std::defaultfloat << ";batch_size=" << batch_size
     << ";checkpoint_every=" << checkpoint_every << ";seed=" << seed << ";hidden=" << hidden;
  return os.str();
}

std::uint64_t TrainConfig::hash() const {
  const std::string s = canonical_string();
  return fnv1a(s.data(), s.size());
}

TrainResult train(const TrainConfig& config, const Dataset& dataset,
                  std::span<const std::size_t> train_indices) {
  config.validate();
  if (train_indices.empty()) throw std::invalid_argument("train: empty training index list");
  for (std::size_t idx : train_indices)
    if (idx >= dataset.size())
      throw std::invalid_argument("train: index " + std::to_string(idx) + " out of range");

  Rng init_rng(derive_seed(config.seed, kInitTag));
  ModelParams params = ModelParams::glorot(config.hidden, init_rng);
  AdamState adam = AdamState::zeros_like(params);
  Rng shuffle_rng(derive_seed(config.seed, kShuffleTag));

  std::vector<std::size_t> order(train_indices.begin(), train_indices.end());
  const std::size_t n = order.size();

  TrainResult result;
  result.loss_history.reserve(config.epochs);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);

    double epoch_loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size, ++batch_index) {
      const std::size_t count = std::min(config.batch_size, n - start);

      Gradients batch_grads = Gradients::zeros_like(params);
      double batch_loss = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        const EventGraph& g = dataset.graphs[order[start + k]];
        BackwardResult br = backward(params, g, g.label);
        batch_grads.accumulate(br.grads);
        batch_loss += br.loss;
      }
      const double inv = 1.0 / static_cast<double>(count);
      batch_grads.scale(inv);
      batch_loss *= inv;

      if (!std::isfinite(batch_loss))
        throw std::runtime_error("train: non-finite loss at epoch " + std::to_string(epoch) +
                                 ", batch " + std::to_string(batch_index));

      adam_step(params, batch_grads, adam, config.lr, config.weight_decay);
      epoch_loss_sum += batch_loss * static_cast<double>(count);
    }
    result.loss_history.push_back(epoch_loss_sum / static_cast<double>(n));

    if (epoch % config.checkpoint_every == 0 || epoch == config.epochs) {
      // Final epoch may coincide with the cadence; keep one snapshot.
      if (result.checkpoints.checkpoints.empty() ||
          result.checkpoints.checkpoints.back().epoch != epoch)
        result.checkpoints.checkpoints.push_back({epoch, config.lr, params});
    }
  }

  result.params = std::move(params);
  return result;
}

std::vector<Prediction> predict(const ModelParams& params, const Dataset& dataset,
                                std::span<const std::size_t> indices) {
  std::vector<Prediction> out;
  out.reserve(indices.size());
  for (std::size_t idx : indices) {
    const Vec2 logits = forward(params, dataset.graphs.at(idx));
    const Vec2 probs = softmax(logits);
    // Argmax with ties toward class 0, decided on the logits.
    out.push_back({probs[1], logits[1] > logits[0] ? 1 : 0});
  }
  return out;
}

}  // namespace gsift
