#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gsift/graph.hpp"
#include "gsift/model.hpp"

namespace gsift {

struct TrainConfig {
  std::size_t epochs = 300;
  double lr = 1e-3;
  double weight_decay = 5e-4;
  std::size_t batch_size = 64;
  std::size_t checkpoint_every = 30;  // epochs between snapshots
  std::uint64_t seed = 0;
  std::size_t hidden = 64;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Canonical one-line rendering; basis for hash().
  std::string canonical_string() const;
  std::uint64_t hash() const;
};

/// Snapshot of the model at a given epoch, with the learning rate that was
/// in effect. These are what influence scoring replays.
struct Checkpoint {
  std::size_t epoch = 0;
  double lr_in_effect = 0.0;
  ModelParams params;
};

/// Checkpoints in strictly increasing epoch order.
struct CheckpointSet {
  std::vector<Checkpoint> checkpoints;

  std::size_t size() const noexcept { return checkpoints.size(); }
  bool empty() const noexcept { return checkpoints.empty(); }
};

struct TrainResult {
  ModelParams params;                // final parameters (== last checkpoint's)
  CheckpointSet checkpoints;         // every checkpoint_every epochs + final, deduplicated
  std::vector<double> loss_history;  // mean training loss per epoch
};

/// Mini-batch Adam training. Batches are reshuffled each epoch from a
/// seeded stream; batch loss/gradient is the mean over the batch. Fully
/// deterministic given (config, dataset, train_indices): two runs produce
/// bit-identical results. A non-finite batch loss aborts with a diagnostic
/// naming the epoch and batch.
TrainResult train(const TrainConfig& config, const Dataset& dataset,
                  std::span<const std::size_t> train_indices);

/// Per-sample classifier output: probability of class 1 and the argmax
/// label, ties broken toward class 0.
struct Prediction {
  double score = 0.0;  // softmax(logits)[1], in [0, 1]
  int label = 0;
};

std::vector<Prediction> predict(const ModelParams& params, const Dataset& dataset,
                                std::span<const std::size_t> indices);

}  // namespace gsift
