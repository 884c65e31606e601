#pragma once

#include <filesystem>

#include "gsift/trainer.hpp"

namespace gsift {

/// Writes one `ckpt_<epoch>.json` per checkpoint (format version, epoch,
/// learning rate in effect, hidden width, all parameter tensors with full
/// float round-trip precision) plus a `manifest.json` listing the epochs
/// and a config hash. load(save(s)) == s exactly.
void save_checkpoints(const CheckpointSet& set, const std::filesystem::path& dir,
                      std::uint64_t config_hash = 0);

/// Loads every ckpt_*.json in the directory, sorted by recorded epoch
/// regardless of listing order. Throws IntegrityError on version mismatch,
/// corrupt or shape-inconsistent files (naming the file), or duplicate
/// epochs.
CheckpointSet load_checkpoints(const std::filesystem::path& dir);

}  // namespace gsift
