#pragma once

#include <filesystem>

#include "gsift/graph.hpp"

namespace gsift {

/// Writes one JSON object per line per graph, in dataset order:
/// {"id": int, "num_nodes": int, "features": [row-major floats],
///  "mask": [0/1 ints], "label": 0|1}
/// Floats are serialized with full round-trip precision, so
/// load_jsonl(save_jsonl(d)) == d exactly.
void save_jsonl(const Dataset& dataset, const std::filesystem::path& path);

/// Parses and validates a JSONL dataset. Throws ParseError naming the line
/// on malformed input, IntegrityError on duplicate ids or invariant
/// violations (wrapped with the offending line number).
Dataset load_jsonl(const std::filesystem::path& path);

/// FNV-1a fingerprint of a file's bytes; for manifests and audit trails.
std::uint64_t file_fingerprint(const std::filesystem::path& path);

}  // namespace gsift
