#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gsift/matrix.hpp"

namespace gsift {

/// Feature column layout shared by every node row. Column 0 carries the
/// transverse momentum for particle nodes and the missing transverse energy
/// for the energy pseudo-node. Column 5 is reserved (always masked out).
enum FeatureColumn : std::size_t {
  kColMomentum = 0,
  kColEta = 1,
  kColPhi = 2,
  kColQuantile = 3,
  kColMass = 4,
  kColReserved = 5,
};

inline constexpr std::size_t kNumFeatures = 6;

/// Node roles in row order. Six-node events omit the third jet.
enum class NodeRole : std::size_t {
  kJet1 = 0,
  kJet2,
  kJet3,
  kB1,
  kB2,
  kLepton,
  kEnergy,
};

/// Row order of roles for a 6- or 7-node event. Throws for any other count.
std::vector<NodeRole> node_roles(std::size_t num_nodes);

/// Which feature columns are physically defined for a role:
/// jets carry pT/eta/phi/quantile, b-jets add mass, the lepton carries
/// pT/eta/phi, the energy node carries the missing-energy magnitude and phi.
std::array<bool, kNumFeatures> role_columns(NodeRole role);

/// The 0/1 validity mask for an event with the given node count.
Matrix role_mask(std::size_t num_nodes);

/// One collision event as a fully connected graph: a node-feature matrix, a
/// validity mask marking which entries are physically defined, and a binary
/// label (0 background, 1 signal).
///
/// Invariants (enforced by create/validate):
///   - 6 or 7 nodes, exactly 6 feature columns
///   - masked-out entries are exactly zero
///   - masked-in phi in [-pi, pi], masked-in eta in [-5, 5]
///   - all entries finite; mask entries in {0, 1}; label in {0, 1}
struct EventGraph {
  std::int64_t id = 0;
  Matrix features;  // num_nodes x 6
  Matrix mask;      // num_nodes x 6, entries 0/1
  int label = 0;

  std::size_t num_nodes() const noexcept { return features.rows(); }

  /// Validates all invariants; throws IntegrityError naming the violation.
  static EventGraph create(std::int64_t id, Matrix features, Matrix mask, int label);

  friend bool operator==(const EventGraph& a, const EventGraph& b) {
    return a.id == b.id && a.label == b.label && a.features == b.features && a.mask == b.mask;
  }
};

/// Throws IntegrityError if any EventGraph invariant is violated.
void validate_graph(const EventGraph& g);

/// Per-column mean and standard deviation fitted on the training portion.
struct FeatureStats {
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> stddev{};
  bool fitted = false;
};

/// An ordered collection of event graphs with unique ids. Treated as an
/// immutable value once assembled; all operations below are pure.
struct Dataset {
  std::vector<EventGraph> graphs;
  FeatureStats stats;

  std::size_t size() const noexcept { return graphs.size(); }

  /// Equality over the graphs only; stats are derived data.
  friend bool operator==(const Dataset& a, const Dataset& b) { return a.graphs == b.graphs; }
};

/// Throws IntegrityError on duplicate ids or any invalid graph.
void validate_dataset(const Dataset& d);

/// Symmetric-normalized adjacency with self-loops, D^{-1/2}(A+I)D^{-1/2},
/// for the complete graph on n nodes. Every entry equals 1/n.
Matrix normalized_adjacency(std::size_t n);

/// Per-column z-score. Mean and (population) standard deviation are fitted
/// on the masked-in entries of fit_indices only; every graph is then
/// transformed, with masked-out entries left at exactly zero. Columns with
/// zero variance get their stddev clamped to 1. The fitted stats are stored
/// on the returned dataset.
Dataset standardize(const Dataset& dataset, std::span<const std::size_t> fit_indices);

/// Deterministic stratified split. Returns (train, test) position indices,
/// each sorted ascending. The train side holds round(train_frac * size)
/// samples and each side's class ratio matches the whole within one sample.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(const Dataset& dataset,
                                                                    double train_frac,
                                                                    std::uint64_t seed);

/// Seeded random subset of `pool` of size round(frac * pool.size()).
/// Stratified by label (largest-remainder apportionment per class) unless
/// `stratified` is false. Output sorted ascending.
std::vector<std::size_t> sample_subset(const Dataset& dataset, std::span<const std::size_t> pool,
                                       double frac, std::uint64_t seed, bool stratified = true);

}  // namespace gsift
