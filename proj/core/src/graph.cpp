#include "gsift/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "gsift/rng.hpp"

namespace gsift {

namespace {

constexpr double kEtaRange = 5.0;

std::string graph_tag(const EventGraph& g) { return "graph id " + std::to_string(g.id); }

}  // namespace

std::vector<NodeRole> node_roles(std::size_t num_nodes) {
  using R = NodeRole;
  if (num_nodes == 7)
    return {R::kJet1, R::kJet2, R::kJet3, R::kB1, R::kB2, R::kLepton, R::kEnergy};
  if (num_nodes == 6) return {R::kJet1, R::kJet2, R::kB1, R::kB2, R::kLepton, R::kEnergy};
  throw IntegrityError("node_roles: num_nodes must be 6 or 7, got " + std::to_string(num_nodes));
}

std::array<bool, kNumFeatures> role_columns(NodeRole role) {
  switch (role) {
    case NodeRole::kJet1:
    case NodeRole::kJet2:
    case NodeRole::kJet3:
      return {true, true, true, true, false, false};
    case NodeRole::kB1:
    case NodeRole::kB2:
      return {true, true, true, true, true, false};
    case NodeRole::kLepton:
      return {true, true, true, false, false, false};
    case NodeRole::kEnergy:
      return {true, false, true, false, false, false};
  }
  throw IntegrityError("role_columns: unknown role");
}

Matrix role_mask(std::size_t num_nodes) {
  const auto roles = node_roles(num_nodes);
  Matrix m(num_nodes, kNumFeatures);
  for (std::size_t i = 0; i < roles.size(); ++i) {
    const auto cols = role_columns(roles[i]);
    for (std::size_t j = 0; j < kNumFeatures; ++j) m(i, j) = cols[j] ? 1.0 : 0.0;
  }
  return m;
}

void validate_graph(const EventGraph& g) {
  const std::size_t n = g.features.rows();
  if (n != 6 && n != 7)
    throw IntegrityError(graph_tag(g) + ": num_nodes must be 6 or 7, got " + std::to_string(n));
  if (g.features.cols() != kNumFeatures)
    throw IntegrityError(graph_tag(g) + ": expected 6 feature columns, got " +
                         std::to_string(g.features.cols()));
  if (!g.mask.same_shape(g.features))
    throw IntegrityError(graph_tag(g) + ": mask shape does not match features");
  if (g.label != 0 && g.label != 1)
    throw IntegrityError(graph_tag(g) + ": label must be 0 or 1, got " + std::to_string(g.label));
  if (!all_finite(g.features)) throw IntegrityError(graph_tag(g) + ": non-finite feature value");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      const double m = g.mask(i, j);
      if (m != 0.0 && m != 1.0)
        throw IntegrityError(graph_tag(g) + ": mask entries must be 0 or 1");
      const double x = g.features(i, j);
      if (m == 0.0) {
        if (x != 0.0)
          throw IntegrityError(graph_tag(g) + ": masked-out entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") must be exactly 0");
        continue;
      }
      if (j == kColPhi && (x < -std::numbers::pi || x > std::numbers::pi))
        throw IntegrityError(graph_tag(g) + ": phi out of [-pi, pi] at node " + std::to_string(i));
      if (j == kColEta && (x < -kEtaRange || x > kEtaRange))
        throw IntegrityError(graph_tag(g) + ": eta out of [-5, 5] at node " + std::to_string(i));
    }
  }
}

EventGraph EventGraph::create(std::int64_t id, Matrix features, Matrix mask, int label) {
  EventGraph g{id, std::move(features), std::move(mask), label};
  validate_graph(g);
  return g;
}

void validate_dataset(const Dataset& d) {
  std::unordered_set<std::int64_t> seen;
  seen.reserve(d.graphs.size());
  for (const EventGraph& g : d.graphs) {
    validate_graph(g);
    if (!seen.insert(g.id).second)
      throw IntegrityError("dataset: duplicate graph id " + std::to_string(g.id));
  }
}

Matrix normalized_adjacency(std::size_t n) {
  if (n == 0) throw std::invalid_argument("normalized_adjacency: n must be >= 1");
  // For the complete graph with self-loops, A+I is all-ones and every degree
  // equals n, so the symmetric normalization is the uniform 1/n matrix.
  return Matrix::filled(n, n, 1.0 / static_cast<double>(n));
}

Dataset standardize(const Dataset& dataset, std::span<const std::size_t> fit_indices) {
  if (fit_indices.empty()) throw std::invalid_argument("standardize: empty fit set");

  std::array<double, kNumFeatures> sum{}, sum_sq{};
  std::array<std::size_t, kNumFeatures> count{};
  for (std::size_t idx : fit_indices) {
    const EventGraph& g = dataset.graphs.at(idx);
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      for (std::size_t j = 0; j < kNumFeatures; ++j) {
        if (g.mask(i, j) == 0.0) continue;
        sum[j] += g.features(i, j);
        sum_sq[j] += g.features(i, j) * g.features(i, j);
        ++count[j];
      }
    }
  }

  FeatureStats stats;
  stats.fitted = true;
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    if (count[j] == 0) {
      stats.mean[j] = 0.0;
      stats.stddev[j] = 1.0;
      continue;
    }
    const double n = static_cast<double>(count[j]);
    stats.mean[j] = sum[j] / n;
    const double var = std::max(0.0, sum_sq[j] / n - stats.mean[j] * stats.mean[j]);
    const double sd = std::sqrt(var);
    stats.stddev[j] = sd > 0.0 ? sd : 1.0;
  }

  Dataset out;
  out.stats = stats;
  out.graphs.reserve(dataset.graphs.size());
  for (const EventGraph& g : dataset.graphs) {
    Matrix f = g.features;
    for (std::size_t i = 0; i < g.num_nodes(); ++i)
      for (std::size_t j = 0; j < kNumFeatures; ++j)
        if (g.mask(i, j) != 0.0) f(i, j) = (f(i, j) - stats.mean[j]) / stats.stddev[j];
    out.graphs.push_back(EventGraph::create(g.id, std::move(f), g.mask, g.label));
  }
  return out;
}

namespace {

/// Largest-remainder apportionment of k slots across groups, proportional
/// to group sizes. Guarantees sum(result) == k and |result[c] - quota[c]| < 1.
std::vector<std::size_t> apportion(const std::vector<std::size_t>& group_sizes, std::size_t k) {
  const double total = static_cast<double>([&] {
    std::size_t s = 0;
    for (auto g : group_sizes) s += g;
    return s;
  }());
  std::vector<std::size_t> take(group_sizes.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;  // (-remainder, group)
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < group_sizes.size(); ++c) {
    const double quota = total > 0 ? static_cast<double>(k) * group_sizes[c] / total : 0.0;
    take[c] = static_cast<std::size_t>(quota);
    take[c] = std::min(take[c], group_sizes[c]);
    assigned += take[c];
    remainders.emplace_back(-(quota - static_cast<double>(take[c])), c);
  }
  std::sort(remainders.begin(), remainders.end());  // largest remainder first, ties by group id
  for (auto& [neg_rem, c] : remainders) {
    if (assigned >= k) break;
    if (take[c] < group_sizes[c]) {
      ++take[c];
      ++assigned;
    }
  }
  return take;
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace

std::vector<std::size_t> sample_subset(const Dataset& dataset, std::span<const std::size_t> pool,
                                       double frac, std::uint64_t seed, bool stratified) {
  if (!(frac > 0.0) || frac > 1.0)
    throw std::invalid_argument("sample_subset: frac must be in (0, 1]");
  const std::size_t k = round_half_up(frac * static_cast<double>(pool.size()));
  Rng rng(seed);

  std::vector<std::size_t> picked;
  picked.reserve(k);
  if (stratified) {
    std::vector<std::size_t> by_class[2];
    for (std::size_t idx : pool) by_class[dataset.graphs.at(idx).label].push_back(idx);
    const std::vector<std::size_t> sizes = {by_class[0].size(), by_class[1].size()};
    const std::vector<std::size_t> take = apportion(sizes, k);
    for (int c = 0; c < 2; ++c) {
      rng.shuffle(by_class[c]);
      picked.insert(picked.end(), by_class[c].begin(), by_class[c].begin() + take[c]);
    }
  } else {
    std::vector<std::size_t> shuffled(pool.begin(), pool.end());
    rng.shuffle(shuffled);
    picked.assign(shuffled.begin(), shuffled.begin() + k);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(const Dataset& dataset,
                                                                    double train_frac,
                                                                    std::uint64_t seed) {
  if (!(train_frac > 0.0) || !(train_frac < 1.0))
    throw std::invalid_argument("split: train_frac must be in (0, 1)");

  std::vector<std::size_t> all(dataset.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::size_t> train =
      sample_subset(dataset, all, train_frac, derive_seed(seed, 0x5be1u), /*stratified=*/true);

  std::vector<std::size_t> test;
  test.reserve(dataset.size() - train.size());
  auto it = train.begin();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (it != train.end() && *it == i) {
      ++it;
    } else {
      test.push_back(i);
    }
  }
  return {std::move(train), std::move(test)};
}

}  // namespace gsift
