#include "gsift/dataset_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "gsift/errors.hpp"
#include "gsift/rng.hpp"

namespace gsift {

using nlohmann::json;

void save_jsonl(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_jsonl: cannot open for writing: " + path.string());
  for (const EventGraph& g : dataset.graphs) {
    json j;
    j["id"] = g.id;
    j["num_nodes"] = g.num_nodes();
    j["features"] = std::vector<double>(g.features.data().begin(), g.features.data().end());
    std::vector<int> mask;
    mask.reserve(g.mask.size());
    for (double m : g.mask.data()) mask.push_back(m != 0.0 ? 1 : 0);
    j["mask"] = mask;
    j["label"] = g.label;
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("save_jsonl: write failed: " + path.string());
}

Dataset load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_jsonl: cannot open: " + path.string());

  Dataset dataset;
  std::unordered_set<std::int64_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), lineno);
    }

    try {
      const auto id = j.at("id").get<std::int64_t>();
      const auto num_nodes = j.at("num_nodes").get<std::size_t>();
      const auto features = j.at("features").get<std::vector<double>>();
      const auto mask = j.at("mask").get<std::vector<int>>();
      const auto label = j.at("label").get<int>();

      if (features.size() != num_nodes * kNumFeatures)
        throw IntegrityError("features length " + std::to_string(features.size()) +
                             " does not match num_nodes*" + std::to_string(kNumFeatures));
      if (mask.size() != features.size())
        throw IntegrityError("mask length does not match features length");

      Matrix f(num_nodes, kNumFeatures), m(num_nodes, kNumFeatures);
      for (std::size_t k = 0; k < features.size(); ++k) {
        f.data()[k] = features[k];
        m.data()[k] = mask[k] != 0 ? 1.0 : 0.0;
      }
      if (!seen.insert(id).second)
        throw IntegrityError("duplicate graph id " + std::to_string(id));
      dataset.graphs.push_back(EventGraph::create(id, std::move(f), std::move(m), label));
    } catch (const json::exception& e) {
      throw ParseError(std::string("missing or mistyped field: ") + e.what(), lineno);
    } catch (const IntegrityError& e) {
      throw IntegrityError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return dataset;
}

std::uint64_t file_fingerprint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_fingerprint: cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return fnv1a(bytes.data(), bytes.size());
}

}  // namespace gsift
