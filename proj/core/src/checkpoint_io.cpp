#include "gsift/checkpoint_io.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gsift/errors.hpp"

namespace gsift {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from_json(const json& j, const std::string& name) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols)
    throw IntegrityError("tensor '" + name + "': data length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data().begin());
  return m;
}

std::string checkpoint_filename(std::size_t epoch) {
  std::string num = std::to_string(epoch);
  if (num.size() < 6) num = std::string(6 - num.size(), '0') + num;
  return "ckpt_" + num + ".json";
}

void check_params_shape(const ModelParams& p, const std::string& file) {
  const std::size_t h = p.hidden();
  const bool ok = p.w1.rows() == kNumFeatures && p.w1.cols() == h && p.w2.rows() == h &&
                  p.w2.cols() == h && p.b2.size() == h && p.w3.rows() == h && p.w3.cols() == 2 &&
                  p.b3.size() == 2;
  if (!ok) throw IntegrityError(file + ": inconsistent tensor shapes");
  if (!p.finite()) throw IntegrityError(file + ": non-finite parameter value");
}

}  // namespace

void save_checkpoints(const CheckpointSet& set, const std::filesystem::path& dir,
                      std::uint64_t config_hash) {
  std::filesystem::create_directories(dir);
  json epochs = json::array();
  for (const Checkpoint& c : set.checkpoints) {
    if (!c.params.finite())
      throw IntegrityError("save_checkpoints: non-finite parameters at epoch " +
                           std::to_string(c.epoch));
    json j;
    j["format_version"] = kFormatVersion;
    j["epoch"] = c.epoch;
    j["lr_in_effect"] = c.lr_in_effect;
    j["hidden"] = c.params.hidden();
    j["tensors"] = {{"w1", matrix_to_json(c.params.w1)}, {"b1", c.params.b1},
                    {"w2", matrix_to_json(c.params.w2)}, {"b2", c.params.b2},
                    {"w3", matrix_to_json(c.params.w3)}, {"b3", c.params.b3}};
    const auto path = dir / checkpoint_filename(c.epoch);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_checkpoints: cannot write " + path.string());
    out << j.dump();
    epochs.push_back(c.epoch);
  }

  json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["epochs"] = epochs;
  manifest["config_hash"] = config_hash;
  std::ofstream out(dir / "manifest.json");
  if (!out)
    throw std::runtime_error("save_checkpoints: cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

CheckpointSet load_checkpoints(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("load_checkpoints: not a directory: " + dir.string());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("ckpt_", 0) == 0 && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  if (files.empty())
    throw std::runtime_error("load_checkpoints: no checkpoint files in " + dir.string());

  CheckpointSet set;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw IntegrityError("load_checkpoints: cannot open " + path.string());
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw IntegrityError(path.string() + ": malformed JSON: " + e.what());
    }
    try {
      const int version = j.at("format_version").get<int>();
      if (version != kFormatVersion)
        throw IntegrityError(path.string() + ": unsupported format version " +
                             std::to_string(version));
      Checkpoint c;
      c.epoch = j.at("epoch").get<std::size_t>();
      c.lr_in_effect = j.at("lr_in_effect").get<double>();
      if (!(c.lr_in_effect > 0.0))
        throw IntegrityError(path.string() + ": lr_in_effect must be > 0");
      const auto hidden = j.at("hidden").get<std::size_t>();
      const json& t = j.at("tensors");
      c.params.w1 = matrix_from_json(t.at("w1"), "w1");
      c.params.b1 = t.at("b1").get<std::vector<double>>();
      c.params.w2 = matrix_from_json(t.at("w2"), "w2");
      c.params.b2 = t.at("b2").get<std::vector<double>>();
      c.params.w3 = matrix_from_json(t.at("w3"), "w3");
      c.params.b3 = t.at("b3").get<std::vector<double>>();
      if (c.params.hidden() != hidden)
        throw IntegrityError(path.string() + ": hidden width does not match tensors");
      check_params_shape(c.params, path.string());
      set.checkpoints.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw IntegrityError(path.string() + ": missing or mistyped field: " + e.what());
    }
  }

  std::sort(set.checkpoints.begin(), set.checkpoints.end(),
            [](const Checkpoint& a, const Checkpoint& b) { return a.epoch < b.epoch; });
  for (std::size_t i = 1; i < set.checkpoints.size(); ++i)
    if (set.checkpoints[i].epoch == set.checkpoints[i - 1].epoch)
      throw IntegrityError("load_checkpoints: duplicate epoch " +
                           std::to_string(set.checkpoints[i].epoch));
  return set;
}

}  // namespace gsift
