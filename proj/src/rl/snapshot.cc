// Copyright 2026 The RAPS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "raps/rl/snapshot.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "raps/errors.h"

namespace raps::rl {

using nlohmann::json;

namespace {

constexpr const char* kMagic = "RAPS-SNAPSHOT";
constexpr const char* kEndHeader = "END-HEADER";

json Shapes(const Mlp<double>& net) {
  json layers = json::array();
  for (int l = 0; l < net.NumLayers(); ++l) {
    layers.push_back({{"in", net.sizes()[l]}, {"out", net.sizes()[l + 1]}});
  }
  return {{"layers", layers}, {"activate_output", net.activate_output()}};
}

void WriteDoubles(std::ostream& out, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(data[i]);
    if constexpr (std::endian::native == std::endian::big) {
      bits = __builtin_bswap64(bits);
    }
    char bytes[8];
    std::memcpy(bytes, &bits, 8);
    out.write(bytes, 8);
  }
}

Eigen::VectorXd ReadDoubles(std::istream& in, std::size_t count) {
  Eigen::VectorXd values(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    char bytes[8];
    if (!in.read(bytes, 8)) throw ConfigError("snapshot truncated");
    std::uint64_t bits;
    std::memcpy(&bits, bytes, 8);
    if constexpr (std::endian::native == std::endian::big) {
      bits = __builtin_bswap64(bits);
    }
    values[static_cast<Eigen::Index>(i)] = std::bit_cast<double>(bits);
  }
  return values;
}

}  // namespace

void SaveSnapshot(const std::string& path, const TrainedPolicy& policy,
                  const json& metadata) {
  const ActorCritic& model = policy.model;
  json header;
  header["version"] = kSnapshotVersion;
  header["dtype"] = "float64";
  header["byte_order"] = "little";
  header["mode"] = pamdp::ActionModeName(policy.mode);
  header["obs_dim"] = model.obs_dim();
  header["hidden"] = model.hidden();
  header["layout"] = {{"arg_dims", model.layout().arg_dims()},
                      {"arg_offsets", model.layout().arg_offsets()},
                      {"total_dim", model.layout().TotalDim()}};
  header["networks"] = {{"trunk", Shapes(model.trunk())},
                        {"logits", Shapes(model.logits_head())},
                        {"mean", Shapes(model.mean_head())},
                        {"value", Shapes(model.value_net())}};
  json segments = json::array();
  for (const ParamSegment& seg : model.segments()) {
    segments.push_back({{"name", seg.name}, {"offset", seg.offset},
                        {"size", seg.size}});
  }
  header["segments"] = segments;
  header["arrays"] = json::array(
      {{{"name", "params"}, {"count", model.NumParams()}},
       {{"name", "obs_mean"}, {"count", policy.normalizer.dim()}},
       {{"name", "obs_var"}, {"count", policy.normalizer.dim()}},
       {{"name", "obs_count"}, {"count", 1}}});
  header["metadata"] = metadata;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write snapshot '" + path + "'");
  out << kMagic << ' ' << kSnapshotVersion << '\n'
      << header.dump(2) << '\n'
      << kEndHeader << '\n';
  WriteDoubles(out, model.params().data(), model.params().size());
  WriteDoubles(out, policy.normalizer.mean().data(), policy.normalizer.dim());
  WriteDoubles(out, policy.normalizer.var().data(), policy.normalizer.dim());
  const double count = policy.normalizer.count();
  WriteDoubles(out, &count, 1);
  if (!out) throw ConfigError("failed writing snapshot '" + path + "'");
}

LoadedSnapshot LoadSnapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != std::string(kMagic) + " " + std::to_string(kSnapshotVersion)) {
    throw ConfigError("'" + path + "' is not a version-" +
                      std::to_string(kSnapshotVersion) + " snapshot");
  }
  std::ostringstream text;
  bool terminated = false;
  while (std::getline(in, line)) {
    if (line == kEndHeader) {
      terminated = true;
      break;
    }
    text << line << '\n';
  }
  if (!terminated) throw ConfigError("snapshot header not terminated");

  LoadedSnapshot loaded;
  try {
    loaded.header = json::parse(text.str());
    const json& h = loaded.header;
    const pamdp::HybridActionLayout layout(
        h.at("layout").at("arg_dims").get<std::vector<int>>());
    const int obs_dim = h.at("obs_dim").get<int>();
    loaded.policy.mode = pamdp::ParseActionMode(h.at("mode").get<std::string>());
    loaded.policy.model = ActorCritic(obs_dim, layout, h.at("hidden").get<int>());
    const int params = h.at("arrays").at(0).at("count").get<int>();
    if (params != loaded.policy.model.NumParams()) {
      throw ConfigError("snapshot parameter count does not match its layout");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed snapshot header: ") + e.what());
  }
  TrainedPolicy& policy = loaded.policy;
  policy.model.params() = ReadDoubles(in, policy.model.NumParams());
  Eigen::VectorXd mean = ReadDoubles(in, policy.model.obs_dim());
  Eigen::VectorXd var = ReadDoubles(in, policy.model.obs_dim());
  const double count = ReadDoubles(in, 1)[0];
  policy.normalizer.Set(std::move(mean), std::move(var), count);
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ConfigError("snapshot has trailing bytes");
  }
  return loaded;
}

}  // namespace raps::rl
