/*
 * Copyright (c) 2026, fabsim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fabsim/config.hpp"

#include <fstream>

namespace fabsim {

namespace {

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing config field '") + key + "'");
  }
  return *it;
}

double number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) {
    throw ParseError(std::string("config field '") + key +
                     "' must be a number");
  }
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::uint64_t unsigned_integer(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return std::uint64_t(v.get<std::int64_t>());
  }
  throw ParseError(std::string("config field '") + key +
                   "' must be a non-negative integer");
}

std::string text(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) {
    throw ParseError(std::string("config field '") + key +
                     "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<std::uint32_t> width_list(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) {
    throw ParseError(std::string("config field '") + key +
                     "' must be an array");
  }
  std::vector<std::uint32_t> widths;
  for (const Json& e : v) {
    if (!e.is_number_integer() && !e.is_number_unsigned()) {
      throw ParseError(std::string("config field '") + key +
                       "' must contain integers");
    }
    widths.push_back(e.get<std::uint32_t>());
  }
  return widths;
}

std::vector<double> number_list(const Json& j, const char* key) {
  std::vector<double> values;
  if (!j.contains(key)) return values;
  const Json& v = j.at(key);
  if (!v.is_array()) {
    throw ParseError(std::string("config field '") + key +
                     "' must be an array");
  }
  for (const Json& e : v) {
    if (!e.is_number()) {
      throw ParseError(std::string("config field '") + key +
                       "' must contain numbers");
    }
    values.push_back(e.get<double>());
  }
  return values;
}

}  // namespace

TopologySpec parse_topology_spec(const Json& j) {
  TopologySpec spec{};
  spec.family = topology_family_from_string(text(j, "family"));
  spec.node_count = std::uint32_t(unsigned_integer(j, "p"));
  spec.node_bandwidth = number(j, "node_bandwidth");
  return spec;
}

SystemPreset parse_system_preset(const Json& j) {
  SystemPreset preset{};
  preset.name = text(j, "name");
  preset.local_bandwidth = number(j, "local_bw");
  preset.global_bandwidth = number(j, "global_bw");
  preset.global_share_count = std::uint32_t(unsigned_integer(j, "share_count"));
  const Json& flat = require(j, "flat");
  if (!flat.is_boolean()) {
    throw ParseError("config field 'flat' must be a boolean");
  }
  preset.flat = flat.get<bool>();
  return preset;
}

DlrmConfig parse_dlrm_config(const Json& j) {
  DlrmConfig c{};
  c.num_tables = std::uint32_t(unsigned_integer(j, "num_tables"));
  c.rows_per_table = unsigned_integer(j, "rows_per_table");
  c.emb_dim = std::uint32_t(unsigned_integer(j, "emb_dim"));
  c.bottom_mlp = width_list(j, "bottom_mlp");
  c.top_mlp = width_list(j, "top_mlp");
  c.minibatch = std::uint32_t(unsigned_integer(j, "minibatch"));
  c.bytes_per_element = std::uint32_t(unsigned_integer(j, "bytes_per_element"));
  c.lookups_per_sample =
      j.contains("lookups_per_sample")
          ? std::uint32_t(unsigned_integer(j, "lookups_per_sample"))
          : 1;
  return c;
}

DeviceEnvelope parse_device_envelope(const Json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "zion_accelerator") return zion_accelerator_envelope();
    if (name == "zion_cpu") return zion_cpu_envelope();
    throw ParseError("unknown envelope preset: " + name);
  }
  DeviceEnvelope envelope{};
  envelope.memory_capacity = unsigned_integer(j, "memory_capacity");
  envelope.memory_bandwidth = number(j, "memory_bandwidth");
  const auto role = text(j, "role");
  if (role == "CPU") {
    envelope.role = DeviceRole::Cpu;
  } else if (role == "Accelerator") {
    envelope.role = DeviceRole::Accelerator;
  } else {
    throw ParseError("unknown device role: " + role);
  }
  return envelope;
}

TransportProfile parse_transport_profile(const Json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "gdr") return TransportProfile::gdr();
    if (name == "non_gdr") return TransportProfile::non_gdr();
    throw ParseError("unknown transport preset: " + name);
  }
  TransportProfile profile{};
  profile.name = text(j, "name");
  profile.bandwidth_factor = number(j, "bandwidth_factor");
  profile.copy_latency = number(j, "copy_latency_s");
  profile.copy_bandwidth = number_or(j, "copy_bandwidth", 0.0);
  return profile;
}

Scenario parse_scenario(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("scenario document must be a JSON object");
  }
  Scenario scenario;
  scenario.echo = j;

  if (j.contains("topology")) {
    scenario.topology = parse_topology_spec(j.at("topology"));
  }
  if (j.contains("collective")) {
    scenario.collective =
        collective_kind_from_string(text(j, "collective"));
  }
  if (j.contains("params")) {
    const Json& p = j.at("params");
    PointParams params;
    if (p.contains("message_bytes")) {
      params.message_bytes = number(p, "message_bytes");
    }
    params.alpha_s = number_or(p, "alpha_s", 0.0);
    scenario.params = params;
  }
  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    SweepSpec sweep;
    sweep.message_sizes = number_list(s, "message_sizes");
    sweep.alphas = number_list(s, "alphas");
    if (s.contains("default")) {
      const Json& d = s.at("default");
      if (!d.is_boolean()) {
        throw ParseError("config field 'default' must be a boolean");
      }
      sweep.use_default = d.get<bool>();
    }
    scenario.sweep = sweep;
  }
  if (j.contains("dlrm")) {
    scenario.dlrm = parse_dlrm_config(j.at("dlrm"));
  }
  if (j.contains("envelope")) {
    scenario.envelope = parse_device_envelope(j.at("envelope"));
  }
  if (j.contains("transport")) {
    scenario.transport = parse_transport_profile(j.at("transport"));
  }
  if (j.contains("presets")) {
    const Json& list = j.at("presets");
    if (!list.is_array()) {
      throw ParseError("config field 'presets' must be an array");
    }
    for (const Json& entry : list) {
      scenario.presets.push_back(parse_system_preset(entry));
    }
  }
  if (j.contains("format")) {
    scenario.format = text(j, "format");
    if (scenario.format != "csv" && scenario.format != "json") {
      throw ParseError("format must be 'csv' or 'json'");
    }
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file: " + path.string());
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config parse error in " + path.string() + ": " +
                     e.what());
  }
  return parse_scenario(doc);
}

}  // namespace fabsim
