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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fabsim/topology.hpp"
#include "fabsim/transport.hpp"
#include "fabsim/workload.hpp"

namespace fabsim {

using Json = nlohmann::ordered_json;

struct TopologySpec {
  TopologyFamily family;
  std::uint32_t node_count;
  double node_bandwidth;
};

struct PointParams {
  std::optional<double> message_bytes;
  double alpha_s = 0.0;
};

struct SweepSpec {
  std::vector<double> message_sizes;
  std::vector<double> alphas;
  bool use_default = false;
};

// One run description, the union of the per-module config schemas.
struct Scenario {
  std::optional<TopologySpec> topology;
  std::optional<CollectiveKind> collective;
  std::optional<PointParams> params;
  std::optional<SweepSpec> sweep;
  std::optional<DlrmConfig> dlrm;
  std::optional<DeviceEnvelope> envelope;
  std::optional<TransportProfile> transport;
  std::vector<SystemPreset> presets;  // empty -> built-in set
  std::string format = "json";
  Json echo;  // the document as parsed, for self-describing reports
};

// Field-level parsers.  All throw ParseError on missing/ill-typed fields and
// defer domain checks (positivity etc.) to the types' validate().
TopologySpec parse_topology_spec(const Json& j);
SystemPreset parse_system_preset(const Json& j);
DlrmConfig parse_dlrm_config(const Json& j);
DeviceEnvelope parse_device_envelope(const Json& j);
TransportProfile parse_transport_profile(const Json& j);

Scenario parse_scenario(const Json& j);

/// Reads and parses a scenario document; throws ParseError on I/O or JSON
/// syntax problems.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace fabsim
