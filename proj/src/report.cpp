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

#include "fabsim/report.hpp"

#include <cstdio>

namespace fabsim {

std::string format_sig6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

Json to_json(const CostBreakdown& cost) {
  return Json{{"bandwidth_s", cost.bandwidth_term},
              {"latency_s", cost.latency_term},
              {"total_s", cost.total}};
}

Json to_json(const RatioGrid& grid) {
  return Json{{"kind", to_string(grid.kind)},
              {"p", grid.node_count},
              {"B", grid.node_bandwidth},
              {"message_sizes", grid.message_sizes},
              {"alphas", grid.alphas},
              {"ratios", grid.ratios}};
}

Json to_json(const SimResult& result) {
  Json link_bytes = Json::object();
  for (const auto& [link, bytes] : result.bytes_on_link) {
    link_bytes[std::to_string(link.first) + "->" +
               std::to_string(link.second)] = bytes;
  }
  return Json{{"makespan_s", result.makespan},
              {"step_times_s", result.step_times},
              {"link_bytes", std::move(link_bytes)}};
}

Json to_json(const CommDemand& demand) {
  return Json{{"allreduce_bytes", demand.allreduce_bytes},
              {"alltoall_bytes_per_node", demand.alltoall_bytes_per_node},
              {"alltoall_bytes_backward", demand.alltoall_bytes_backward}};
}

Json to_json(const SystemPreset& preset) {
  Json j{{"name", preset.name},
         {"local_bw", preset.local_bandwidth},
         {"global_bw", preset.global_bandwidth},
         {"share_count", preset.global_share_count},
         {"flat", preset.flat}};
  if (auto split = local_global_fractions(preset)) {
    j["local_fraction"] = split->local_fraction;
    j["global_fraction"] = split->global_fraction;
  } else {
    j["local_fraction"] = "undifferentiated";
    j["global_fraction"] = "undifferentiated";
  }
  return j;
}

std::string render_report(const Json& scenario_echo, const Json& results) {
  Json report{{"scenario", scenario_echo},
              {"results", results},
              {"version", kVersion}};
  return report.dump(2) + "\n";
}

}  // namespace fabsim
