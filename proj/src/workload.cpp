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

#include "fabsim/workload.hpp"

#include <numeric>

#include "fabsim/analytic.hpp"

namespace fabsim {

namespace {

std::uint64_t stack_param_count(const std::vector<std::uint32_t>& widths) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    // weights + biases of the layer mapping widths[i] -> widths[i+1]
    total += std::uint64_t(widths[i]) * widths[i + 1] + widths[i + 1];
  }
  return total;
}

}  // namespace

void DlrmConfig::validate() const {
  if (num_tables == 0 || rows_per_table == 0 || emb_dim == 0 ||
      minibatch == 0 || bytes_per_element == 0 || lookups_per_sample == 0) {
    throw ValidationError("dlrm config fields must be positive");
  }
  if (bottom_mlp.empty() || top_mlp.empty()) {
    throw ValidationError("dlrm mlp layer lists must be non-empty");
  }
  for (const auto& widths : {bottom_mlp, top_mlp}) {
    for (std::uint32_t w : widths) {
      if (w == 0) throw ValidationError("dlrm mlp layer widths must be positive");
    }
  }
}

DeviceEnvelope zion_accelerator_envelope() {
  return DeviceEnvelope{25'000'000'000ull, 1e12, DeviceRole::Accelerator};
}

DeviceEnvelope zion_cpu_envelope() {
  return DeviceEnvelope{250'000'000'000ull, 125e9, DeviceRole::Cpu};
}

std::uint64_t mlp_param_count(const DlrmConfig& c) {
  c.validate();
  return stack_param_count(c.bottom_mlp) + stack_param_count(c.top_mlp);
}

std::uint64_t allreduce_demand(const DlrmConfig& c) {
  return mlp_param_count(c) * c.bytes_per_element;
}

std::uint64_t embedding_table_bytes(const DlrmConfig& c) {
  c.validate();
  return c.rows_per_table * c.emb_dim * c.bytes_per_element;
}

PlacementPlan plan_placement(const DlrmConfig& c, std::uint32_t device_count,
                             const DeviceEnvelope& envelope) {
  c.validate();
  if (device_count == 0) {
    throw ValidationError("placement needs at least one device");
  }
  PlacementPlan plan{device_count,
                     std::vector<std::vector<std::uint32_t>>(device_count),
                     true};
  for (std::uint32_t table = 0; table < c.num_tables; ++table) {
    plan.tables_on_device[table % device_count].push_back(table);
  }

  const std::uint64_t per_table = embedding_table_bytes(c);
  for (std::uint32_t device = 0; device < device_count; ++device) {
    const std::uint64_t required =
        per_table * plan.tables_on_device[device].size();
    if (required > envelope.memory_capacity) {
      throw CapacityExceededError(device, required, envelope.memory_capacity);
    }
  }
  return plan;
}

CommDemand alltoall_demand(const DlrmConfig& c, const PlacementPlan& plan) {
  c.validate();
  const std::uint64_t p = plan.device_count;
  std::uint64_t per_node_max = 0;
  if (p > 1) {
    for (const auto& tables : plan.tables_on_device) {
      // Lookup results for the whole minibatch, minus the shard the node
      // keeps for itself.
      const std::uint64_t full = std::uint64_t(tables.size()) * c.minibatch *
                                 c.emb_dim * c.bytes_per_element *
                                 c.lookups_per_sample;
      per_node_max = std::max(per_node_max, full * (p - 1) / p);
    }
  }
  return CommDemand{allreduce_demand(c), per_node_max, per_node_max};
}

double end_to_end_estimate(const DlrmConfig& c, const PlacementPlan& plan,
                           TopologyFamily family, double node_bandwidth,
                           double hop_latency) {
  if (plan.device_count < 2) return 0.0;
  const CommDemand demand = alltoall_demand(c, plan);
  const CollectiveParams allreduce_params{plan.device_count,
                                          double(demand.allreduce_bytes),
                                          node_bandwidth, hop_latency};
  const CollectiveParams alltoall_params{plan.device_count,
                                         double(demand.alltoall_bytes_per_node),
                                         node_bandwidth, hop_latency};
  const double allreduce_s =
      collective_cost(CollectiveKind::Allreduce, family, allreduce_params)
          .total;
  const double alltoall_s =
      collective_cost(CollectiveKind::Alltoall, family, alltoall_params).total;
  // forward activations + backward gradients
  return allreduce_s + 2.0 * alltoall_s;
}

}  // namespace fabsim
