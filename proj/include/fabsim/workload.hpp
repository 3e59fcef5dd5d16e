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

#include <cstdint>
#include <vector>

#include "fabsim/types.hpp"

namespace fabsim {

// Recommendation-model shape: replicated dense MLPs plus embedding tables
// that are partitioned across devices (a table is never split or replicated).
struct DlrmConfig {
  std::uint32_t num_tables = 1;
  std::uint64_t rows_per_table = 1;
  std::uint32_t emb_dim = 1;
  std::vector<std::uint32_t> bottom_mlp;
  std::vector<std::uint32_t> top_mlp;
  std::uint32_t minibatch = 1;
  std::uint32_t bytes_per_element = 4;
  std::uint32_t lookups_per_sample = 1;

  void validate() const;  // throws ValidationError
};

enum class DeviceRole { Cpu, Accelerator };

// Per-device memory envelope.
struct DeviceEnvelope {
  std::uint64_t memory_capacity;  // bytes
  double memory_bandwidth;        // bytes/s
  DeviceRole role;
};

/// ~0.2 TB HBM / ~8 TB/s aggregate across 8 accelerators.
DeviceEnvelope zion_accelerator_envelope();

/// ~2 TB DDR / ~1 TB/s aggregate across 8 CPU sockets.
DeviceEnvelope zion_cpu_envelope();

struct PlacementPlan {
  std::uint32_t device_count = 1;
  std::vector<std::vector<std::uint32_t>> tables_on_device;
  bool mlp_replicated = true;
};

// Per-iteration collective payloads derived from the model shape.
struct CommDemand {
  std::uint64_t allreduce_bytes;           // replicated-MLP gradient sync
  std::uint64_t alltoall_bytes_per_node;   // forward lookup exchange, max node
  std::uint64_t alltoall_bytes_backward;   // gradient exchange, same volume
};

/// Weights + biases over consecutive layer pairs of both MLP stacks.
std::uint64_t mlp_param_count(const DlrmConfig& c);

/// mlp_param_count * bytes_per_element; independent of device count and
/// placement.
std::uint64_t allreduce_demand(const DlrmConfig& c);

/// Storage footprint of one embedding table.
std::uint64_t embedding_table_bytes(const DlrmConfig& c);

/// Round-robin tables over devices; throws CapacityExceededError if any
/// device's assigned tables outgrow the envelope.
PlacementPlan plan_placement(const DlrmConfig& c, std::uint32_t device_count,
                             const DeviceEnvelope& envelope);

/// Lookup-exchange volumes.  Each destination owns minibatch/p samples and a
/// node keeps its own shard, hence the (p-1)/p factor on the per-node total.
CommDemand alltoall_demand(const DlrmConfig& c, const PlacementPlan& plan);

/// Per-iteration communication seconds on the chosen family: one gradient
/// allreduce plus forward and backward alltoall exchanges.  Zero when the
/// plan has a single device.
double end_to_end_estimate(const DlrmConfig& c, const PlacementPlan& plan,
                           TopologyFamily family, double node_bandwidth,
                           double hop_latency);

}  // namespace fabsim
