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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fabsim/topology.hpp"

namespace fabsim {

// Symbolic payload identity.  Allreduce transfers carry a chunk index;
// alltoall transfers carry the (origin, final destination) pair.
struct PayloadTag {
  NodeId origin = 0;
  NodeId dest = 0;
  std::uint32_t chunk = 0;
};

struct Transfer {
  NodeId src;
  NodeId dst;
  std::uint64_t bytes;
  PayloadTag tag;
};

// One synchronous step: all transfers start together, the step ends when the
// slowest one finishes.
using Step = std::vector<Transfer>;

struct Schedule {
  CollectiveKind collective;
  TopologyFamily family;        // family the schedule expects to run on
  std::uint32_t node_count;
  std::uint64_t message_bytes;  // total per-node payload
  std::vector<Step> steps;

  /// Per-chunk transfer size, ceil(message_bytes / node_count).
  std::uint64_t chunk_bytes() const;
};

// Builders.  message_bytes must be >= 1; sizes not divisible by the node
// count are padded up to the next whole chunk.

/// Reduce-scatter then allgather around the ring: 2(p-1) steps, every node
/// forwarding one chunk per step to its clockwise neighbor.
Schedule build_ring_allreduce(std::uint32_t node_count,
                              std::uint64_t message_bytes);

/// Two direct phases: scatter chunk j to node j, then node j broadcasts the
/// reduced chunk back out.
Schedule build_fc_allreduce(std::uint32_t node_count,
                            std::uint64_t message_bytes);

/// One phase per hop distance and direction (h = 1..(p-1)/2 both ways, plus
/// the lone p/2 phase when p is even), each phase relaying payloads h hops.
/// Total step count equals gamma(p).
Schedule build_ring_alltoall(std::uint32_t node_count,
                             std::uint64_t message_bytes);

/// Single step: every node sends one chunk directly to every peer.
Schedule build_fc_alltoall(std::uint32_t node_count,
                           std::uint64_t message_bytes);

/// Dispatch on (kind, family); throws UnsupportedFamilyError for families
/// without a built-in schedule.
Schedule build_schedule(CollectiveKind kind, TopologyFamily family,
                        std::uint32_t node_count, std::uint64_t message_bytes);

struct SimResult {
  double makespan = 0.0;                     // seconds, sum of step times
  std::vector<double> step_times;            // seconds per step
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> bytes_on_link;
};

/// Execute a schedule on a topology under synchronous store-and-forward
/// semantics.  Step time is the max transfer time in the step plus one
/// hop_latency charge.  Validates that every transfer rides a real link and
/// that no node drives more than its bandwidth budget in any step.
SimResult simulate(const Schedule& schedule, const Topology& topology,
                   double hop_latency);

/// Symbolic execution oracle: true iff every node ends holding every chunk
/// with contributions from all p nodes.
bool verify_allreduce(const Schedule& schedule);

/// Symbolic execution oracle: true iff every node ends holding exactly one
/// payload from each other origin, each addressed to it.
bool verify_alltoall(const Schedule& schedule);

bool verify_schedule(const Schedule& schedule);

/// Line-oriented trace: "step_index,src,dst,bytes,tag".
std::string trace_csv(const Schedule& schedule);

std::string tag_string(CollectiveKind kind, const PayloadTag& tag);

}  // namespace fabsim
