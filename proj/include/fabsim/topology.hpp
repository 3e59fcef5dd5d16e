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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fabsim/types.hpp"

namespace fabsim {

// Directed link with a fixed capacity in bytes/second.
struct Link {
  NodeId src;
  NodeId dst;
  double bandwidth;
};

/// Immutable accelerator-fabric graph.  Every family spends the same per-node
/// bandwidth budget B; what differs is how it is carved into channels:
///   Ring            - 2 neighbors, full-B channels (one active send at a time)
///   FullyConnected  - p-1 channels of B/(p-1)
///   HybridCubeMesh  - p=8 only: two fully-meshed quads bridged by 4 links,
///                     degree 4, channels of B/4
///   Torus2D         - k x k wraparound grid (p = k^2, k >= 3), channels of B/4
class Topology {
 public:
  Topology(TopologyFamily family, std::uint32_t node_count,
           double node_bandwidth);

  TopologyFamily family() const { return family_; }
  std::uint32_t node_count() const { return node_count_; }
  double node_bandwidth() const { return node_bandwidth_; }

  /// All directed links, sorted by (src, dst).
  const std::vector<Link>& links() const { return links_; }

  bool has_link(NodeId src, NodeId dst) const;
  std::optional<double> link_bandwidth(NodeId src, NodeId dst) const;
  const std::vector<NodeId>& neighbors_out(NodeId node) const;

 private:
  void add_link(NodeId src, NodeId dst, double bandwidth);

  TopologyFamily family_;
  std::uint32_t node_count_;
  double node_bandwidth_;
  std::vector<Link> links_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::unordered_map<std::uint64_t, double> link_bw_;
};

Topology build_topology(TopologyFamily family, std::uint32_t node_count,
                        double node_bandwidth);

/// Shortest directed path length; 0 iff src == dst.
std::uint32_t hop_count(const Topology& t, NodeId src, NodeId dst);

std::uint32_t diameter(const Topology& t);

/// Mean hop count over all ordered pairs (a, b), a != b.
double average_hops(const Topology& t);

/// Total link bandwidth crossing the canonical equal bipartition
/// [0, p/2) vs [p/2, p).  Rings and tori use the contiguous (axis-aligned)
/// cut; for a fully-connected graph every equal split is equivalent.
/// Throws OddNodeCountError when p is odd.
double bisection_bandwidth(const Topology& t);

/// Hop-step count of the ring alltoall exchange:
/// 2*sum(h for h in 1..q) + r*p/2, with q = (p-1)/2 and r = (p-1)%2.
std::uint64_t ring_alltoall_hop_sum(std::uint32_t node_count);

/// Shorter alias used throughout the cost models.
inline std::uint64_t gamma(std::uint32_t node_count) {
  return ring_alltoall_hop_sum(node_count);
}

// Named scale-out system: per-node capacity for talking to in-box neighbors
// plus an aggregate scale-out capacity shared by `global_share_count` nodes.
// `flat` marks single-level fabrics that make no local/global distinction.
struct SystemPreset {
  std::string name;
  double local_bandwidth;   // bytes/s per node
  double global_bandwidth;  // bytes/s aggregate
  std::uint32_t global_share_count;
  bool flat;

  void validate() const;
};

struct LocalGlobalSplit {
  double local_fraction;
  double global_fraction;
};

/// Fractions of a node group's total bandwidth devoted to in-box vs scale-out
/// links.  Returns nullopt for flat fabrics (undifferentiated).
std::optional<LocalGlobalSplit> local_global_fractions(const SystemPreset& s);

/// Built-in presets: DGX-1, DGX-Pod, Zion, HLS-1, TPU.
const std::vector<SystemPreset>& builtin_presets();

}  // namespace fabsim
