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

#include "fabsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace fabsim {

namespace {

constexpr std::uint32_t kNoPath = std::numeric_limits<std::uint32_t>::max();

std::uint64_t link_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

// Integer square root of a perfect square, or 0 if not a perfect square.
std::uint32_t perfect_sqrt(std::uint32_t n) {
  auto r = static_cast<std::uint32_t>(std::lround(std::sqrt(double(n))));
  return r * r == n ? r : 0;
}

std::vector<std::uint32_t> bfs_distances(const Topology& t, NodeId source) {
  std::vector<std::uint32_t> dist(t.node_count(), kNoPath);
  dist[source] = 0;
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    NodeId node = queue.front();
    queue.pop_front();
    for (NodeId next : t.neighbors_out(node)) {
      if (dist[next] == kNoPath) {
        dist[next] = dist[node] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

void check_node(const Topology& t, NodeId node) {
  if (node >= t.node_count()) {
    throw ValidationError("node id " + std::to_string(node) +
                          " out of range [0, " +
                          std::to_string(t.node_count()) + ")");
  }
}

}  // namespace

Topology::Topology(TopologyFamily family, std::uint32_t node_count,
                   double node_bandwidth)
    : family_(family), node_count_(node_count), node_bandwidth_(node_bandwidth) {
  if (node_count < 2) {
    throw UnsupportedSizeError("topology needs at least 2 nodes, got " +
                               std::to_string(node_count));
  }
  if (!(node_bandwidth > 0.0)) {
    throw NonPositiveBandwidthError("node bandwidth must be > 0");
  }
  adjacency_.resize(node_count);

  const std::uint32_t p = node_count;
  switch (family) {
    case TopologyFamily::Ring: {
      // Full-budget channels: the ring schedule keeps a single send active
      // per node per step.  p=2 degenerates to one bidirectional pair.
      const double bw = node_bandwidth;
      for (NodeId i = 0; i < p; ++i) {
        add_link(i, (i + 1) % p, bw);
        add_link(i, (i + p - 1) % p, bw);
      }
      break;
    }
    case TopologyFamily::FullyConnected: {
      const double bw = node_bandwidth / double(p - 1);
      for (NodeId i = 0; i < p; ++i) {
        for (NodeId j = 0; j < p; ++j) {
          if (i != j) add_link(i, j, bw);
        }
      }
      break;
    }
    case TopologyFamily::HybridCubeMesh: {
      if (p != 8) {
        throw UnsupportedSizeError("HybridCubeMesh requires exactly 8 nodes");
      }
      // Two fully-meshed quads {0..3} and {4..7} bridged by i <-> i+4.
      // Every node has degree 4.
      const double bw = node_bandwidth / 4.0;
      for (NodeId base : {NodeId{0}, NodeId{4}}) {
        for (NodeId i = 0; i < 4; ++i) {
          for (NodeId j = 0; j < 4; ++j) {
            if (i != j) add_link(base + i, base + j, bw);
          }
        }
      }
      for (NodeId i = 0; i < 4; ++i) {
        add_link(i, i + 4, bw);
        add_link(i + 4, i, bw);
      }
      break;
    }
    case TopologyFamily::Torus2D: {
      const std::uint32_t k = perfect_sqrt(p);
      if (k < 3) {
        throw UnsupportedSizeError(
            "Torus2D requires a perfect-square node count >= 9");
      }
      const double bw = node_bandwidth / 4.0;
      auto id = [k](std::uint32_t row, std::uint32_t col) {
        return row * k + col;
      };
      for (std::uint32_t r = 0; r < k; ++r) {
        for (std::uint32_t c = 0; c < k; ++c) {
          add_link(id(r, c), id((r + 1) % k, c), bw);
          add_link(id(r, c), id((r + k - 1) % k, c), bw);
          add_link(id(r, c), id(r, (c + 1) % k), bw);
          add_link(id(r, c), id(r, (c + k - 1) % k), bw);
        }
      }
      break;
    }
  }

  std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });
  for (auto& neighbors : adjacency_) {
    std::sort(neighbors.begin(), neighbors.end());
  }
}

void Topology::add_link(NodeId src, NodeId dst, double bandwidth) {
  if (src == dst) return;
  auto [it, inserted] = link_bw_.emplace(link_key(src, dst), bandwidth);
  if (!inserted) return;  // already present (ring with p=2)
  links_.push_back(Link{src, dst, bandwidth});
  adjacency_[src].push_back(dst);
}

bool Topology::has_link(NodeId src, NodeId dst) const {
  return link_bw_.count(link_key(src, dst)) != 0;
}

std::optional<double> Topology::link_bandwidth(NodeId src, NodeId dst) const {
  auto it = link_bw_.find(link_key(src, dst));
  if (it == link_bw_.end()) return std::nullopt;
  return it->second;
}

const std::vector<NodeId>& Topology::neighbors_out(NodeId node) const {
  check_node(*this, node);
  return adjacency_[node];
}

Topology build_topology(TopologyFamily family, std::uint32_t node_count,
                        double node_bandwidth) {
  return Topology(family, node_count, node_bandwidth);
}

std::uint32_t hop_count(const Topology& t, NodeId src, NodeId dst) {
  check_node(t, src);
  check_node(t, dst);
  if (src == dst) return 0;
  return bfs_distances(t, src)[dst];
}

std::uint32_t diameter(const Topology& t) {
  std::uint32_t worst = 0;
  for (NodeId a = 0; a < t.node_count(); ++a) {
    auto dist = bfs_distances(t, a);
    for (NodeId b = 0; b < t.node_count(); ++b) {
      if (a != b) worst = std::max(worst, dist[b]);
    }
  }
  return worst;
}

double average_hops(const Topology& t) {
  const std::uint64_t p = t.node_count();
  std::uint64_t total = 0;
  for (NodeId a = 0; a < t.node_count(); ++a) {
    auto dist = bfs_distances(t, a);
    for (NodeId b = 0; b < t.node_count(); ++b) {
      if (a != b) total += dist[b];
    }
  }
  return double(total) / double(p * (p - 1));
}

double bisection_bandwidth(const Topology& t) {
  const std::uint32_t p = t.node_count();
  if (p % 2 != 0) {
    throw OddNodeCountError("bisection needs an even node count, got " +
                            std::to_string(p));
  }
  const std::uint32_t half = p / 2;
  double total = 0.0;
  for (const Link& link : t.links()) {
    if ((link.src < half) != (link.dst < half)) total += link.bandwidth;
  }
  return total;
}

std::uint64_t ring_alltoall_hop_sum(std::uint32_t node_count) {
  if (node_count < 2) {
    throw ValidationError("hop sum needs at least 2 nodes");
  }
  const std::uint64_t q = (node_count - 1) / 2;
  const std::uint64_t r = (node_count - 1) % 2;
  return q * (q + 1) + r * (node_count / 2);
}

void SystemPreset::validate() const {
  if (!(local_bandwidth > 0.0) || !(global_bandwidth > 0.0)) {
    throw NonPositiveBandwidthError("preset '" + name +
                                    "' bandwidths must be > 0");
  }
  if (global_share_count == 0) {
    throw ValidationError("preset '" + name + "' share count must be >= 1");
  }
}

std::optional<LocalGlobalSplit> local_global_fractions(const SystemPreset& s) {
  s.validate();
  if (s.flat) return std::nullopt;
  const double local_total = s.local_bandwidth * double(s.global_share_count);
  const double denom = local_total + s.global_bandwidth;
  return LocalGlobalSplit{local_total / denom, s.global_bandwidth / denom};
}

const std::vector<SystemPreset>& builtin_presets() {
  // DGX-1: 300 GB/s NVLink per GPU, 4x100 Gb/s Infiniband shared by 8 GPUs.
  // DGX-Pod: 4 such boxes; 4x the scale-out NICs shared by 4x the GPUs.
  // Zion: OAM fabric per accelerator, 8 CPU NICs at 100 GbE for scale-out.
  // HLS-1: 10x100 Gb/s RoCE per Gaudi, split 7 in-box / 3 scale-out.
  // TPU: single flat torus fabric, no local/global distinction.
  static const std::vector<SystemPreset> presets = {
      {"DGX-1", 300e9, 50e9, 8, false},
      {"DGX-Pod", 300e9, 200e9, 32, false},
      {"Zion", 300e9, 100e9, 8, false},
      {"HLS-1", 87.5e9, 300e9, 8, false},
      {"TPU", 280e9, 280e9, 1, true},
  };
  return presets;
}

}  // namespace fabsim
