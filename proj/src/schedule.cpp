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

#include "fabsim/schedule.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace fabsim {

namespace {

void check_build_args(std::uint32_t node_count, std::uint64_t message_bytes) {
  if (node_count < 2) {
    throw ValidationError("schedule needs at least 2 nodes, got " +
                          std::to_string(node_count));
  }
  if (message_bytes == 0) {
    throw ValidationError("schedule needs a non-empty payload");
  }
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

// Fixed-size contributor set, one bit per node.
class NodeSet {
 public:
  explicit NodeSet(std::uint32_t node_count)
      : words_((node_count + 63) / 64, 0) {}

  void add(NodeId node) { words_[node >> 6] |= std::uint64_t{1} << (node & 63); }

  void merge(const NodeSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }

  bool full(std::uint32_t node_count) const {
    for (std::uint32_t n = 0; n < node_count; ++n) {
      if ((words_[n >> 6] & (std::uint64_t{1} << (n & 63))) == 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

std::uint64_t Schedule::chunk_bytes() const {
  return ceil_div(message_bytes, node_count);
}

Schedule build_ring_allreduce(std::uint32_t node_count,
                              std::uint64_t message_bytes) {
  check_build_args(node_count, message_bytes);
  const std::uint32_t p = node_count;
  Schedule schedule{CollectiveKind::Allreduce, TopologyFamily::Ring, p,
                    message_bytes, {}};
  const std::uint64_t chunk = schedule.chunk_bytes();

  // Reduce-scatter: in step s node i forwards chunk (i - s) mod p clockwise,
  // so chunk c accumulates one contribution per step and ends complete at
  // node (c + p - 1) mod p.
  for (std::uint32_t s = 0; s + 1 < p; ++s) {
    Step step;
    step.reserve(p);
    for (NodeId i = 0; i < p; ++i) {
      const std::uint32_t c = (i + p - s % p) % p;
      step.push_back(Transfer{i, (i + 1) % p, chunk, PayloadTag{i, 0, c}});
    }
    schedule.steps.push_back(std::move(step));
  }
  // Allgather: node i starts by passing on its complete chunk (i + 1) mod p
  // and keeps relaying what it received the step before.
  for (std::uint32_t s = 0; s + 1 < p; ++s) {
    Step step;
    step.reserve(p);
    for (NodeId i = 0; i < p; ++i) {
      const std::uint32_t c = (i + 1 + p - s % p) % p;
      step.push_back(Transfer{i, (i + 1) % p, chunk, PayloadTag{i, 0, c}});
    }
    schedule.steps.push_back(std::move(step));
  }
  return schedule;
}

Schedule build_fc_allreduce(std::uint32_t node_count,
                            std::uint64_t message_bytes) {
  check_build_args(node_count, message_bytes);
  const std::uint32_t p = node_count;
  Schedule schedule{CollectiveKind::Allreduce, TopologyFamily::FullyConnected,
                    p, message_bytes, {}};
  const std::uint64_t chunk = schedule.chunk_bytes();

  // Direct reduce-scatter: node i hands its piece of chunk j straight to j.
  Step scatter;
  scatter.reserve(std::size_t(p) * (p - 1));
  for (NodeId i = 0; i < p; ++i) {
    for (NodeId j = 0; j < p; ++j) {
      if (i != j) scatter.push_back(Transfer{i, j, chunk, PayloadTag{i, j, j}});
    }
  }
  schedule.steps.push_back(std::move(scatter));

  // Direct allgather: node j broadcasts the reduced chunk j.
  Step gather;
  gather.reserve(std::size_t(p) * (p - 1));
  for (NodeId j = 0; j < p; ++j) {
    for (NodeId i = 0; i < p; ++i) {
      if (i != j) gather.push_back(Transfer{j, i, chunk, PayloadTag{j, i, j}});
    }
  }
  schedule.steps.push_back(std::move(gather));
  return schedule;
}

Schedule build_ring_alltoall(std::uint32_t node_count,
                             std::uint64_t message_bytes) {
  check_build_args(node_count, message_bytes);
  const std::uint32_t p = node_count;
  Schedule schedule{CollectiveKind::Alltoall, TopologyFamily::Ring, p,
                    message_bytes, {}};
  const std::uint64_t chunk = schedule.chunk_bytes();

  // One phase per (distance, direction).  Step k of a distance-h phase moves
  // every in-flight payload one hop; the payload from `origin` sits at
  // origin + dir*(k-1) and every node sends exactly once per step.
  auto emit_phase = [&](std::uint32_t h, bool clockwise) {
    for (std::uint32_t k = 1; k <= h; ++k) {
      Step step;
      step.reserve(p);
      for (NodeId origin = 0; origin < p; ++origin) {
        NodeId from, to, dest;
        if (clockwise) {
          from = (origin + k - 1) % p;
          to = (origin + k) % p;
          dest = (origin + h) % p;
        } else {
          from = (origin + p - ((k - 1) % p)) % p;
          to = (origin + p - (k % p)) % p;
          dest = (origin + p - (h % p)) % p;
        }
        step.push_back(Transfer{from, to, chunk, PayloadTag{origin, dest, 0}});
      }
      schedule.steps.push_back(std::move(step));
    }
  };

  const std::uint32_t q = (p - 1) / 2;
  for (std::uint32_t h = 1; h <= q; ++h) {
    emit_phase(h, true);
    emit_phase(h, false);
  }
  if ((p - 1) % 2 == 1) emit_phase(p / 2, true);
  return schedule;
}

Schedule build_fc_alltoall(std::uint32_t node_count,
                           std::uint64_t message_bytes) {
  check_build_args(node_count, message_bytes);
  const std::uint32_t p = node_count;
  Schedule schedule{CollectiveKind::Alltoall, TopologyFamily::FullyConnected,
                    p, message_bytes, {}};
  const std::uint64_t chunk = schedule.chunk_bytes();

  Step step;
  step.reserve(std::size_t(p) * (p - 1));
  for (NodeId i = 0; i < p; ++i) {
    for (NodeId j = 0; j < p; ++j) {
      if (i != j) step.push_back(Transfer{i, j, chunk, PayloadTag{i, j, 0}});
    }
  }
  schedule.steps.push_back(std::move(step));
  return schedule;
}

Schedule build_schedule(CollectiveKind kind, TopologyFamily family,
                        std::uint32_t node_count, std::uint64_t message_bytes) {
  switch (family) {
    case TopologyFamily::Ring:
      return kind == CollectiveKind::Allreduce
                 ? build_ring_allreduce(node_count, message_bytes)
                 : build_ring_alltoall(node_count, message_bytes);
    case TopologyFamily::FullyConnected:
      return kind == CollectiveKind::Allreduce
                 ? build_fc_allreduce(node_count, message_bytes)
                 : build_fc_alltoall(node_count, message_bytes);
    default:
      throw UnsupportedFamilyError("no built-in schedule for " +
                                   to_string(family) +
                                   "; supply an explicit schedule instead");
  }
}

SimResult simulate(const Schedule& schedule, const Topology& topology,
                   double hop_latency) {
  if (!(hop_latency >= 0.0)) {
    throw ValidationError("hop latency must be >= 0");
  }
  if (schedule.family != topology.family()) {
    throw ValidationError("schedule built for " + to_string(schedule.family) +
                          " cannot run on " + to_string(topology.family()));
  }
  if (schedule.node_count != topology.node_count()) {
    throw ValidationError("schedule node count " +
                          std::to_string(schedule.node_count) +
                          " != topology node count " +
                          std::to_string(topology.node_count()));
  }

  const std::uint32_t p = topology.node_count();
  const double budget = topology.node_bandwidth() * (1.0 + 1e-9);
  SimResult result;
  result.step_times.reserve(schedule.steps.size());
  std::vector<double> outgoing(p);
  std::vector<std::uint32_t> sends(p);

  for (std::size_t step_index = 0; step_index < schedule.steps.size();
       ++step_index) {
    const Step& step = schedule.steps[step_index];
    std::fill(outgoing.begin(), outgoing.end(), 0.0);
    std::fill(sends.begin(), sends.end(), 0u);

    double slowest = 0.0;
    for (const Transfer& tr : step) {
      if (tr.bytes == 0) {
        throw ValidationError("zero-byte transfer in step " +
                              std::to_string(step_index));
      }
      const auto bandwidth = topology.link_bandwidth(tr.src, tr.dst);
      if (!bandwidth) {
        throw LinkNotInTopologyError(
            "step " + std::to_string(step_index) + ": no link " +
            std::to_string(tr.src) + "->" + std::to_string(tr.dst));
      }
      slowest = std::max(slowest, double(tr.bytes) / *bandwidth);
      outgoing[tr.src] += *bandwidth;
      ++sends[tr.src];
      result.bytes_on_link[{tr.src, tr.dst}] += tr.bytes;
    }

    for (NodeId n = 0; n < p; ++n) {
      if (topology.family() == TopologyFamily::Ring && sends[n] > 1) {
        throw NodeSendConflictError("step " + std::to_string(step_index) +
                                    ": node " + std::to_string(n) +
                                    " has " + std::to_string(sends[n]) +
                                    " concurrent sends on a ring");
      }
      if (outgoing[n] > budget) {
        throw NodeSendConflictError("step " + std::to_string(step_index) +
                                    ": node " + std::to_string(n) +
                                    " exceeds its bandwidth budget");
      }
    }

    const double step_time = step.empty() ? 0.0 : slowest + hop_latency;
    result.step_times.push_back(step_time);
    result.makespan += step_time;
  }
  return result;
}

bool verify_allreduce(const Schedule& schedule) {
  if (schedule.collective != CollectiveKind::Allreduce) return false;
  const std::uint32_t p = schedule.node_count;

  // holds[node][chunk] = set of nodes whose contribution has been folded in.
  std::vector<std::vector<NodeSet>> holds(
      p, std::vector<NodeSet>(p, NodeSet(p)));
  for (NodeId n = 0; n < p; ++n) {
    for (std::uint32_t c = 0; c < p; ++c) holds[n][c].add(n);
  }

  for (const Step& step : schedule.steps) {
    // All sends in a step read the pre-step state.
    const auto snapshot = holds;
    for (const Transfer& tr : step) {
      if (tr.src >= p || tr.dst >= p || tr.tag.chunk >= p) return false;
      holds[tr.dst][tr.tag.chunk].merge(snapshot[tr.src][tr.tag.chunk]);
    }
  }

  for (NodeId n = 0; n < p; ++n) {
    for (std::uint32_t c = 0; c < p; ++c) {
      if (!holds[n][c].full(p)) return false;
    }
  }
  return true;
}

bool verify_alltoall(const Schedule& schedule) {
  if (schedule.collective != CollectiveKind::Alltoall) return false;
  const std::uint32_t p = schedule.node_count;
  auto key = [p](NodeId origin, NodeId dest) {
    return std::uint64_t(origin) * p + dest;
  };

  // Payloads move node to node; a node may only forward what it holds.
  std::vector<std::set<std::uint64_t>> held(p);
  for (NodeId origin = 0; origin < p; ++origin) {
    for (NodeId dest = 0; dest < p; ++dest) {
      if (origin != dest) held[origin].insert(key(origin, dest));
    }
  }

  for (const Step& step : schedule.steps) {
    std::set<std::pair<NodeId, std::uint64_t>> outgoing;
    std::vector<std::pair<NodeId, std::uint64_t>> incoming;
    for (const Transfer& tr : step) {
      if (tr.src >= p || tr.dst >= p || tr.tag.origin >= p ||
          tr.tag.dest >= p) {
        return false;
      }
      const std::uint64_t k = key(tr.tag.origin, tr.tag.dest);
      if (held[tr.src].count(k) == 0) return false;        // not at src yet
      if (!outgoing.insert({tr.src, k}).second) return false;  // duplicated
      incoming.emplace_back(tr.dst, k);
    }
    for (const auto& [src, k] : outgoing) held[src].erase(k);
    for (const auto& [dst, k] : incoming) held[dst].insert(k);
  }

  for (NodeId n = 0; n < p; ++n) {
    if (held[n].size() != p - 1) return false;
    for (NodeId origin = 0; origin < p; ++origin) {
      if (origin != n && held[n].count(key(origin, n)) == 0) return false;
    }
  }
  return true;
}

bool verify_schedule(const Schedule& schedule) {
  return schedule.collective == CollectiveKind::Allreduce
             ? verify_allreduce(schedule)
             : verify_alltoall(schedule);
}

std::string tag_string(CollectiveKind kind, const PayloadTag& tag) {
  if (kind == CollectiveKind::Allreduce) {
    return "c" + std::to_string(tag.chunk);
  }
  return "o" + std::to_string(tag.origin) + "d" + std::to_string(tag.dest);
}

std::string trace_csv(const Schedule& schedule) {
  std::string out = "step_index,src,dst,bytes,tag\n";
  for (std::size_t step_index = 0; step_index < schedule.steps.size();
       ++step_index) {
    for (const Transfer& tr : schedule.steps[step_index]) {
      out += std::to_string(step_index);
      out += ',';
      out += std::to_string(tr.src);
      out += ',';
      out += std::to_string(tr.dst);
      out += ',';
      out += std::to_string(tr.bytes);
      out += ',';
      out += tag_string(schedule.collective, tr.tag);
      out += '\n';
    }
  }
  return out;
}

}  // namespace fabsim
