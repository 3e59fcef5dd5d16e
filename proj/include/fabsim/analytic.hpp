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
#include <string>
#include <vector>

#include "fabsim/types.hpp"

namespace fabsim {

// Inputs of the latency-bandwidth cost model.  message_bytes is the total
// per-node payload; node_bandwidth is the budget each node may drive;
// hop_latency is charged once per synchronous step.
struct CollectiveParams {
  std::uint32_t node_count = 2;
  double message_bytes = 0.0;
  double node_bandwidth = 1.0;
  double hop_latency = 0.0;

  void validate() const;  // throws ValidationError
};

struct CostBreakdown {
  double bandwidth_term;  // seconds spent moving bytes
  double latency_term;    // seconds of accumulated per-step latency
  double total;           // bandwidth_term + latency_term
};

/// Ring allreduce (reduce-scatter + allgather, 2(p-1) steps):
/// 2*(M/B)*(p-1)/p + 2*alpha*(p-1).
CostBreakdown allreduce_ring(const CollectiveParams& c);

/// Direct allreduce over p-1 channels of B/(p-1) (2 steps):
/// 2*(M*(p-1))/(B*p) + 2*alpha.  Bandwidth term matches the ring exactly.
CostBreakdown allreduce_fc(const CollectiveParams& c);

/// Ring alltoall via hop-by-hop store and forward (gamma(p) steps):
/// gamma * (M/(B*p) + alpha).
CostBreakdown alltoall_ring(const CollectiveParams& c);

/// Single-phase direct alltoall: M*(p-1)/(B*p) + alpha.
CostBreakdown alltoall_fc(const CollectiveParams& c);

/// Dispatch on (kind, family); only Ring and FullyConnected have closed
/// forms.  Throws UnsupportedFamilyError otherwise.
CostBreakdown collective_cost(CollectiveKind kind, TopologyFamily family,
                              const CollectiveParams& c);

/// T_ring / T_fc for the given collective.
double ring_over_fc_ratio(CollectiveKind kind, const CollectiveParams& c);

struct RatioGrid {
  CollectiveKind kind;
  std::uint32_t node_count;
  double node_bandwidth;
  std::vector<double> message_sizes;          // bytes, column axis
  std::vector<double> alphas;                 // seconds, row axis
  std::vector<std::vector<double>> ratios;    // [alpha][message]
};

RatioGrid ratio_grid(CollectiveKind kind, std::uint32_t node_count,
                     double node_bandwidth,
                     const std::vector<double>& message_sizes,
                     const std::vector<double>& alphas);

/// CSV: header "alpha_s,<m0>,<m1>,..." then one row per alpha, 6 significant
/// digits throughout.
std::string to_csv(const RatioGrid& grid);

// Default sweep: message sizes 1 KB..1 GB and latencies 10 ns..100 us, both
// 10 points log-spaced, evaluated at 100 GB/s per node.
std::vector<double> default_grid_message_sizes();
std::vector<double> default_grid_alphas();
inline constexpr double kDefaultGridNodeBandwidth = 100e9;

}  // namespace fabsim
