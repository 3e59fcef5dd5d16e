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

#include "fabsim/analytic.hpp"

#include <cmath>
#include <cstdio>

#include "fabsim/topology.hpp"

namespace fabsim {

namespace {

CostBreakdown make_breakdown(double bandwidth_term, double latency_term) {
  return CostBreakdown{bandwidth_term, latency_term,
                       bandwidth_term + latency_term};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> values(count);
  const double lo_exp = std::log10(lo);
  const double hi_exp = std::log10(hi);
  for (int i = 0; i < count; ++i) {
    values[i] = std::pow(10.0, lo_exp + i * (hi_exp - lo_exp) / (count - 1));
  }
  return values;
}

void append_sig6(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  out += buf;
}

}  // namespace

void CollectiveParams::validate() const {
  if (node_count < 2) {
    throw ValidationError("collective needs at least 2 nodes, got " +
                          std::to_string(node_count));
  }
  if (!(message_bytes >= 0.0)) {
    throw ValidationError("message size must be >= 0");
  }
  if (!(node_bandwidth > 0.0)) {
    throw NonPositiveBandwidthError("node bandwidth must be > 0");
  }
  if (!(hop_latency >= 0.0)) {
    throw ValidationError("hop latency must be >= 0");
  }
}

CostBreakdown allreduce_ring(const CollectiveParams& c) {
  c.validate();
  const double p = c.node_count;
  const double bandwidth =
      2.0 * (c.message_bytes / c.node_bandwidth) * ((p - 1.0) / p);
  const double latency = 2.0 * c.hop_latency * (p - 1.0);
  return make_breakdown(bandwidth, latency);
}

CostBreakdown allreduce_fc(const CollectiveParams& c) {
  c.validate();
  const double p = c.node_count;
  const double channel = c.node_bandwidth / (p - 1.0);
  const double bandwidth = 2.0 * (c.message_bytes / channel) * (1.0 / p);
  const double latency = 2.0 * c.hop_latency;
  return make_breakdown(bandwidth, latency);
}

CostBreakdown alltoall_ring(const CollectiveParams& c) {
  c.validate();
  const double p = c.node_count;
  const double steps = double(gamma(c.node_count));
  const double bandwidth = steps * c.message_bytes / (c.node_bandwidth * p);
  const double latency = steps * c.hop_latency;
  return make_breakdown(bandwidth, latency);
}

CostBreakdown alltoall_fc(const CollectiveParams& c) {
  c.validate();
  const double p = c.node_count;
  const double bandwidth =
      (c.message_bytes / c.node_bandwidth) * ((p - 1.0) / p);
  return make_breakdown(bandwidth, c.hop_latency);
}

CostBreakdown collective_cost(CollectiveKind kind, TopologyFamily family,
                              const CollectiveParams& c) {
  switch (family) {
    case TopologyFamily::Ring:
      return kind == CollectiveKind::Allreduce ? allreduce_ring(c)
                                               : alltoall_ring(c);
    case TopologyFamily::FullyConnected:
      return kind == CollectiveKind::Allreduce ? allreduce_fc(c)
                                               : alltoall_fc(c);
    default:
      throw UnsupportedFamilyError("no closed-form cost model for " +
                                   to_string(family));
  }
}

double ring_over_fc_ratio(CollectiveKind kind, const CollectiveParams& c) {
  const double ring =
      collective_cost(kind, TopologyFamily::Ring, c).total;
  const double fc =
      collective_cost(kind, TopologyFamily::FullyConnected, c).total;
  return ring / fc;
}

RatioGrid ratio_grid(CollectiveKind kind, std::uint32_t node_count,
                     double node_bandwidth,
                     const std::vector<double>& message_sizes,
                     const std::vector<double>& alphas) {
  if (message_sizes.empty() || alphas.empty()) {
    throw EmptyAxisError("ratio grid axes must be non-empty");
  }
  RatioGrid grid{kind, node_count, node_bandwidth, message_sizes, alphas, {}};
  grid.ratios.reserve(alphas.size());
  for (double alpha : alphas) {
    std::vector<double> row;
    row.reserve(message_sizes.size());
    for (double message : message_sizes) {
      row.push_back(ring_over_fc_ratio(
          kind, CollectiveParams{node_count, message, node_bandwidth, alpha}));
    }
    grid.ratios.push_back(std::move(row));
  }
  return grid;
}

std::string to_csv(const RatioGrid& grid) {
  std::string out = "alpha_s";
  for (double message : grid.message_sizes) {
    out += ',';
    append_sig6(out, message);
  }
  out += '\n';
  for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
    append_sig6(out, grid.alphas[i]);
    for (double ratio : grid.ratios[i]) {
      out += ',';
      append_sig6(out, ratio);
    }
    out += '\n';
  }
  return out;
}

std::vector<double> default_grid_message_sizes() {
  return log_spaced(1e3, 1e9, 10);
}

std::vector<double> default_grid_alphas() {
  return log_spaced(1e-8, 1e-4, 10);
}

}  // namespace fabsim
