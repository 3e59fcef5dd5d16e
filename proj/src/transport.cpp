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

#include "fabsim/transport.hpp"

#include <cstdio>

namespace fabsim {

void TransportProfile::validate() const {
  if (!(bandwidth_factor > 0.0) || bandwidth_factor > 1.0) {
    throw ValidationError("transport bandwidth factor must be in (0, 1]");
  }
  if (!(copy_latency >= 0.0)) {
    throw ValidationError("transport copy latency must be >= 0");
  }
  if (!(copy_bandwidth >= 0.0)) {
    throw ValidationError("transport copy bandwidth must be >= 0");
  }
}

TransportProfile TransportProfile::gdr() {
  return TransportProfile{"gdr", 1.0, 0.0, 0.0};
}

TransportProfile TransportProfile::non_gdr(double copy_latency) {
  // Staged through host memory: the shared PCIe uplink halves the usable
  // bandwidth and each message pays one staging copy.
  return TransportProfile{"non_gdr", 0.5, copy_latency, 0.0};
}

CollectiveParams apply(const TransportProfile& profile,
                       const CollectiveParams& c) {
  profile.validate();
  c.validate();
  CollectiveParams adjusted = c;
  adjusted.node_bandwidth = c.node_bandwidth * profile.bandwidth_factor;
  adjusted.hop_latency = c.hop_latency + profile.copy_latency;
  if (profile.copy_bandwidth > 0.0) {
    adjusted.hop_latency += c.message_bytes / profile.copy_bandwidth;
  }
  return adjusted;
}

double gdr_speedup(CollectiveKind kind, const CollectiveParams& c,
                   const TransportProfile& non_gdr_profile) {
  // Scale-out path is modeled on the fully-connected topology.
  const double staged =
      collective_cost(kind, TopologyFamily::FullyConnected,
                      apply(non_gdr_profile, c))
          .total;
  const double direct =
      collective_cost(kind, TopologyFamily::FullyConnected,
                      apply(TransportProfile::gdr(), c))
          .total;
  return staged / direct;
}

std::string speedup_sweep_csv(CollectiveKind kind, const CollectiveParams& base,
                              const TransportProfile& non_gdr_profile,
                              const std::vector<double>& message_sizes) {
  if (message_sizes.empty()) {
    throw EmptyAxisError("speedup sweep needs at least one message size");
  }
  std::string out = "message_bytes,speedup\n";
  char buf[64];
  for (double message : message_sizes) {
    CollectiveParams c = base;
    c.message_bytes = message;
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g\n", message,
                  gdr_speedup(kind, c, non_gdr_profile));
    out += buf;
  }
  return out;
}

}  // namespace fabsim
