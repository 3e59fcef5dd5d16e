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

#include <string>
#include <vector>

#include "fabsim/analytic.hpp"

namespace fabsim {

// Transport-path model.  A direct accelerator-to-NIC path keeps the full
// bandwidth; staging through host memory halves it (PCIe oversubscription)
// and adds a copy latency per message.
struct TransportProfile {
  std::string name = "identity";
  double bandwidth_factor = 1.0;  // multiplier in (0, 1] applied to B
  double copy_latency = 0.0;      // extra seconds per message
  double copy_bandwidth = 0.0;    // bytes/s staging cost; 0 disables

  void validate() const;  // throws ValidationError

  static TransportProfile gdr();
  static TransportProfile non_gdr(double copy_latency = 5e-6);
};

/// B' = B * factor; alpha' = alpha + copy_latency (+ M/copy_bandwidth when
/// enabled).  Node count and message size are unchanged.
CollectiveParams apply(const TransportProfile& profile,
                       const CollectiveParams& c);

/// T(non_gdr params) / T(direct params) on the fully-connected scale-out
/// model for the given collective.
double gdr_speedup(CollectiveKind kind, const CollectiveParams& c,
                   const TransportProfile& non_gdr_profile);

/// CSV "message_bytes,speedup" rows over the given sizes.
std::string speedup_sweep_csv(CollectiveKind kind, const CollectiveParams& base,
                              const TransportProfile& non_gdr_profile,
                              const std::vector<double>& message_sizes);

}  // namespace fabsim
