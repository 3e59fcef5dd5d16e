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

#include "fabsim/types.hpp"

namespace fabsim {

std::string to_string(TopologyFamily family) {
  switch (family) {
    case TopologyFamily::Ring:
      return "Ring";
    case TopologyFamily::FullyConnected:
      return "FullyConnected";
    case TopologyFamily::HybridCubeMesh:
      return "HybridCubeMesh";
    case TopologyFamily::Torus2D:
      return "Torus2D";
  }
  return "unknown";
}

std::string to_string(CollectiveKind kind) {
  return kind == CollectiveKind::Allreduce ? "Allreduce" : "Alltoall";
}

TopologyFamily topology_family_from_string(const std::string& name) {
  if (name == "Ring") return TopologyFamily::Ring;
  if (name == "FullyConnected") return TopologyFamily::FullyConnected;
  if (name == "HybridCubeMesh") return TopologyFamily::HybridCubeMesh;
  if (name == "Torus2D") return TopologyFamily::Torus2D;
  throw ParseError("unknown topology family: " + name);
}

CollectiveKind collective_kind_from_string(const std::string& name) {
  if (name == "Allreduce") return CollectiveKind::Allreduce;
  if (name == "Alltoall") return CollectiveKind::Alltoall;
  throw ParseError("unknown collective kind: " + name);
}

}  // namespace fabsim
