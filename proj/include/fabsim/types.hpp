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

#include "fabsim/errors.hpp"

namespace fabsim {

// Node index, unique within a topology, in [0, p).
using NodeId = std::uint32_t;

enum class TopologyFamily { Ring, FullyConnected, HybridCubeMesh, Torus2D };

enum class CollectiveKind { Allreduce, Alltoall };

std::string to_string(TopologyFamily family);
std::string to_string(CollectiveKind kind);

// Both throw ParseError on an unknown name.
TopologyFamily topology_family_from_string(const std::string& name);
CollectiveKind collective_kind_from_string(const std::string& name);

}  // namespace fabsim
