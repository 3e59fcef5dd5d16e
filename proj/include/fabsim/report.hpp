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

#include "fabsim/analytic.hpp"
#include "fabsim/config.hpp"
#include "fabsim/schedule.hpp"
#include "fabsim/workload.hpp"

namespace fabsim {

inline constexpr const char* kVersion = "0.1.0";

/// %.6g formatting used by every CSV surface.
std::string format_sig6(double value);

// JSON object builders with stable key order.
Json to_json(const CostBreakdown& cost);
Json to_json(const RatioGrid& grid);     // {kind, p, B, message_sizes, alphas, ratios}
Json to_json(const SimResult& result);   // {makespan_s, step_times_s, link_bytes}
Json to_json(const CommDemand& demand);
Json to_json(const SystemPreset& preset);

/// Full report envelope: {scenario, results, version}.
std::string render_report(const Json& scenario_echo, const Json& results);

}  // namespace fabsim
