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

#include <doctest.h>

#include "fabsim/config.hpp"
#include "fabsim/report.hpp"

using namespace fabsim;

TEST_CASE("topology spec parsing") {
  const Json j = Json::parse(
      R"({"family": "Ring", "p": 8, "node_bandwidth": 1e11})");
  const TopologySpec spec = parse_topology_spec(j);
  CHECK(spec.family == TopologyFamily::Ring);
  CHECK(spec.node_count == 8);
  CHECK(spec.node_bandwidth == 1e11);

  CHECK_THROWS_AS(parse_topology_spec(Json::parse(
                      R"({"family": "Star", "p": 8, "node_bandwidth": 1})")),
                  ParseError);
  CHECK_THROWS_AS(parse_topology_spec(Json::parse(R"({"family": "Ring"})")),
                  ParseError);
  CHECK_THROWS_AS(parse_topology_spec(Json::parse(
                      R"({"family": "Ring", "p": "eight", "node_bandwidth": 1})")),
                  ParseError);
}

TEST_CASE("system preset parsing") {
  const Json j = Json::parse(
      R"({"name": "HLS-1", "local_bw": 8.75e10, "global_bw": 3e11,
          "share_count": 8, "flat": false})");
  const SystemPreset preset = parse_system_preset(j);
  CHECK(preset.name == "HLS-1");
  CHECK(preset.global_share_count == 8);
  CHECK(!preset.flat);
  const auto split = local_global_fractions(preset);
  REQUIRE(split.has_value());
  CHECK(split->local_fraction == 0.7);

  CHECK_THROWS_AS(parse_system_preset(Json::parse(
                      R"({"name": "x", "local_bw": 1, "global_bw": 1,
                          "share_count": 1, "flat": "yes"})")),
                  ParseError);
}

TEST_CASE("dlrm config parsing") {
  const Json j = Json::parse(
      R"({"num_tables": 8, "rows_per_table": 15625000, "emb_dim": 128,
          "bottom_mlp": [1999, 1000], "top_mlp": [999, 500],
          "minibatch": 256, "bytes_per_element": 4})");
  const DlrmConfig c = parse_dlrm_config(j);
  CHECK(c.lookups_per_sample == 1);  // defaulted
  CHECK(c.bottom_mlp == std::vector<std::uint32_t>{1999, 1000});
  CHECK(mlp_param_count(c) == 2'500'000);

  Json with_lookups = j;
  with_lookups["lookups_per_sample"] = 3;
  CHECK(parse_dlrm_config(with_lookups).lookups_per_sample == 3);

  Json missing = j;
  missing.erase("emb_dim");
  CHECK_THROWS_AS(parse_dlrm_config(missing), ParseError);
}

TEST_CASE("transport profile parsing") {
  const Json j = Json::parse(
      R"({"name": "staged", "bandwidth_factor": 0.5,
          "copy_latency_s": 5e-6, "copy_bandwidth": 0})");
  const TransportProfile profile = parse_transport_profile(j);
  CHECK(profile.bandwidth_factor == 0.5);
  CHECK(profile.copy_latency == 5e-6);

  CHECK(parse_transport_profile(Json("gdr")).bandwidth_factor == 1.0);
  CHECK(parse_transport_profile(Json("non_gdr")).copy_latency == 5e-6);
  CHECK_THROWS_AS(parse_transport_profile(Json("tcp")), ParseError);
}

TEST_CASE("device envelope parsing") {
  CHECK(parse_device_envelope(Json("zion_accelerator")).memory_capacity ==
        25'000'000'000ull);
  CHECK(parse_device_envelope(Json("zion_cpu")).role == DeviceRole::Cpu);
  const Json j = Json::parse(
      R"({"memory_capacity": 1000, "memory_bandwidth": 1e9, "role": "CPU"})");
  CHECK(parse_device_envelope(j).memory_capacity == 1000);
  CHECK_THROWS_AS(parse_device_envelope(Json::parse(
                      R"({"memory_capacity": 1, "memory_bandwidth": 1,
                          "role": "GPU"})")),
                  ParseError);
}

TEST_CASE("scenario parsing") {
  const Json j = Json::parse(R"({
    "topology": {"family": "FullyConnected", "p": 8, "node_bandwidth": 1e11},
    "collective": "Alltoall",
    "params": {"message_bytes": 100000, "alpha_s": 1e-6},
    "format": "csv"
  })");
  const Scenario scenario = parse_scenario(j);
  REQUIRE(scenario.topology.has_value());
  CHECK(scenario.topology->family == TopologyFamily::FullyConnected);
  REQUIRE(scenario.collective.has_value());
  CHECK(*scenario.collective == CollectiveKind::Alltoall);
  REQUIRE(scenario.params.has_value());
  CHECK(*scenario.params->message_bytes == 100000.0);
  CHECK(scenario.format == "csv");
  CHECK(scenario.echo == j);  // reports echo the document verbatim

  CHECK_THROWS_AS(parse_scenario(Json::parse(R"({"format": "xml"})")),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(Json::parse(R"([1,2,3])")), ParseError);
}

TEST_CASE("sweep parsing") {
  const Scenario with_default = parse_scenario(Json::parse(
      R"({"sweep": {"default": true}})"));
  REQUIRE(with_default.sweep.has_value());
  CHECK(with_default.sweep->use_default);

  const Scenario explicit_axes = parse_scenario(Json::parse(
      R"({"sweep": {"message_sizes": [1e3, 1e6], "alphas": [1e-8]}})"));
  REQUIRE(explicit_axes.sweep.has_value());
  CHECK(explicit_axes.sweep->message_sizes.size() == 2);
  CHECK(explicit_axes.sweep->alphas.size() == 1);
}

TEST_CASE("report envelope") {
  const Json results{{"x", 1}};
  const std::string report = render_report(Json{{"a", 2}}, results);
  const Json parsed = Json::parse(report);
  CHECK(parsed.at("scenario").at("a") == 2);
  CHECK(parsed.at("results").at("x") == 1);
  CHECK(parsed.at("version") == kVersion);
  // stable key order
  CHECK(report.find("\"scenario\"") < report.find("\"results\""));
  CHECK(report.find("\"results\"") < report.find("\"version\""));
}

TEST_CASE("six significant digit formatting") {
  CHECK(format_sig6(0.7) == "0.7");
  CHECK(format_sig6(50.0 / 2450.0) == "0.0204082");
  CHECK(format_sig6(1e-6) == "1e-06");
  CHECK(format_sig6(114688.0) == "114688");
  CHECK(format_sig6(2.0 / 3.0) == "0.666667");
}
