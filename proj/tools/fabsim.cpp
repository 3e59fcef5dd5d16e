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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fabsim/config.hpp"
#include "fabsim/report.hpp"
#include "fabsim/transport.hpp"

namespace fabsim {
namespace {

struct Options {
  std::string config_path;
  std::string format_override;
  std::string out_path;
  std::string trace_path;
};

void write_output(const Options& opts, const std::string& body) {
  if (opts.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) {
    throw Error("cannot open output file: " + opts.out_path);
  }
  out << body;
}

std::string effective_format(const Options& opts, const Scenario& scenario) {
  return opts.format_override.empty() ? scenario.format : opts.format_override;
}

const TopologySpec& require_topology(const Scenario& scenario) {
  if (!scenario.topology) {
    throw ValidationError("scenario is missing the 'topology' section");
  }
  return *scenario.topology;
}

CollectiveKind require_collective(const Scenario& scenario) {
  if (!scenario.collective) {
    throw ValidationError("scenario is missing the 'collective' field");
  }
  return *scenario.collective;
}

// Explicit message size and DLRM-derived size are mutually exclusive.
double resolve_message_bytes(const Scenario& scenario, CollectiveKind kind) {
  const bool explicit_m =
      scenario.params && scenario.params->message_bytes.has_value();
  if (explicit_m && scenario.dlrm) {
    throw ValidationError(
        "give either params.message_bytes or a dlrm section, not both");
  }
  if (explicit_m) return *scenario.params->message_bytes;
  if (scenario.dlrm) {
    const auto& topo = require_topology(scenario);
    if (kind == CollectiveKind::Allreduce) {
      return double(allreduce_demand(*scenario.dlrm));
    }
    const DeviceEnvelope envelope =
        scenario.envelope ? *scenario.envelope : zion_accelerator_envelope();
    const PlacementPlan plan =
        plan_placement(*scenario.dlrm, topo.node_count, envelope);
    return double(alltoall_demand(*scenario.dlrm, plan).alltoall_bytes_per_node);
  }
  throw ValidationError(
      "scenario needs params.message_bytes or a dlrm section");
}

double scenario_alpha(const Scenario& scenario) {
  return scenario.params ? scenario.params->alpha_s : 0.0;
}

std::pair<std::vector<double>, std::vector<double>> resolve_axes(
    const SweepSpec& sweep) {
  if (sweep.use_default) {
    return {default_grid_message_sizes(), default_grid_alphas()};
  }
  return {sweep.message_sizes, sweep.alphas};
}

std::string point_csv(const CostBreakdown& ring, const CostBreakdown& fc) {
  std::string out = "metric,value\n";
  out += "ring_bandwidth_s," + format_sig6(ring.bandwidth_term) + "\n";
  out += "ring_latency_s," + format_sig6(ring.latency_term) + "\n";
  out += "ring_total_s," + format_sig6(ring.total) + "\n";
  out += "fc_bandwidth_s," + format_sig6(fc.bandwidth_term) + "\n";
  out += "fc_latency_s," + format_sig6(fc.latency_term) + "\n";
  out += "fc_total_s," + format_sig6(fc.total) + "\n";
  out += "ring_over_fc," + format_sig6(ring.total / fc.total) + "\n";
  return out;
}

int cmd_analyze(const Options& opts) {
  const Scenario scenario = load_scenario(opts.config_path);
  const std::string format = effective_format(opts, scenario);
  const auto& topo = require_topology(scenario);
  const CollectiveKind kind = require_collective(scenario);

  // Transport comparison sweep: speedup of the direct path over the staged
  // one across message sizes.
  if (scenario.transport && scenario.sweep) {
    auto [message_sizes, alphas] = resolve_axes(*scenario.sweep);
    (void)alphas;
    if (message_sizes.empty()) {
      throw EmptyAxisError("transport sweep needs sweep.message_sizes");
    }
    const CollectiveParams base{topo.node_count, 0.0, topo.node_bandwidth,
                                scenario_alpha(scenario)};
    if (format == "csv") {
      write_output(opts, speedup_sweep_csv(kind, base, *scenario.transport,
                                           message_sizes));
      return 0;
    }
    std::vector<double> speedups;
    speedups.reserve(message_sizes.size());
    for (double message : message_sizes) {
      CollectiveParams c = base;
      c.message_bytes = message;
      speedups.push_back(gdr_speedup(kind, c, *scenario.transport));
    }
    Json results{{"kind", to_string(kind)},
                 {"transport", scenario.transport->name},
                 {"message_sizes", message_sizes},
                 {"speedups", speedups}};
    write_output(opts, render_report(scenario.echo, results));
    return 0;
  }

  // Ratio grid over message size and latency axes.
  if (scenario.sweep) {
    auto [message_sizes, alphas] = resolve_axes(*scenario.sweep);
    const RatioGrid grid = ratio_grid(kind, topo.node_count,
                                      topo.node_bandwidth, message_sizes,
                                      alphas);
    if (format == "csv") {
      write_output(opts, to_csv(grid));
    } else {
      write_output(opts, render_report(scenario.echo, to_json(grid)));
    }
    return 0;
  }

  // Single operating point, both topologies side by side.
  CollectiveParams params{topo.node_count,
                          resolve_message_bytes(scenario, kind),
                          topo.node_bandwidth, scenario_alpha(scenario)};
  Json transport_results;
  if (scenario.transport) {
    const double speedup = gdr_speedup(kind, params, *scenario.transport);
    const CollectiveParams staged = apply(*scenario.transport, params);
    transport_results = Json{{"name", scenario.transport->name},
                             {"node_bandwidth", staged.node_bandwidth},
                             {"alpha_s", staged.hop_latency},
                             {"gdr_speedup", speedup}};
    params = staged;
  }
  const CostBreakdown ring =
      collective_cost(kind, TopologyFamily::Ring, params);
  const CostBreakdown fc =
      collective_cost(kind, TopologyFamily::FullyConnected, params);

  if (format == "csv") {
    write_output(opts, point_csv(ring, fc));
    return 0;
  }
  Json results{{"collective", to_string(kind)},
               {"p", params.node_count},
               {"message_bytes", params.message_bytes},
               {"alpha_s", params.hop_latency},
               {"node_bandwidth", params.node_bandwidth},
               {"ring", to_json(ring)},
               {"fully_connected", to_json(fc)},
               {"ring_over_fc", ring.total / fc.total}};
  if (!transport_results.is_null()) {
    results["transport"] = transport_results;
  }
  write_output(opts, render_report(scenario.echo, results));
  return 0;
}

int cmd_simulate(const Options& opts) {
  const Scenario scenario = load_scenario(opts.config_path);
  const std::string format = effective_format(opts, scenario);
  const auto& topo = require_topology(scenario);
  const CollectiveKind kind = require_collective(scenario);

  if (topo.family != TopologyFamily::Ring &&
      topo.family != TopologyFamily::FullyConnected) {
    throw UnsupportedFamilyError("simulate supports Ring and FullyConnected; " +
                                 to_string(topo.family) +
                                 " has no built-in schedule");
  }

  const double message_value = resolve_message_bytes(scenario, kind);
  const auto message_bytes = std::uint64_t(std::llround(message_value));
  if (std::abs(message_value - double(message_bytes)) > 1e-9 ||
      message_value < 1.0) {
    throw ValidationError("simulation needs a positive whole message size");
  }

  double node_bandwidth = topo.node_bandwidth;
  double alpha = scenario_alpha(scenario);
  if (scenario.transport) {
    const CollectiveParams staged =
        apply(*scenario.transport,
              CollectiveParams{topo.node_count, message_value, node_bandwidth,
                               alpha});
    node_bandwidth = staged.node_bandwidth;
    alpha = staged.hop_latency;
  }

  const Schedule schedule =
      build_schedule(kind, topo.family, topo.node_count, message_bytes);
  const Topology topology =
      build_topology(topo.family, topo.node_count, node_bandwidth);
  const SimResult sim = simulate(schedule, topology, alpha);
  const bool semantics_ok = verify_schedule(schedule);

  const CollectiveParams params{topo.node_count, double(message_bytes),
                                node_bandwidth, alpha};
  const double analytic = collective_cost(kind, topo.family, params).total;
  const bool analytic_match =
      analytic > 0.0 ? std::abs(sim.makespan - analytic) <= 1e-9 * analytic
                     : sim.makespan == 0.0;

  if (!opts.trace_path.empty()) {
    std::ofstream trace(opts.trace_path, std::ios::binary);
    if (!trace) {
      throw Error("cannot open trace file: " + opts.trace_path);
    }
    trace << trace_csv(schedule);
  }

  if (format == "csv") {
    std::string out = "metric,value\n";
    out += "steps," + std::to_string(schedule.steps.size()) + "\n";
    out += "makespan_s," + format_sig6(sim.makespan) + "\n";
    out += "analytic_total_s," + format_sig6(analytic) + "\n";
    out += std::string("analytic_match,") +
           (analytic_match ? "true" : "false") + "\n";
    out += std::string("semantics_ok,") + (semantics_ok ? "true" : "false") +
           "\n";
    write_output(opts, out);
    return 0;
  }
  Json results{{"collective", to_string(kind)},
               {"family", to_string(topo.family)},
               {"p", topo.node_count},
               {"message_bytes", message_bytes},
               {"alpha_s", alpha},
               {"node_bandwidth", node_bandwidth},
               {"steps", schedule.steps.size()},
               {"sim", to_json(sim)},
               {"analytic_total_s", analytic},
               {"analytic_match", analytic_match},
               {"semantics_ok", semantics_ok}};
  write_output(opts, render_report(scenario.echo, results));
  return 0;
}

int cmd_workload(const Options& opts) {
  const Scenario scenario = load_scenario(opts.config_path);
  const std::string format = effective_format(opts, scenario);
  const auto& topo = require_topology(scenario);
  if (!scenario.dlrm) {
    throw ValidationError("workload scenario needs a 'dlrm' section");
  }
  const DlrmConfig& dlrm = *scenario.dlrm;
  const DeviceEnvelope envelope =
      scenario.envelope ? *scenario.envelope : zion_accelerator_envelope();
  const double alpha = scenario_alpha(scenario);

  const PlacementPlan plan =
      plan_placement(dlrm, topo.node_count, envelope);
  const CommDemand demand = alltoall_demand(dlrm, plan);
  const std::uint64_t params = mlp_param_count(dlrm);

  const double ring_s = end_to_end_estimate(dlrm, plan, TopologyFamily::Ring,
                                            topo.node_bandwidth, alpha);
  const double fc_s =
      end_to_end_estimate(dlrm, plan, TopologyFamily::FullyConnected,
                          topo.node_bandwidth, alpha);

  if (format == "csv") {
    std::string out = "metric,value\n";
    out += "mlp_param_count," + std::to_string(params) + "\n";
    out += "allreduce_bytes," + std::to_string(demand.allreduce_bytes) + "\n";
    out += "alltoall_bytes_per_node," +
           std::to_string(demand.alltoall_bytes_per_node) + "\n";
    out += "alltoall_bytes_backward," +
           std::to_string(demand.alltoall_bytes_backward) + "\n";
    out += "table_bytes," + std::to_string(embedding_table_bytes(dlrm)) + "\n";
    out += "end_to_end_ring_s," + format_sig6(ring_s) + "\n";
    out += "end_to_end_fc_s," + format_sig6(fc_s) + "\n";
    out += "ring_over_fc," + format_sig6(fc_s > 0.0 ? ring_s / fc_s : 1.0) +
           "\n";
    write_output(opts, out);
    return 0;
  }

  Json placement{{"device_count", plan.device_count},
                 {"tables_on_device", plan.tables_on_device},
                 {"table_bytes", embedding_table_bytes(dlrm)},
                 {"mlp_replicated", plan.mlp_replicated}};
  Json results{{"mlp_param_count", params},
               {"comm_demand", to_json(demand)},
               {"placement", std::move(placement)},
               {"end_to_end",
                Json{{"alpha_s", alpha},
                     {"node_bandwidth", topo.node_bandwidth},
                     {"ring_s", ring_s},
                     {"fully_connected_s", fc_s},
                     {"ring_over_fc", fc_s > 0.0 ? ring_s / fc_s : 1.0}}}};
  write_output(opts, render_report(scenario.echo, results));
  return 0;
}

int cmd_presets(const Options& opts) {
  Scenario scenario;
  if (!opts.config_path.empty()) {
    scenario = load_scenario(opts.config_path);
  }
  const std::string format = effective_format(opts, scenario);
  const std::vector<SystemPreset>& presets =
      scenario.presets.empty() ? builtin_presets() : scenario.presets;

  if (format == "csv") {
    std::string out =
        "name,local_bw,global_bw,share_count,flat,local_fraction,"
        "global_fraction\n";
    for (const SystemPreset& preset : presets) {
      out += preset.name + ',' + format_sig6(preset.local_bandwidth) + ',' +
             format_sig6(preset.global_bandwidth) + ',' +
             std::to_string(preset.global_share_count) + ',' +
             (preset.flat ? "true" : "false") + ',';
      if (auto split = local_global_fractions(preset)) {
        out += format_sig6(split->local_fraction) + ',' +
               format_sig6(split->global_fraction);
      } else {
        out += "undifferentiated,undifferentiated";
      }
      out += '\n';
    }
    write_output(opts, out);
    return 0;
  }

  Json results = Json::array();
  for (const SystemPreset& preset : presets) {
    results.push_back(to_json(preset));
  }
  write_output(opts, render_report(scenario.echo, results));
  return 0;
}

}  // namespace
}  // namespace fabsim

int main(int argc, char** argv) {
  CLI::App app{"fabsim: collective-communication cost modeling and schedule "
               "simulation for accelerator fabrics"};
  app.require_subcommand(1);

  fabsim::Options opts;
  auto add_common = [&opts](CLI::App* cmd, bool config_required) {
    auto* config =
        cmd->add_option("--config", opts.config_path, "scenario config file");
    if (config_required) config->required();
    cmd->add_option("--format", opts.format_override,
                    "output format, overrides the scenario's choice")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path,
                    "output file (default: standard output)");
  };

  auto* analyze = app.add_subcommand(
      "analyze", "evaluate the closed-form cost models for a scenario");
  add_common(analyze, true);
  auto* simulate = app.add_subcommand(
      "simulate", "build a schedule, execute it, and check it");
  add_common(simulate, true);
  simulate->add_option("--trace", opts.trace_path,
                       "also write the schedule trace CSV here");
  auto* workload = app.add_subcommand(
      "workload", "derive collective demands from a DLRM config");
  add_common(workload, true);
  auto* presets =
      app.add_subcommand("presets", "list scale-out system presets");
  add_common(presets, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return fabsim::cmd_analyze(opts);
    if (*simulate) return fabsim::cmd_simulate(opts);
    if (*workload) return fabsim::cmd_workload(opts);
    if (*presets) return fabsim::cmd_presets(opts);
  } catch (const fabsim::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fabsim::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fabsim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
