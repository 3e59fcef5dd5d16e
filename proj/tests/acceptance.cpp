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

// Acceptance suite: one binary, one pass/fail line per criterion, nonzero
// exit if anything fails.  Tolerances are pinned in code next to each check.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fabsim/analytic.hpp"
#include "fabsim/schedule.hpp"
#include "fabsim/topology.hpp"
#include "fabsim/transport.hpp"
#include "fabsim/workload.hpp"

using namespace fabsim;

namespace {

int failures = 0;

void criterion(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " | ", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::vector<double> alpha_grid(double lo, double hi, int points) {
  std::vector<double> grid{0.0};
  const double lo_exp = std::log10(lo);
  const double hi_exp = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    grid.push_back(
        std::pow(10.0, lo_exp + i * (hi_exp - lo_exp) / (points - 1)));
  }
  return grid;
}

// 1. The ring alltoall hop sum at p=8 and its per-destination average.
void check_gamma_anchor() {
  const std::uint64_t hop_sum = ring_alltoall_hop_sum(8);
  const double per_peer = double(hop_sum) / 7.0;
  const bool ratio_ok = std::abs(per_peer - 2.2857142857142856) <= 1e-6;
  criterion(1, "gamma anchor", hop_sum == 16 && ratio_ok,
            fmt("gamma(8)=%llu, gamma/7=%.10f", (unsigned long long)hop_sum,
                per_peer));
}

// 2. Allreduce topology insensitivity at the 10 MB operating point:
//    ring/fc ratio < 1.05 for every alpha up to 10 us.
void check_allreduce_insensitivity() {
  double worst_ratio = 0.0;
  double worst_alpha = 0.0;
  for (double alpha : alpha_grid(1e-9, 1e-5, 81)) {
    const double ratio = ring_over_fc_ratio(
        CollectiveKind::Allreduce, CollectiveParams{8, 1e7, 1e11, alpha});
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_alpha = alpha;
    }
  }
  // Largest alpha for which the 1.05 bound would hold, from the closed form:
  // 2*(M/B)*(7/8)*0.05 = alpha*(14 - 2*1.05).
  const double bound_holds_until = 0.05 * (2.0 * (1e7 / 1e11) * 7.0 / 8.0) /
                                   (14.0 - 2.0 * 1.05);
  criterion(2, "allreduce insensitivity anchor", worst_ratio < 1.05,
            fmt("max ratio %.5f at alpha=%.3g; ratio<1.05 holds only for "
                "alpha<=%.3g s",
                worst_ratio, worst_alpha, bound_holds_until));
}

// 3. Alltoall benefit at the 100 KB operating point: ratio floor 2.28 and
//    the ratio=3 crossing at 5M/(104B), bisection root within 1%.
void check_alltoall_benefit() {
  const double message = 1e5;
  const double bandwidth = 1e11;
  auto ratio_at = [&](double alpha) {
    return ring_over_fc_ratio(CollectiveKind::Alltoall,
                              CollectiveParams{8, message, bandwidth, alpha});
  };
  double min_ratio = 1e300;
  for (double alpha : alpha_grid(1e-10, 1e-3, 101)) {
    min_ratio = std::min(min_ratio, ratio_at(alpha));
  }
  const bool floor_ok = min_ratio >= 2.28;

  double lo = 0.0, hi = 1e-5;
  bool bracket_ok = ratio_at(lo) < 3.0 && ratio_at(hi) > 3.0;
  for (int i = 0; bracket_ok && i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ratio_at(mid) < 3.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double closed_form = 5.0 * message / (104.0 * bandwidth);
  const bool root_ok =
      bracket_ok && std::abs(root - closed_form) <= 0.01 * closed_form;
  criterion(3, "alltoall benefit anchor", floor_ok && root_ok,
            fmt("min ratio %.5f, ratio=3 at alpha=%.4g (closed form %.4g)",
                min_ratio, root, closed_form));
}

// 4. Simulator reproduces the closed forms to 1e-9 relative error over
//    randomized draws for all four collective/topology combinations.
void check_sim_equivalence() {
  std::mt19937_64 rng(0xfab51u);
  std::uniform_int_distribution<std::uint32_t> pick_p(2, 16);
  std::uniform_int_distribution<std::uint64_t> pick_chunk(1, 1'000'000);
  std::uniform_real_distribution<double> bw_exp(8.0, 12.0);
  std::uniform_real_distribution<double> alpha_exp(-9.0, -4.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  int checked = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t p = pick_p(rng);
    const std::uint64_t message = pick_chunk(rng) * p;
    const double bandwidth = std::pow(10.0, bw_exp(rng));
    const double alpha = coin(rng) < 0.1 ? 0.0 : std::pow(10.0, alpha_exp(rng));
    const CollectiveParams params{p, double(message), bandwidth, alpha};
    for (CollectiveKind kind :
         {CollectiveKind::Allreduce, CollectiveKind::Alltoall}) {
      for (TopologyFamily family :
           {TopologyFamily::Ring, TopologyFamily::FullyConnected}) {
        const Schedule schedule = build_schedule(kind, family, p, message);
        const Topology topology = build_topology(family, p, bandwidth);
        const double sim = simulate(schedule, topology, alpha).makespan;
        const double analytic = collective_cost(kind, family, params).total;
        worst = std::max(worst, std::abs(sim - analytic) / analytic);
        ++checked;
      }
    }
  }
  criterion(4, "simulator-analytic equivalence", worst <= 1e-9,
            fmt("%d draws x 4 combos, worst relative error %.3g", checked / 4,
                worst));
}

// 5. Semantic oracles accept every built schedule and catch single-step
//    deletions (>= 95% of mutants).
void check_semantic_oracles() {
  bool all_valid = true;
  int mutants = 0;
  int detected = 0;
  for (std::uint32_t p = 2; p <= 16; ++p) {
    const std::array<Schedule, 4> schedules = {
        build_ring_allreduce(p, 64 * p), build_fc_allreduce(p, 64 * p),
        build_ring_alltoall(p, 64 * p), build_fc_alltoall(p, 64 * p)};
    for (const Schedule& schedule : schedules) {
      all_valid = all_valid && verify_schedule(schedule);
      for (std::size_t victim = 0; victim < schedule.steps.size(); ++victim) {
        Schedule mutant = schedule;
        mutant.steps.erase(mutant.steps.begin() + victim);
        ++mutants;
        if (!verify_schedule(mutant)) ++detected;
      }
    }
  }
  const double rate = double(detected) / double(mutants);
  criterion(5, "semantic oracles", all_valid && rate >= 0.95,
            fmt("built schedules valid: %s; %d/%d mutants detected (%.1f%%)",
                all_valid ? "yes" : "no", detected, mutants, 100.0 * rate));
}

// 6. Ratio limits at the default grid extremes, within 1%.
void check_limit_properties() {
  auto ar = [](double message, double alpha) {
    return ring_over_fc_ratio(CollectiveKind::Allreduce,
                              CollectiveParams{8, message, 1e11, alpha});
  };
  auto a2a = [](double message, double alpha) {
    return ring_over_fc_ratio(CollectiveKind::Alltoall,
                              CollectiveParams{8, message, 1e11, alpha});
  };
  const double m_lo = default_grid_message_sizes().front();   // 1 KB
  const double m_hi = default_grid_message_sizes().back();    // 1 GB
  const double a_lo = default_grid_alphas().front();          // 10 ns
  const double a_hi = default_grid_alphas().back();           // 100 us

  const double ar_small_m = ar(m_lo, a_hi);  // -> p-1
  const double ar_big_m = ar(m_hi, a_lo);    // -> 1
  const double a2a_small_m = a2a(m_lo, a_hi);  // -> gamma
  const double a2a_small_a = a2a(m_hi, a_lo);  // -> gamma/(p-1)
  const bool ok = std::abs(ar_small_m - 7.0) <= 0.01 * 7.0 &&
                  std::abs(ar_big_m - 1.0) <= 0.01 &&
                  std::abs(a2a_small_m - 16.0) <= 0.01 * 16.0 &&
                  std::abs(a2a_small_a - 16.0 / 7.0) <= 0.01 * (16.0 / 7.0);
  criterion(6, "limit properties", ok,
            fmt("ar->%.4f (7), ar->%.6f (1), a2a->%.3f (16), a2a->%.5f (16/7)",
                ar_small_m, ar_big_m, a2a_small_m, a2a_small_a));
}

// 7. Workload anchors: exact 10 MB gradient demand, 114688 B/node lookup
//    exchange, and placement accept/reject against the device envelopes.
void check_workload_anchors() {
  DlrmConfig reference;
  reference.num_tables = 8;
  reference.rows_per_table = 15'625'000;
  reference.emb_dim = 128;
  reference.bottom_mlp = {1999, 1000};
  reference.top_mlp = {999, 500};
  reference.minibatch = 256;
  reference.bytes_per_element = 4;

  const bool allreduce_ok = allreduce_demand(reference) == 10'000'000;
  const PlacementPlan plan =
      plan_placement(reference, 8, zion_accelerator_envelope());
  const std::uint64_t per_node =
      alltoall_demand(reference, plan).alltoall_bytes_per_node;
  const bool alltoall_ok = per_node == 114'688;

  bool accept_ok = false;
  try {
    DlrmConfig ten_tables = reference;
    ten_tables.num_tables = 10;  // two devices carry 16 GB of 25 GB
    plan_placement(ten_tables, 8, zion_accelerator_envelope());
    accept_ok = true;
  } catch (const CapacityExceededError&) {
  }
  bool reject_ok = false;
  try {
    DlrmConfig huge = reference;
    huge.num_tables = 1;
    huge.rows_per_table = 5'859'375'000ull;  // one 3 TB table
    plan_placement(huge, 8, zion_cpu_envelope());
  } catch (const CapacityExceededError&) {
    reject_ok = true;
  }
  criterion(7, "workload anchors",
            allreduce_ok && alltoall_ok && accept_ok && reject_ok,
            fmt("allreduce=%llu B, alltoall=%llu B/node, placement "
                "accept/reject: %s/%s",
                (unsigned long long)allreduce_demand(reference),
                (unsigned long long)per_node, accept_ok ? "ok" : "BAD",
                reject_ok ? "ok" : "BAD"));
}

// 8. Transport shape: staged-path speedup tends to the 2x bandwidth gap for
//    large messages, exceeds it for small ones, decreasing in between.
void check_transport_shape() {
  const TransportProfile staged = TransportProfile::non_gdr();  // 5 us > alpha
  auto speedup_at = [&](double message) {
    return gdr_speedup(CollectiveKind::Allreduce,
                       CollectiveParams{8, message, 1e11, 1e-6}, staged);
  };
  const double at_256mb = speedup_at(256e6);
  const double at_64kb = speedup_at(64e3);
  const bool large_ok = std::abs(at_256mb - 2.0) <= 0.05;
  const bool small_ok = at_64kb > at_256mb && at_64kb > 2.0;

  bool monotone = true;
  double previous = 1e300;
  for (double exponent = std::log10(64e3); exponent <= std::log10(256e6) + 1e-9;
       exponent += 0.125) {
    const double s = speedup_at(std::pow(10.0, exponent));
    monotone = monotone && s < previous;
    previous = s;
  }
  criterion(8, "transport shape", large_ok && small_ok && monotone,
            fmt("speedup 2.0%+.4f at 256 MB, %.3f at 64 KB, monotone: %s",
                at_256mb - 2.0, at_64kb, monotone ? "yes" : "no"));
}

// 9. Scale-out preset fractions.
void check_presets() {
  const SystemPreset* hls = nullptr;
  const SystemPreset* dgx = nullptr;
  const SystemPreset* tpu = nullptr;
  for (const SystemPreset& preset : builtin_presets()) {
    if (preset.name == "HLS-1") hls = &preset;
    if (preset.name == "DGX-1") dgx = &preset;
    if (preset.name == "TPU") tpu = &preset;
  }
  bool ok = hls && dgx && tpu;
  std::string detail = "missing presets";
  if (ok) {
    const auto hls_split = local_global_fractions(*hls);
    const auto dgx_split = local_global_fractions(*dgx);
    const auto tpu_split = local_global_fractions(*tpu);
    const bool hls_ok = hls_split && hls_split->local_fraction == 0.7 &&
                        hls_split->global_fraction == 0.3;
    const bool dgx_ok =
        dgx_split && std::abs(dgx_split->global_fraction - 0.0204) <= 0.0005;
    const bool tpu_ok = !tpu_split.has_value();
    ok = hls_ok && dgx_ok && tpu_ok;
    detail = fmt("HLS-1 (%.4g, %.4g), DGX-1 global %.6f, TPU %s",
                 hls_split ? hls_split->local_fraction : -1.0,
                 hls_split ? hls_split->global_fraction : -1.0,
                 dgx_split ? dgx_split->global_fraction : -1.0,
                 tpu_ok ? "undifferentiated" : "SPLIT");
  }
  criterion(9, "scale-out presets", ok, detail);
}

// 10. Byte-identical CLI reports across repeated runs of every subcommand
//     on the shipped scenarios.
std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string command =
      std::string(FABSIM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, n);
  }
  return {WEXITSTATUS(pclose(pipe)), output};
}

void check_determinism() {
  const std::pair<const char*, const char*> runs[] = {
      {"analyze", "analyze_allreduce_point.json"},
      {"analyze", "ratio_grid_allreduce.json"},
      {"analyze", "ratio_grid_alltoall.json"},
      {"analyze", "transport_gdr_sweep.json"},
      {"simulate", "simulate_ring_allreduce.json"},
      {"simulate", "simulate_fc_alltoall.json"},
      {"workload", "workload_reference.json"},
      {"presets", nullptr},
  };
  bool ok = true;
  int compared = 0;
  std::string first_failure;
  for (const auto& [command, config] : runs) {
    for (const char* format : {"json", "csv"}) {
      std::string args = std::string(command) + " --format " + format;
      if (config) {
        args += std::string(" --config ") + FABSIM_SCENARIOS_DIR + "/" + config;
      }
      const auto first = run_cli(args);
      const auto second = run_cli(args);
      ++compared;
      if (first.first != 0 || second.first != 0 ||
          first.second != second.second || first.second.empty()) {
        ok = false;
        if (first_failure.empty()) first_failure = args;
      }
    }
  }
  criterion(10, "deterministic reports", ok,
            ok ? fmt("%d command runs byte-identical", compared)
               : "first mismatch: " + first_failure);
}

}  // namespace

int main() {
  check_gamma_anchor();
  check_allreduce_insensitivity();
  check_alltoall_benefit();
  check_sim_equivalence();
  check_semantic_oracles();
  check_limit_properties();
  check_workload_anchors();
  check_transport_shape();
  check_presets();
  check_determinism();

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
