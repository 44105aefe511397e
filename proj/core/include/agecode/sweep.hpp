#pragma once

#include <string>
#include <vector>

#include "agecode/scenario.hpp"
#include "agecode/sim.hpp"

namespace agecode {

enum class SimLevel { analytic, queue, protocol };

SimLevel parse_sim_level(const std::string& text);
std::string to_string(SimLevel level);

/// One parameter sweep: a base scenario, one axis (a config key), and the
/// values to try. Simulation points run on a bounded worker pool; rows are
/// written in scenario order regardless of completion order.
struct SweepSpec {
  ScenarioParams base;
  std::string axis;
  std::vector<std::string> values;
  SimLevel level = SimLevel::analytic;
  std::string output_path;
  uint32_t jobs = 0;  // 0 = hardware concurrency
};

void run_sweep(const SweepSpec& spec);

// Shared CSV row schemas (used by the sweep, the CLI, and the reproduction
// targets). Column orders are part of the documented output format.

std::vector<std::string> analytic_csv_header();
std::vector<std::string> analytic_csv_row(uint64_t scenario_index,
                                          const ScenarioParams& params);

std::vector<std::string> sim_csv_header();
std::vector<std::string> sim_csv_row(uint64_t scenario_index,
                                     const std::string& replication_label,
                                     SimLevel level, const ScenarioParams& params,
                                     const RunMetrics& metrics);

/// Aggregate row over one scenario's replications: means of every metric,
/// with cross-replication standard errors when there are at least two
/// replications (the single-replication fallback keeps the within-run SE).
std::vector<std::string> sim_csv_aggregate_row(uint64_t scenario_index, SimLevel level,
                                               const ScenarioParams& params,
                                               const std::vector<RunMetrics>& runs);

/// Run every replication of one scenario (seeds mix_seed(base_seed,
/// scenario_index, replication)), in parallel up to `jobs` threads.
std::vector<RunMetrics> run_replications(const ScenarioParams& params, SimLevel level,
                                         uint64_t scenario_index, uint32_t jobs);

}  // namespace agecode
