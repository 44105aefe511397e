#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace agecode {

/// Options for the reproduction targets. Overlays add queue-level simulation
/// points (thinned grids) next to the analytic curves, in a separate
/// `<target>_sim.csv` file.
struct ReproduceOptions {
  bool overlay = false;
  uint64_t overlay_horizon = 200000;
  uint64_t base_seed = 1;
  uint32_t jobs = 0;
};

/// Write the CSV data behind one reference figure or table into `outdir`:
///   fig3   avg/peak AoI versus utilization, K in {1,2,5,10}
///   fig4   avg/peak AoI versus bucket size K = 1..50, rho in {0.2,0.6,0.9}
///   fig5   AoI and per-packet delay versus throughput (K sweep), D in {1,5}
///   fig6   AoI and per-packet delay versus feedback delay, K in {1,2,10}
///   fig7   AoI and throughput versus end-to-end rate, K in {1,2,10}, D=5
///   table1 reduction in average AoI versus the uncoded case, under both
///          arrival-rate couplings, with reference values and the matched
///          convention per entry
///   all    every target above
/// Returns the paths written.
std::vector<std::string> reproduce(const std::string& target, const std::string& outdir,
                                   const ReproduceOptions& options = {});

}  // namespace agecode
