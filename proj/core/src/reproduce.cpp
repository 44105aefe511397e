#include "agecode/reproduce.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <limits>

#include "agecode/analytics.hpp"
#include "agecode/csv.hpp"
#include "agecode/rng.hpp"
#include "agecode/sim.hpp"
#include "agecode/sweep.hpp"

namespace agecode {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBaselineUtilization = 0.6;
constexpr double kBaselineRate = 0.8;

struct ReductionEntry {
  uint32_t k;
  double feedback_delay;
  double rate;
  double reference;  // published reduction value this entry is compared against
};

constexpr std::array<ReductionEntry, 16> kReductionTable = {{
    {2, 1, 0.25, 1.87},  {2, 1, 0.50, 1.13},  {2, 1, 0.75, 0.88},  {2, 1, 1.00, 0.76},
    {2, 5, 0.25, 4.95},  {2, 5, 0.50, 4.21},  {2, 5, 0.75, 3.99},  {2, 5, 1.00, 3.89},
    {10, 1, 0.25, 3.91}, {10, 1, 0.50, 2.99}, {10, 1, 0.75, 2.77}, {10, 1, 1.00, 2.69},
    {10, 5, 0.25, 13.95}, {10, 5, 0.50, 13.46}, {10, 5, 0.75, 13.38}, {10, 5, 1.00, 13.36},
}};

ServiceModel model_for(double rate, uint32_t k, double feedback_delay) {
  return ServiceModel{rate, 1.0, feedback_delay, k};
}

std::string join(const std::string& outdir, const std::string& name) {
  return (std::filesystem::path(outdir) / name).string();
}

void ensure_outdir(const std::string& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create output directory '" + outdir + "': " + ec.message());
}

ScenarioParams sim_point(double rate, uint32_t k, uint32_t feedback_delay, double rho,
                         const ReproduceOptions& opt) {
  ScenarioParams p;
  p.target_utilization = rho;
  p.bucket_size = k;
  p.feedback_delay = feedback_delay;
  p.network = ErasureNetwork::single(1.0 - rate);
  p.horizon = opt.overlay_horizon;
  p.base_seed = opt.base_seed;
  return p;
}

std::vector<std::string> overlay_header(const std::vector<std::string>& axes) {
  std::vector<std::string> header = axes;
  const std::vector<std::string> tail = {"lambda",      "avg_aoi",  "avg_aoi_se",
                                         "peak_aoi",    "peak_aoi_se", "throughput",
                                         "throughput_se"};
  header.insert(header.end(), tail.begin(), tail.end());
  return header;
}

void overlay_row(CsvWriter& out, std::vector<std::string> axis_cells,
                 const ScenarioParams& p, uint64_t scenario_index) {
  const ResolvedScenario rs = resolve(p);
  const RunMetrics m = run_queue_sim(
      p, p.horizon, mix_seed(p.base_seed, scenario_index, 0));
  const std::vector<std::string> tail = {
      csv_number(rs.lambda),      csv_number(m.avg_aoi),   csv_number(m.avg_aoi_se),
      csv_number(m.peak_aoi),     csv_number(m.peak_aoi_se), csv_number(m.throughput),
      csv_number(m.throughput_se)};
  axis_cells.insert(axis_cells.end(), tail.begin(), tail.end());
  out.row(axis_cells);
}

std::vector<std::string> fig3(const std::string& outdir, const ReproduceOptions& opt) {
  std::vector<std::string> written;
  CsvWriter out(join(outdir, "fig3.csv"));
  out.row({"K", "rho", "lambda", "avg_aoi", "peak_aoi"});
  for (const uint32_t k : {1u, 2u, 5u, 10u}) {
    for (int i = 1; i <= 49; ++i) {
      const double rho = 0.02 * i;
      const ServiceModel m = model_for(kBaselineRate, k, 1.0);
      const double lambda = lambda_for_utilization(rho, m);
      const AoiResult res = evaluate_aoi(TrafficSpec{lambda, 1.0}, m);
      out.row({std::to_string(k), csv_number(rho), csv_number(lambda),
               csv_number(res.avg_aoi), csv_number(res.peak_aoi)});
    }
  }
  out.close();
  written.push_back(join(outdir, "fig3.csv"));

  if (opt.overlay) {
    CsvWriter sim(join(outdir, "fig3_sim.csv"));
    sim.row(overlay_header({"K", "rho"}));
    uint64_t scenario = 0;
    for (const uint32_t k : {1u, 2u, 5u, 10u}) {
      for (int i = 1; i <= 9; ++i) {
        const double rho = 0.1 * i;
        const ScenarioParams p = sim_point(kBaselineRate, k, 1, rho, opt);
        overlay_row(sim, {std::to_string(k), csv_number(rho)}, p, scenario++);
      }
    }
    sim.close();
    written.push_back(join(outdir, "fig3_sim.csv"));
  }
  return written;
}

std::vector<std::string> fig4(const std::string& outdir, const ReproduceOptions& opt) {
  std::vector<std::string> written;
  CsvWriter out(join(outdir, "fig4.csv"));
  out.row({"rho", "K", "lambda", "avg_aoi", "peak_aoi"});
  for (const double rho : {0.2, 0.6, 0.9}) {
    for (uint32_t k = 1; k <= 50; ++k) {
      const ServiceModel m = model_for(kBaselineRate, k, 1.0);
      const double lambda = lambda_for_utilization(rho, m);
      const AoiResult res = evaluate_aoi(TrafficSpec{lambda, 1.0}, m);
      out.row({csv_number(rho), std::to_string(k), csv_number(lambda),
               csv_number(res.avg_aoi), csv_number(res.peak_aoi)});
    }
  }
  out.close();
  written.push_back(join(outdir, "fig4.csv"));

  if (opt.overlay) {
    CsvWriter sim(join(outdir, "fig4_sim.csv"));
    sim.row(overlay_header({"rho", "K"}));
    uint64_t scenario = 0;
    for (const double rho : {0.2, 0.6, 0.9}) {
      for (const uint32_t k : {1u, 2u, 5u, 10u, 20u, 50u}) {
        const ScenarioParams p = sim_point(kBaselineRate, k, 1, rho, opt);
        overlay_row(sim, {csv_number(rho), std::to_string(k)}, p, scenario++);
      }
    }
    sim.close();
    written.push_back(join(outdir, "fig4_sim.csv"));
  }
  return written;
}

std::vector<std::string> fig5(const std::string& outdir, const ReproduceOptions&) {
  CsvWriter out(join(outdir, "fig5.csv"));
  out.row({"D", "K", "lambda", "mu", "avg_aoi", "d1", "dinf"});
  for (const double d : {1.0, 5.0}) {
    for (uint32_t k = 1; k <= 100; ++k) {
      const ServiceModel m = model_for(kBaselineRate, k, d);
      const double lambda = lambda_for_utilization(kBaselineUtilization, m);
      const AoiResult res = evaluate_aoi(TrafficSpec{lambda, 1.0}, m);
      out.row({csv_number(d), std::to_string(k), csv_number(lambda),
               csv_number(res.throughput), csv_number(res.avg_aoi),
               csv_number(delay_cost(1.0, m)), csv_number(delay_cost(kInf, m))});
    }
  }
  out.close();
  return {join(outdir, "fig5.csv")};
}

std::vector<std::string> fig6(const std::string& outdir, const ReproduceOptions&) {
  CsvWriter out(join(outdir, "fig6.csv"));
  out.row({"K", "D", "lambda", "avg_aoi", "peak_aoi", "dinf"});
  for (const uint32_t k : {1u, 2u, 10u}) {
    for (uint32_t d = 0; d <= 20; ++d) {
      const ServiceModel m = model_for(kBaselineRate, k, d);
      const double lambda = lambda_for_utilization(kBaselineUtilization, m);
      const AoiResult res = evaluate_aoi(TrafficSpec{lambda, 1.0}, m);
      out.row({std::to_string(k), std::to_string(d), csv_number(lambda),
               csv_number(res.avg_aoi), csv_number(res.peak_aoi),
               csv_number(delay_cost(kInf, m))});
    }
  }
  out.close();
  return {join(outdir, "fig6.csv")};
}

std::vector<std::string> fig7(const std::string& outdir, const ReproduceOptions& opt) {
  std::vector<std::string> written;
  CsvWriter out(join(outdir, "fig7.csv"));
  out.row({"K", "r", "lambda", "mu", "avg_aoi", "peak_aoi"});
  for (const uint32_t k : {1u, 2u, 10u}) {
    for (int i = 1; i <= 50; ++i) {
      const double rate = 0.02 * i;
      const ServiceModel m = model_for(rate, k, 5.0);
      const double lambda = lambda_for_utilization(kBaselineUtilization, m);
      const AoiResult res = evaluate_aoi(TrafficSpec{lambda, 1.0}, m);
      out.row({std::to_string(k), csv_number(rate), csv_number(lambda),
               csv_number(res.throughput), csv_number(res.avg_aoi),
               csv_number(res.peak_aoi)});
    }
  }
  out.close();
  written.push_back(join(outdir, "fig7.csv"));

  if (opt.overlay) {
    CsvWriter sim(join(outdir, "fig7_sim.csv"));
    sim.row(overlay_header({"K", "r"}));
    uint64_t scenario = 0;
    for (const uint32_t k : {1u, 2u, 10u}) {
      for (int i = 1; i <= 10; ++i) {
        const double rate = 0.1 * i;
        const ScenarioParams p = sim_point(rate, k, 5, kBaselineUtilization, opt);
        overlay_row(sim, {std::to_string(k), csv_number(rate)}, p, scenario++);
      }
    }
    sim.close();
    written.push_back(join(outdir, "fig7_sim.csv"));
  }
  return written;
}

std::vector<std::string> table1(const std::string& outdir, const ReproduceOptions&) {
  CsvWriter out(join(outdir, "table1.csv"));
  out.row({"K", "D", "r", "rho0", "reduction_fixed_utilization",
           "reduction_fixed_arrival_rate", "reference", "matched_convention"});
  for (const auto& entry : kReductionTable) {
    const double fixed_util =
        aaoi_reduction(entry.k, entry.feedback_delay, entry.rate, kBaselineUtilization,
                       ReductionCoupling::fixed_utilization);
    const double fixed_arrival =
        aaoi_reduction(entry.k, entry.feedback_delay, entry.rate, kBaselineUtilization,
                       ReductionCoupling::fixed_arrival_rate);
    const bool util_match = std::abs(fixed_util - entry.reference) <= 0.05;
    const bool arrival_match = std::abs(fixed_arrival - entry.reference) <= 0.05;
    const std::string matched = util_match && arrival_match ? "both"
                                : util_match                ? "fixed-utilization"
                                : arrival_match             ? "fixed-arrival-rate"
                                                            : "none";
    out.row({std::to_string(entry.k), csv_number(entry.feedback_delay),
             csv_number(entry.rate), csv_number(kBaselineUtilization),
             csv_number(fixed_util), csv_number(fixed_arrival),
             csv_number(entry.reference), matched});
  }
  out.close();
  return {join(outdir, "table1.csv")};
}

}  // namespace

std::vector<std::string> reproduce(const std::string& target, const std::string& outdir,
                                   const ReproduceOptions& options) {
  ensure_outdir(outdir);
  if (target == "fig3") return fig3(outdir, options);
  if (target == "fig4") return fig4(outdir, options);
  if (target == "fig5") return fig5(outdir, options);
  if (target == "fig6") return fig6(outdir, options);
  if (target == "fig7") return fig7(outdir, options);
  if (target == "table1") return table1(outdir, options);
  if (target == "all") {
    std::vector<std::string> written;
    for (const auto* t : {"fig3", "fig4", "fig5", "fig6", "fig7", "table1"}) {
      auto paths = reproduce(t, outdir, options);
      written.insert(written.end(), paths.begin(), paths.end());
    }
    return written;
  }
  throw ConfigError("unknown reproduce target '" + target +
                    "' (fig3, fig4, fig5, fig6, fig7, table1, all)");
}

}  // namespace agecode
