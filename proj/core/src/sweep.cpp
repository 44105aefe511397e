#include "agecode/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "agecode/analytics.hpp"
#include "agecode/config.hpp"
#include "agecode/csv.hpp"
#include "agecode/rng.hpp"

namespace agecode {
namespace {

// Run tasks 0..count-1 on up to `jobs` threads; exceptions surface after join.
void parallel_for(uint64_t count, uint32_t jobs,
                  const std::function<void(uint64_t)>& task) {
  if (count == 0) return;
  uint32_t workers = jobs > 0 ? jobs : std::thread::hardware_concurrency();
  if (workers < 1) workers = 1;
  workers = static_cast<uint32_t>(std::min<uint64_t>(workers, count));

  if (workers == 1) {
    for (uint64_t i = 0; i < count; ++i) task(i);
    return;
  }

  std::atomic<uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const uint64_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double resolved_or_nan(const std::function<double()>& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

SimLevel parse_sim_level(const std::string& text) {
  if (text == "analytic") return SimLevel::analytic;
  if (text == "queue") return SimLevel::queue;
  if (text == "protocol") return SimLevel::protocol;
  throw ConfigError("unknown level '" + text + "' (analytic, queue, protocol)");
}

std::string to_string(SimLevel level) {
  switch (level) {
    case SimLevel::analytic: return "analytic";
    case SimLevel::queue: return "queue";
    case SimLevel::protocol: return "protocol";
  }
  return "?";
}

std::vector<std::string> analytic_csv_header() {
  return {"scenario", "K",  "L",  "D",    "beta",      "lambda", "rho",
          "rate",     "mu", "mean_service", "service_var", "mean_wait",
          "avg_aoi",  "peak_aoi", "d1",   "d2",        "dinf"};
}

std::vector<std::string> analytic_csv_row(uint64_t scenario_index,
                                          const ScenarioParams& params) {
  const ResolvedScenario rs = resolve(params);
  const TrafficSpec traffic{rs.lambda, params.admit_prob};
  return {
      std::to_string(scenario_index),
      std::to_string(params.bucket_size),
      csv_number(params.packet_len),
      std::to_string(params.feedback_delay),
      csv_number(params.admit_prob),
      csv_number(rs.lambda),
      csv_number(rs.utilization),
      csv_number(rs.rate),
      csv_number(throughput(rs.model)),
      csv_number(service_mean(rs.model)),
      csv_number(service_variance(rs.model)),
      csv_number(resolved_or_nan([&] { return mean_wait(traffic, rs.model); })),
      csv_number(resolved_or_nan([&] { return avg_aoi(traffic, rs.model); })),
      csv_number(resolved_or_nan([&] { return peak_aoi(traffic, rs.model); })),
      csv_number(delay_cost(1.0, rs.model)),
      csv_number(delay_cost(2.0, rs.model)),
      csv_number(delay_cost(std::numeric_limits<double>::infinity(), rs.model)),
  };
}

std::vector<std::string> sim_csv_header() {
  return {"scenario",   "replication", "level",     "K",          "L",
          "D",          "q",           "beta",      "lambda",     "rho",
          "rate",       "horizon",     "warmup",    "seed",       "avg_aoi",
          "avg_aoi_raw", "avg_aoi_se", "peak_aoi",  "peak_aoi_raw", "peak_aoi_se",
          "throughput", "throughput_se", "busy_service_rate",     "d1",
          "d2",         "dinf",        "admitted",  "delivered",  "in_system",
          "generations", "dependent",  "redundant", "decode_failures",
          "mean_generation_size",      "measured_slots",          "peak_count"};
}

namespace {

std::vector<std::string> sim_row_common(uint64_t scenario_index,
                                        const std::string& replication_label,
                                        SimLevel level, const ScenarioParams& params) {
  const ResolvedScenario rs = resolve(params);
  return {
      std::to_string(scenario_index),
      replication_label,
      to_string(level),
      std::to_string(params.bucket_size),
      csv_number(params.packet_len),
      std::to_string(params.feedback_delay),
      std::to_string(params.field_order),
      csv_number(params.admit_prob),
      csv_number(rs.lambda),
      csv_number(rs.utilization),
      csv_number(rs.rate),
  };
}

}  // namespace

std::vector<std::string> sim_csv_row(uint64_t scenario_index,
                                     const std::string& replication_label,
                                     SimLevel level, const ScenarioParams& params,
                                     const RunMetrics& m) {
  auto row = sim_row_common(scenario_index, replication_label, level, params);
  const std::vector<std::string> tail = {
      std::to_string(m.horizon),
      std::to_string(m.warmup),
      std::to_string(m.seed),
      csv_number(m.avg_aoi),
      csv_number(m.avg_aoi_raw),
      csv_number(m.avg_aoi_se),
      csv_number(m.peak_aoi),
      csv_number(m.peak_aoi_raw),
      csv_number(m.peak_aoi_se),
      csv_number(m.throughput),
      csv_number(m.throughput_se),
      csv_number(m.busy_service_rate),
      csv_number(m.d1),
      csv_number(m.d2),
      csv_number(m.dinf),
      std::to_string(m.admitted),
      std::to_string(m.delivered),
      std::to_string(m.in_system_at_end),
      std::to_string(m.generations_decoded),
      std::to_string(m.dependent_receptions),
      std::to_string(m.redundant_receptions),
      std::to_string(m.decode_failures),
      csv_number(m.mean_generation_size),
      std::to_string(m.measured_slots),
      std::to_string(m.peak_count),
  };
  row.insert(row.end(), tail.begin(), tail.end());
  return row;
}

std::vector<std::string> sim_csv_aggregate_row(uint64_t scenario_index, SimLevel level,
                                               const ScenarioParams& params,
                                               const std::vector<RunMetrics>& runs) {
  const auto mean_of = [&](auto&& get) {
    double sum = 0;
    for (const auto& r : runs) sum += static_cast<double>(get(r));
    return sum / static_cast<double>(runs.size());
  };
  const auto se_of = [&](auto&& get, double fallback) {
    if (runs.size() < 2) return fallback;
    const double mean = mean_of(get);
    double sq = 0;
    for (const auto& r : runs) {
      const double diff = static_cast<double>(get(r)) - mean;
      sq += diff * diff;
    }
    const auto n = static_cast<double>(runs.size());
    return std::sqrt(sq / (n - 1) / n);
  };

  auto row = sim_row_common(scenario_index, "aggregate", level, params);
  const RunMetrics& first = runs.front();
  const std::vector<std::string> tail = {
      std::to_string(first.horizon),
      std::to_string(first.warmup),
      std::to_string(first.seed),
      csv_number(mean_of([](const RunMetrics& r) { return r.avg_aoi; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.avg_aoi_raw; })),
      csv_number(se_of([](const RunMetrics& r) { return r.avg_aoi; }, first.avg_aoi_se)),
      csv_number(mean_of([](const RunMetrics& r) { return r.peak_aoi; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.peak_aoi_raw; })),
      csv_number(se_of([](const RunMetrics& r) { return r.peak_aoi; }, first.peak_aoi_se)),
      csv_number(mean_of([](const RunMetrics& r) { return r.throughput; })),
      csv_number(se_of([](const RunMetrics& r) { return r.throughput; }, first.throughput_se)),
      csv_number(mean_of([](const RunMetrics& r) { return r.busy_service_rate; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.d1; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.d2; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.dinf; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.admitted; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.delivered; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.in_system_at_end; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.generations_decoded; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.dependent_receptions; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.redundant_receptions; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.decode_failures; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.mean_generation_size; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.measured_slots; })),
      csv_number(mean_of([](const RunMetrics& r) { return r.peak_count; })),
  };
  row.insert(row.end(), tail.begin(), tail.end());
  return row;
}

std::vector<RunMetrics> run_replications(const ScenarioParams& params, SimLevel level,
                                         uint64_t scenario_index, uint32_t jobs) {
  if (level == SimLevel::analytic) {
    throw UsageError("run_replications: analytic points have no replications");
  }
  std::vector<RunMetrics> runs(params.replications);
  parallel_for(params.replications, jobs, [&](uint64_t rep) {
    const uint64_t seed = mix_seed(params.base_seed, scenario_index, rep);
    runs[rep] = level == SimLevel::queue
                    ? run_queue_sim(params, params.horizon, seed)
                    : run_protocol_sim(params, params.network, params.horizon, seed);
  });
  return runs;
}

void run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep: no axis values");
  // Materialize and validate every point up front; a bad value should fail
  // before any simulation time is spent.
  std::vector<ScenarioParams> points;
  points.reserve(spec.values.size());
  for (const auto& value : spec.values) {
    ScenarioParams p = spec.base;
    apply_assignment(p, spec.axis, value);
    p.validate();
    points.push_back(std::move(p));
  }

  CsvWriter out(spec.output_path);
  if (spec.level == SimLevel::analytic) {
    out.row(analytic_csv_header());
    for (uint64_t i = 0; i < points.size(); ++i) {
      out.row(analytic_csv_row(i, points[i]));
    }
    out.close();
    return;
  }

  // One task per (point, replication); buffered and written in order.
  std::vector<uint32_t> offsets(points.size() + 1, 0);
  for (size_t i = 0; i < points.size(); ++i) {
    offsets[i + 1] = offsets[i] + points[i].replications;
  }
  std::vector<RunMetrics> results(offsets.back());
  parallel_for(offsets.back(), spec.jobs, [&](uint64_t task) {
    const auto point = static_cast<size_t>(
        std::upper_bound(offsets.begin(), offsets.end(), task) - offsets.begin() - 1);
    const uint64_t rep = task - offsets[point];
    const uint64_t seed = mix_seed(points[point].base_seed, point, rep);
    const ScenarioParams& p = points[point];
    results[task] = spec.level == SimLevel::queue
                        ? run_queue_sim(p, p.horizon, seed)
                        : run_protocol_sim(p, p.network, p.horizon, seed);
  });

  out.row(sim_csv_header());
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<RunMetrics> runs(results.begin() + offsets[i],
                                 results.begin() + offsets[i + 1]);
    for (size_t rep = 0; rep < runs.size(); ++rep) {
      out.row(sim_csv_row(i, std::to_string(rep), spec.level, points[i], runs[rep]));
    }
    out.row(sim_csv_aggregate_row(i, spec.level, points[i], runs));
  }
  out.close();
}

}  // namespace agecode
