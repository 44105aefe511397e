#include "agecode/topology.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace agecode {
namespace {

void check_erasures(std::span<const double> eps) {
  if (eps.empty()) throw UsageError("network path needs at least one hop");
  for (double e : eps) {
    if (!(e >= 0.0) || !(e <= 1.0)) {
      throw UsageError("erasure probability must lie in [0, 1]");
    }
  }
}

double finish_time(std::span<const uint32_t> counts, std::span<const double> rates) {
  double worst = 0;
  for (size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    worst = std::max(worst, counts[j] / rates[j]);
  }
  return worst;
}

void enumerate_splits(uint32_t remaining, size_t path, std::vector<uint32_t>& counts,
                      std::span<const double> rates, PathAllocation& best) {
  if (path + 1 == counts.size()) {
    counts[path] = remaining;
    if (remaining > 0 && rates[path] <= 0) return;
    const double t = finish_time(counts, rates);
    if (t < best.finish_time) {
      best.finish_time = t;
      best.counts = counts;
    }
    return;
  }
  for (uint32_t take = 0; take <= remaining; ++take) {
    if (take > 0 && rates[path] <= 0) break;
    counts[path] = take;
    enumerate_splits(remaining - take, path + 1, counts, rates, best);
  }
}

}  // namespace

ErasureNetwork ErasureNetwork::single(double erasure_prob) {
  ErasureNetwork net;
  net.kind = Kind::single_link;
  net.paths = {{erasure_prob}};
  check_erasures(net.paths[0]);
  return net;
}

ErasureNetwork ErasureNetwork::multihop(std::vector<double> hop_erasures) {
  check_erasures(hop_erasures);
  ErasureNetwork net;
  net.kind = Kind::multihop;
  net.paths = {std::move(hop_erasures)};
  return net;
}

ErasureNetwork ErasureNetwork::multipath(std::vector<std::vector<double>> path_hops) {
  if (path_hops.empty()) throw UsageError("multipath network needs at least one path");
  for (const auto& hops : path_hops) check_erasures(hops);
  ErasureNetwork net;
  net.kind = Kind::multipath;
  net.paths = std::move(path_hops);
  return net;
}

std::string ErasureNetwork::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::single_link:
      os << "single:" << paths[0][0];
      break;
    case Kind::multihop:
      os << "multihop:";
      for (size_t h = 0; h < paths[0].size(); ++h) os << (h ? "," : "") << paths[0][h];
      break;
    case Kind::multipath:
      os << "multipath:";
      for (size_t j = 0; j < paths.size(); ++j) {
        if (j) os << "|";
        for (size_t h = 0; h < paths[j].size(); ++h) os << (h ? "," : "") << paths[j][h];
      }
      break;
  }
  return os.str();
}

double min_cut_rate(std::span<const double> hop_erasures) {
  check_erasures(hop_erasures);
  double rate = 1.0;
  for (double e : hop_erasures) rate = std::min(rate, 1.0 - e);
  return rate;
}

PathAllocation waterfill_alloc(uint32_t k, std::span<const double> path_rates) {
  if (k < 1) throw UsageError("waterfill_alloc: need at least one packet");
  if (path_rates.empty()) throw UsageError("waterfill_alloc: no paths");
  if (std::ranges::all_of(path_rates, [](double r) { return r <= 0; })) {
    throw InfeasibleError("waterfill_alloc: every path has rate zero");
  }

  PathAllocation alloc;
  alloc.counts.assign(path_rates.size(), 0);
  for (uint32_t packet = 0; packet < k; ++packet) {
    size_t best = path_rates.size();
    double best_finish = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < path_rates.size(); ++j) {
      if (path_rates[j] <= 0) continue;
      const double finish = (alloc.counts[j] + 1) / path_rates[j];
      if (finish < best_finish) {  // strict: ties stay with the lowest index
        best_finish = finish;
        best = j;
      }
    }
    alloc.counts[best] += 1;
  }
  alloc.finish_time = finish_time(alloc.counts, path_rates);
  alloc.rate = k / alloc.finish_time;
  return alloc;
}

PathAllocation waterfill_bruteforce(uint32_t k, std::span<const double> path_rates) {
  if (k < 1) throw UsageError("waterfill_bruteforce: need at least one packet");
  if (path_rates.empty()) throw UsageError("waterfill_bruteforce: no paths");
  if (k > 14 || path_rates.size() > 4) {
    throw UsageError("waterfill_bruteforce: exceeds the k <= 14, 4-path bound");
  }
  if (std::ranges::all_of(path_rates, [](double r) { return r <= 0; })) {
    throw InfeasibleError("waterfill_bruteforce: every path has rate zero");
  }

  PathAllocation best;
  best.finish_time = std::numeric_limits<double>::infinity();
  std::vector<uint32_t> counts(path_rates.size(), 0);
  enumerate_splits(k, 0, counts, path_rates, best);
  best.rate = k / best.finish_time;
  return best;
}

double end_to_end_rate(const ErasureNetwork& net, uint32_t k) {
  if (net.kind != ErasureNetwork::Kind::multipath) {
    const double rate = min_cut_rate(net.paths.at(0));
    if (rate <= 0) throw InfeasibleError("network has a severed link; rate is zero");
    return rate;
  }
  std::vector<double> path_rates;
  path_rates.reserve(net.paths.size());
  for (const auto& hops : net.paths) path_rates.push_back(min_cut_rate(hops));
  return waterfill_alloc(k, path_rates).rate;
}

}  // namespace agecode
