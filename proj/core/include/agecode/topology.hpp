#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agecode/errors.hpp"

namespace agecode {

/// An erasure network between one source and one destination: a single link,
/// a chain of links in tandem, or several parallel (disjoint) chains.
/// Stored uniformly as a list of paths, each a list of per-hop erasure
/// probabilities.
struct ErasureNetwork {
  enum class Kind { single_link, multihop, multipath };

  Kind kind = Kind::single_link;
  std::vector<std::vector<double>> paths = {{0.2}};

  static ErasureNetwork single(double erasure_prob);
  static ErasureNetwork multihop(std::vector<double> hop_erasures);
  static ErasureNetwork multipath(std::vector<std::vector<double>> path_hops);

  /// "single:0.2", "multihop:0.2,0.5", "multipath:0.2,0.5|0.3".
  std::string describe() const;
};

/// How a bucket of packets is split across parallel paths, and the resulting
/// completion time T = max_j counts[j] / rate[j] and rate K / T.
struct PathAllocation {
  std::vector<uint32_t> counts;
  double finish_time = 0;
  double rate = 0;
};

/// Rate of a chain of links in tandem: min over hops of (1 - erasure).
/// A severed hop (erasure 1) gives rate 0; that is a value, not an error.
double min_cut_rate(std::span<const double> hop_erasures);

/// Split k packets over paths with the given delivery rates so that the
/// slowest path finishes as early as possible. Greedy: each packet goes to
/// the path with the smallest resulting finish time, ties to the lowest path
/// index. Zero-rate paths receive nothing; InfeasibleError if all rates are 0.
PathAllocation waterfill_alloc(uint32_t k, std::span<const double> path_rates);

/// Exhaustive-search reference for waterfill_alloc. Bounded to k <= 14 and at
/// most 4 paths; UsageError beyond that. Intended for validation only.
PathAllocation waterfill_bruteforce(uint32_t k, std::span<const double> path_rates);

/// Maximum feasible end-to-end rate of the network for buckets of k packets:
/// 1 - erasure for a single link, the min-cut for a chain, and K/T from
/// water-filling over per-path min-cut rates for parallel paths (which may
/// exceed 1; consumers that need a per-slot probability must treat it as a
/// time rescaling). InfeasibleError when no path has positive rate.
double end_to_end_rate(const ErasureNetwork& net, uint32_t k);

}  // namespace agecode
