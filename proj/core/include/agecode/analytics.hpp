#pragma once

#include <cstdint>

#include "agecode/errors.hpp"

namespace agecode {

/// Per-packet service model of coded transmission over an erasure channel.
///
/// A bucket of bucket_size packets needs X transmission slots until
/// bucket_size of them get through (X is negative binomial with per-slot
/// success probability success_prob), plus feedback_delay slots for the
/// acknowledgement; each of the bucket's packets is charged an equal share,
/// S = (X + D) / (L K) slots.
struct ServiceModel {
  double success_prob = 0.8;   // end-to-end per-slot success probability, (0, 1] for
                               // real channels; > 1 admitted analytically for
                               // parallel-path rates (time rescaling)
  double packet_len = 1.0;     // L, time units per packet, > 0
  double feedback_delay = 1.0; // D, slots, >= 0
  uint32_t bucket_size = 1;    // K, packets combined per generation, >= 1
};

/// Bernoulli arrival process after admission control.
struct TrafficSpec {
  double arrival_prob = 0.3;  // lambda, admitted packets per slot, (0, 1)
  double admit_prob = 1.0;    // beta; the raw arrival rate is lambda / beta

  double raw_arrival_prob() const { return arrival_prob / admit_prob; }
};

/// Bundle of the closed-form results for one operating point.
struct AoiResult {
  double avg_aoi = 0;      // slots
  double peak_aoi = 0;     // slots
  double mean_wait = 0;    // slots
  double utilization = 0;  // rho = lambda * E[S]
  double throughput = 0;   // mu = 1 / E[S], packets per slot
};

// --- Service-time statistics -------------------------------------------------

/// E[S] = 1/(rL) + D/(LK).
double service_mean(const ServiceModel& m);

/// Var(S) = (1-r) / (L^2 K r^2).
double service_variance(const ServiceModel& m);

/// E[S^2] = ((1-r)K + (K + D r)^2) / (L r K)^2.
double service_second_moment(const ServiceModel& m);

/// Probability generating function of S at z in (0, 1], evaluated in the log
/// domain. DomainError outside the convergence region.
double service_pgf(double z, const ServiceModel& m);

// --- Delay cost and throughput ----------------------------------------------

/// Normalized p-norm delay cost d(p) = (K/r + D) / (L K^{1/p}), p in [1, inf].
/// p = infinity gives the per-packet delay (K/r + D)/L. UsageError if p < 1.
double delay_cost(double p, const ServiceModel& m);

/// mu = 1 / d(1) = 1 / E[S].
double throughput(const ServiceModel& m);

// --- Ber/G/1 timeliness ------------------------------------------------------

/// rho = lambda * E[S].
double utilization(const TrafficSpec& t, const ServiceModel& m);

/// Mean waiting time (lambda E[S^2] - rho) / (2 (1 - rho)).
/// StabilityError when rho >= 1 - 1e-9.
double mean_wait(const TrafficSpec& t, const ServiceModel& m);

/// Peak age of information, expanded closed form.
double peak_aoi(const TrafficSpec& t, const ServiceModel& m);

/// Average age of information, expanded closed form.
double avg_aoi(const TrafficSpec& t, const ServiceModel& m);

/// Peak AoI assembled from the generic Ber/G/1 pieces (1/lambda + 1/mu + E[W]).
/// Agrees with peak_aoi to floating-point accuracy; kept as an independent
/// route for validation.
double peak_aoi_queue_form(const TrafficSpec& t, const ServiceModel& m);

/// Average AoI from the generic Ber/G/1 form
/// 1 + 1/mu + (1-lambda)(1-rho)/(lambda L_S(1-lambda)) + E[W].
double avg_aoi_queue_form(const TrafficSpec& t, const ServiceModel& m);

/// Everything above for one operating point.
AoiResult evaluate_aoi(const TrafficSpec& t, const ServiceModel& m);

/// The arrival probability that produces utilization rho, lambda = rho / E[S].
/// DomainError if the result is not a valid Bernoulli probability (< 1).
double lambda_for_utilization(double rho, const ServiceModel& m);

// --- Coded-vs-uncoded comparison ----------------------------------------------

/// How the coded case's arrival rate relates to the uncoded (K = 1) baseline
/// in reduction tables: same utilization, or same arrival rate.
enum class ReductionCoupling { fixed_utilization, fixed_arrival_rate };

/// Reduction in average AoI of bucket size k versus the uncoded baseline at
/// utilization rho0, both with packet_len 1 and the given feedback delay and
/// success probability.
double aaoi_reduction(uint32_t k, double feedback_delay, double success_prob,
                      double rho0, ReductionCoupling coupling);

}  // namespace agecode
