#include "agecode/scenario.hpp"

#include <cmath>
#include <string>

namespace agecode {

void ScenarioParams::validate() const {
  if (arrival_prob.has_value() == target_utilization.has_value()) {
    throw ConfigError("exactly one of lambda and rho must be set");
  }
  if (arrival_prob && (!(*arrival_prob >= 0) || *arrival_prob > 1)) {
    throw ConfigError("lambda must lie in [0, 1]");
  }
  if (target_utilization) {
    if (!(*target_utilization > 0)) throw ConfigError("rho must be positive");
    if (*target_utilization >= 1) {
      throw StabilityError("rho = " + std::to_string(*target_utilization) +
                           " >= 1: queue cannot be stable");
    }
  }
  if (!(admit_prob > 0) || admit_prob > 1) throw ConfigError("beta must lie in (0, 1]");
  if (arrival_prob && *arrival_prob / admit_prob > 1.0 + 1e-12) {
    throw ConfigError("lambda / beta exceeds 1: raw arrivals are Bernoulli");
  }
  if (bucket_size < 1) throw ConfigError("K must be >= 1");
  if (!(packet_len > 0)) throw ConfigError("L must be positive");
  if (field_order < 2 || field_order > 65536 ||
      (field_order & (field_order - 1)) != 0) {
    throw ConfigError("q must be a power of two in [2, 65536]");
  }
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (payload_bytes < 1) throw ConfigError("payload_bytes must be >= 1");
}

ResolvedScenario resolve(const ScenarioParams& params) {
  params.validate();
  ResolvedScenario out;
  out.rate = end_to_end_rate(params.network, params.bucket_size);
  out.model = ServiceModel{out.rate, params.packet_len,
                           static_cast<double>(params.feedback_delay),
                           params.bucket_size};
  out.lambda = params.arrival_prob
                   ? *params.arrival_prob
                   : lambda_for_utilization(*params.target_utilization, out.model);
  out.utilization = out.lambda * service_mean(out.model);
  return out;
}

}  // namespace agecode
