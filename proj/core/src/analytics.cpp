#include "agecode/analytics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace agecode {
namespace {

constexpr double kStabilityMargin = 1e-9;

void check_model(const ServiceModel& m) {
  if (!(m.success_prob > 0)) throw UsageError("success_prob must be positive");
  if (!(m.packet_len > 0)) throw UsageError("packet_len must be positive");
  if (!(m.feedback_delay >= 0)) throw UsageError("feedback_delay must be >= 0");
  if (m.bucket_size < 1) throw UsageError("bucket_size must be >= 1");
}

void check_traffic(const TrafficSpec& t) {
  if (!(t.arrival_prob > 0) || !(t.arrival_prob < 1)) {
    throw DomainError("arrival probability must lie in (0, 1), got " +
                      std::to_string(t.arrival_prob));
  }
  if (!(t.admit_prob > 0) || t.admit_prob > 1) {
    throw UsageError("admit probability must lie in (0, 1]");
  }
}

void check_stable(double rho) {
  if (rho >= 1.0 - kStabilityMargin) {
    throw StabilityError("utilization " + std::to_string(rho) +
                         " >= 1: queue is unstable");
  }
}

}  // namespace

double service_mean(const ServiceModel& m) {
  check_model(m);
  const double r = m.success_prob;
  const double l = m.packet_len;
  const double k = m.bucket_size;
  return 1.0 / (r * l) + m.feedback_delay / (l * k);
}

double service_variance(const ServiceModel& m) {
  check_model(m);
  const double r = m.success_prob;
  const double l = m.packet_len;
  const double k = m.bucket_size;
  return (1.0 - r) / (l * l * k * r * r);
}

double service_second_moment(const ServiceModel& m) {
  check_model(m);
  const double r = m.success_prob;
  const double l = m.packet_len;
  const double k = m.bucket_size;
  const double d = m.feedback_delay;
  const double lrk = l * r * k;
  return ((1.0 - r) * k + (k + d * r) * (k + d * r)) / (lrk * lrk);
}

double service_pgf(double z, const ServiceModel& m) {
  check_model(m);
  if (!(z > 0) || z > 1) {
    throw DomainError("service_pgf: z must lie in (0, 1], got " + std::to_string(z));
  }
  const double r = m.success_prob;
  const double k = m.bucket_size;
  const double lk = m.packet_len * k;
  // log z^(D/LK) + K [log r + (1/LK) log z - log(1 - (1-r) z^(1/LK))]
  const double log_z = std::log(z);
  const double z_root = std::exp(log_z / lk);
  const double denom = 1.0 - (1.0 - r) * z_root;
  if (!(denom > 0)) {
    throw DomainError("service_pgf: outside convergence region");
  }
  const double log_pgf = (m.feedback_delay / lk) * log_z +
                         k * (std::log(r) + log_z / lk - std::log(denom));
  return std::exp(log_pgf);
}

double delay_cost(double p, const ServiceModel& m) {
  check_model(m);
  if (!(p >= 1)) throw UsageError("delay_cost: p must be >= 1");
  const double k = m.bucket_size;
  const double per_bucket = k / m.success_prob + m.feedback_delay;
  if (std::isinf(p)) return per_bucket / m.packet_len;
  // K^(1/p) in the log domain.
  const double k_root = std::exp(std::log(k) / p);
  return per_bucket / (m.packet_len * k_root);
}

double throughput(const ServiceModel& m) { return 1.0 / delay_cost(1.0, m); }

double utilization(const TrafficSpec& t, const ServiceModel& m) {
  check_traffic(t);
  return t.arrival_prob * service_mean(m);
}

double mean_wait(const TrafficSpec& t, const ServiceModel& m) {
  const double rho = utilization(t, m);
  check_stable(rho);
  return (t.arrival_prob * service_second_moment(m) - rho) / (2.0 * (1.0 - rho));
}

double peak_aoi(const TrafficSpec& t, const ServiceModel& m) {
  check_traffic(t);
  check_model(m);
  const double lambda = t.arrival_prob;
  const double r = m.success_prob;
  const double l = m.packet_len;
  const double k = m.bucket_size;
  const double d = m.feedback_delay;
  const double klr = k * l * r;
  const double kdr = k + d * r;
  const double rho = lambda * kdr / klr;
  check_stable(rho);
  // 1/lambda + E[S] + (lambda [K(1-r) - KLr(K+Dr) + (K+Dr)^2]) /
  //                   (2 [(KLr)^2 - lambda KLr (K+Dr)])
  const double numer = lambda * (k * (1.0 - r) - klr * kdr + kdr * kdr);
  const double denom = 2.0 * (klr * klr - lambda * klr * kdr);
  return 1.0 / lambda + kdr / klr + numer / denom;
}

double avg_aoi(const TrafficSpec& t, const ServiceModel& m) {
  const double lambda = t.arrival_prob;
  const double peak = peak_aoi(t, m);
  const double r = m.success_prob;
  const double k = m.bucket_size;
  const double lk = m.packet_len * k;
  const double rho = lambda * (k + m.feedback_delay * r) / (lk * r);
  // (1-lambda)(1-rho) / (lambda (1-lambda)^(D/LK) (r (1-lambda)^(1/LK) /
  //   (1 - (1-r)(1-lambda)^(1/LK)))^K), exponentials in the log domain.
  const double log_1ml = std::log1p(-lambda);
  const double root = std::exp(log_1ml / lk);
  const double log_ls = (m.feedback_delay / lk) * log_1ml +
                        k * (std::log(r) + log_1ml / lk -
                             std::log(1.0 - (1.0 - r) * root));
  const double third = std::exp(log_1ml + std::log1p(-rho) - std::log(lambda) - log_ls);
  return peak + (1.0 - 1.0 / lambda) + third;
}

double peak_aoi_queue_form(const TrafficSpec& t, const ServiceModel& m) {
  // 1/lambda + 1/mu + E[W], each piece from its own closed form.
  return 1.0 / t.arrival_prob + service_mean(m) + mean_wait(t, m);
}

double avg_aoi_queue_form(const TrafficSpec& t, const ServiceModel& m) {
  const double lambda = t.arrival_prob;
  const double rho = utilization(t, m);
  check_stable(rho);
  const double pgf = service_pgf(1.0 - lambda, m);
  return 1.0 + service_mean(m) +
         (1.0 - lambda) * (1.0 - rho) / (lambda * pgf) + mean_wait(t, m);
}

AoiResult evaluate_aoi(const TrafficSpec& t, const ServiceModel& m) {
  AoiResult out;
  out.utilization = utilization(t, m);
  check_stable(out.utilization);
  out.throughput = throughput(m);
  out.mean_wait = mean_wait(t, m);
  out.peak_aoi = peak_aoi(t, m);
  out.avg_aoi = avg_aoi(t, m);
  return out;
}

double lambda_for_utilization(double rho, const ServiceModel& m) {
  if (!(rho > 0) || !(rho < 1)) {
    throw DomainError("utilization must lie in (0, 1), got " + std::to_string(rho));
  }
  const double lambda = rho / service_mean(m);
  if (lambda >= 1.0) {
    throw DomainError("utilization " + std::to_string(rho) +
                      " requires arrival probability " + std::to_string(lambda) +
                      " >= 1");
  }
  return lambda;
}

double aaoi_reduction(uint32_t k, double feedback_delay, double success_prob,
                      double rho0, ReductionCoupling coupling) {
  if (k < 2) throw UsageError("aaoi_reduction: coded bucket size must be >= 2");
  const ServiceModel uncoded{success_prob, 1.0, feedback_delay, 1};
  const ServiceModel coded{success_prob, 1.0, feedback_delay, k};
  const double lambda_base = lambda_for_utilization(rho0, uncoded);
  const double lambda_coded = coupling == ReductionCoupling::fixed_utilization
                                  ? lambda_for_utilization(rho0, coded)
                                  : lambda_base;
  const double base = avg_aoi(TrafficSpec{lambda_base, 1.0}, uncoded);
  const double with_coding = avg_aoi(TrafficSpec{lambda_coded, 1.0}, coded);
  return base - with_coding;
}

}  // namespace agecode
