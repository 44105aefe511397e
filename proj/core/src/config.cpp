#include "agecode/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace agecode {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(value) + "'");
  }
  return out;
}

uint64_t parse_uint(std::string_view key, std::string_view value) {
  uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean, got '" +
                    std::string(value) + "'");
}

std::vector<double> parse_erasure_list(std::string_view text) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto field = trim(text.substr(start, comma - start));
    if (field.empty()) throw ConfigError("network: empty erasure entry");
    out.push_back(parse_double("network", field));
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

}  // namespace

ErasureNetwork parse_network(std::string_view text) {
  text = trim(text);
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("network: expected 'single:...', 'multihop:...' or 'multipath:...'");
  }
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  try {
    if (kind == "single") {
      const auto eps = parse_erasure_list(body);
      if (eps.size() != 1) throw ConfigError("network: single takes one erasure probability");
      return ErasureNetwork::single(eps[0]);
    }
    if (kind == "multihop") {
      return ErasureNetwork::multihop(parse_erasure_list(body));
    }
    if (kind == "multipath") {
      std::vector<std::vector<double>> paths;
      size_t start = 0;
      std::string body_str(body);
      while (start <= body_str.size()) {
        size_t bar = body_str.find('|', start);
        if (bar == std::string_view::npos) bar = body_str.size();
        paths.push_back(parse_erasure_list(
            std::string_view(body_str).substr(start, bar - start)));
        start = bar + 1;
        if (bar == body_str.size()) break;
      }
      return ErasureNetwork::multipath(std::move(paths));
    }
  } catch (const UsageError& e) {
    throw ConfigError(std::string("network: ") + e.what());
  }
  throw ConfigError("network: unknown kind '" + std::string(kind) + "'");
}

void apply_assignment(ScenarioParams& params, std::string_view key,
                      std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key.empty()) throw ConfigError("empty key");
  if (value.empty()) throw ConfigError("key '" + std::string(key) + "': empty value");

  if (key == "lambda") {
    params.arrival_prob = parse_double(key, value);
    params.target_utilization.reset();
  } else if (key == "rho") {
    params.target_utilization = parse_double(key, value);
    params.arrival_prob.reset();
  } else if (key == "beta") {
    params.admit_prob = parse_double(key, value);
  } else if (key == "K") {
    params.bucket_size = static_cast<uint32_t>(parse_uint(key, value));
  } else if (key == "L") {
    params.packet_len = parse_double(key, value);
  } else if (key == "D") {
    params.feedback_delay = static_cast<uint32_t>(parse_uint(key, value));
  } else if (key == "r") {
    const double rate = parse_double(key, value);
    if (!(rate > 0) || rate > 1) {
      throw ConfigError("key 'r': single-link rate must lie in (0, 1]");
    }
    params.network = ErasureNetwork::single(1.0 - rate);
  } else if (key == "network") {
    params.network = parse_network(value);
  } else if (key == "q") {
    params.field_order = static_cast<uint32_t>(parse_uint(key, value));
  } else if (key == "horizon") {
    params.horizon = parse_uint(key, value);
  } else if (key == "replications") {
    params.replications = static_cast<uint32_t>(parse_uint(key, value));
  } else if (key == "base_seed") {
    params.base_seed = parse_uint(key, value);
  } else if (key == "payload_bytes") {
    params.payload_bytes = static_cast<uint32_t>(parse_uint(key, value));
  } else if (key == "bucket_join") {
    if (value == "closed") {
      params.bucket_join = BucketJoin::closed;
    } else if (value == "open") {
      params.bucket_join = BucketJoin::open;
    } else {
      throw ConfigError("key 'bucket_join': expected open or closed");
    }
  } else if (key == "wait_for_full_bucket") {
    params.wait_for_full_bucket = parse_bool(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

ScenarioParams parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  ScenarioParams params;
  params.arrival_prob.reset();
  params.target_utilization.reset();

  std::set<std::string> seen;
  bool rate_seen = false;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key{trim(view.substr(0, eq))};
    if (!seen.insert(key).second) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    if (key == "r" || key == "network") {
      if (rate_seen) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": 'r' and 'network' both set; they describe the same thing");
      }
      rate_seen = true;
    }
    try {
      apply_assignment(params, key, view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (seen.count("lambda") && seen.count("rho")) {
    throw ConfigError(path + ": lambda and rho are mutually exclusive");
  }
  if (!params.arrival_prob && !params.target_utilization) {
    params.target_utilization = 0.6;  // baseline utilization
  }
  params.validate();
  return params;
}

}  // namespace agecode
