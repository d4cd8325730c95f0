#pragma once

// Run configuration: a versioned JSON schema with strict validation (unknown
// keys are rejected everywhere) and a canonical serialization so identical
// runs resolve to byte-identical resolved_config.json documents.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/couplings.hpp"
#include "halfline/probe.hpp"

namespace halfline {
namespace cli {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  couplings::CouplingModel model = couplings::CouplingModel::power_law(2.5);
  std::vector<double> beta_grid = {1.0};
  core::Site left = -6;                 // kernel window / scan lower end
  std::vector<core::Site> sites = {0, -4, -8};  // singleton sites i
  std::vector<int> volumes = {4, 8, 12};
  int cap = core::kDefaultCap;
  double depth = couplings::kDepthInfinite;  // exterior truncation depth
  std::optional<double> eps_target;     // if set, depth was resolved from it
  std::vector<std::string> criteria;    // report-id filter; empty = all
  probe::Mode probe_mode = probe::Mode::kExact;
  probe::McmcParams mcmc;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Built-in defaults (equivalent to parsing "{}").
RunConfig default_config();

// Strict parse: the document must be a JSON object; every key must be known,
// every value well-typed and in range.  Violations fail with
// Errc::kConfigError and a message naming the offending key.
RunConfig parse_run_config(const std::string& json_text);

// Canonical serialization: fixed key order, fmt17 floats, trailing newline.
// parse_run_config(resolved_config_json(c)) reproduces c.
std::string resolved_config_json(const RunConfig& c);

}  // namespace cli
}  // namespace halfline
