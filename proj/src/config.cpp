#include "halfline/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "json.hpp"

#include "halfline/report.hpp"

namespace halfline {
namespace cli {

namespace {

using halfline::Errc;
using halfline::fail;
using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(Errc::kConfigError, what); }

const std::set<std::string>& known_criterion_ids() {
  static const std::set<std::string> ids = {
      "chain_dominance",       "uniqueness_growth_series", "low_temp_transition_series",
      "weighted_coupling_sum", "square_summability",       "oscillation_sum",
      "variation_sum",         "dominance_products",       "level_sums",
      "power_law_regime"};
  return ids;
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
  }
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where + " must be an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

couplings::CouplingModel parse_model(const json& m) {
  if (!m.is_object()) bad("model must be an object");
  if (!m.contains("type")) bad("model.type is required");
  const std::string type = get_string(m.at("type"), "model.type");
  if (type == "power_law") {
    require_keys(m, "model", {"type", "p"});
    if (!m.contains("p")) bad("model.p is required for power_law");
    return couplings::CouplingModel::power_law(get_number(m.at("p"), "model.p"));
  }
  if (type == "log_power_law") {
    require_keys(m, "model", {"type", "p", "t"});
    if (!m.contains("p")) bad("model.p is required for log_power_law");
    double t = m.contains("t") ? get_number(m.at("t"), "model.t") : 0.0;
    return couplings::CouplingModel::log_power_law(get_number(m.at("p"), "model.p"), t);
  }
  if (type == "hierarchical") {
    require_keys(m, "model", {"type", "alpha"});
    if (!m.contains("alpha")) bad("model.alpha is required for hierarchical");
    return couplings::CouplingModel::hierarchical(get_number(m.at("alpha"), "model.alpha"));
  }
  if (type == "hierarchical_levels") {
    require_keys(m, "model", {"type", "levels"});
    if (!m.contains("levels") || !m.at("levels").is_array())
      bad("model.levels must be an array for hierarchical_levels");
    std::vector<double> levels;
    for (const auto& v : m.at("levels")) levels.push_back(get_number(v, "model.levels[]"));
    return couplings::CouplingModel::hierarchical_levels(std::move(levels));
  }
  if (type == "table") {
    require_keys(m, "model", {"type", "entries"});
    if (!m.contains("entries") || !m.at("entries").is_array())
      bad("model.entries must be an array for table");
    std::vector<std::tuple<int, int, double>> entries;
    for (const auto& e : m.at("entries")) {
      if (!e.is_array() || e.size() != 3)
        bad("model.entries[] must be [site, site, value] triples");
      entries.emplace_back(static_cast<int>(get_integer(e.at(0), "model.entries[][0]")),
                           static_cast<int>(get_integer(e.at(1), "model.entries[][1]")),
                           get_number(e.at(2), "model.entries[][2]"));
    }
    return couplings::CouplingModel::table(entries);
  }
  bad("model.type '" + type + "' is not recognized");
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_run_config(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) bad("configuration is not valid JSON");
  if (!doc.is_object()) bad("configuration root must be an object");
  require_keys(doc, "configuration",
               {"schema", "model", "beta_grid", "left", "sites", "volumes", "cap", "depth",
                "eps_target", "criteria", "probe", "seed", "threads"});

  RunConfig c;
  if (doc.contains("schema")) {
    if (get_integer(doc.at("schema"), "schema") != kSchemaVersion)
      bad("schema must be " + std::to_string(kSchemaVersion));
  }
  if (doc.contains("model")) c.model = parse_model(doc.at("model"));
  if (doc.contains("beta_grid")) {
    const auto& arr = doc.at("beta_grid");
    if (!arr.is_array() || arr.empty()) bad("beta_grid must be a non-empty array");
    c.beta_grid.clear();
    for (const auto& v : arr) {
      double beta = get_number(v, "beta_grid[]");
      if (!(beta >= 0) || !std::isfinite(beta)) bad("beta_grid[] must be finite and >= 0");
      c.beta_grid.push_back(beta);
    }
  }
  if (doc.contains("left")) {
    std::int64_t left = get_integer(doc.at("left"), "left");
    if (left > 0) bad("left must be <= 0");
    if (left < -60) bad("left must be >= -60");
    c.left = static_cast<core::Site>(left);
  }
  if (doc.contains("sites")) {
    const auto& arr = doc.at("sites");
    if (!arr.is_array() || arr.empty()) bad("sites must be a non-empty array");
    c.sites.clear();
    for (const auto& v : arr) {
      std::int64_t site = get_integer(v, "sites[]");
      if (site > 0) bad("sites[] must be <= 0");
      c.sites.push_back(static_cast<core::Site>(site));
    }
  }
  if (doc.contains("volumes")) {
    const auto& arr = doc.at("volumes");
    if (!arr.is_array() || arr.empty()) bad("volumes must be a non-empty array");
    c.volumes.clear();
    for (const auto& v : arr) {
      std::int64_t n = get_integer(v, "volumes[]");
      if (n < 1) bad("volumes[] must be >= 1");
      c.volumes.push_back(static_cast<int>(n));
    }
  }
  if (doc.contains("cap")) {
    std::int64_t cap = get_integer(doc.at("cap"), "cap");
    if (cap < 1 || cap > 62) bad("cap must be in [1, 62]");
    c.cap = static_cast<int>(cap);
  }
  if (doc.contains("depth")) {
    const auto& v = doc.at("depth");
    if (v.is_null()) {
      c.depth = couplings::kDepthInfinite;
    } else {
      double depth = get_number(v, "depth");
      if (!(depth >= 0) || !std::isfinite(depth)) bad("depth must be finite and >= 0 (or null)");
      c.depth = depth;
    }
  }
  if (doc.contains("eps_target")) {
    const auto& v = doc.at("eps_target");
    if (!v.is_null()) {
      double eps = get_number(v, "eps_target");
      if (!(eps > 0) || !std::isfinite(eps)) bad("eps_target must be finite and > 0");
      c.eps_target = eps;
    }
  }
  if (doc.contains("criteria")) {
    const auto& arr = doc.at("criteria");
    if (!arr.is_array()) bad("criteria must be an array of report ids");
    c.criteria.clear();
    for (const auto& v : arr) {
      std::string id = get_string(v, "criteria[]");
      if (!known_criterion_ids().count(id)) bad("unknown criterion id '" + id + "'");
      c.criteria.push_back(std::move(id));
    }
  }
  if (doc.contains("probe")) {
    const auto& p = doc.at("probe");
    if (!p.is_object()) bad("probe must be an object");
    require_keys(p, "probe", {"mode", "sweeps", "burn_in", "replicas"});
    if (p.contains("mode")) {
      std::string mode = get_string(p.at("mode"), "probe.mode");
      if (mode == "exact") c.probe_mode = probe::Mode::kExact;
      else if (mode == "mcmc") c.probe_mode = probe::Mode::kMcmc;
      else bad("probe.mode must be \"exact\" or \"mcmc\"");
    }
    if (p.contains("sweeps")) {
      std::int64_t n = get_integer(p.at("sweeps"), "probe.sweeps");
      if (n < 1) bad("probe.sweeps must be >= 1");
      c.mcmc.sweeps = static_cast<std::uint64_t>(n);
    }
    if (p.contains("burn_in")) {
      std::int64_t n = get_integer(p.at("burn_in"), "probe.burn_in");
      if (n < 0) bad("probe.burn_in must be >= 0");
      c.mcmc.burn_in = static_cast<std::uint64_t>(n);
    }
    if (p.contains("replicas")) {
      std::int64_t n = get_integer(p.at("replicas"), "probe.replicas");
      if (n < 1) bad("probe.replicas must be >= 1");
      c.mcmc.replicas = static_cast<int>(n);
    }
  }
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_integer()) bad("seed must be a non-negative integer");
    if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)
      bad("seed must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    std::int64_t n = get_integer(doc.at("threads"), "threads");
    if (n < 1 || n > 256) bad("threads must be in [1, 256]");
    c.threads = static_cast<int>(n);
  }
  c.mcmc.seed = c.seed;
  return c;
}

std::string resolved_config_json(const RunConfig& c) {
  JsonWriter w;
  w.begin_object();
  w.kv_int("schema", kSchemaVersion);
  w.key("model").begin_object();
  w.kv("type", c.model.type_token());
  switch (c.model.kind()) {
    case couplings::CouplingModel::Kind::kPowerLaw:
      w.kv("p", c.model.param_p());
      break;
    case couplings::CouplingModel::Kind::kLogPowerLaw:
      w.kv("p", c.model.param_p());
      w.kv("t", c.model.param_t());
      break;
    case couplings::CouplingModel::Kind::kHierarchical:
      w.kv("alpha", c.model.param_alpha());
      break;
    case couplings::CouplingModel::Kind::kHierarchicalLevels: {
      w.key("levels").begin_array();
      for (double b : c.model.level_weights()) w.value(b);
      w.end_array();
      break;
    }
    case couplings::CouplingModel::Kind::kTable: {
      w.key("entries").begin_array();
      for (const auto& [i, j, v] : c.model.table_entries())
        w.begin_array().value_int(i).value_int(j).value(v).end_array();
      w.end_array();
      break;
    }
  }
  w.end_object();
  w.key("beta_grid").begin_array();
  for (double beta : c.beta_grid) w.value(beta);
  w.end_array();
  w.kv_int("left", c.left);
  w.key("sites").begin_array();
  for (core::Site site : c.sites) w.value_int(site);
  w.end_array();
  w.key("volumes").begin_array();
  for (int n : c.volumes) w.value_int(n);
  w.end_array();
  w.kv_int("cap", c.cap);
  if (std::isfinite(c.depth)) w.kv("depth", c.depth);
  else w.key("depth").null_value();
  if (c.eps_target) w.kv("eps_target", *c.eps_target);
  else w.key("eps_target").null_value();
  w.key("criteria").begin_array();
  for (const auto& id : c.criteria) w.value(id);
  w.end_array();
  w.key("probe").begin_object();
  w.kv("mode", probe::mode_token(c.probe_mode));
  w.kv_uint("sweeps", c.mcmc.sweeps);
  w.kv_uint("burn_in", c.mcmc.burn_in);
  w.kv_int("replicas", c.mcmc.replicas);
  w.end_object();
  w.kv_uint("seed", c.seed);
  w.kv_int("threads", c.threads);
  w.end_object();
  return w.str();
}

}  // namespace cli
}  // namespace halfline
