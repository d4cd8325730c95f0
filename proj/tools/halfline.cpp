// halfline: command-line driver for the half-line chain toolkit.
//
// Subcommands compute boundary-law kernel tables, chain/specification
// roundtrip checks, past-sensitivity scans, uniqueness/transition criterion
// reports, finite-volume phase probes and the canonical regime table.  Every
// run emits resolved_config.json (canonical, byte-stable) plus the subcommand
// payloads into --out; wall-clock metadata goes to run_meta.json so payloads
// of identical runs stay byte-identical.
//
// Exit codes: 0 success, 2 validation/configuration error, 3 violated
// numerical invariant.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "halfline/config.hpp"
#include "halfline/core.hpp"
#include "halfline/correspondence.hpp"
#include "halfline/couplings.hpp"
#include "halfline/criteria.hpp"
#include "halfline/kernels.hpp"
#include "halfline/probe.hpp"
#include "halfline/report.hpp"
#include "halfline/rng.hpp"
#include "halfline/sensitivity.hpp"
#include "halfline/series.hpp"

namespace {

using halfline::Errc;
using halfline::fail;
namespace core = halfline::core;
namespace couplings = halfline::couplings;
namespace kernels = halfline::kernels;
namespace correspondence = halfline::correspondence;
namespace sensitivity = halfline::sensitivity;
namespace series = halfline::series;
namespace criteria = halfline::criteria;
namespace probe = halfline::probe;
namespace cli = halfline::cli;

constexpr const char* kToolVersion = "1.0.0";
constexpr double kRoundtripTolerance = 1e-10;

struct CommonFlags {
  std::string config_path;
  std::string out_dir = "halfline_out";
  int threads = 1;
  std::uint64_t seed = 1;
  int cap = core::kDefaultCap;
  double depth = couplings::kDepthInfinite;
  CLI::Option* o_threads = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_cap = nullptr;
  CLI::Option* o_depth = nullptr;
};

void add_common_flags(CLI::App* sub, CommonFlags& fl) {
  sub->add_option("--config", fl.config_path, "JSON run configuration file");
  sub->add_option("--out", fl.out_dir, "output directory [halfline_out]");
  fl.o_threads =
      sub->add_option("--threads", fl.threads, "worker threads")->check(CLI::Range(1, 256));
  fl.o_seed = sub->add_option("--seed", fl.seed, "base PRNG seed");
  fl.o_cap = sub->add_option("--cap", fl.cap, "enumeration cap in window bits")
                 ->check(CLI::Range(1, 62));
  fl.o_depth = sub->add_option("--depth", fl.depth,
                               "exterior truncation depth in sites (inf for the full tail)");
}

cli::RunConfig load_config(const CommonFlags& fl) {
  cli::RunConfig cfg = fl.config_path.empty()
                           ? cli::default_config()
                           : cli::parse_run_config(cli::read_text_file(fl.config_path));
  if (fl.o_threads->count()) cfg.threads = fl.threads;
  if (fl.o_seed->count()) cfg.seed = fl.seed;
  if (fl.o_cap->count()) cfg.cap = fl.cap;
  if (fl.o_depth->count()) {
    if (!(fl.depth >= 0)) fail(Errc::kConfigError, "--depth must be >= 0");
    cfg.depth = fl.depth;
  }
  cfg.mcmc.seed = cfg.seed;
  if (cfg.eps_target && !std::isfinite(cfg.depth)) {
    // Resolve the depth once, against the widest window and hottest coupling
    // of the run, and freeze it into the resolved configuration.
    int wmax = 1 - cfg.left;
    for (int n : cfg.volumes) wmax = std::max(wmax, n);
    const double beta_max = *std::max_element(cfg.beta_grid.begin(), cfg.beta_grid.end());
    cfg.depth = kernels::default_depth({cfg.model, beta_max}, wmax, *cfg.eps_target);
  }
  return cfg;
}

std::string bool_token(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// kernel: full window tables under the all-plus exterior

void run_kernel(const cli::RunConfig& cfg, const std::string& out) {
  const core::Window win{cfg.left, 0};
  const kernels::ExteriorSpec ext{core::BoundaryCondition::all_plus(), cfg.depth};
  const std::vector<std::string> header = {"model", "param",       "beta",
                                           "left",  "rank",        "config",
                                           "probability", "log_weight", "eps"};
  std::vector<std::vector<std::string>> rows;
  for (const double beta : cfg.beta_grid) {
    const kernels::KernelTable table =
        kernels::gibbs_kernel({cfg.model, beta}, win, ext, {}, {}, cfg.cap);
    const std::uint64_t count = core::config_count(win.size(), 2, cfg.cap);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
      rows.push_back({cfg.model.type_token(), cfg.model.param_string(), cli::fmt17(beta),
                      std::to_string(cfg.left), std::to_string(rank),
                      table.config_at(rank).to_string(2), cli::fmt17(table.prob(rank)),
                      cli::fmt17(table.log_weight(rank)), cli::fmt17(table.meta().eps)});
    }
  }
  cli::write_text_file(out + "/kernel.csv", cli::csv_document(header, rows));
  std::cout << "kernel: " << rows.size() << " rows over window [" << cfg.left << ", 0] -> "
            << out << "/kernel.csv\n";
}

// ---------------------------------------------------------------------------
// correspondence-check: both roundtrips on potential and random instances

void run_correspondence(const cli::RunConfig& cfg, const std::string& out) {
  // Full-window roundtrips enumerate every window/context pair; keep the
  // explicit range small enough for exhaustive checks.
  const core::Site left = std::max<core::Site>(cfg.left, -5);
  const double beta0 = cfg.beta_grid.front();
  const kernels::ExteriorSpec ext{core::BoundaryCondition::all_plus(), cfg.depth};
  const couplings::IsingPotential pot{cfg.model, beta0};

  const std::vector<std::string> header = {"instance", "roundtrip", "q", "left", "defect"};
  std::vector<std::vector<std::string>> rows;
  double max_defect = 0;
  auto record = [&](const std::string& inst, const std::string& kind, int q, core::Site l,
                    double defect) {
    rows.push_back({inst, kind, std::to_string(q), std::to_string(l), cli::fmt17(defect)});
    max_defect = std::max(max_defect, defect);
  };

  {
    const correspondence::PotentialLSS f(pot, left, ext, cfg.cap);
    record("potential_singletons", "chain_to_kernels_to_chain", 2, left,
           correspondence::roundtrip_defect_cb(f, cfg.cap));
    const correspondence::PotentialSpec gamma(pot, left, ext, cfg.cap);
    record("potential_kernels", "kernels_to_chain_to_kernels", 2, left,
           correspondence::roundtrip_defect_bc(gamma, cfg.cap));
  }
  halfline::rng::CounterRng gen(cfg.seed, 777);
  const core::Site rleft = std::max<core::Site>(left, -4);
  for (int t = 0; t < 3; ++t) {
    const int q = 2 + (t % 2);
    auto f = std::make_shared<correspondence::TableLSS>(
        correspondence::TableLSS::random(rleft, q, gen));
    record("random_table_" + std::to_string(t), "chain_to_kernels_to_chain", q, rleft,
           correspondence::roundtrip_defect_cb(*f, cfg.cap));
    if (t == 0) {
      auto gamma = correspondence::map_b(f);
      record("random_table_" + std::to_string(t), "kernels_to_chain_to_kernels", q, rleft,
             correspondence::roundtrip_defect_bc(*gamma, cfg.cap));
    }
  }

  cli::write_text_file(out + "/correspondence.csv", cli::csv_document(header, rows));
  std::cout << "correspondence: " << rows.size() << " roundtrips, max defect "
            << cli::fmt6(max_defect) << " -> " << out << "/correspondence.csv\n";
  if (!(max_defect <= kRoundtripTolerance)) {
    fail(Errc::kNumericInvariant, "roundtrip defect " + cli::fmt17(max_defect) +
                                      " exceeds tolerance " + cli::fmt17(kRoundtripTolerance));
  }
}

// ---------------------------------------------------------------------------
// sensitivity: past-sensitivity scan over the configured sites

void run_sensitivity(const cli::RunConfig& cfg, const std::string& out) {
  sensitivity::Options opt;
  opt.beyond = kernels::ExteriorSpec{core::BoundaryCondition::all_plus(), cfg.depth};
  opt.cap = cfg.cap;
  const std::vector<std::string> header = {
      "model",  "param", "beta",  "i",          "k",         "var",
      "osc",    "a",     "b",     "method",     "depth",     "osc_bound",
      "var_bound", "osc_shortcut", "var_shortcut"};
  std::vector<std::vector<std::string>> rows;
  for (const double beta : cfg.beta_grid) {
    const couplings::IsingPotential pot{cfg.model, beta};
    for (const core::Site i : cfg.sites) {
      if (cfg.left > i - 1) continue;  // no past sites inside the scan range
      for (const auto& row : sensitivity::sensitivity_scan(pot, i, cfg.left, i - 1, opt)) {
        const char* method = row.method == sensitivity::Method::kExtremalTails
                                 ? "extremal_tails"
                                 : "exhaustive_tails";
        rows.push_back({cfg.model.type_token(), cfg.model.param_string(), cli::fmt17(beta),
                        std::to_string(row.i), std::to_string(row.k), cli::fmt17(row.coeff.var),
                        cli::fmt17(row.coeff.osc), cli::fmt17(row.coeff.a),
                        cli::fmt17(row.coeff.b), method, std::to_string(row.depth),
                        cli::fmt17(row.bounds.osc_bound), cli::fmt17(row.bounds.var_bound),
                        cli::fmt17(row.bounds.osc_shortcut),
                        cli::fmt17(row.bounds.var_shortcut)});
      }
    }
  }
  cli::write_text_file(out + "/sensitivity.csv", cli::csv_document(header, rows));
  std::cout << "sensitivity: " << rows.size() << " rows -> " << out << "/sensitivity.csv\n";
}

// ---------------------------------------------------------------------------
// criteria: criterion reports for the configured model

void run_criteria(const cli::RunConfig& cfg, const std::string& out) {
  if (!cfg.model.summable() && !std::isfinite(cfg.model.support_radius())) {
    fail(Errc::kConfigError,
         "coupling tail sums diverge for " + cfg.model.describe() +
             ": singleton conditionals are not well defined on the half line");
  }
  auto want = [&](const char* id) {
    return cfg.criteria.empty() ||
           std::find(cfg.criteria.begin(), cfg.criteria.end(), id) != cfg.criteria.end();
  };
  const bool hierarchical_kind =
      cfg.model.kind() == couplings::CouplingModel::Kind::kHierarchical ||
      cfg.model.kind() == couplings::CouplingModel::Kind::kHierarchicalLevels;

  std::vector<criteria::CriterionReport> reports;
  if (want("low_temp_transition_series"))
    reports.push_back(criteria::dyson_transition_condition(cfg.model));
  if (want("weighted_coupling_sum")) reports.push_back(criteria::kac_thompson(cfg.model));
  if (cfg.model.kind() == couplings::CouplingModel::Kind::kPowerLaw && want("power_law_regime"))
    reports.push_back(criteria::power_law_classify(cfg.model.param_p(), cfg.beta_grid));
  for (const double beta : cfg.beta_grid) {
    if (want("uniqueness_growth_series"))
      reports.push_back(criteria::ising_uniqueness_condition(cfg.model, beta));
    if (hierarchical_kind && want("level_sums"))
      reports.push_back(criteria::hierarchical_criterion(cfg.model, beta));
    const couplings::IsingPotential pot{cfg.model, beta};
    for (const core::Site i : cfg.sites) {
      if (want("chain_dominance")) reports.push_back(criteria::cff(pot, i));
      if (want("square_summability")) reports.push_back(criteria::johansson_oberg(pot, i));
      if (want("oscillation_sum")) reports.push_back(criteria::one_sided_dobrushin(pot, i));
      if (want("variation_sum"))
        reports.push_back(criteria::boundary_uniformity_series(pot, i));
      if (want("dominance_products")) reports.push_back(criteria::harris_stenflo(pot, i));
    }
  }

  cli::write_text_file(out + "/report.json", cli::criteria_reports_json(reports));
  for (const auto& r : reports) {
    std::cout << "  " << r.id << " [" << r.inputs
              << "]: " << criteria::verdict_token(r.verdict)
              << (r.counterexample ? " (counterexample)" : "") << "\n";
  }
  std::cout << "criteria: " << reports.size() << " reports -> " << out << "/report.json\n";
}

std::string regimes_csv(const std::vector<criteria::RegimeRow>& rows) {
  const std::vector<std::string> header = {"model", "param", "regime", "johansson",
                                           "kac_thompson"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({row.model, row.param, row.regime, bool_token(row.johansson),
                     bool_token(row.kac_thompson)});
  }
  return cli::csv_document(header, cells);
}

// ---------------------------------------------------------------------------
// phase-probe: boundary-condition magnetization gaps over (volume, beta)

void run_probe(const cli::RunConfig& cfg, const std::string& out) {
  probe::ProbeConfig pc;
  pc.model = cfg.model;
  pc.betas = cfg.beta_grid;
  pc.volumes = cfg.volumes;
  pc.exterior = kernels::ExteriorSpec{core::BoundaryCondition::all_plus(), cfg.depth};
  pc.mode = cfg.probe_mode;
  pc.mcmc = cfg.mcmc;
  pc.cap = cfg.cap;
  pc.threads = cfg.threads;
  for (const auto& w : probe::config_warnings(pc)) std::cerr << "warning: " << w << "\n";

  const std::vector<probe::GapEstimate> gaps = probe::bc_gap_scan(pc);
  const std::vector<std::string> header = {"model", "p_or_alpha", "beta", "n",   "mode",
                                           "m_plus", "m_minus",   "gap",  "stderr", "ess",
                                           "D",      "epsD",      "seed"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& g : gaps) {
    const double eps = kernels::truncation_eps({cfg.model, g.beta}, g.n, pc.exterior);
    rows.push_back({cfg.model.type_token(), cfg.model.param_string(), cli::fmt17(g.beta),
                    std::to_string(g.n), probe::mode_token(cfg.probe_mode),
                    cli::fmt17(g.m_plus), cli::fmt17(g.m_minus), cli::fmt17(g.gap),
                    cli::fmt17(g.std_error), cli::fmt17(g.ess), cli::fmt17(cfg.depth),
                    cli::fmt17(eps), std::to_string(cfg.seed)});
    std::cout << "  n=" << g.n << " beta=" << cli::fmt6(g.beta) << " gap=" << cli::fmt6(g.gap)
              << " (stderr " << cli::fmt6(g.std_error) << ", trend " << cli::fmt6(g.trend)
              << ")\n";
  }
  cli::write_text_file(out + "/probe.csv", cli::csv_document(header, rows));
  std::cout << "phase-probe: " << rows.size() << " rows -> " << out << "/probe.csv\n";
}

// ---------------------------------------------------------------------------
// regimes: canonical table, or a custom power-law exponent sweep

void run_regimes(const std::string& out, const std::string& model_flag,
                 const std::vector<double>& ps) {
  std::vector<criteria::RegimeRow> rows;
  if (!model_flag.empty() || !ps.empty()) {
    if (model_flag != "power_law")
      fail(Errc::kConfigError, "--model supports only power_law exponent sweeps");
    if (ps.empty()) fail(Errc::kConfigError, "--p requires at least one exponent");
    for (const double p : ps) {
      criteria::RegimeRow row;
      row.model = "power_law";
      row.param = cli::fmt6(p);
      row.regime = criteria::regime_token(criteria::power_law_classify(p).verdict);
      const couplings::CouplingModel model = couplings::CouplingModel::power_law(p);
      row.johansson = criteria::johansson_oberg({model, 1.0}, 0, 2).condition_met;
      row.kac_thompson = criteria::kac_thompson(model).counterexample;
      rows.push_back(row);
    }
  } else {
    rows = criteria::regimes_table();
  }
  cli::write_text_file(out + "/regimes.csv", regimes_csv(rows));
  for (const auto& row : rows) {
    std::cout << "  " << row.model << " " << row.param << ": " << row.regime
              << (row.johansson ? " [square-summable]" : "")
              << (row.kac_thompson ? " [weighted-sum counterexample]" : "") << "\n";
  }
  std::cout << "regimes: " << rows.size() << " rows -> " << out << "/regimes.csv\n";
}

// ---------------------------------------------------------------------------
// selftest: quick invariants of the zero-coupling and calibration regimes

void run_selftest(const cli::RunConfig& cfg) {
  const couplings::IsingPotential pot0{couplings::CouplingModel::power_law(2.0), 0.0};
  const kernels::ExteriorSpec ext{core::BoundaryCondition::all_plus(),
                                  couplings::kDepthInfinite};
  std::vector<std::string> failures;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) failures.push_back(name);
  };

  {
    const kernels::KernelTable t = kernels::gibbs_kernel(pot0, {-3, 0}, ext, {}, {}, cfg.cap);
    double dev = 0;
    for (std::uint64_t r = 0; r < 16; ++r) dev = std::max(dev, std::fabs(t.prob(r) - 0.0625));
    check("uniform_kernel_at_zero_coupling", dev < 1e-12);
  }
  check("zero_field_magnetization",
        std::fabs(probe::exact_magnetization(pot0, 4, core::BoundaryCondition::all_plus(),
                                             couplings::kDepthInfinite, cfg.cap)) < 1e-12);
  check("zero_variation", sensitivity::variation(pot0, 0, -6) < 1e-15);
  {
    halfline::rng::CounterRng gen(cfg.seed, 9);
    const auto f = correspondence::TableLSS::random(-3, 2, gen);
    check("roundtrip_chain_kernels_chain",
          correspondence::roundtrip_defect_cb(f, cfg.cap) < kRoundtripTolerance);
  }
  {
    const auto conv = series::classify(
        [](std::uint64_t r) { return 1.0 / (static_cast<double>(r) * r); },
        series::TailModel{2.0, 0.0});
    const auto div = series::classify(
        [](std::uint64_t r) {
          const double x = static_cast<double>(r);
          return 1.0 / (x * std::log(x + 1.0));
        },
        series::TailModel{1.0, 1.0});
    check("series_calibration", conv.verdict == series::Verdict::kConverges &&
                                    div.verdict == series::Verdict::kDiverges);
  }
  {
    const auto r = criteria::cff(pot0, 0);
    check("trivial_uniqueness",
          r.verdict == criteria::Verdict::kUniquenessCertified && r.condition_met);
  }

  if (!failures.empty()) {
    std::string joined;
    for (const auto& name : failures) joined += (joined.empty() ? "" : ", ") + name;
    fail(Errc::kNumericInvariant, "selftest failed: " + joined);
  }
  std::cout << "selftest passed (6 checks)\n";
}

std::string iso_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_run_meta(const std::string& out, const std::string& command,
                    const std::string& started, double duration_ms) {
  cli::JsonWriter w;
  w.begin_object();
  w.kv("tool", "halfline");
  w.kv("version", kToolVersion);
  w.kv("command", command);
  w.kv("started_utc", started);
  w.kv("duration_ms", duration_ms);
  w.end_object();
  cli::write_text_file(out + "/run_meta.json", w.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for one-sided chains and boundary-law kernels on the "
               "negative half line"};
  app.require_subcommand(1);

  std::array<CommonFlags, 7> flags;
  std::array<CLI::App*, 7> subs{};
  const std::array<std::pair<const char*, const char*>, 7> names = {{
      {"kernel", "finite-window kernel tables under a fixed exterior"},
      {"correspondence-check", "chain/kernel-family roundtrip defects"},
      {"sensitivity", "past-sensitivity coefficients and interaction bounds"},
      {"criteria", "uniqueness and phase-transition criterion reports"},
      {"phase-probe", "boundary-condition magnetization gaps over volumes"},
      {"regimes", "regime classification table"},
      {"selftest", "built-in invariant battery"},
  }};
  for (std::size_t s = 0; s < names.size(); ++s) {
    subs[s] = app.add_subcommand(names[s].first, names[s].second);
    add_common_flags(subs[s], flags[s]);
  }
  std::string regimes_model;
  std::vector<double> regimes_p;
  subs[5]->add_option("--model", regimes_model, "coupling family for a custom sweep");
  subs[5]->add_option("--p", regimes_p, "comma-separated power-law exponents")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (int a = 0; a < argc; ++a) {
    if (a) command += ' ';
    command += argv[a];
  }
  const std::string started = iso_utc_now();
  const auto t0 = std::chrono::steady_clock::now();

  std::size_t chosen = 0;
  for (std::size_t s = 0; s < subs.size(); ++s) {
    if (subs[s]->parsed()) chosen = s;
  }
  const CommonFlags& fl = flags[chosen];
  const std::string name = names[chosen].first;

  try {
    const cli::RunConfig cfg = load_config(fl);
    std::filesystem::create_directories(fl.out_dir);
    cli::write_text_file(fl.out_dir + "/resolved_config.json", cli::resolved_config_json(cfg));

    if (name == "kernel") run_kernel(cfg, fl.out_dir);
    else if (name == "correspondence-check") run_correspondence(cfg, fl.out_dir);
    else if (name == "sensitivity") run_sensitivity(cfg, fl.out_dir);
    else if (name == "criteria") run_criteria(cfg, fl.out_dir);
    else if (name == "phase-probe") run_probe(cfg, fl.out_dir);
    else if (name == "regimes") run_regimes(fl.out_dir, regimes_model, regimes_p);
    else run_selftest(cfg);

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    write_run_meta(fl.out_dir, command, started, ms);
    return 0;
  } catch (const halfline::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::kNumericInvariant ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
