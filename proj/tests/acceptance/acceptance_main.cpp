// Acceptance gate: ten release criteria, one pass/fail line each.
//
// Each criterion is self-contained, uses frozen tolerances and reference
// values, and reports a one-line outcome; the process exits nonzero when any
// criterion fails.  Randomized sweeps use fixed counter-based seeds so every
// run tests the identical instance set.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/correspondence.hpp"
#include "halfline/couplings.hpp"
#include "halfline/criteria.hpp"
#include "halfline/kernels.hpp"
#include "halfline/probe.hpp"
#include "halfline/rng.hpp"
#include "halfline/sensitivity.hpp"
#include "halfline/series.hpp"

namespace fs = std::filesystem;
using namespace halfline;
using core::Site;
using core::Window;
using core::WindowConfig;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Binary dominance identity: a_k = b_k = 1 - var_k exactly for two-letter
//    alphabets, checked with exhaustive enumeration on random instances.

Outcome binary_identity() {
  rng::CounterRng gen(2026, 101);
  sensitivity::Options opt;
  opt.method = sensitivity::Method::kExhaustiveTails;
  opt.depth = 6;
  double max_defect = 0;
  int pairs = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const double p = 1.2 + 1.8 * gen.next_double();
    const double beta = 3.0 * gen.next_double();
    const couplings::IsingPotential pot{couplings::CouplingModel::power_law(p), beta};
    const Site i = -static_cast<Site>(gen.next_below(4));  // 0 .. -3
    for (Site k = i - 1; k >= -4; --k) {
      const auto c = sensitivity::coefficients(pot, i, k, opt);
      max_defect = std::max(max_defect, std::fabs(c.a - (1.0 - c.var)));
      max_defect = std::max(max_defect, std::fabs(c.b - (1.0 - c.var)));
      ++pairs;
    }
  }
  return {max_defect <= 1e-12, "max |a,b - (1-var)| = " + num(max_defect) + " over " +
                                   std::to_string(pairs) + " (i,k) pairs"};
}

// ---------------------------------------------------------------------------
// 2. Roundtrip and consistency identities on random finite families.

Outcome roundtrip_identities() {
  rng::CounterRng gen(2026, 202);
  double worst = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int q = 2 + (inst & 1);
    const Site left = (q == 2) ? -1 - static_cast<Site>(inst % 7)
                               : -1 - static_cast<Site>(inst % 4);
    auto f = std::make_shared<correspondence::TableLSS>(
        correspondence::TableLSS::random(left, q, gen));
    worst = std::max(worst, correspondence::roundtrip_defect_cb(*f));
    auto gamma = correspondence::map_b(f);
    worst = std::max(worst, correspondence::roundtrip_defect_bc(*gamma));

    // One random two-window consistency evaluation per instance; the inner
    // window must be a strict sub-window of the outer one.
    const Site dl = left + static_cast<Site>(gen.next_below(static_cast<std::uint64_t>(-left)));
    const Site dm = dl + 1 + static_cast<Site>(gen.next_below(static_cast<std::uint64_t>(-dl)));
    const Site ll = dl + static_cast<Site>(
                        gen.next_below(static_cast<std::uint64_t>(dm - dl + 1)));
    Site lm = ll + static_cast<Site>(
                  gen.next_below(static_cast<std::uint64_t>(dm - ll + 1)));
    if (ll == dl && lm == dm) --lm;  // delta has >= 2 sites, so this stays valid
    WindowConfig lctx, rctx;
    if (dl > left) {
      const Window w{left, dl - 1};
      lctx = core::decode_rank(gen.next_below(core::config_count(w.size(), q, 24)), w, q);
    }
    if (dm < 0) {
      const Window w{dm + 1, 0};
      rctx = core::decode_rank(gen.next_below(core::config_count(w.size(), q, 24)), w, q);
    }
    worst = std::max(worst, correspondence::check_specification_consistency(
                                *gamma, Window{ll, lm}, Window{dl, dm}, lctx, rctx));
  }
  return {worst <= 1e-10, "max roundtrip/consistency defect = " + num(worst) +
                              " over 100 instances, |A| in {2,3}"};
}

// ---------------------------------------------------------------------------
// 3. Cross-path composition: chain-rule products against direct kernel tables
//    and the split-point factorization of cylinder probabilities.

WindowConfig slice(const WindowConfig& cfg, Site l, Site m) {
  WindowConfig out{Window{l, m}, std::vector<std::uint8_t>(static_cast<size_t>(m - l + 1))};
  for (Site s = l; s <= m; ++s) out.set(s, cfg.value(s));
  return out;
}

Outcome cross_paths() {
  rng::CounterRng gen(2026, 303);
  const kernels::ExteriorSpec ext{core::BoundaryCondition::all_plus(),
                                  couplings::kDepthInfinite};
  double worst = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const double p = 1.2 + 1.8 * gen.next_double();
    const double beta = 3.0 * gen.next_double();
    const couplings::IsingPotential pot{couplings::CouplingModel::power_law(p), beta};
    const Site left = -1 - static_cast<Site>(inst % 6);
    const Window win{left, 0};

    // (a) chain-rule product over the full window against the direct table
    const kernels::KernelTable table = kernels::gibbs_kernel(pot, win, ext);
    const std::uint64_t count = core::config_count(win.size(), 2, 24);
    for (std::uint64_t r = 0; r < count; ++r) {
      const WindowConfig sigma = table.config_at(r);
      const double chain = kernels::interval_kernel(pot, sigma, {}, ext);
      worst = std::max(worst, std::fabs(chain - table.prob(r)));
    }

    // (b) split-point identity on a random cylinder with an explicit past
    const WindowConfig sigma =
        core::decode_rank(gen.next_below(count), win, 2);
    const Site m = left + static_cast<Site>(
                       gen.next_below(static_cast<std::uint64_t>(-left)));
    const Window past_w{left - 3, left - 1};
    const WindowConfig past =
        core::decode_rank(gen.next_below(8), past_w, 2);
    const double whole = kernels::interval_kernel(pot, sigma, past, ext);
    const double first = kernels::interval_kernel(pot, slice(sigma, left, m), past, ext);
    const double second = kernels::interval_kernel(
        pot, slice(sigma, m + 1, 0), core::concat(past, slice(sigma, left, m)), ext);
    worst = std::max(worst, std::fabs(whole - first * second));
  }
  return {worst <= 1e-12, "max composition defect = " + num(worst) + " over 50 instances"};
}

// ---------------------------------------------------------------------------
// 4. Regime table: byte-exact reproduction of the committed golden CSV via
//    the command-line tool, plus semantic spot checks of the flag columns.

Outcome regime_table() {
  const fs::path dir = fs::temp_directory_path() /
                       ("halfline_acc_regimes_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string(HALFLINE_CLI_PATH) + " regimes --out " +
                          (dir / "o").string() + " > " + (dir / "log.txt").string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0)
    return {false, "regimes subcommand exited nonzero"};
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string produced = read(dir / "o" / "regimes.csv");
  const std::string golden =
      read(fs::path(HALFLINE_TESTS_DIR) / "golden" / "regimes_golden.csv");
  if (golden.empty()) return {false, "golden regimes table missing"};
  if (produced != golden) return {false, "regimes.csv differs from the golden table"};

  // semantic spot checks against the frozen rows
  auto has_row = [&](const std::string& row) {
    return produced.find(row + "\n") != std::string::npos;
  };
  const bool spot =
      has_row("power_law,0.9,not_well_defined,false,false") &&
      has_row("power_law,1.2,transition,false,false") &&
      has_row("power_law,1.5,transition,false,false") &&
      has_row("power_law,1.8,transition,true,false") &&
      has_row("power_law,2,inconclusive,true,false") &&
      has_row("power_law,2.5,uniqueness_all_beta,true,false") &&
      has_row("power_law,3,uniqueness_all_beta,true,false") &&
      has_row("power_law,1.6,transition,true,false") &&
      has_row("power_law,1.75,transition,true,false") &&
      has_row("power_law,1.9,transition,true,false") &&
      has_row("hierarchical,0.8,assumption_violated,false,false") &&
      has_row("hierarchical,1.5,transition,false,false") &&
      has_row("hierarchical,2.5,uniqueness_all_beta,true,false") &&
      has_row("log_power_law,p=2 t=1,uniqueness_all_beta,true,true");
  return {spot, spot ? "14 rows byte-identical to the golden table"
                     : "golden bytes matched but spot rows missing"};
}

// ---------------------------------------------------------------------------
// 5. Series classifier calibration battery.

Outcome series_calibration() {
  using series::TailModel;
  using series::Verdict;
  struct Case {
    std::function<double(std::uint64_t)> term;
    TailModel tail;
    Verdict want;
  };
  auto inv_pow = [](double s) {
    return [s](std::uint64_t r) { return std::pow(static_cast<double>(r), -s); };
  };
  const std::vector<Case> cases = {
      {inv_pow(0.5), {0.5, 0}, Verdict::kDiverges},
      {inv_pow(0.8), {0.8, 0}, Verdict::kDiverges},
      {inv_pow(1.0), {1.0, 0}, Verdict::kDiverges},
      {inv_pow(1.1), {1.1, 0}, Verdict::kConverges},
      {inv_pow(1.5), {1.5, 0}, Verdict::kConverges},
      {inv_pow(2.0), {2.0, 0}, Verdict::kConverges},
      {inv_pow(3.0), {3.0, 0}, Verdict::kConverges},
      {[](std::uint64_t r) {
         const double x = static_cast<double>(r) + 1.0;
         return 1.0 / (x * std::log(x));
       },
       {1.0, 1.0},
       Verdict::kDiverges},
      {[](std::uint64_t r) {
         const double x = static_cast<double>(r) + 1.0;
         const double lg = std::log(x);
         return 1.0 / (x * lg * lg);
       },
       {1.0, 2.0},
       Verdict::kConverges},
      {[](std::uint64_t r) {
         const double x = static_cast<double>(r) + 1.0;
         return 1.0 / (x * std::sqrt(std::log(x)));
       },
       {1.0, 0.5},
       Verdict::kDiverges},
      {[](std::uint64_t r) {
         const double x = static_cast<double>(r) + 1.0;
         return std::log(x) / x;
       },
       {1.0, -1.0},
       Verdict::kDiverges},
      {[](std::uint64_t r) {
         const double x = static_cast<double>(r) + 1.0;
         return std::log(x) / (x * x);
       },
       {2.0, -1.0},
       Verdict::kConverges},
  };
  double slowest = 0;
  for (std::size_t idx = 0; idx < cases.size(); ++idx) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cls = series::classify(cases[idx].term, cases[idx].tail);
    const double secs = elapsed_s(t0);
    slowest = std::max(slowest, secs);
    if (cls.verdict != cases[idx].want)
      return {false, "calibration series " + std::to_string(idx) + " misclassified"};
    if (cls.partial_sums.size() != 4 || cls.partial_sums.back().first != 100000)
      return {false, "calibration series " + std::to_string(idx) + " missing partial sums"};
    if (secs > 5.0)
      return {false, "calibration series " + std::to_string(idx) + " exceeded 5 s"};
  }
  return {true, "12/12 series classified correctly, slowest " + num(slowest) + " s"};
}

// ---------------------------------------------------------------------------
// 6. Comparison bound: measured sensitivities never exceed the analytic
//    interaction bounds on random instances.

Outcome comparison_bound() {
  rng::CounterRng gen(2026, 606);
  double worst_excess = -1e300;
  for (int inst = 0; inst < 1000; ++inst) {
    couplings::CouplingModel model = couplings::CouplingModel::power_law(2.0);
    sensitivity::Options opt;
    if (inst % 2 == 0) {
      model = couplings::CouplingModel::power_law(1.2 + 1.8 * gen.next_double());
      opt.method = sensitivity::Method::kExtremalTails;  // exact (ferromagnetic)
    } else {
      // random signed table couplings within an 8-site reach
      std::vector<std::tuple<int, int, double>> entries;
      const int n_entries = 2 + static_cast<int>(gen.next_below(5));
      for (int e = 0; e < n_entries; ++e) {
        const int i = -static_cast<int>(gen.next_below(8));
        int j = -static_cast<int>(gen.next_below(8));
        if (i == j) j = i - 1;
        const double v = 2.0 * gen.next_double() - 1.0;
        bool dup = false;
        for (const auto& [a, b, w] : entries) {
          (void)w;
          if (std::minmax(a, b) == std::minmax(i, j)) dup = true;
        }
        if (!dup) entries.emplace_back(i, j, v);
      }
      if (entries.empty()) entries.emplace_back(-1, 0, 0.5);
      model = couplings::CouplingModel::table(entries);
      opt.method = sensitivity::Method::kExhaustiveTails;  // certified lower bounds
      opt.depth = 4;
    }
    const double beta = 3.0 * gen.next_double();
    const couplings::IsingPotential pot{model, beta};
    const Site i = -static_cast<Site>(gen.next_below(3));
    const Site k = i - 1 - static_cast<Site>(gen.next_below(3));
    const auto c = sensitivity::coefficients(pot, i, k, opt);
    const auto b = sensitivity::ising_bounds(pot, i, k);
    worst_excess = std::max(worst_excess, c.osc - b.osc_bound);
    worst_excess = std::max(worst_excess, c.var - b.var_bound);
  }
  return {worst_excess <= 1e-12,
          "max (measured - bound) = " + num(worst_excess) + " over 1000 instances"};
}

// ---------------------------------------------------------------------------
// 7. Exact-probe invariants on the marginal-decay benchmark model.

Outcome probe_invariants() {
  const couplings::CouplingModel model = couplings::CouplingModel::power_law(2.5);
  const auto bc_plus = core::BoundaryCondition::all_plus();
  const auto bc_minus = core::BoundaryCondition::all_minus();
  const double depth = couplings::kDepthInfinite;  // epsilon(D) = 0 <= 1e-8

  // zero-coupling gap
  const couplings::IsingPotential pot0{model, 0.0};
  const double gap0 = probe::exact_magnetization(pot0, 8, bc_plus, depth) -
                      probe::exact_magnetization(pot0, 8, bc_minus, depth);
  if (std::fabs(gap0) > 1e-12) return {false, "gap at beta=0 is " + num(gap0)};

  // spin-flip antisymmetry and nonnegative gaps
  for (const double beta : {0.5, 2.0}) {
    const couplings::IsingPotential pot{model, beta};
    const double mp = probe::exact_magnetization(pot, 10, bc_plus, depth);
    const double mm = probe::exact_magnetization(pot, 10, bc_minus, depth);
    if (std::fabs(mp + mm) > 1e-12)
      return {false, "m_plus + m_minus = " + num(mp + mm) + " at beta " + num(beta)};
    if (mp - mm < -1e-12) return {false, "negative gap at beta " + num(beta)};
  }

  // monotone in beta at fixed volume
  double prev = -1;
  for (const double beta : {0.5, 1.0, 2.0, 4.0}) {
    const couplings::IsingPotential pot{model, beta};
    const double gap = probe::exact_magnetization(pot, 12, bc_plus, depth) -
                       probe::exact_magnetization(pot, 12, bc_minus, depth);
    if (gap < prev - 1e-12)
      return {false, "gap decreased in beta at beta=" + num(beta)};
    prev = gap;
  }

  // monotone (nonincreasing) in volume at beta = 2
  prev = 1e300;
  for (const int n : {4, 8, 12, 14}) {
    const couplings::IsingPotential pot{model, 2.0};
    const double gap = probe::exact_magnetization(pot, n, bc_plus, depth) -
                       probe::exact_magnetization(pot, n, bc_minus, depth);
    if (gap > prev + 1e-12) return {false, "gap increased in volume at n=" + std::to_string(n)};
    prev = gap;
  }
  return {true, "zero-gap, antisymmetry, positivity and both monotonicities hold"};
}

// ---------------------------------------------------------------------------
// 8. Comparative decay signal at beta = 2, n = 14: the slow-decay chain keeps
//    a strictly larger boundary gap than the fast-decay chain.  Threshold and
//    pin are frozen from the pre-build enumeration oracle.

Outcome comparative_signal() {
  const auto bc_plus = core::BoundaryCondition::all_plus();
  const auto bc_minus = core::BoundaryCondition::all_minus();
  const double depth = couplings::kDepthInfinite;
  const couplings::IsingPotential slow{couplings::CouplingModel::power_law(1.5), 2.0};
  const couplings::IsingPotential fast{couplings::CouplingModel::power_law(3.0), 2.0};
  const double gap_slow = probe::exact_magnetization(slow, 14, bc_plus, depth) -
                          probe::exact_magnetization(slow, 14, bc_minus, depth);
  const double gap_fast = probe::exact_magnetization(fast, 14, bc_plus, depth) -
                          probe::exact_magnetization(fast, 14, bc_minus, depth);
  const double ratio = gap_slow / gap_fast;
  const double kFrozenRatio = 1.0710134789197994;  // enumeration oracle, n = 14
  const double kThreshold = 1.05;                  // frozen just below the oracle value
  const bool ok = ratio > kThreshold && std::fabs(ratio - kFrozenRatio) <= 1e-6;
  return {ok, "gap ratio slow/fast = " + num(ratio) + " (threshold " + num(kThreshold) +
                  ", oracle pin " + num(kFrozenRatio) + ")"};
}

// ---------------------------------------------------------------------------
// 9. Sampling validation: agreement with exact enumeration, bitwise
//    determinism, and the large-volume throughput budget.

Outcome mcmc_validation() {
  const couplings::CouplingModel model = couplings::CouplingModel::power_law(2.5);
  const auto bc_plus = core::BoundaryCondition::all_plus();
  const double depth = couplings::kDepthInfinite;

  probe::McmcParams params;
  params.sweeps = 100000;
  params.burn_in = 10000;
  params.replicas = 8;
  params.seed = 17;
  for (const double beta : {0.3, 1.0}) {
    const couplings::IsingPotential pot{model, beta};
    const double exact = probe::exact_magnetization(pot, 12, bc_plus, depth);
    const auto est = probe::mcmc_magnetization(pot, 12, bc_plus, depth, params, 4);
    if (std::fabs(est.mean - exact) > 4.0 * est.std_error)
      return {false, "sampled mean off by " + num(std::fabs(est.mean - exact)) +
                         " > 4 stderr (" + num(est.std_error) + ") at beta " + num(beta)};
    const auto rerun = probe::mcmc_magnetization(pot, 12, bc_plus, depth, params, 4);
    if (rerun.mean != est.mean || rerun.std_error != est.std_error || rerun.ess != est.ess)
      return {false, "rerun with identical seed was not bitwise identical"};
  }

  probe::McmcParams big;
  big.sweeps = 1000000;
  big.burn_in = 10000;
  big.replicas = 2;
  big.seed = 11;
  const auto t0 = std::chrono::steady_clock::now();
  (void)probe::mcmc_magnetization({model, 1.0}, 256, bc_plus, depth, big, 2);
  const double secs = elapsed_s(t0);
  if (secs > 300.0) return {false, "1e6 sweeps at n=256 took " + num(secs) + " s > 300 s"};
  return {true, "4-stderr agreement, bitwise determinism, 1e6x256 sweep run in " +
                    num(secs) + " s"};
}

// ---------------------------------------------------------------------------
// 10. Truncation honesty: doubling the resolved exterior depth moves every
//     kernel probability by at most 1e-7 relative.

Outcome truncation_honesty() {
  const couplings::CouplingModel model = couplings::CouplingModel::power_law(2.5);
  const Window win{-6, 0};
  double worst = 0;
  for (const double beta : {0.5, 1.0, 2.0}) {
    const couplings::IsingPotential pot{model, beta};
    const double d0 = kernels::default_depth(pot, win.size(), 1e-8);
    if (!std::isfinite(d0)) return {false, "default depth did not resolve to a finite value"};
    const kernels::KernelTable base = kernels::gibbs_kernel(
        pot, win, {core::BoundaryCondition::all_plus(), d0});
    const kernels::KernelTable doubled = kernels::gibbs_kernel(
        pot, win, {core::BoundaryCondition::all_plus(), 2.0 * d0});
    const std::uint64_t count = core::config_count(win.size(), 2, 24);
    for (std::uint64_t r = 0; r < count; ++r) {
      worst = std::max(worst, std::fabs(doubled.prob(r) - base.prob(r)) / base.prob(r));
    }
  }
  return {worst <= 1e-7, "max relative probability shift = " + num(worst) +
                             " when doubling the resolved depth"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"binary-dominance-identity", binary_identity},
      {"roundtrip-and-consistency", roundtrip_identities},
      {"composition-cross-paths", cross_paths},
      {"regime-table-golden", regime_table},
      {"series-calibration", series_calibration},
      {"comparison-bound", comparison_bound},
      {"exact-probe-invariants", probe_invariants},
      {"comparative-decay-signal", comparative_signal},
      {"sampling-validation", mcmc_validation},
      {"truncation-honesty", truncation_honesty},
  };

  int failed = 0;
  for (std::size_t idx = 0; idx < criteria.size(); ++idx) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[idx].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = elapsed_s(t0);
    std::printf("acceptance %02zu %-28s %s (%s; %.1f s)\n", idx + 1, criteria[idx].first,
                out.ok ? "PASS" : "FAIL", out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  if (failed) {
    std::printf("acceptance summary: %d/%zu criteria FAILED\n", failed, criteria.size());
    return 1;
  }
  std::printf("acceptance summary: all %zu criteria passed\n", criteria.size());
  return 0;
}
