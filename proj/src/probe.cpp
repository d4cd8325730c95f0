#include "halfline/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "halfline/rng.hpp"

namespace halfline {
namespace probe {
namespace {

using core::BoundaryCondition;
using core::Site;
using couplings::CouplingModel;
using couplings::IsingPotential;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kPatternTailCap = 1 << 23;  // direct-summed periodic tails
constexpr int kMcmcMaxSites = 4096;
constexpr std::uint64_t kBatch = 32;            // batch-means block length
constexpr std::uint64_t kFieldRefresh = 4096;   // sweeps between field rebuilds

// Window index idx in [0, n) maps to site idx - (n-1); site 0 is index n-1.
Site site_of(int idx, int n) { return static_cast<Site>(idx - (n - 1)); }

// Field contributed to window site i by the tail attached at `attach`.
double exterior_field(const CouplingModel& model, Site i, Site attach,
                      const BoundaryCondition& bc, double depth) {
  if (bc.is_free()) return 0.0;
  if (depth < 1) fail(Errc::kInvalidArgument, "truncation depth must be >= 1");
  if (bc.kind == BoundaryCondition::Kind::kPeriodicTail) {
    if (depth == kInf || depth > static_cast<double>(kPatternTailCap))
      fail(Errc::kCapExceeded,
           "patterned tails are summed directly and support depths only up to 2^23");
    double f = 0;
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(depth); ++k) {
      const Site j = static_cast<Site>(attach - k);
      f += model.coupling(i, j) * core::spin_of(bc.tail_symbol(attach, j));
    }
    return f;
  }
  const double f = model.tail_field(i, attach, depth);
  if (!std::isfinite(f))
    fail(Errc::kInvalidArgument,
         "tail interaction diverges; the model is not summable at infinite depth");
  return bc.kind == BoundaryCondition::Kind::kAllPlus ? f : -f;
}

// Window pair couplings with O(1) lookups: a shared distance profile for
// translation-stationary families, level lookups for hierarchical block
// couplings, adjacency lists for sparse tables.
class PairCoupling {
 public:
  PairCoupling(const CouplingModel& model, int n) : model_(&model), n_(n) {
    switch (model.kind()) {
      case CouplingModel::Kind::kPowerLaw:
      case CouplingModel::Kind::kLogPowerLaw: {
        by_dist_.assign(static_cast<std::size_t>(n), 0.0);
        for (int d = 1; d < n; ++d)
          by_dist_[static_cast<std::size_t>(d)] = model.radial(static_cast<double>(d));
        stationary_ = true;
        break;
      }
      case CouplingModel::Kind::kHierarchical:
      case CouplingModel::Kind::kHierarchicalLevels: {
        levels_.assign(64, 0.0);
        for (int lvl = 1; lvl < 64; ++lvl)
          levels_[static_cast<std::size_t>(lvl)] = model.level_coupling(lvl);
        hierarchical_ = true;
        break;
      }
      case CouplingModel::Kind::kTable: {
        lists_.resize(static_cast<std::size_t>(n));
        const int radius = static_cast<int>(model.support_radius());
        for (int a = 0; a < n; ++a) {
          for (int b = std::max(0, a - radius); b <= std::min(n - 1, a + radius); ++b) {
            if (b == a) continue;
            const double v = model.coupling(site_of(a, n), site_of(b, n));
            if (v != 0.0) lists_[static_cast<std::size_t>(a)].push_back({b, v});
          }
        }
        break;
      }
    }
  }

  double value(int a, int b) const {
    if (stationary_) return by_dist_[static_cast<std::size_t>(std::abs(a - b))];
    if (hierarchical_) {
      return levels_[static_cast<std::size_t>(
          couplings::block_level(site_of(a, n_), site_of(b, n_)))];
    }
    return model_->coupling(site_of(a, n_), site_of(b, n_));
  }

  // After the spin at index s settles to sigma, add 2 sigma J(j, s) to every
  // other local field.
  void apply_flip(std::vector<double>& f, int s, double two_sigma) const {
    if (stationary_) {
      for (int j = 0; j < n_; ++j)
        f[static_cast<std::size_t>(j)] +=
            two_sigma * by_dist_[static_cast<std::size_t>(std::abs(j - s))];
      return;  // the d = 0 entry is zero, so the self term vanishes
    }
    if (hierarchical_) {
      const Site ss = site_of(s, n_);
      for (int j = 0; j < n_; ++j) {
        if (j == s) continue;
        f[static_cast<std::size_t>(j)] +=
            two_sigma * levels_[static_cast<std::size_t>(
                            couplings::block_level(site_of(j, n_), ss))];
      }
      return;
    }
    for (const auto& [j, v] : lists_[static_cast<std::size_t>(s)])
      f[static_cast<std::size_t>(j)] += two_sigma * v;
  }

 private:
  const CouplingModel* model_;
  int n_;
  bool stationary_ = false;
  bool hierarchical_ = false;
  std::vector<double> by_dist_;
  std::vector<double> levels_;
  std::vector<std::vector<std::pair<int, double>>> lists_;
};

struct ReplicaStats {
  double mean = 0;
  double ess = 0;
};

ReplicaStats run_replica(const PairCoupling& pc, const std::vector<double>& hext,
                         double beta, int n, const McmcParams& mp, int start_spin,
                         rng::CounterRng rng) {
  std::vector<std::int8_t> sp(static_cast<std::size_t>(n),
                              static_cast<std::int8_t>(start_spin));
  std::vector<double> f;
  const auto rebuild = [&] {
    f = hext;
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int k = 0; k < n; ++k) {
        if (k != j) acc += pc.value(j, k) * sp[static_cast<std::size_t>(k)];
      }
      f[static_cast<std::size_t>(j)] += acc;
    }
  };
  rebuild();

  const std::uint64_t kept = mp.sweeps - mp.burn_in;
  double sum_x = 0;
  double batch_acc = 0;
  std::uint64_t batch_fill = 0;
  std::vector<double> batch_means;
  batch_means.reserve(static_cast<std::size_t>(kept / kBatch + 1));

  for (std::uint64_t sweep = 0; sweep < mp.sweeps; ++sweep) {
    if (sweep != 0 && sweep % kFieldRefresh == 0) rebuild();  // cancel drift
    for (int idx = n - 1; idx >= 0; --idx) {
      const double p_plus =
          1.0 / (1.0 + std::exp(-2.0 * beta * f[static_cast<std::size_t>(idx)]));
      const std::int8_t next = rng.next_double() < p_plus ? 1 : -1;
      if (next != sp[static_cast<std::size_t>(idx)]) {
        sp[static_cast<std::size_t>(idx)] = next;
        pc.apply_flip(f, idx, 2.0 * next);
      }
    }
    if (sweep >= mp.burn_in) {
      const double x = sp[static_cast<std::size_t>(n - 1)];  // site 0
      sum_x += x;
      batch_acc += x;
      if (++batch_fill == kBatch) {
        batch_means.push_back(batch_acc / static_cast<double>(kBatch));
        batch_acc = 0;
        batch_fill = 0;
      }
    }
  }

  ReplicaStats out;
  const double nn = static_cast<double>(kept);
  out.mean = sum_x / nn;
  // spins are +-1, so the raw second moment is exactly one
  const double var_x = kept > 1 ? (nn - sum_x * sum_x / nn) / (nn - 1) : 0.0;
  double var_b = 0;
  const std::size_t kb = batch_means.size();
  if (kb >= 2) {
    double mb = 0;
    for (const double b : batch_means) mb += b;
    mb /= static_cast<double>(kb);
    for (const double b : batch_means) var_b += (b - mb) * (b - mb);
    var_b /= static_cast<double>(kb - 1);
  }
  if (kb < 2 || var_b <= 0 || var_x <= 0) {
    out.ess = nn;  // no detectable correlation structure; report the raw count
  } else {
    out.ess = std::min(nn, nn * var_x / (static_cast<double>(kBatch) * var_b));
  }
  return out;
}

void check_mcmc_params(const McmcParams& mp, int n) {
  if (n > kMcmcMaxSites)
    fail(Errc::kInvalidArgument, "sampling windows support at most 4096 sites");
  if (mp.sweeps < 1) fail(Errc::kInvalidArgument, "sweeps must be positive");
  if (mp.burn_in >= mp.sweeps)
    fail(Errc::kInvalidArgument, "burn-in must leave at least one recorded sweep");
  if (mp.replicas < 2)
    fail(Errc::kInvalidArgument, "replica error bars need at least two replicas");
}

}  // namespace

const char* mode_token(Mode mode) {
  return mode == Mode::kExact ? "exact" : "mcmc";
}

double exact_magnetization(const IsingPotential& pot, int n, const BoundaryCondition& bc,
                           double depth, int cap) {
  if (n < 1) fail(Errc::kInvalidArgument, "window needs at least one site");
  core::config_count(n, 2, cap);
  const core::Window window{static_cast<Site>(-n + 1), 0};
  const kernels::ExteriorSpec ext{bc, depth};
  const kernels::KernelTable table = kernels::gibbs_kernel(pot, window, ext, {}, {}, cap);
  return table.expectation(
      [](const core::WindowConfig& c) { return static_cast<double>(c.spin(0)); });
}

MagSample mcmc_magnetization(const IsingPotential& pot, int n, const BoundaryCondition& bc,
                             double depth, const McmcParams& params, int threads,
                             std::uint64_t stream_base) {
  if (n < 1) fail(Errc::kInvalidArgument, "window needs at least one site");
  check_mcmc_params(params, n);
  if (threads < 1) fail(Errc::kInvalidArgument, "thread count must be positive");

  const PairCoupling pc(pot.model, n);
  std::vector<double> hext(static_cast<std::size_t>(n), 0.0);
  const Site attach = static_cast<Site>(-n + 1);
  for (int idx = 0; idx < n; ++idx)
    hext[static_cast<std::size_t>(idx)] =
        exterior_field(pot.model, site_of(idx, n), attach, bc, depth);
  const int start_spin = bc.kind == BoundaryCondition::Kind::kAllMinus ? -1 : 1;

  const int replicas = params.replicas;
  std::vector<ReplicaStats> stats(static_cast<std::size_t>(replicas));
  const auto work = [&](int first, int stride) {
    for (int r = first; r < replicas; r += stride) {
      stats[static_cast<std::size_t>(r)] =
          run_replica(pc, hext, pot.beta, n, params, start_spin,
                      rng::CounterRng(params.seed, stream_base + static_cast<std::uint64_t>(r)));
    }
  };
  const int workers = std::min(threads, replicas);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }

  MagSample out;
  for (const auto& s : stats) out.mean += s.mean;
  out.mean /= static_cast<double>(replicas);
  double var = 0;
  for (const auto& s : stats) var += (s.mean - out.mean) * (s.mean - out.mean);
  var /= static_cast<double>(replicas - 1);
  out.std_error = std::sqrt(var / static_cast<double>(replicas));
  for (const auto& s : stats) out.ess += s.ess;
  return out;
}

std::vector<std::string> config_warnings(const ProbeConfig& config) {
  std::vector<std::string> warnings;
  if (config.mode == Mode::kMcmc && config.mcmc.sweeps < 10 * config.mcmc.burn_in) {
    warnings.push_back(
        "sweeps below ten times burn-in; estimates may carry equilibration bias");
  }
  return warnings;
}

std::vector<GapEstimate> bc_gap_scan(const ProbeConfig& config) {
  if (config.betas.empty()) fail(Errc::kInvalidArgument, "empty beta grid");
  for (const double beta : config.betas) {
    if (!(beta >= 0) || !std::isfinite(beta))
      fail(Errc::kInvalidArgument, "beta grid entries must be finite and nonnegative");
  }
  if (config.volumes.empty()) fail(Errc::kInvalidArgument, "empty volume grid");
  for (const int n : config.volumes) {
    if (n < 1) fail(Errc::kInvalidArgument, "volumes must be positive");
    if (config.mode == Mode::kExact) {
      core::config_count(n, 2, config.cap);
    } else {
      check_mcmc_params(config.mcmc, n);
    }
  }
  if (config.threads < 1) fail(Errc::kInvalidArgument, "thread count must be positive");

  const auto plus = BoundaryCondition::all_plus();
  const auto minus = BoundaryCondition::all_minus();
  std::vector<GapEstimate> rows;
  rows.reserve(config.volumes.size() * config.betas.size());
  for (const int n : config.volumes) {
    for (const double beta : config.betas) {
      const IsingPotential pot(config.model, beta);
      GapEstimate ge;
      ge.n = n;
      ge.beta = beta;
      if (config.mode == Mode::kExact) {
        ge.m_plus = exact_magnetization(pot, n, plus, config.exterior.depth, config.cap);
        ge.m_minus = exact_magnetization(pot, n, minus, config.exterior.depth, config.cap);
      } else {
        const std::uint64_t minus_base = static_cast<std::uint64_t>(config.mcmc.replicas);
        const MagSample sp = mcmc_magnetization(pot, n, plus, config.exterior.depth,
                                                config.mcmc, config.threads, 0);
        const MagSample sm = mcmc_magnetization(pot, n, minus, config.exterior.depth,
                                                config.mcmc, config.threads, minus_base);
        ge.m_plus = sp.mean;
        ge.m_minus = sm.mean;
        ge.std_error = std::hypot(sp.std_error, sm.std_error);
        ge.ess = std::min(sp.ess, sm.ess);
      }
      ge.gap = ge.m_plus - ge.m_minus;
      for (const GapEstimate& prev : rows) {
        if (prev.beta == beta && 2 * prev.n == n && prev.gap != 0.0) {
          ge.trend = ge.gap / prev.gap;
          break;
        }
      }
      rows.push_back(ge);
    }
  }
  return rows;
}

}  // namespace probe
}  // namespace halfline
