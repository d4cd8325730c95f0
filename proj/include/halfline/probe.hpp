#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/couplings.hpp"
#include "halfline/kernels.hpp"

namespace halfline {
namespace probe {

// Heat-bath sampler parameters.  Replicas are independent chains with
// dedicated random streams; estimates and error bars aggregate across them.
struct McmcParams {
  std::uint64_t sweeps = 100000;
  std::uint64_t burn_in = 10000;
  int replicas = 4;
  std::uint64_t seed = 1;
};

enum class Mode { kExact, kMcmc };
const char* mode_token(Mode mode);  // "exact" / "mcmc"

// Grid of finite-volume magnetization probes: window [-n+1, 0] for each n,
// opposing uniform tails, exact enumeration or heat-bath sampling.  The
// exterior's truncation depth applies to both tail polarities in a scan.
struct ProbeConfig {
  couplings::CouplingModel model = couplings::CouplingModel::power_law(2.5);
  std::vector<double> betas = {1.0};
  std::vector<int> volumes = {8};
  kernels::ExteriorSpec exterior = {};
  Mode mode = Mode::kExact;
  McmcParams mcmc = {};
  int cap = core::kDefaultCap;
  int threads = 1;
};

// Magnetization gap at site 0 between all-plus and all-minus tails.  The
// sampling fields stay zero in exact mode; `trend` is the finite-size ratio
// gap(n) / gap(n/2) when the half volume is also on the grid (NaN otherwise).
struct GapEstimate {
  int n = 0;
  double beta = 0;
  double m_plus = 0;
  double m_minus = 0;
  double gap = 0;
  double std_error = 0;
  double ess = 0;
  double trend = std::numeric_limits<double>::quiet_NaN();
};

// Mean of the site-0 spin with replica-spread error bar and a batch-means
// effective sample size.
struct MagSample {
  double mean = 0;
  double std_error = 0;
  double ess = 0;
};

// <sigma_0> on [-n+1, 0] under the full finite-volume distribution with the
// given tail; deterministic, exact up to the truncation bound of `depth`.
double exact_magnetization(const couplings::IsingPotential& pot, int n,
                           const core::BoundaryCondition& bc, double depth,
                           int cap = core::kDefaultCap);

// Single-site heat-bath estimate of <sigma_0>.  Systematic sweeps visit sites
// 0, -1, ..., -n+1; replica r draws from random stream `stream_base + r`, so
// runs are bitwise reproducible for a fixed seed regardless of thread count.
MagSample mcmc_magnetization(const couplings::IsingPotential& pot, int n,
                             const core::BoundaryCondition& bc, double depth,
                             const McmcParams& params, int threads = 1,
                             std::uint64_t stream_base = 0);

// Non-fatal configuration advice (currently: sweeps below ten times burn-in).
std::vector<std::string> config_warnings(const ProbeConfig& config);

// Gap table over the (volume, beta) grid in declared order (volumes outer).
std::vector<GapEstimate> bc_gap_scan(const ProbeConfig& config);

}  // namespace probe
}  // namespace halfline
