#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/couplings.hpp"

namespace halfline {
namespace kernels {

// How the infinite exterior left of the attachment edge is realized: a tail
// boundary condition plus a truncation depth (number of tail sites that
// interact; infinite depth sums analytically and is exact).
struct ExteriorSpec {
  core::BoundaryCondition bc = core::BoundaryCondition::all_plus();
  double depth = couplings::kDepthInfinite;
};

struct EnergyValue {
  double energy = 0;  // interaction energy of the window configuration
  double eps = 0;     // certified bound on the omitted tail interaction
};

struct KernelMeta {
  double beta = 0;
  std::string model;    // coupling model description
  std::string bc;       // boundary description
  double depth = couplings::kDepthInfinite;
  double eps = 0;
  std::string context;  // fixed exterior configurations, printable
};

// Dense normalized kernel over all configurations of a window, kept in
// log-domain so that large couplings never overflow.
class KernelTable {
 public:
  KernelTable(core::Window w, int q, std::vector<double> log_weights, KernelMeta meta);

  const core::Window& window() const { return window_; }
  int q() const { return q_; }
  std::uint64_t size() const { return logw_.size(); }
  double log_z() const { return log_z_; }
  double log_weight(std::uint64_t rank) const { return logw_[rank]; }
  double prob(std::uint64_t rank) const { return probs_[rank]; }
  double prob(const core::WindowConfig& c) const;
  core::WindowConfig config_at(std::uint64_t rank) const;
  double min_prob() const;
  // expectation of h under the kernel's distribution
  double expectation(const std::function<double(const core::WindowConfig&)>& h) const;
  const KernelMeta& meta() const { return meta_; }

 private:
  core::Window window_;
  int q_ = 2;
  std::vector<double> logw_;
  std::vector<double> probs_;
  double log_z_ = 0;
  KernelMeta meta_;
};

// Certified bound on the interaction magnitude omitted by truncating the tail
// at `ext.depth`; zero for free boundaries and for infinite depth.
double truncation_eps(const couplings::IsingPotential& pot, int window_size,
                      const ExteriorSpec& ext);

// Smallest depth whose truncation bound meets `eps_target` for the given
// window size, or infinite depth when only the analytic tail can meet it.
double default_depth(const couplings::IsingPotential& pot, int window_size,
                     double eps_target = 1e-8);

// Interaction energy of `sigma` on its window: sum over spin pairs with at
// least one endpoint inside the window of -beta J(i,j) s_i s_j.  Partners
// outside the window are read from `left_exterior` (covering [frame_l,
// window.l-1], may be empty), `right_exterior` (covering [window.m+1, 0],
// required whenever window.m < 0), and the tail attached left of the frame.
EnergyValue hamiltonian(const couplings::IsingPotential& pot, const core::WindowConfig& sigma,
                        const ExteriorSpec& ext,
                        const core::WindowConfig& left_exterior = {},
                        const core::WindowConfig& right_exterior = {});

// Exact finite-window statistical-mechanics kernel: probabilities
// proportional to exp(-H) over every configuration of the window.
KernelTable gibbs_kernel(const couplings::IsingPotential& pot, core::Window window,
                         const ExteriorSpec& ext,
                         const core::WindowConfig& left_exterior = {},
                         const core::WindowConfig& right_exterior = {},
                         int cap = core::kDefaultCap);

// Single-site conditional probability of symbol `sym` at site `i` given the
// past configuration (ending at i-1) and the tail: the ratio of constrained
// to unconstrained partition sums over the window [i, 0].
double lss_singleton(const couplings::IsingPotential& pot, core::Site i, std::uint8_t sym,
                     const core::WindowConfig& past, const ExteriorSpec& ext,
                     int cap = core::kDefaultCap);

// Chain-rule cylinder probability of `segment` (on [m,n]) given the past:
// the product of singleton kernels at m..n with progressively extended pasts.
double interval_kernel(const couplings::IsingPotential& pot, const core::WindowConfig& segment,
                       const core::WindowConfig& past, const ExteriorSpec& ext,
                       int cap = core::kDefaultCap);

double kernel_expectation(const KernelTable& table,
                          const std::function<double(const core::WindowConfig&)>& h);

}  // namespace kernels
}  // namespace halfline
