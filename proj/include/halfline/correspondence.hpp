#pragma once

#include <memory>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/couplings.hpp"
#include "halfline/kernels.hpp"
#include "halfline/rng.hpp"

namespace halfline {
namespace correspondence {

// One-sided family of single-site conditional distributions on a working
// window [left_limit, 0]: for each site i, a probability over the symbol at i
// given the full explicit past down to left_limit (the tail beyond is part of
// the object's own construction).
class FiniteLSS {
 public:
  virtual ~FiniteLSS() = default;
  virtual int q() const = 0;
  virtual core::Site left_limit() const = 0;
  // past must cover exactly [left_limit, i-1] (empty when i == left_limit)
  virtual double singleton(core::Site i, std::uint8_t sym,
                           const core::WindowConfig& past) const = 0;
  // chain-rule product of singletons over the segment, given the past below it
  double cylinder(const core::WindowConfig& segment, const core::WindowConfig& past) const;
};

// Family of finite-window conditional kernels on [left_limit, 0]: for each
// interval lambda and each fixed configuration of [left_limit,0] outside it,
// a probability over the configurations of lambda.
class FiniteSpecification {
 public:
  virtual ~FiniteSpecification() = default;
  virtual int q() const = 0;
  virtual core::Site left_limit() const = 0;
  // left_ctx covers [left_limit, lambda.l-1], right_ctx covers [lambda.m+1, 0]
  virtual double kernel(core::Window lambda, const core::WindowConfig& sigma,
                        const core::WindowConfig& left_ctx,
                        const core::WindowConfig& right_ctx) const = 0;
};

// Explicit per-site conditional tables; the random generator draws strictly
// positive conditionals (every entry >= floor) to exercise non-symmetric cases.
class TableLSS final : public FiniteLSS {
 public:
  TableLSS(core::Site left, int q, std::vector<std::vector<double>> tables);
  static TableLSS random(core::Site left, int q, rng::CounterRng& gen, double floor = 0.05,
                         int cap = core::kDefaultCap);
  static TableLSS materialize(const FiniteLSS& src, int cap = core::kDefaultCap);

  int q() const override { return q_; }
  core::Site left_limit() const override { return left_; }
  double singleton(core::Site i, std::uint8_t sym,
                   const core::WindowConfig& past) const override;

 private:
  core::Site left_;
  int q_;
  // tables_[i - left][past_rank * q + sym]
  std::vector<std::vector<double>> tables_;
};

// Singleton conditionals of an Ising interaction: partition-sum ratios on
// [i, 0] with the given tail left of the working window.
class PotentialLSS final : public FiniteLSS {
 public:
  PotentialLSS(couplings::IsingPotential pot, core::Site left, kernels::ExteriorSpec ext,
               int cap = core::kDefaultCap);

  int q() const override { return 2; }
  core::Site left_limit() const override { return left_; }
  double singleton(core::Site i, std::uint8_t sym,
                   const core::WindowConfig& past) const override;

 private:
  couplings::IsingPotential pot_;
  core::Site left_;
  kernels::ExteriorSpec ext_;
  int cap_;
};

// Exact statistical-mechanics kernels of an Ising interaction on arbitrary
// sub-windows; tables are memoized (write-once, shared across readers).
class PotentialSpec final : public FiniteSpecification {
 public:
  PotentialSpec(couplings::IsingPotential pot, core::Site left, kernels::ExteriorSpec ext,
                int cap = core::kDefaultCap);
  ~PotentialSpec() override;

  int q() const override { return 2; }
  core::Site left_limit() const override { return left_; }
  double kernel(core::Window lambda, const core::WindowConfig& sigma,
                const core::WindowConfig& left_ctx,
                const core::WindowConfig& right_ctx) const override;

 private:
  struct Memo;
  couplings::IsingPotential pot_;
  core::Site left_;
  kernels::ExteriorSpec ext_;
  int cap_;
  std::unique_ptr<Memo> memo_;
};

// Builds the window kernels generated by a singleton family: the full-window
// kernel is the chain-rule product, and sub-window kernels are the ratio of a
// joint cylinder to the marginal over the window.
std::shared_ptr<const FiniteSpecification> map_b(std::shared_ptr<const FiniteLSS> f);

// Extracts the singleton family of a kernel family: the site-i conditional is
// the single-site marginal at i of the [i, 0] kernel given the past.
std::shared_ptr<const FiniteLSS> map_c(std::shared_ptr<const FiniteSpecification> gamma);

// Probability of a configuration on an arbitrary sub-window of [l*, 0] under
// the lambda-kernel: coordinates outside lambda must agree with the fixed
// context (otherwise the probability is zero by properness).
double proper_probability(const FiniteSpecification& gamma, core::Window lambda,
                          const core::WindowConfig& sigma, const core::WindowConfig& left_ctx,
                          const core::WindowConfig& right_ctx);

// Max-abs defect of the two-window compatibility identity: summing the
// smaller-window kernel against the larger window's internal marginal must
// reproduce the larger window's own marginal.
double check_specification_consistency(const FiniteSpecification& gamma, core::Window lambda,
                                       core::Window delta, const core::WindowConfig& left_ctx,
                                       const core::WindowConfig& right_ctx,
                                       int cap = core::kDefaultCap);

// Max-abs defect of c(b(f)) against f over every singleton evaluation.
double roundtrip_defect_cb(const FiniteLSS& f, int cap = core::kDefaultCap);

// Max-abs defect of b(c(gamma)) against gamma over every window, context and
// configuration.
double roundtrip_defect_bc(const FiniteSpecification& gamma, int cap = core::kDefaultCap);

// A full conditioning context for one kernel evaluation.
struct KernelContext {
  kernels::ExteriorSpec ext;
  core::WindowConfig left;
  core::WindowConfig right;
};

struct ComparisonBound {
  double lhs = 0;  // difference of the two conditional expectations
  double rhs = 0;  // sup-norm of h times the energy oscillation between contexts
  bool ok = false;
};

// Checks |E_a h - E_b h| <= ||h||_inf * sup |H_a - H_b| for the window kernels
// under two conditioning contexts; h is a table over the window ranks.
ComparisonBound comparison_bound_check(const couplings::IsingPotential& pot,
                                       core::Window lambda, const std::vector<double>& h,
                                       const KernelContext& a, const KernelContext& b,
                                       int cap = core::kDefaultCap);

}  // namespace correspondence
}  // namespace halfline
