#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfline/core.hpp"
#include "halfline/correspondence.hpp"
#include "halfline/couplings.hpp"
#include "halfline/series.hpp"

namespace halfline {
namespace criteria {

enum class Verdict {
  kUniquenessCertified,
  kTransitionAtLowTemp,
  kConditionFails,
  kInconclusive,
  kNotWellDefined,
  kAssumptionViolated,
};

const char* verdict_token(Verdict v);

struct CriterionReport {
  std::string id;
  std::string inputs;  // printable model / beta / site inputs
  series::Classification classification;
  Verdict verdict = Verdict::kInconclusive;
  bool condition_met = false;
  bool counterexample = false;  // criterion-specific contradiction banner
  std::string notes;
};

// Chain-dominance series sum_{j<i} prod_{k=j}^{i-1} a_k: divergence certifies
// a unique chain.  Near-range a_k are computed exactly (extremal tails, exact
// for ferromagnetic couplings); beyond `depth` the certified lower bound
// 1 - var_bound stands in, and the analytic tail of the bound decides.
CriterionReport cff(const couplings::IsingPotential& pot, core::Site i, int depth = 6);
// Finite families are evaluated exactly: factors are constant left of the
// family limit, which decides divergence outright.
CriterionReport cff(const correspondence::FiniteLSS& f, core::Site i,
                    int cap = core::kDefaultCap);

// g(j) = sum_r min(j, r) J(r); the uniqueness condition asks that
// sum_j exp(-C g(j)) diverge for every C > 0.
double uniqueness_growth(const couplings::CouplingModel& model, std::uint64_t j);
CriterionReport ising_uniqueness_condition(const couplings::CouplingModel& model, double beta,
                                           const std::vector<double>& c_grid = {0.1, 1.0, 10.0,
                                                                                100.0});

// Convergence of sum_r loglog(r+4) / (r^3 J(r)) certifies multiple chains at
// low temperature (ferromagnetic, radially nonincreasing couplings).
CriterionReport dyson_transition_condition(const couplings::CouplingModel& model);

// Classification of sum_r r J(r), reported against the uniqueness condition;
// the counterexample flag marks models where the weighted sum diverges yet
// uniqueness is certified.
CriterionReport kac_thompson(const couplings::CouplingModel& model);

// sum_{j<i} var_j(f_i)^2: the square-summability criterion, evaluated per i
// and labeled as a non-shift-invariant adaptation (satisfied does not certify
// uniqueness on the half line; the counterexample flag marks models where it
// holds alongside a low-temperature transition).
CriterionReport johansson_oberg(const couplings::IsingPotential& pot, core::Site i,
                                int depth = 6);

// sum_{j<i} osc_j(f_i) < 1 via certified oscillation bounds, per i.
CriterionReport one_sided_dobrushin(const couplings::IsingPotential& pot, core::Site i,
                                    int depth = 6);

// sum_{j<i} var_j(f_i) < infinity via certified variation bounds, per i.
CriterionReport boundary_uniformity_series(const couplings::IsingPotential& pot, core::Site i,
                                           int depth = 6);

// Binary alphabets coincide with the chain-dominance series; larger alphabets
// evaluate sum_j prod_k (1 - |A|/2 var_k) and sum_j prod_k b_k exactly.
CriterionReport harris_stenflo(const couplings::IsingPotential& pot, core::Site i,
                               int depth = 6);
CriterionReport harris_stenflo(const correspondence::FiniteLSS& f, core::Site i,
                               int cap = core::kDefaultCap);

// Level-sequence sums Sigma(b) = sum_p 2^{-2p+1} b_p (2^p - 1) and
// Sigma*(b) = sum_p log(1+p)/b_p for hierarchical models.
struct HierarchicalSums {
  double sigma = 0;
  double sigma_star = 0;
  bool bounded_levels = false;
};
HierarchicalSums hierarchical_sums(const couplings::CouplingModel& model);
// Applies the level-sum clauses at inverse temperature beta: uniqueness for
// beta*Sigma(b) < 1 or bounded levels, multiplicity for beta > 8*Sigma*(b).
CriterionReport hierarchical_criterion(const couplings::CouplingModel& model, double beta);
// Temperature-free regime of the parametric family: transition iff the level
// exponent lies strictly between 1 and 2.
Verdict hierarchical_regime(const couplings::CouplingModel& model);

// p <= 1 not well defined; p > 2 uniqueness at all temperatures; 1 < p < 2
// low-temperature transition; p = 2 outside the analysis.
CriterionReport power_law_classify(double p,
                                   const std::vector<double>& beta_grid = {0.25, 0.5, 1.0, 2.0});

struct RegimeRow {
  std::string model;   // coupling family token
  std::string param;   // printable parameter
  std::string regime;  // regime token
  bool johansson = false;      // square-summability satisfied at i=0
  bool kac_thompson = false;   // weighted-sum conjecture counterexample
};
const char* regime_token(Verdict v);
// Canonical parameter sweep across the power-law, hierarchical and
// log-corrected families; verdict consistency is checked and violations abort.
std::vector<RegimeRow> regimes_table();

}  // namespace criteria
}  // namespace halfline
