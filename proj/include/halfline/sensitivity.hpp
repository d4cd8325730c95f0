#pragma once

#include <vector>

#include "halfline/core.hpp"
#include "halfline/correspondence.hpp"
#include "halfline/couplings.hpp"
#include "halfline/kernels.hpp"

namespace halfline {
namespace sensitivity {

// How the supremum/infimum over the varied part of the past (sites <= k) is
// realized.  ExtremalTails substitutes the two uniform tails; for
// ferromagnetic couplings this is exact for the variation and the two
// dominance coefficients (conditional probabilities are monotone in each
// boundary spin), while for the single-site oscillation it only certifies a
// lower bound.  ExhaustiveTails enumerates every configuration on a finite
// varied zone [k-depth+1, k] with a fixed boundary beyond, giving certified
// lower bounds for var/osc and upper bounds for a/b on any coupling signs.
enum class Method { kExtremalTails, kExhaustiveTails };

struct Options {
  Method method = Method::kExtremalTails;
  int depth = 8;  // exhaustive varied-zone width
  // context below the enumerated region: tail bc (+ truncation depth) for the
  // extremal tails themselves, or the fixed boundary beyond the varied zone
  kernels::ExteriorSpec beyond = {};
  int cap = core::kDefaultCap;
};

// The four past-sensitivity coefficients of the singleton family at site i
// with respect to the past at site k:
//   var: sup over two pasts agreeing on (k, i-1] of the conditional difference;
//   osc: the same with the pasts differing at site k only;
//   a:   inf over pasts of the summed infimum conditional mass;
//   b:   inf over pairs of pasts of the summed pointwise-minimum mass.
struct Coefficients {
  double var = 0;
  double osc = 0;
  double a = 1;
  double b = 1;
};

Coefficients coefficients(const couplings::IsingPotential& pot, core::Site i, core::Site k,
                          const Options& opt = {});

// Explicit finite families enumerate their whole varied zone [left_limit, k];
// the results are the exact suprema/infima of the finite family.
Coefficients coefficients(const correspondence::FiniteLSS& f, core::Site i, core::Site k,
                          int cap = core::kDefaultCap);

double variation(const couplings::IsingPotential& pot, core::Site i, core::Site k,
                 const Options& opt = {});
double oscillation(const couplings::IsingPotential& pot, core::Site i, core::Site k,
                   const Options& opt = {});
double a_coefficient(const couplings::IsingPotential& pot, core::Site i, core::Site k,
                     const Options& opt = {});
double b_coefficient(const couplings::IsingPotential& pot, core::Site i, core::Site k,
                     const Options& opt = {});

// Analytic interaction bounds: osc_bound = beta * sum_{j=i}^0 |J(j,k)| and
// var_bound = beta * sum_{j=i}^0 sum_{l<=k+1} |J(j,l)|.  When the radial
// profile is nonincreasing the one-term shortcut forms beta*(1-i)*|J(i,k)|
// and beta*(1-i)*sum_{l<=k+1}|J(i,l)| are also reported (NaN otherwise).
struct Bounds {
  double osc_bound = 0;
  double var_bound = 0;
  double osc_shortcut = std::numeric_limits<double>::quiet_NaN();
  double var_shortcut = std::numeric_limits<double>::quiet_NaN();
};

Bounds ising_bounds(const couplings::IsingPotential& pot, core::Site i, core::Site k);

struct SensitivityRow {
  core::Site i = 0;
  core::Site k = -1;
  Coefficients coeff;
  Method method = Method::kExtremalTails;
  int depth = 0;  // 0 for extremal tails
  Bounds bounds;
};

// Rows for k = k_from .. k_to (all < i), in fixed order.
std::vector<SensitivityRow> sensitivity_scan(const couplings::IsingPotential& pot,
                                             core::Site i, core::Site k_from,
                                             core::Site k_to, const Options& opt = {});

}  // namespace sensitivity
}  // namespace halfline
