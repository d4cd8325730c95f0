#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "halfline/core.hpp"

namespace halfline {
namespace couplings {

// Radial decay descriptor: J(r) ~ C * r^{-s} * (log r)^{-t}.
struct DecayMeta {
  double s = 0;
  double t = 0;
};

// Truncation depths are reals so that the analytic range sums can handle
// depths far beyond any direct enumeration; infinity selects the full tail.
inline constexpr double kDepthInfinite = std::numeric_limits<double>::infinity();

// Smallest p >= 1 such that i and j share a dyadic 2^p-block.  Blocks are
// anchored with u(i) = 1 - i, so boundaries fall after sites 0, -1, -3, -7, ...
int block_level(core::Site i, core::Site j);

class CouplingModel {
 public:
  enum class Kind { kPowerLaw, kLogPowerLaw, kHierarchical, kHierarchicalLevels, kTable };

  static CouplingModel power_law(double p);
  // J(r) = r^{-p} * (log(r+1))^{-t}, p > 1, t >= 0.
  static CouplingModel log_power_law(double p, double t);
  // Dyson block couplings with the parametric level sequence b_p = 2^{(2-alpha)p}.
  static CouplingModel hierarchical(double alpha);
  // Explicit finite level sequence b_1..b_L (zero beyond); finite range 2^L - 1.
  static CouplingModel hierarchical_levels(std::vector<double> levels);
  static CouplingModel table(const std::vector<std::tuple<int, int, double>>& entries);

  Kind kind() const { return kind_; }
  double coupling(core::Site i, core::Site j) const;
  // Radial profile sup{|J(i,j)| : |i-j| = r}; argument is real so the analytic
  // paths can evaluate far beyond integer range.
  double radial(double r) const;

  bool summable() const;
  bool ferromagnetic() const;
  bool radially_nonincreasing() const;
  std::optional<DecayMeta> decay() const;
  // Largest interaction distance, or infinity for unbounded-support models.
  double support_radius() const;

  // sum_{r=a..b} radial(r) over integer r; b may be kDepthInfinite.  Exact to
  // ~1e-13 relative via Euler-Maclaurin / closed forms.
  double radial_sum(double a, double b) const;
  // sum_{r=a..b} r * radial(r).
  double radial_weighted_sum(double a, double b) const;

  // Certified upper bound on sum_{r > depth} radial(r); infinity when the
  // model is not summable.
  double tail_bound(double depth) const;

  // sum_{j in [cut-depth, cut-1]} J(i, j) for a uniform +1 tail left of cut
  // (i >= cut); depth may be kDepthInfinite except where noted.
  double tail_field(core::Site i, core::Site cut, double depth) const;

  // Sum of levelJ contributions used by hierarchical models:
  // levelJ(q) = sum_{q' >= q} b_{q'} 2^{-2q'+1}.
  double level_coupling(int level) const;

  std::string type_token() const;   // "power_law", "hierarchical", ...
  std::string param_string() const; // printable main parameter(s)
  std::string describe() const;     // type + parameters

  double param_p() const { return p_; }
  double param_t() const { return t_; }
  double param_alpha() const { return alpha_; }
  // Explicit per-level weights (empty unless kHierarchicalLevels).
  const std::vector<double>& level_weights() const { return levels_; }
  // Table entries as (i, j, value) with i < j, in canonical sorted order
  // (empty unless kTable).
  std::vector<std::tuple<int, int, double>> table_entries() const;

 private:
  CouplingModel() = default;

  double table_radial(std::int64_t r) const;

  Kind kind_ = Kind::kPowerLaw;
  double p_ = 0;      // power-law exponent
  double t_ = 0;      // log-power exponent
  double alpha_ = 0;  // hierarchical parameter
  std::vector<double> levels_;        // explicit b_q
  std::vector<double> level_suffix_;  // precomputed levelJ for explicit levels
  std::map<std::pair<int, int>, double> entries_;
  std::vector<double> table_radial_;  // radial profile of table models
  bool table_ferro_ = true;
};

// Pair potential phi_{i,j}(s) = -beta * J(i,j) * s_i * s_j over spins +-1.
struct IsingPotential {
  CouplingModel model;
  double beta = 0;

  IsingPotential(CouplingModel m, double beta_in);
};

}  // namespace couplings
}  // namespace halfline
