#include "halfline/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace halfline {
namespace sensitivity {
namespace {

using core::Site;
using core::Window;
using core::WindowConfig;

constexpr double kInf = std::numeric_limits<double>::infinity();
// enumeration budgets for the value tensor and the pairwise minimum loop
constexpr std::uint64_t kTensorBudget = std::uint64_t{1} << 26;
constexpr std::uint64_t kPairBudget = std::uint64_t{1} << 28;

// Conditional values f_i(sym | varied v, shared s): v ranks the varied part of
// the past (sites <= k that are enumerated, or the two extremal tails) and s
// ranks the shared part (k, i-1].  When the varied part is a config window
// ending at site k, the site-k symbol is the least significant digit of v.
struct ValueTensor {
  std::uint64_t nv = 0;
  std::uint64_t ns = 0;
  int q = 2;
  std::vector<double> vals;

  double at(std::uint64_t v, std::uint64_t s, int sym) const {
    return vals[(v * ns + s) * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(sym)];
  }
  double& slot(std::uint64_t v, std::uint64_t s, int sym) {
    return vals[(v * ns + s) * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(sym)];
  }
};

double variation_from(const ValueTensor& t) {
  double best = 0;
  for (std::uint64_t s = 0; s < t.ns; ++s) {
    for (int sym = 0; sym < t.q; ++sym) {
      double lo = kInf, hi = -kInf;
      for (std::uint64_t v = 0; v < t.nv; ++v) {
        const double x = t.at(v, s, sym);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      best = std::max(best, hi - lo);
    }
  }
  return best;
}

// varied index v = g*q + (symbol at site k); the oscillation fixes g and s and
// lets only the site-k symbol move.
double oscillation_from_grouped(const ValueTensor& t) {
  const auto q = static_cast<std::uint64_t>(t.q);
  double best = 0;
  for (std::uint64_t g = 0; g < t.nv / q; ++g) {
    for (std::uint64_t s = 0; s < t.ns; ++s) {
      for (int sym = 0; sym < t.q; ++sym) {
        double lo = kInf, hi = -kInf;
        for (std::uint64_t d = 0; d < q; ++d) {
          const double x = t.at(g * q + d, s, sym);
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
        best = std::max(best, hi - lo);
      }
    }
  }
  return best;
}

double a_from(const ValueTensor& t) {
  double best = kInf;
  for (std::uint64_t s = 0; s < t.ns; ++s) {
    double acc = 0;
    for (int sym = 0; sym < t.q; ++sym) {
      double lo = kInf;
      for (std::uint64_t v = 0; v < t.nv; ++v) lo = std::min(lo, t.at(v, s, sym));
      acc += lo;
    }
    best = std::min(best, acc);
  }
  return best;
}

double b_from(const ValueTensor& t) {
  const long double pair_cost =
      static_cast<long double>(t.nv) * static_cast<long double>(t.nv) *
      static_cast<long double>(t.ns) * static_cast<long double>(t.q);
  if (pair_cost > static_cast<long double>(kPairBudget)) {
    fail(Errc::kCapExceeded, "pairwise minimum enumeration over " + std::to_string(t.nv) +
                                 " varied configurations exceeds the budget");
  }
  double best = kInf;
  for (std::uint64_t s = 0; s < t.ns; ++s) {
    for (std::uint64_t v = 0; v < t.nv; ++v) {
      for (std::uint64_t w = v; w < t.nv; ++w) {
        double acc = 0;
        for (int sym = 0; sym < t.q; ++sym) acc += std::min(t.at(v, s, sym), t.at(w, s, sym));
        best = std::min(best, acc);
      }
    }
  }
  return best;
}

// The shared zone (k, i-1] is empty when k == i-1.
WindowConfig shared_config(Site i, Site k, std::uint64_t s, int q) {
  if (k == i - 1) return {};
  return core::decode_rank(s, Window{k + 1, i - 1}, q);
}

void check_sites(Site i, Site k) {
  core::check_site(i);
  if (k >= i) {
    fail(Errc::kInvalidArgument, "sensitivity site k=" + std::to_string(k) +
                                     " must lie strictly left of i=" + std::to_string(i));
  }
}

// Enumerated varied zone [k-depth+1, k] with the fixed context beyond.
ValueTensor ising_exhaustive_tensor(const couplings::IsingPotential& pot, Site i, Site k,
                                    int depth, const kernels::ExteriorSpec& beyond, int cap) {
  const Site vl = k - depth + 1;
  const Window past_w{vl, i - 1};
  ValueTensor t;
  t.q = 2;
  t.nv = core::config_count(depth, 2, cap);
  t.ns = core::config_count(i - 1 - k, 2, cap);
  if (static_cast<long double>(t.nv) * static_cast<long double>(t.ns) * 2.0L >
      static_cast<long double>(kTensorBudget)) {
    fail(Errc::kCapExceeded, "sensitivity enumeration exceeds the budget");
  }
  t.vals.resize(t.nv * t.ns * 2);
  for (std::uint64_t v = 0; v < t.nv; ++v) {
    for (std::uint64_t s = 0; s < t.ns; ++s) {
      // the varied zone occupies the leftmost (most significant) digits
      const WindowConfig past = core::decode_rank(v * t.ns + s, past_w, 2);
      for (int sym = 0; sym < 2; ++sym) {
        t.slot(v, s, sym) =
            kernels::lss_singleton(pot, i, static_cast<std::uint8_t>(sym), past, beyond, cap);
      }
    }
  }
  return t;
}

// The two uniform tails substituted for the whole varied zone (sites <= k).
ValueTensor ising_extremal_tensor(const couplings::IsingPotential& pot, Site i, Site k,
                                  double tail_depth, int cap) {
  ValueTensor t;
  t.q = 2;
  t.nv = 2;
  t.ns = core::config_count(i - 1 - k, 2, cap);
  t.vals.resize(t.nv * t.ns * 2);
  const kernels::ExteriorSpec tails[2] = {
      {core::BoundaryCondition::all_minus(), tail_depth},
      {core::BoundaryCondition::all_plus(), tail_depth},
  };
  for (std::uint64_t v = 0; v < 2; ++v) {
    for (std::uint64_t s = 0; s < t.ns; ++s) {
      const WindowConfig shared = shared_config(i, k, s, 2);
      for (int sym = 0; sym < 2; ++sym) {
        t.slot(v, s, sym) =
            kernels::lss_singleton(pot, i, static_cast<std::uint8_t>(sym), shared, tails[v], cap);
      }
    }
  }
  return t;
}

// Extremal oscillation: site k is explicit and flips, the two uniform tails
// stand in for the (shared) sites below k.  This certifies a lower bound only;
// mixed shared configurations below k can oscillate more.
double ising_extremal_oscillation(const couplings::IsingPotential& pot, Site i, Site k,
                                  double tail_depth, int cap) {
  const Window past_w{k, i - 1};
  const std::uint64_t ns = core::config_count(i - 1 - k, 2, cap);
  double best = 0;
  for (int tail = 0; tail < 2; ++tail) {
    const kernels::ExteriorSpec ext{
        tail == 0 ? core::BoundaryCondition::all_minus() : core::BoundaryCondition::all_plus(),
        tail_depth};
    for (std::uint64_t s = 0; s < ns; ++s) {
      for (int sym = 0; sym < 2; ++sym) {
        double lo = kInf, hi = -kInf;
        for (std::uint64_t d = 0; d < 2; ++d) {
          // site k is the leftmost (most significant) digit of the past rank
          const WindowConfig past = core::decode_rank(d * ns + s, past_w, 2);
          const double x =
              kernels::lss_singleton(pot, i, static_cast<std::uint8_t>(sym), past, ext, cap);
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
        best = std::max(best, hi - lo);
      }
    }
  }
  return best;
}

Coefficients reduce_all(const ValueTensor& t, double osc) {
  Coefficients c;
  c.var = variation_from(t);
  c.osc = osc;
  c.a = a_from(t);
  c.b = b_from(t);
  return c;
}

// sum_{l <= kk, l != j} |J(j, l)| for a window site j >= kk.
double below_sum(const couplings::CouplingModel& model, Site j, Site kk) {
  if (model.kind() == couplings::CouplingModel::Kind::kTable) {
    // finite support: walk the candidate sites directly (values may be signed)
    const auto radius = static_cast<Site>(model.support_radius());
    double acc = 0;
    for (Site l = j - radius; l <= kk; ++l) {
      if (l != j) acc += std::abs(model.coupling(j, l));
    }
    return acc;
  }
  // radial and hierarchical models have nonnegative couplings, so the signed
  // tail field below the cut is already the absolute sum
  const Site cut = (j == kk) ? j : kk + 1;
  return model.tail_field(j, cut, couplings::kDepthInfinite);
}

}  // namespace

Coefficients coefficients(const couplings::IsingPotential& pot, Site i, Site k,
                          const Options& opt) {
  check_sites(i, k);
  if (opt.method == Method::kExtremalTails) {
    const ValueTensor t = ising_extremal_tensor(pot, i, k, opt.beyond.depth, opt.cap);
    return reduce_all(t, ising_extremal_oscillation(pot, i, k, opt.beyond.depth, opt.cap));
  }
  if (opt.depth < 1 || opt.depth > 12) {
    fail(Errc::kInvalidArgument,
         "exhaustive varied-zone depth must be in [1, 12], got " + std::to_string(opt.depth));
  }
  const ValueTensor t = ising_exhaustive_tensor(pot, i, k, opt.depth, opt.beyond, opt.cap);
  return reduce_all(t, oscillation_from_grouped(t));
}

Coefficients coefficients(const correspondence::FiniteLSS& f, Site i, Site k, int cap) {
  check_sites(i, k);
  const Site left = f.left_limit();
  if (k < left) {
    fail(Errc::kInvalidArgument, "sensitivity site k=" + std::to_string(k) +
                                     " lies left of the family limit " + std::to_string(left));
  }
  const int q = f.q();
  const Window past_w{left, i - 1};
  ValueTensor t;
  t.q = q;
  t.nv = core::config_count(k - left + 1, q, cap);
  t.ns = core::config_count(i - 1 - k, q, cap);
  if (static_cast<long double>(t.nv) * static_cast<long double>(t.ns) *
          static_cast<long double>(q) >
      static_cast<long double>(kTensorBudget)) {
    fail(Errc::kCapExceeded, "sensitivity enumeration exceeds the budget");
  }
  t.vals.resize(t.nv * t.ns * static_cast<std::uint64_t>(q));
  for (std::uint64_t v = 0; v < t.nv; ++v) {
    for (std::uint64_t s = 0; s < t.ns; ++s) {
      const WindowConfig past = core::decode_rank(v * t.ns + s, past_w, q);
      for (int sym = 0; sym < q; ++sym) {
        t.slot(v, s, sym) = f.singleton(i, static_cast<std::uint8_t>(sym), past);
      }
    }
  }
  return reduce_all(t, oscillation_from_grouped(t));
}

double variation(const couplings::IsingPotential& pot, Site i, Site k, const Options& opt) {
  return coefficients(pot, i, k, opt).var;
}
double oscillation(const couplings::IsingPotential& pot, Site i, Site k, const Options& opt) {
  return coefficients(pot, i, k, opt).osc;
}
double a_coefficient(const couplings::IsingPotential& pot, Site i, Site k, const Options& opt) {
  return coefficients(pot, i, k, opt).a;
}
double b_coefficient(const couplings::IsingPotential& pot, Site i, Site k, const Options& opt) {
  return coefficients(pot, i, k, opt).b;
}

Bounds ising_bounds(const couplings::IsingPotential& pot, Site i, Site k) {
  check_sites(i, k);
  const auto& model = pot.model;
  Bounds b;
  double osc_acc = 0;
  double var_acc = 0;
  for (Site j = i; j <= 0; ++j) {
    osc_acc += std::abs(model.coupling(j, k));
    var_acc += below_sum(model, j, k + 1);
  }
  b.osc_bound = pot.beta * osc_acc;
  b.var_bound = pot.beta * var_acc;
  if (model.radially_nonincreasing()) {
    const double sites = static_cast<double>(1 - i);
    b.osc_shortcut = pot.beta * sites * std::abs(model.coupling(i, k));
    b.var_shortcut = pot.beta * sites * below_sum(model, i, k + 1);
  }
  return b;
}

std::vector<SensitivityRow> sensitivity_scan(const couplings::IsingPotential& pot, Site i,
                                             Site k_from, Site k_to, const Options& opt) {
  if (k_from > k_to) {
    fail(Errc::kInvalidArgument, "sensitivity scan range is empty");
  }
  std::vector<SensitivityRow> rows;
  rows.reserve(static_cast<std::size_t>(k_to - k_from + 1));
  for (Site k = k_from; k <= k_to; ++k) {
    SensitivityRow row;
    row.i = i;
    row.k = k;
    row.coeff = coefficients(pot, i, k, opt);
    row.method = opt.method;
    row.depth = opt.method == Method::kExhaustiveTails ? opt.depth : 0;
    row.bounds = ising_bounds(pot, i, k);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sensitivity
}  // namespace halfline
