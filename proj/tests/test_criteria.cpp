#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "halfline/core.hpp"
#include "halfline/correspondence.hpp"
#include "halfline/couplings.hpp"
#include "halfline/criteria.hpp"
#include "halfline/rng.hpp"
#include "halfline/sensitivity.hpp"
#include "halfline/series.hpp"
#include "test_support.hpp"

using halfline::Errc;
using halfline::core::Site;
using halfline::core::Window;
using halfline::core::WindowConfig;
using halfline::correspondence::FiniteLSS;
using halfline::correspondence::TableLSS;
using halfline::couplings::CouplingModel;
using halfline::couplings::IsingPotential;
using halfline::criteria::CriterionReport;
using halfline::criteria::Verdict;
using testsupport::close_abs;
using testsupport::close_rel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeta2 = 1.6449340668482264;

bool has_note(const CriterionReport& r, const std::string& needle) {
  return r.notes.find(needle) != std::string::npos;
}

// Deterministic copy chain: site 0 repeats site -1 with probability one, so
// the dominance coefficient at the first past site is exactly zero.
struct CopyChain final : FiniteLSS {
  int q() const override { return 2; }
  Site left_limit() const override { return -1; }
  double singleton(Site i, std::uint8_t sym, const WindowConfig& past) const override {
    if (i == -1) return 0.5;
    return past.value(-1) == sym ? 1.0 : 0.0;
  }
};

// Independent brute-force variation / pairwise-minimum factors for a finite
// family, via direct loops over complete pasts.
struct BruteFactors {
  double var = 0;
  double b = 1;
};

BruteFactors brute_factors(const FiniteLSS& f, Site i, Site k) {
  const int q = f.q();
  const Site left = f.left_limit();
  const Window past_w{left, i - 1};
  const int nshared = i - 1 - k;
  std::uint64_t shared_count = 1, varied_count = 1;
  for (int n = 0; n < nshared; ++n) shared_count *= static_cast<std::uint64_t>(q);
  for (Site s = left; s <= k; ++s) varied_count *= static_cast<std::uint64_t>(q);

  BruteFactors out;
  out.b = kInf;
  double var = 0;
  for (std::uint64_t s = 0; s < shared_count; ++s) {
    for (int sym = 0; sym < q; ++sym) {
      double lo = kInf, hi = -kInf;
      for (std::uint64_t v = 0; v < varied_count; ++v) {
        const auto past = halfline::core::decode_rank(v * shared_count + s, past_w, q);
        const double p = f.singleton(i, static_cast<std::uint8_t>(sym), past);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      var = std::max(var, hi - lo);
    }
    for (std::uint64_t v = 0; v < varied_count; ++v) {
      for (std::uint64_t w = v; w < varied_count; ++w) {
        double overlap = 0;
        for (int sym = 0; sym < q; ++sym) {
          const auto pv = halfline::core::decode_rank(v * shared_count + s, past_w, q);
          const auto pw = halfline::core::decode_rank(w * shared_count + s, past_w, q);
          overlap += std::min(f.singleton(i, static_cast<std::uint8_t>(sym), pv),
                              f.singleton(i, static_cast<std::uint8_t>(sym), pw));
        }
        out.b = std::min(out.b, overlap);
      }
    }
  }
  out.var = var;
  return out;
}

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("dominance series certifies uniqueness under fast decay") {
  const IsingPotential pot{CouplingModel::power_law(2.5), 1.0};
  const CriterionReport r = halfline::criteria::cff(pot, 0);
  CHECK(r.verdict == Verdict::kUniquenessCertified);
  CHECK(r.condition_met);
  CHECK(r.classification.verdict == halfline::series::Verdict::kDiverges);
  REQUIRE(r.classification.tail_model.has_value());
  CHECK(r.classification.tail_model->s == 0.0);
  // terms approach a positive constant: the incremental growth rate of the
  // partial sums stabilizes between the last two checkpoints
  const auto& ps = r.classification.partial_sums;
  REQUIRE(ps.size() == 4);
  const double rate32 = (ps[2].second - ps[1].second) / 9000.0;
  const double rate43 = (ps[3].second - ps[2].second) / 90000.0;
  CHECK(rate43 > 0);
  CHECK(close_rel(rate43, rate32, 0.05));
}

TEST_CASE("dominance series at zero coupling counts every site") {
  const IsingPotential pot{CouplingModel::power_law(1.3), 0.0};
  const CriterionReport r = halfline::criteria::cff(pot, 0);
  CHECK(r.verdict == Verdict::kUniquenessCertified);
  REQUIRE(r.classification.partial_sums.size() == 4);
  CHECK(r.classification.partial_sums[0].second == 100.0);
  CHECK(r.classification.partial_sums[3].second == 100000.0);
}

TEST_CASE("dominance series in the marginal power regime") {
  const CouplingModel model = CouplingModel::power_law(2.0);
  SUBCASE("small beta certifies with the bound exponent") {
    const CriterionReport r = halfline::criteria::cff({model, 0.4}, 0);
    CHECK(r.verdict == Verdict::kUniquenessCertified);
    REQUIRE(r.classification.tail_model.has_value());
    CHECK(close_abs(r.classification.tail_model->s, 0.8, 1e-12));
  }
  SUBCASE("larger beta pushes the certified exponent past one") {
    const CriterionReport r = halfline::criteria::cff({model, 0.6}, 0);
    CHECK(r.verdict == Verdict::kInconclusive);
    CHECK(has_note(r, ">= 1"));
  }
  SUBCASE("wider windows scale the exponent with the site count") {
    const CriterionReport r = halfline::criteria::cff({model, 0.2}, -1);
    CHECK(r.verdict == Verdict::kUniquenessCertified);
    REQUIRE(r.classification.tail_model.has_value());
    CHECK(close_abs(r.classification.tail_model->s, 0.8, 1e-12));
  }
}

TEST_CASE("dominance series with log-corrected marginal decay") {
  const CriterionReport strong =
      halfline::criteria::cff({CouplingModel::log_power_law(2.0, 1.5), 0.3}, 0);
  CHECK(strong.verdict == Verdict::kUniquenessCertified);
  CHECK(strong.classification.basis == halfline::series::Basis::kAnalyticExponent);

  const CriterionReport marginal =
      halfline::criteria::cff({CouplingModel::log_power_law(2.0, 1.0), 0.3}, 0);
  CHECK(marginal.verdict == Verdict::kUniquenessCertified);
  CHECK(marginal.classification.basis == halfline::series::Basis::kCauchyCondensation);
}

TEST_CASE("dominance series stays inconclusive when bounds decay slowly") {
  const CriterionReport slow = halfline::criteria::cff({CouplingModel::power_law(1.5), 1.0}, 0);
  CHECK(slow.verdict == Verdict::kInconclusive);
  CHECK(has_note(slow, "decay too slowly"));

  const CriterionReport heavy = halfline::criteria::cff({CouplingModel::power_law(0.9), 1.0}, 0);
  CHECK(heavy.verdict == Verdict::kInconclusive);
  CHECK(has_note(heavy, "no dominance lower bound"));
}

TEST_CASE("dominance series with finite interaction range") {
  const CouplingModel table =
      CouplingModel::table({{0, -1, 1.0}, {0, -2, 0.5}});
  const CriterionReport r = halfline::criteria::cff({table, 0.8}, 0);
  CHECK(r.verdict == Verdict::kUniquenessCertified);
  CHECK(has_note(r, "finite interaction range"));

  const CouplingModel levels = CouplingModel::hierarchical_levels({1.0, 0.7});
  const CriterionReport h = halfline::criteria::cff({levels, 0.5}, 0);
  CHECK(h.verdict == Verdict::kUniquenessCertified);
}

TEST_CASE("finite families evaluate the dominance series exactly") {
  halfline::rng::CounterRng gen(2024, 7);
  const TableLSS f = TableLSS::random(-4, 2, gen);
  const CriterionReport r = halfline::criteria::cff(f, 0);
  CHECK(r.verdict == Verdict::kUniquenessCertified);
  CHECK(r.condition_met);
  // beyond the family limit the factors are one: growth is exactly linear
  const auto& ps = r.classification.partial_sums;
  REQUIRE(ps.size() == 4);
  const double step = (ps[3].second - ps[2].second) / 90000.0;
  CHECK(step > 0);
  CHECK(close_abs(ps[2].second - ps[1].second, 9000.0 * step, 1e-6));
}

TEST_CASE("a vanishing dominance coefficient fails the finite-family series") {
  const CopyChain chain;
  const CriterionReport r = halfline::criteria::cff(chain, 0);
  CHECK(r.verdict == Verdict::kConditionFails);
  CHECK(has_note(r, "vanishes"));
  CHECK(r.classification.verdict == halfline::series::Verdict::kConverges);
  CHECK(r.classification.finite_support);
}

TEST_CASE("binary dominance products coincide with the dominance series") {
  const std::vector<IsingPotential> pots = {
      {CouplingModel::power_law(2.5), 1.0},
      {CouplingModel::power_law(2.0), 0.4},
      {CouplingModel::log_power_law(2.0, 1.0), 0.7},
      {CouplingModel::table({{0, -1, 0.8}, {-1, -3, 0.4}}), 0.9},
  };
  for (const auto& pot : pots) {
    for (const Site i : {0, -2}) {
      const CriterionReport a = halfline::criteria::cff(pot, i);
      const CriterionReport b = halfline::criteria::harris_stenflo(pot, i);
      CHECK(b.id == "dominance_products");
      CHECK(b.verdict == a.verdict);
      CHECK(b.condition_met == a.condition_met);
      REQUIRE(a.classification.partial_sums.size() ==
              b.classification.partial_sums.size());
      for (std::size_t n = 0; n < a.classification.partial_sums.size(); ++n) {
        CHECK(close_abs(a.classification.partial_sums[n].second,
                        b.classification.partial_sums[n].second, 1e-12));
      }
      CHECK(has_note(b, "binary alphabet"));
    }
  }

  halfline::rng::CounterRng gen(11, 3);
  const TableLSS f = TableLSS::random(-3, 2, gen);
  const CriterionReport a = halfline::criteria::cff(f, 0);
  const CriterionReport b = halfline::criteria::harris_stenflo(f, 0);
  CHECK(b.verdict == a.verdict);
  for (std::size_t n = 0; n < a.classification.partial_sums.size(); ++n) {
    CHECK(close_abs(a.classification.partial_sums[n].second,
                    b.classification.partial_sums[n].second, 1e-12));
  }
}

TEST_CASE("three-symbol dominance products match brute force") {
  halfline::rng::CounterRng gen(512, 9);
  const TableLSS f = TableLSS::random(-3, 3, gen);
  const CriterionReport r = halfline::criteria::harris_stenflo(f, 0);
  CHECK(r.id == "dominance_products");

  double prod_h = 1, prod_b = 1;
  std::vector<double> h_factors;
  for (Site k = -1; k >= -3; --k) {
    const BruteFactors bf = brute_factors(f, 0, k);
    const double h = std::max(0.0, 1.0 - 1.5 * bf.var);
    h_factors.push_back(h);
    prod_h *= h;
    prod_b *= bf.b;
  }
  // expected partial sums: near terms then a constant tail
  double acc = 0, running = 1;
  for (std::uint64_t m = 1; m <= 100; ++m) {
    if (m <= h_factors.size()) running *= h_factors[m - 1];
    acc += running;
  }
  REQUIRE(!r.classification.partial_sums.empty());
  CHECK(r.classification.partial_sums[0].first == 100);
  CHECK(close_abs(r.classification.partial_sums[0].second, acc, 1e-10));
  CHECK(r.condition_met == (prod_h > 0 || prod_b > 0));
  CHECK(has_note(r, "pairwise-minimum product"));
}

TEST_CASE("growth function matches direct summation") {
  const CouplingModel model = CouplingModel::power_law(2.0);
  CHECK(close_abs(halfline::criteria::uniqueness_growth(model, 1), kZeta2, 1e-10));

  // independent truncated sum with an integral-dominated remainder
  const std::uint64_t j = 37;
  double direct = 0;
  const std::uint64_t big = 2000000;
  for (std::uint64_t r = 1; r <= big; ++r) {
    const double jr = std::pow(static_cast<double>(r), -2.0);
    direct += static_cast<double>(std::min(j, r)) * jr;
  }
  // tail sum_{r>big} j r^-2 < j / big
  const double g = halfline::criteria::uniqueness_growth(model, j);
  CHECK(g >= direct);
  CHECK(g <= direct + static_cast<double>(j) / static_cast<double>(big) + 1e-9);

  CHECK(halfline::criteria::uniqueness_growth(model, 64) >
        halfline::criteria::uniqueness_growth(model, 8));
}

TEST_CASE("growth exponent fits the predicted power for slow decay") {
  const CouplingModel model = CouplingModel::power_law(1.5);
  const double g_lo = halfline::criteria::uniqueness_growth(model, 1u << 8);
  const double g_hi = halfline::criteria::uniqueness_growth(model, 1u << 14);
  const double slope = (std::log(g_hi) - std::log(g_lo)) / (6.0 * std::log(2.0));
  CHECK(close_abs(slope, 0.5, 0.05));
}

TEST_CASE("growth condition certifies uniqueness for fast decay") {
  for (const double p : {3.0, 2.5}) {
    const CriterionReport r =
        halfline::criteria::ising_uniqueness_condition(CouplingModel::power_law(p), 1.0);
    CAPTURE(p);
    CHECK(r.verdict == Verdict::kUniquenessCertified);
    CHECK(r.condition_met);
  }
  const CriterionReport logc = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::log_power_law(2.0, 1.0), 1.0);
  CHECK(logc.verdict == Verdict::kUniquenessCertified);
  CHECK(logc.classification.basis == halfline::series::Basis::kCauchyCondensation);

  const CriterionReport half = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::log_power_law(2.0, 0.5), 1.0);
  CHECK(half.verdict == Verdict::kUniquenessCertified);

  const CriterionReport finite = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::table({{0, -1, 1.0}, {0, -3, 0.2}}), 1.0);
  CHECK(finite.verdict == Verdict::kUniquenessCertified);
  CHECK(has_note(finite, "weighted coupling sum"));

  const CriterionReport hier = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::hierarchical(2.5), 1.0);
  CHECK(hier.verdict == Verdict::kUniquenessCertified);

  const CriterionReport zero = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::power_law(1.2), 0.0);
  CHECK(zero.verdict == Verdict::kUniquenessCertified);
}

TEST_CASE("growth condition fails outside the summable-weight regime") {
  const CriterionReport marginal =
      halfline::criteria::ising_uniqueness_condition(CouplingModel::power_law(2.0), 1.0);
  CHECK(marginal.verdict == Verdict::kConditionFails);
  CHECK(has_note(marginal, "C=0.1 diverges"));
  CHECK(has_note(marginal, "C=10 converges"));

  // even when every grid constant diverges, the all-constants quantifier fails
  const CriterionReport smallb =
      halfline::criteria::ising_uniqueness_condition(CouplingModel::power_law(2.0), 0.005);
  CHECK(smallb.verdict == Verdict::kConditionFails);
  CHECK(has_note(smallb, "C=100 diverges"));

  const CriterionReport slow =
      halfline::criteria::ising_uniqueness_condition(CouplingModel::power_law(1.5), 1.0);
  CHECK(slow.verdict == Verdict::kConditionFails);
  CHECK(has_note(slow, "every"));

  const CriterionReport heavy =
      halfline::criteria::ising_uniqueness_condition(CouplingModel::power_law(0.9), 1.0);
  CHECK(heavy.verdict == Verdict::kConditionFails);
  CHECK(has_note(heavy, "diverge"));

  const CriterionReport hier = halfline::criteria::ising_uniqueness_condition(
      CouplingModel::hierarchical(1.5), 1.0);
  CHECK(hier.verdict == Verdict::kConditionFails);
}

TEST_CASE("transition condition by inverse-coupling series") {
  const CriterionReport slow =
      halfline::criteria::dyson_transition_condition(CouplingModel::power_law(1.5));
  CHECK(slow.verdict == Verdict::kTransitionAtLowTemp);
  CHECK(slow.condition_met);
  CHECK(slow.classification.verdict == halfline::series::Verdict::kConverges);
  REQUIRE(slow.classification.tail_model.has_value());
  CHECK(close_abs(slow.classification.tail_model->s, 1.5, 1e-12));

  const CriterionReport logslow =
      halfline::criteria::dyson_transition_condition(CouplingModel::log_power_law(1.5, 1.0));
  CHECK(logslow.verdict == Verdict::kTransitionAtLowTemp);

  const CriterionReport fast =
      halfline::criteria::dyson_transition_condition(CouplingModel::power_law(2.5));
  CHECK(fast.verdict == Verdict::kConditionFails);
  CHECK(fast.classification.verdict == halfline::series::Verdict::kDiverges);

  const CriterionReport cubic =
      halfline::criteria::dyson_transition_condition(CouplingModel::power_law(3.0));
  CHECK(cubic.verdict == Verdict::kConditionFails);

  const CriterionReport finite = halfline::criteria::dyson_transition_condition(
      CouplingModel::table({{0, -1, 1.0}}));
  CHECK(finite.verdict == Verdict::kConditionFails);
  CHECK(finite.classification.verdict == halfline::series::Verdict::kDiverges);

  const CriterionReport anti = halfline::criteria::dyson_transition_condition(
      CouplingModel::table({{0, -1, -0.5}}));
  CHECK(anti.verdict == Verdict::kConditionFails);
  CHECK(has_note(anti, "ferromagnetic"));

  const CriterionReport heavy =
      halfline::criteria::dyson_transition_condition(CouplingModel::power_law(0.9));
  CHECK(heavy.verdict == Verdict::kConditionFails);
  CHECK(has_note(heavy, "not defined"));

  CHECK(halfline::criteria::dyson_transition_condition(CouplingModel::hierarchical(1.5))
            .verdict == Verdict::kTransitionAtLowTemp);
  CHECK(halfline::criteria::dyson_transition_condition(CouplingModel::hierarchical(2.5))
            .verdict == Verdict::kConditionFails);
}

TEST_CASE("weighted coupling sum and the folklore conjecture") {
  const CriterionReport fast = halfline::criteria::kac_thompson(CouplingModel::power_law(3.0));
  CHECK(fast.verdict == Verdict::kInconclusive);
  CHECK(fast.condition_met);
  CHECK(!fast.counterexample);

  const CriterionReport mid = halfline::criteria::kac_thompson(CouplingModel::power_law(1.8));
  CHECK(!mid.condition_met);
  CHECK(!mid.counterexample);

  const CriterionReport cx =
      halfline::criteria::kac_thompson(CouplingModel::log_power_law(2.0, 1.0));
  CHECK(cx.classification.verdict == halfline::series::Verdict::kDiverges);
  CHECK(cx.counterexample);
  CHECK(has_note(cx, "refut"));

  const CriterionReport hier = halfline::criteria::kac_thompson(CouplingModel::hierarchical(2.5));
  CHECK(hier.condition_met);
}

TEST_CASE("square summability per site") {
  const CriterionReport zero =
      halfline::criteria::johansson_oberg({CouplingModel::power_law(1.5), 0.0}, 0);
  CHECK(zero.condition_met);
  CHECK(!zero.counterexample);

  for (const double p : {1.6, 1.75, 1.9}) {
    const CriterionReport r =
        halfline::criteria::johansson_oberg({CouplingModel::power_law(p), 1.0}, 0);
    CAPTURE(p);
    CHECK(r.condition_met);
    CHECK(r.verdict == Verdict::kInconclusive);
    CHECK(r.counterexample);
    CHECK(has_note(r, "without shift invariance"));
  }

  const CriterionReport narrow =
      halfline::criteria::johansson_oberg({CouplingModel::power_law(1.25), 1.0}, 0);
  CHECK(narrow.verdict == Verdict::kConditionFails);
  CHECK(!narrow.condition_met);

  const CriterionReport fast =
      halfline::criteria::johansson_oberg({CouplingModel::power_law(3.0), 1.0}, 0);
  CHECK(fast.condition_met);
  CHECK(!fast.counterexample);  // no transition certificate for p=3
}

TEST_CASE("oscillation sums against the contraction threshold") {
  const CouplingModel model = CouplingModel::power_law(2.0);
  const CriterionReport ok = halfline::criteria::one_sided_dobrushin({model, 0.5}, 0);
  CHECK(ok.condition_met);
  CHECK(ok.verdict == Verdict::kInconclusive);
  CHECK(has_note(ok, "0.607927"));  // threshold 1/zeta(2)

  const CriterionReport hot = halfline::criteria::one_sided_dobrushin({model, 0.7}, 0);
  CHECK(!hot.condition_met);
  CHECK(has_note(hot, ">= 1"));

  const CriterionReport zero = halfline::criteria::one_sided_dobrushin({model, 0.0}, 0);
  CHECK(zero.condition_met);

  // window of three sites: the certified sum is beta * (3 zeta(2) - 9/4)
  const CriterionReport wide = halfline::criteria::one_sided_dobrushin({model, 0.3}, -2);
  const double expect = 0.3 * (3.0 * kZeta2 - 2.25);
  CHECK(wide.condition_met);
  CHECK(has_note(wide, "0.80544"));
  CHECK(expect < 1.0);
}

TEST_CASE("variation sums certify one-sided boundary uniformity") {
  const CriterionReport fast =
      halfline::criteria::boundary_uniformity_series({CouplingModel::power_law(3.0), 1.0}, 0);
  CHECK(fast.verdict == Verdict::kUniquenessCertified);
  CHECK(fast.condition_met);

  const CriterionReport slow =
      halfline::criteria::boundary_uniformity_series({CouplingModel::power_law(1.5), 1.0}, 0);
  CHECK(slow.verdict == Verdict::kConditionFails);

  const CriterionReport marginal =
      halfline::criteria::boundary_uniformity_series({CouplingModel::power_law(2.0), 1.0}, 0);
  CHECK(marginal.verdict == Verdict::kConditionFails);

  const CriterionReport zero =
      halfline::criteria::boundary_uniformity_series({CouplingModel::power_law(1.5), 0.0}, 0);
  CHECK(zero.verdict == Verdict::kUniquenessCertified);

  const CriterionReport finite = halfline::criteria::boundary_uniformity_series(
      {CouplingModel::table({{0, -2, 0.7}}), 1.0}, 0);
  CHECK(finite.verdict == Verdict::kUniquenessCertified);

  const CriterionReport hier = halfline::criteria::boundary_uniformity_series(
      {CouplingModel::hierarchical(2.5), 1.0}, 0);
  CHECK(hier.verdict == Verdict::kUniquenessCertified);
}

TEST_CASE("level sums match the closed forms") {
  using halfline::criteria::hierarchical_sums;
  const auto mid = hierarchical_sums(CouplingModel::hierarchical(1.5));
  CHECK(close_abs(mid.sigma, 3.7345908033901374, 1e-12));
  CHECK(close_abs(mid.sigma_star, 3.189772074020083, 1e-9));
  CHECK(!mid.bounded_levels);

  const auto flat = hierarchical_sums(CouplingModel::hierarchical(2.0));
  CHECK(close_abs(flat.sigma, 4.0 / 3.0, 1e-12));
  CHECK(flat.sigma_star == kInf);
  CHECK(flat.bounded_levels);

  const auto steep = hierarchical_sums(CouplingModel::hierarchical(2.5));
  CHECK(steep.sigma < flat.sigma);
  CHECK(steep.sigma > 0);
  CHECK(steep.sigma_star == kInf);
  CHECK(steep.bounded_levels);

  const auto heavy = hierarchical_sums(CouplingModel::hierarchical(0.9));
  CHECK(heavy.sigma == kInf);

  const auto listed = hierarchical_sums(CouplingModel::hierarchical_levels({1.0, 1.0}));
  CHECK(close_abs(listed.sigma, 0.875, 1e-12));
  CHECK(listed.sigma_star == kInf);
  CHECK(listed.bounded_levels);

  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   hierarchical_sums(CouplingModel::power_law(2.0)));
}

TEST_CASE("level-sum clauses at specific temperatures") {
  using halfline::criteria::hierarchical_criterion;
  const CouplingModel mid = CouplingModel::hierarchical(1.5);

  const CriterionReport cold = hierarchical_criterion(mid, 0.2);
  CHECK(cold.verdict == Verdict::kUniquenessCertified);
  CHECK(has_note(cold, "< 1"));

  const CriterionReport hot = hierarchical_criterion(mid, 30.0);
  CHECK(hot.verdict == Verdict::kTransitionAtLowTemp);
  CHECK(has_note(hot, "multiple"));

  const CriterionReport between = hierarchical_criterion(mid, 1.0);
  CHECK(between.verdict == Verdict::kInconclusive);

  const CriterionReport flat = hierarchical_criterion(CouplingModel::hierarchical(2.0), 100.0);
  CHECK(flat.verdict == Verdict::kUniquenessCertified);
  CHECK(has_note(flat, "bounded"));

  const CriterionReport heavy = hierarchical_criterion(CouplingModel::hierarchical(0.9), 0.1);
  CHECK(heavy.verdict == Verdict::kAssumptionViolated);

  const CriterionReport listed =
      hierarchical_criterion(CouplingModel::hierarchical_levels({0.8, 0.5}), 50.0);
  CHECK(listed.verdict == Verdict::kUniquenessCertified);

  CHECK_FAILS_WITH(Errc::kInvalidArgument, hierarchical_criterion(mid, -1.0));
}

TEST_CASE("hierarchical regime splits on the level exponent") {
  using halfline::criteria::hierarchical_regime;
  CHECK(hierarchical_regime(CouplingModel::hierarchical(0.8)) == Verdict::kAssumptionViolated);
  CHECK(hierarchical_regime(CouplingModel::hierarchical(1.5)) == Verdict::kTransitionAtLowTemp);
  CHECK(hierarchical_regime(CouplingModel::hierarchical(2.0)) == Verdict::kUniquenessCertified);
  CHECK(hierarchical_regime(CouplingModel::hierarchical(2.5)) == Verdict::kUniquenessCertified);
  CHECK(hierarchical_regime(CouplingModel::hierarchical_levels({1.0})) ==
        Verdict::kUniquenessCertified);
  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   hierarchical_regime(CouplingModel::power_law(2.0)));
}

TEST_CASE("power-law regimes") {
  using halfline::criteria::power_law_classify;
  CHECK(power_law_classify(0.9).verdict == Verdict::kNotWellDefined);
  CHECK(power_law_classify(1.5).verdict == Verdict::kTransitionAtLowTemp);
  CHECK(has_note(power_law_classify(1.5), "high temperature"));
  CHECK(power_law_classify(2.0).verdict == Verdict::kInconclusive);
  CHECK(power_law_classify(2.5).verdict == Verdict::kUniquenessCertified);
  CHECK(power_law_classify(3.0).verdict == Verdict::kUniquenessCertified);
  CHECK_FAILS_WITH(Errc::kInvalidArgument, power_law_classify(0.0));
  CHECK_FAILS_WITH(Errc::kInvalidArgument, power_law_classify(-1.0));
}

TEST_CASE("regime table sweeps the canonical parameters") {
  const auto rows = halfline::criteria::regimes_table();
  struct Expect {
    const char* model;
    const char* param;
    const char* regime;
    bool jo;
    bool kt;
  };
  const std::vector<Expect> want = {
      {"power_law", "0.9", "not_well_defined", false, false},
      {"power_law", "1.2", "transition", false, false},
      {"power_law", "1.5", "transition", false, false},
      {"power_law", "1.6", "transition", true, false},
      {"power_law", "1.75", "transition", true, false},
      {"power_law", "1.8", "transition", true, false},
      {"power_law", "1.9", "transition", true, false},
      {"power_law", "2", "inconclusive", true, false},
      {"power_law", "2.5", "uniqueness_all_beta", true, false},
      {"power_law", "3", "uniqueness_all_beta", true, false},
      {"hierarchical", "0.8", "assumption_violated", false, false},
      {"hierarchical", "1.5", "transition", false, false},
      {"hierarchical", "2.5", "uniqueness_all_beta", true, false},
      {"log_power_law", "p=2 t=1", "uniqueness_all_beta", true, true},
  };
  REQUIRE(rows.size() == want.size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    CAPTURE(n);
    CHECK(rows[n].model == want[n].model);
    CHECK(rows[n].param == want[n].param);
    CHECK(rows[n].regime == want[n].regime);
    CHECK(rows[n].johansson == want[n].jo);
    CHECK(rows[n].kac_thompson == want[n].kt);
  }
}

TEST_CASE("verdict and regime tokens are stable") {
  using halfline::criteria::regime_token;
  using halfline::criteria::verdict_token;
  CHECK(std::string(verdict_token(Verdict::kUniquenessCertified)) == "uniqueness_certified");
  CHECK(std::string(verdict_token(Verdict::kTransitionAtLowTemp)) == "transition_at_low_temp");
  CHECK(std::string(verdict_token(Verdict::kConditionFails)) == "condition_fails");
  CHECK(std::string(verdict_token(Verdict::kInconclusive)) == "inconclusive");
  CHECK(std::string(verdict_token(Verdict::kNotWellDefined)) == "not_well_defined");
  CHECK(std::string(verdict_token(Verdict::kAssumptionViolated)) == "assumption_violated");
  CHECK(std::string(regime_token(Verdict::kUniquenessCertified)) == "uniqueness_all_beta");
  CHECK(std::string(regime_token(Verdict::kTransitionAtLowTemp)) == "transition");
}

TEST_CASE("criteria validate their arguments") {
  const IsingPotential pot{CouplingModel::power_law(2.5), 1.0};
  CHECK_FAILS_WITH(Errc::kInvalidArgument, halfline::criteria::cff(pot, 0, 0));
  CHECK_FAILS_WITH(Errc::kInvalidArgument, halfline::criteria::cff(pot, 1));
  CHECK_FAILS_WITH(Errc::kInvalidArgument, halfline::criteria::johansson_oberg(pot, 0, 0));
  CHECK_FAILS_WITH(Errc::kInvalidArgument, halfline::criteria::uniqueness_growth(pot.model, 0));
  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   halfline::criteria::ising_uniqueness_condition(pot.model, 1.0, {}));
  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   halfline::criteria::ising_uniqueness_condition(pot.model, 1.0, {0.5, -1.0}));
  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   halfline::criteria::ising_uniqueness_condition(pot.model, -0.5));

  const CopyChain chain;
  CHECK_FAILS_WITH(Errc::kInvalidArgument, halfline::criteria::cff(chain, -1));
}

}  // TEST_SUITE
