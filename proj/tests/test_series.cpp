#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "doctest.h"
#include "halfline/series.hpp"
#include "test_support.hpp"

using halfline::Errc;
using halfline::series::Basis;
using halfline::series::Classification;
using halfline::series::TailModel;
using halfline::series::Verdict;
using halfline::series::classify;
using halfline::series::tail_basis;
using halfline::series::tail_verdict;
using testsupport::close_abs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power_term(std::uint64_t r, double s) {
  return std::pow(static_cast<double>(r), -s);
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("tail verdicts follow the exponent rules") {
  CHECK(tail_verdict({2.0, 0.0}) == Verdict::kConverges);
  CHECK(tail_verdict({1.0000001, 0.0}) == Verdict::kConverges);
  CHECK(tail_verdict({0.999999, 5.0}) == Verdict::kDiverges);
  CHECK(tail_verdict({0.5, 0.0}) == Verdict::kDiverges);
  CHECK(tail_verdict({1.0, 1.5}) == Verdict::kConverges);
  CHECK(tail_verdict({1.0, 1.0}) == Verdict::kDiverges);
  CHECK(tail_verdict({1.0, 0.0}) == Verdict::kDiverges);
  CHECK(tail_verdict({1.0, -1.0}) == Verdict::kDiverges);

  CHECK(tail_basis({1.0, 2.0}) == Basis::kCauchyCondensation);
  CHECK(tail_basis({2.0, 0.0}) == Basis::kAnalyticExponent);
  CHECK(tail_basis({0.5, 0.0}) == Basis::kAnalyticExponent);
}

TEST_CASE("twelve calibration series classify correctly") {
  struct Calib {
    const char* name;
    std::function<double(std::uint64_t)> term;
    TailModel tail;
    Verdict expect;
    Basis basis;
  };
  const auto logp = [](std::uint64_t r) { return std::log(static_cast<double>(r) + 1); };
  const std::vector<Calib> table = {
      {"r^-0.5", [](std::uint64_t r) { return power_term(r, 0.5); }, {0.5, 0},
       Verdict::kDiverges, Basis::kAnalyticExponent},
      {"r^-0.8", [](std::uint64_t r) { return power_term(r, 0.8); }, {0.8, 0},
       Verdict::kDiverges, Basis::kAnalyticExponent},
      {"r^-1", [](std::uint64_t r) { return power_term(r, 1.0); }, {1.0, 0},
       Verdict::kDiverges, Basis::kCauchyCondensation},
      {"r^-1.1", [](std::uint64_t r) { return power_term(r, 1.1); }, {1.1, 0},
       Verdict::kConverges, Basis::kAnalyticExponent},
      {"r^-1.5", [](std::uint64_t r) { return power_term(r, 1.5); }, {1.5, 0},
       Verdict::kConverges, Basis::kAnalyticExponent},
      {"r^-2", [](std::uint64_t r) { return power_term(r, 2.0); }, {2.0, 0},
       Verdict::kConverges, Basis::kAnalyticExponent},
      {"r^-3", [](std::uint64_t r) { return power_term(r, 3.0); }, {3.0, 0},
       Verdict::kConverges, Basis::kAnalyticExponent},
      {"1/(r log r)", [logp](std::uint64_t r) { return 1.0 / ((r + 1.0) * logp(r)); }, {1.0, 1.0},
       Verdict::kDiverges, Basis::kCauchyCondensation},
      {"1/(r log^2 r)",
       [logp](std::uint64_t r) { return 1.0 / ((r + 1.0) * logp(r) * logp(r)); }, {1.0, 2.0},
       Verdict::kConverges, Basis::kCauchyCondensation},
      {"1/(r sqrt(log r))",
       [logp](std::uint64_t r) { return 1.0 / ((r + 1.0) * std::sqrt(logp(r))); }, {1.0, 0.5},
       Verdict::kDiverges, Basis::kCauchyCondensation},
      {"log r / r", [logp](std::uint64_t r) { return logp(r) / (r + 1.0); }, {1.0, -1.0},
       Verdict::kDiverges, Basis::kCauchyCondensation},
      {"log r / r^2",
       [logp](std::uint64_t r) { return logp(r) / ((r + 1.0) * (r + 1.0)); }, {2.0, -1.0},
       Verdict::kConverges, Basis::kAnalyticExponent},
  };
  for (const auto& c : table) {
    CAPTURE(c.name);
    const Classification cls = classify(c.term, c.tail);
    CHECK(cls.verdict == c.expect);
    CHECK(cls.basis == c.basis);
    REQUIRE(cls.partial_sums.size() == 4);
    CHECK(cls.partial_sums[0].first == 100);
    CHECK(cls.partial_sums[3].first == 100000);
    for (std::size_t k = 1; k < 4; ++k)
      CHECK(cls.partial_sums[k].second >= cls.partial_sums[k - 1].second);
    CHECK(!cls.finite_support);
    REQUIRE(cls.tail_model.has_value());
    CHECK(cls.tail_model->s == c.tail.s);
  }
}

TEST_CASE("partial sums reproduce the quadratic zeta prefix") {
  const Classification cls =
      classify([](std::uint64_t r) { return power_term(r, 2.0); }, TailModel{2.0, 0.0});
  REQUIRE(cls.partial_sums.size() == 4);
  CHECK(cls.partial_sums[1].first == 1000);
  CHECK(close_abs(cls.partial_sums[1].second, 1.6439345666815615, 1e-12));
  // the 1e5 prefix is already within 1e-5 of the full series value
  CHECK(close_abs(cls.partial_sums[3].second, 1.6449340668482264, 1.1e-5));
}

TEST_CASE("an infinite sampled term certifies divergence over any tail model") {
  const auto term = [](std::uint64_t r) {
    return r == 5 ? kInf : power_term(r, 3.0);
  };
  const Classification cls = classify(term, TailModel{3.0, 0.0});
  CHECK(cls.verdict == Verdict::kDiverges);
  CHECK(cls.basis == Basis::kAnalyticExponent);
}

TEST_CASE("finite support converges by direct summation") {
  const auto term = [](std::uint64_t r) { return r <= 10 ? 1.5 : 0.0; };
  const Classification cls = classify(term, std::nullopt, 10.0);
  CHECK(cls.verdict == Verdict::kConverges);
  CHECK(cls.basis == Basis::kPartialSumsOnly);
  CHECK(cls.finite_support);
  REQUIRE(cls.partial_sums.size() == 4);
  CHECK(close_abs(cls.partial_sums[0].second, 15.0, 1e-15));
  CHECK(close_abs(cls.partial_sums[3].second, 15.0, 1e-15));
}

TEST_CASE("no tail model and infinite support stays inconclusive") {
  const Classification cls =
      classify([](std::uint64_t r) { return power_term(r, 1.01); }, std::nullopt);
  CHECK(cls.verdict == Verdict::kInconclusive);
  CHECK(cls.basis == Basis::kPartialSumsOnly);
  CHECK(!cls.tail_model.has_value());
}

TEST_CASE("invalid terms raise typed errors") {
  CHECK_FAILS_WITH(Errc::kNumericInvariant,
                   classify([](std::uint64_t) { return std::nan(""); }, std::nullopt));
  CHECK_FAILS_WITH(Errc::kInvalidArgument,
                   classify([](std::uint64_t r) { return r == 3 ? -1.0 : 0.5; }, std::nullopt));
}

TEST_CASE("token spellings are stable") {
  using halfline::series::basis_token;
  using halfline::series::verdict_token;
  CHECK(std::string(verdict_token(Verdict::kConverges)) == "converges");
  CHECK(std::string(verdict_token(Verdict::kDiverges)) == "diverges");
  CHECK(std::string(verdict_token(Verdict::kInconclusive)) == "inconclusive");
  CHECK(std::string(basis_token(Basis::kAnalyticExponent)) == "analytic_exponent");
  CHECK(std::string(basis_token(Basis::kCauchyCondensation)) == "cauchy_condensation");
  CHECK(std::string(basis_token(Basis::kPartialSumsOnly)) == "partial_sums_only");
}

}  // TEST_SUITE
