#include "halfline/series.hpp"

#include <cmath>
#include <string>

#include "halfline/core.hpp"

namespace halfline {
namespace series {

const char* verdict_token(Verdict v) {
  switch (v) {
    case Verdict::kConverges: return "converges";
    case Verdict::kDiverges: return "diverges";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* basis_token(Basis b) {
  switch (b) {
    case Basis::kAnalyticExponent: return "analytic_exponent";
    case Basis::kCauchyCondensation: return "cauchy_condensation";
    case Basis::kPartialSumsOnly: return "partial_sums_only";
  }
  return "partial_sums_only";
}

Verdict tail_verdict(const TailModel& m) {
  if (m.s > 1) return Verdict::kConverges;
  if (m.s < 1) return Verdict::kDiverges;
  return m.t > 1 ? Verdict::kConverges : Verdict::kDiverges;
}

Basis tail_basis(const TailModel& m) {
  return m.s == 1 ? Basis::kCauchyCondensation : Basis::kAnalyticExponent;
}

Classification classify(const std::function<double(std::uint64_t)>& term,
                        std::optional<TailModel> tail, double support_radius) {
  constexpr std::uint64_t kCheckpoints[] = {100, 1000, 10000, 100000};
  Classification c;
  c.tail_model = tail;
  c.finite_support = std::isfinite(support_radius);

  bool saw_infinite = false;
  double acc = 0;
  std::size_t next_cp = 0;
  for (std::uint64_t r = 1; r <= kCheckpoints[3]; ++r) {
    const double x = term(r);
    if (std::isnan(x)) {
      fail(Errc::kNumericInvariant, "series term is NaN at r=" + std::to_string(r));
    }
    if (x < 0) {
      fail(Errc::kInvalidArgument,
           "series classifier requires nonnegative terms, got term(" + std::to_string(r) +
               ") < 0");
    }
    if (std::isinf(x)) saw_infinite = true;
    acc += x;
    if (r == kCheckpoints[next_cp]) {
      c.partial_sums.emplace_back(r, acc);
      ++next_cp;
    }
  }

  if (saw_infinite) {
    c.verdict = Verdict::kDiverges;
    c.basis = Basis::kAnalyticExponent;  // an infinite term is an exact certificate
    return c;
  }
  if (c.finite_support) {
    c.verdict = Verdict::kConverges;
    c.basis = Basis::kPartialSumsOnly;
    return c;
  }
  if (tail.has_value()) {
    c.verdict = tail_verdict(*tail);
    c.basis = tail_basis(*tail);
    return c;
  }
  c.verdict = Verdict::kInconclusive;
  c.basis = Basis::kPartialSumsOnly;
  return c;
}

}  // namespace series
}  // namespace halfline
