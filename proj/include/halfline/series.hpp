#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace halfline {
namespace series {

// Asymptotic term model: term(N) ~ C * N^{-s} * (log N)^{-t}.  Negative t
// denotes logarithmic growth of the terms.
struct TailModel {
  double s = 0;
  double t = 0;
};

enum class Verdict { kConverges, kDiverges, kInconclusive };
enum class Basis { kAnalyticExponent, kCauchyCondensation, kPartialSumsOnly };

const char* verdict_token(Verdict v);
const char* basis_token(Basis b);

struct Classification {
  Verdict verdict = Verdict::kInconclusive;
  Basis basis = Basis::kPartialSumsOnly;
  // partial sums S_N at N in {1e2, 1e3, 1e4, 1e5}
  std::vector<std::pair<std::uint64_t, double>> partial_sums;
  std::optional<TailModel> tail_model;
  bool finite_support = false;
};

// Verdict implied by a tail model alone: s > 1 converges, s < 1 diverges,
// s = 1 decided on the log exponent (t > 1 converges, else diverges).
Verdict tail_verdict(const TailModel& m);
// The marginal s = 1 decision condenses the series; elsewhere the exponent
// comparison is direct.
Basis tail_basis(const TailModel& m);

// Classifier for nonnegative-term series.  Partial sums alone never decide:
// the verdict needs a tail model, a finite support (terms vanish beyond
// `support_radius`), or an infinite sampled term (which certifies divergence
// exactly).  NaN or negative terms raise errors.
Classification classify(const std::function<double(std::uint64_t)>& term,
                        std::optional<TailModel> tail,
                        double support_radius = std::numeric_limits<double>::infinity());

}  // namespace series
}  // namespace halfline
