#include "halfline/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace halfline {
namespace kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kPatternTailCap = 1 << 23;  // direct-summed periodic tails

// Exterior spin field F_k = sum_{j exterior} J(k,j) s_j for every site of the
// enumeration window; fixed parts are explicit configurations, the tail comes
// from the boundary condition truncated at ext.depth.
std::vector<double> exterior_fields(const couplings::CouplingModel& model, core::Window w,
                                    core::Site tail_attach, const ExteriorSpec& ext,
                                    const std::vector<const core::WindowConfig*>& fixed) {
  std::vector<double> fields(static_cast<size_t>(w.size()), 0.0);
  for (const core::WindowConfig* part : fixed) {
    if (part == nullptr || part->values.empty()) continue;
    for (int a = 0; a < w.size(); ++a) {
      const core::Site i = w.l + a;
      double f = 0;
      for (core::Site j = part->window.l; j <= part->window.m; ++j)
        f += model.coupling(i, j) * part->spin(j);
      fields[static_cast<size_t>(a)] += f;
    }
  }
  if (ext.bc.is_free()) return fields;
  if (ext.depth < 1) fail(Errc::kInvalidArgument, "truncation depth must be >= 1");
  using BK = core::BoundaryCondition::Kind;
  if (ext.bc.kind == BK::kPeriodicTail) {
    if (ext.depth == couplings::kDepthInfinite ||
        ext.depth > static_cast<double>(kPatternTailCap))
      fail(Errc::kCapExceeded,
           "patterned tails are summed directly and support depths only up to 2^23");
    const auto d = static_cast<std::int64_t>(ext.depth);
    for (int a = 0; a < w.size(); ++a) {
      const core::Site i = w.l + a;
      double f = 0;
      for (std::int64_t k = 1; k <= d; ++k) {
        const core::Site j = static_cast<core::Site>(tail_attach - k);
        f += model.coupling(i, j) * core::spin_of(ext.bc.tail_symbol(tail_attach, j));
      }
      fields[static_cast<size_t>(a)] += f;
    }
  } else {
    const double sign = (ext.bc.kind == BK::kAllPlus) ? 1.0 : -1.0;
    for (int a = 0; a < w.size(); ++a) {
      const double f = model.tail_field(w.l + a, tail_attach, ext.depth);
      if (!std::isfinite(f))
        fail(Errc::kInvalidArgument,
             "tail interaction diverges; the model is not summable at infinite depth");
      fields[static_cast<size_t>(a)] += sign * f;
    }
  }
  return fields;
}

void check_exteriors(core::Window w, const core::WindowConfig& left,
                     const core::WindowConfig& right) {
  if (!left.values.empty() && left.window.m != w.l - 1)
    fail(Errc::kInvalidArgument, "left exterior must end immediately before the window");
  if (w.m < 0) {
    if (right.values.empty())
      fail(Errc::kMissingExterior,
           "window does not reach site 0; the configuration on its right must be supplied");
    if (right.window.l != w.m + 1 || right.window.m != 0)
      fail(Errc::kMissingExterior, "right exterior must cover exactly (window.m, 0]");
  } else if (!right.values.empty()) {
    fail(Errc::kInvalidArgument, "right exterior supplied for a window reaching site 0");
  }
}

// Unnormalized log-weights beta * G(sigma) for all configurations of `w`,
// enumerated with single-spin-flip (Gray code) updates; logw[rank] follows
// the lexicographic rank order of core::decode_rank.
std::vector<double> enumerate_log_weights(const couplings::IsingPotential& pot, core::Window w,
                                          const std::vector<double>& fields, int cap) {
  const int n = w.size();
  const std::uint64_t total = core::config_count(n, 2, cap);
  std::vector<double> jmat(static_cast<size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double j = pot.model.coupling(w.l + a, w.l + b);
      jmat[static_cast<size_t>(a) * n + b] = j;
      jmat[static_cast<size_t>(b) * n + a] = j;
    }
  std::vector<int> spins(static_cast<size_t>(n), -1);  // rank 0 = all symbol 0
  double g = 0;
  for (int a = 0; a < n; ++a) {
    g += spins[static_cast<size_t>(a)] * fields[static_cast<size_t>(a)];
    for (int b = a + 1; b < n; ++b)
      g += jmat[static_cast<size_t>(a) * n + b] * spins[static_cast<size_t>(a)] *
           spins[static_cast<size_t>(b)];
  }
  std::vector<double> logw(total, 0.0);
  logw[0] = pot.beta * g;
  for (std::uint64_t r = 1; r < total; ++r) {
    const int bit = std::countr_zero(r);
    const int idx = n - 1 - bit;  // leftmost site is the most significant digit
    double local = fields[static_cast<size_t>(idx)];
    for (int b = 0; b < n; ++b)
      local += jmat[static_cast<size_t>(idx) * n + b] * spins[static_cast<size_t>(b)];
    g -= 2.0 * spins[static_cast<size_t>(idx)] * local;
    spins[static_cast<size_t>(idx)] = -spins[static_cast<size_t>(idx)];
    logw[r ^ (r >> 1)] = pot.beta * g;
  }
  return logw;
}

// log(sum exp(v[i])) over a rank subrange in fixed index order.
double log_sum_exp(const std::vector<double>& v, std::uint64_t lo, std::uint64_t hi) {
  double m = -kInf;
  for (std::uint64_t i = lo; i < hi; ++i) m = std::max(m, v[i]);
  if (!std::isfinite(m)) fail(Errc::kNumericInvariant, "log-weights are not finite");
  double s = 0;
  for (std::uint64_t i = lo; i < hi; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

std::string context_string(const core::WindowConfig& left, const core::WindowConfig& right) {
  std::string s;
  if (!left.values.empty())
    s += "left[" + std::to_string(left.window.l) + "," + std::to_string(left.window.m) +
         "]=" + left.to_string();
  if (!right.values.empty()) {
    if (!s.empty()) s += " ";
    s += "right[" + std::to_string(right.window.l) + "," + std::to_string(right.window.m) +
         "]=" + right.to_string();
  }
  return s;
}

}  // namespace

KernelTable::KernelTable(core::Window w, int q, std::vector<double> log_weights, KernelMeta meta)
    : window_(w), q_(q), logw_(std::move(log_weights)), meta_(std::move(meta)) {
  const std::uint64_t expect = core::config_count(window_.size(), q_, 62);
  if (logw_.size() != expect)
    fail(Errc::kInvalidArgument, "log-weight table size does not match the window");
  for (double lw : logw_)
    if (!std::isfinite(lw))
      fail(Errc::kNumericInvariant, "kernel log-weights must be finite (strict positivity)");
  log_z_ = log_sum_exp(logw_, 0, logw_.size());
  probs_.resize(logw_.size());
  double total = 0;
  for (std::uint64_t r = 0; r < logw_.size(); ++r) {
    probs_[r] = std::exp(logw_[r] - log_z_);
    total += probs_[r];
  }
  if (std::fabs(total - 1.0) > 1e-12)
    fail(Errc::kNumericInvariant, "kernel probabilities do not normalize");
}

double KernelTable::prob(const core::WindowConfig& c) const {
  if (!(c.window == window_))
    fail(Errc::kInvalidArgument, "configuration window does not match the kernel window");
  return probs_[core::encode_rank(c.values.data(), window_.size(), q_)];
}

core::WindowConfig KernelTable::config_at(std::uint64_t rank) const {
  return core::decode_rank(rank, window_, q_);
}

double KernelTable::min_prob() const {
  return *std::min_element(probs_.begin(), probs_.end());
}

double KernelTable::expectation(
    const std::function<double(const core::WindowConfig&)>& h) const {
  double s = 0;
  for (std::uint64_t r = 0; r < probs_.size(); ++r) s += h(config_at(r)) * probs_[r];
  return s;
}

double truncation_eps(const couplings::IsingPotential& pot, int window_size,
                      const ExteriorSpec& ext) {
  if (ext.bc.is_free() || ext.depth == couplings::kDepthInfinite) return 0.0;
  return pot.beta * static_cast<double>(window_size) * pot.model.tail_bound(ext.depth);
}

double default_depth(const couplings::IsingPotential& pot, int window_size,
                     double eps_target) {
  if (!(eps_target > 0)) fail(Errc::kInvalidArgument, "truncation target must be positive");
  if (!pot.model.summable())
    fail(Errc::kInvalidArgument, "no finite depth meets the target for a non-summable model");
  const double scale = pot.beta * static_cast<double>(window_size);
  if (scale == 0) return 1.0;
  auto eps_at = [&](double d) { return scale * pot.model.tail_bound(d); };
  if (eps_at(1.0) <= eps_target) return 1.0;
  double lo = 1.0, hi = 2.0;
  while (eps_at(hi) > eps_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e60) fail(Errc::kNumericInvariant, "tail bound failed to reach the target");
  }
  for (int it = 0; it < 200 && hi - lo > 0.5; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    (eps_at(mid) <= eps_target ? hi : lo) = mid;
  }
  if (hi > 9e15) return couplings::kDepthInfinite;
  return std::ceil(hi);
}

EnergyValue hamiltonian(const couplings::IsingPotential& pot, const core::WindowConfig& sigma,
                        const ExteriorSpec& ext, const core::WindowConfig& left_exterior,
                        const core::WindowConfig& right_exterior) {
  const core::Window w = sigma.window;
  check_exteriors(w, left_exterior, right_exterior);
  const core::Site tail_attach = left_exterior.values.empty() ? w.l : left_exterior.window.l;
  const std::vector<double> fields = exterior_fields(
      pot.model, w, tail_attach, ext, {&left_exterior, &right_exterior});
  double g = 0;
  for (int a = 0; a < w.size(); ++a) {
    const core::Site i = w.l + a;
    g += sigma.spin(i) * fields[static_cast<size_t>(a)];
    for (int b = a + 1; b < w.size(); ++b)
      g += pot.model.coupling(i, w.l + b) * sigma.spin(i) * sigma.spin(w.l + b);
  }
  return {-pot.beta * g, truncation_eps(pot, w.size(), ext)};
}

KernelTable gibbs_kernel(const couplings::IsingPotential& pot, core::Window window,
                         const ExteriorSpec& ext, const core::WindowConfig& left_exterior,
                         const core::WindowConfig& right_exterior, int cap) {
  check_exteriors(window, left_exterior, right_exterior);
  const core::Site tail_attach =
      left_exterior.values.empty() ? window.l : left_exterior.window.l;
  const std::vector<double> fields = exterior_fields(
      pot.model, window, tail_attach, ext, {&left_exterior, &right_exterior});
  std::vector<double> logw = enumerate_log_weights(pot, window, fields, cap);
  KernelMeta meta;
  meta.beta = pot.beta;
  meta.model = pot.model.describe();
  meta.bc = ext.bc.describe();
  meta.depth = ext.depth;
  meta.eps = truncation_eps(pot, window.size(), ext);
  meta.context = context_string(left_exterior, right_exterior);
  return KernelTable(window, 2, std::move(logw), std::move(meta));
}

double lss_singleton(const couplings::IsingPotential& pot, core::Site i, std::uint8_t sym,
                     const core::WindowConfig& past, const ExteriorSpec& ext, int cap) {
  core::check_site(i);
  if (sym > 1) fail(Errc::kInvalidArgument, "binary symbol expected");
  if (!past.values.empty() && past.window.m != i - 1)
    fail(Errc::kInvalidArgument, "past must end immediately before the site");
  const core::Window w(i, 0);
  const core::Site tail_attach = past.values.empty() ? i : past.window.l;
  const std::vector<double> fields =
      exterior_fields(pot.model, w, tail_attach, ext, {&past});
  const std::vector<double> logw = enumerate_log_weights(pot, w, fields, cap);
  // the leftmost site is the most significant digit, so fixing it to `sym`
  // selects one contiguous half of the rank range
  const std::uint64_t half = logw.size() / 2;
  const double num = log_sum_exp(logw, sym ? half : 0, sym ? logw.size() : half);
  const double den = log_sum_exp(logw, 0, logw.size());
  return std::exp(num - den);
}

double interval_kernel(const couplings::IsingPotential& pot, const core::WindowConfig& segment,
                       const core::WindowConfig& past, const ExteriorSpec& ext, int cap) {
  if (segment.values.empty()) fail(Errc::kInvalidArgument, "empty segment");
  if (!past.values.empty() && past.window.m != segment.window.l - 1)
    fail(Errc::kInvalidArgument, "past must end immediately before the segment");
  double log_p = 0;
  core::WindowConfig grown = past;
  for (core::Site i = segment.window.l; i <= segment.window.m; ++i) {
    const double p = lss_singleton(pot, i, segment.value(i), grown, ext, cap);
    log_p += std::log(p);
    grown = core::concat(grown, core::WindowConfig(core::Window(i, i), {segment.value(i)}));
  }
  return std::exp(log_p);
}

double kernel_expectation(const KernelTable& table,
                          const std::function<double(const core::WindowConfig&)>& h) {
  return table.expectation(h);
}

}  // namespace kernels
}  // namespace halfline
