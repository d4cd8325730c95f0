#include "halfline/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace halfline {
namespace correspondence {

namespace {

void check_site_in_range(core::Site i, core::Site left) {
  if (i < left || i > 0)
    fail(Errc::kInvalidArgument, "site outside the working window [" +
                                     std::to_string(left) + ",0]");
}

void check_past(core::Site left, core::Site i, const core::WindowConfig& past) {
  check_site_in_range(i, left);
  if (i == left) {
    if (!past.values.empty())
      fail(Errc::kInvalidArgument, "no past exists left of the working window");
    return;
  }
  if (past.values.empty() || past.window.l != left || past.window.m != i - 1)
    fail(Errc::kInvalidArgument, "past must cover exactly [left_limit, i-1]");
}

void check_contexts(core::Site left, core::Window lambda, const core::WindowConfig& left_ctx,
                    const core::WindowConfig& right_ctx) {
  if (lambda.l < left) fail(Errc::kInvalidArgument, "window exceeds the working window");
  if (lambda.l == left) {
    if (!left_ctx.values.empty())
      fail(Errc::kInvalidArgument, "left context supplied at the working window edge");
  } else if (left_ctx.values.empty() || left_ctx.window.l != left ||
             left_ctx.window.m != lambda.l - 1) {
    fail(Errc::kMissingExterior, "left context must cover exactly [left_limit, lambda.l-1]");
  }
  if (lambda.m == 0) {
    if (!right_ctx.values.empty())
      fail(Errc::kInvalidArgument, "right context supplied for a window reaching 0");
  } else if (right_ctx.values.empty() || right_ctx.window.l != lambda.m + 1 ||
             right_ctx.window.m != 0) {
    fail(Errc::kMissingExterior, "right context must cover exactly (lambda.m, 0]");
  }
}

// Kernels generated from a singleton family by chain rule and marginal ratio.
class LssSpec final : public FiniteSpecification {
 public:
  explicit LssSpec(std::shared_ptr<const FiniteLSS> f) : f_(std::move(f)) {}

  int q() const override { return f_->q(); }
  core::Site left_limit() const override { return f_->left_limit(); }

  double kernel(core::Window lambda, const core::WindowConfig& sigma,
                const core::WindowConfig& left_ctx,
                const core::WindowConfig& right_ctx) const override {
    check_contexts(f_->left_limit(), lambda, left_ctx, right_ctx);
    if (!(sigma.window == lambda))
      fail(Errc::kInvalidArgument, "configuration window does not match the kernel window");
    const double num = f_->cylinder(core::concat(sigma, right_ctx), left_ctx);
    double den = 0;
    core::ConfigStream stream(lambda, f_->q(), 62);
    core::WindowConfig s;
    while (stream.next(s)) den += f_->cylinder(core::concat(s, right_ctx), left_ctx);
    if (!(den > 0) || !std::isfinite(den))
      fail(Errc::kZeroDenominator, "window marginal of the singleton family vanished");
    return num / den;
  }

 private:
  std::shared_ptr<const FiniteLSS> f_;
};

// Singleton family extracted from a kernel family: single-site marginals of
// the [i, 0] kernels.
class SpecLSS final : public FiniteLSS {
 public:
  explicit SpecLSS(std::shared_ptr<const FiniteSpecification> g) : g_(std::move(g)) {}

  int q() const override { return g_->q(); }
  core::Site left_limit() const override { return g_->left_limit(); }

  double singleton(core::Site i, std::uint8_t sym,
                   const core::WindowConfig& past) const override {
    check_past(g_->left_limit(), i, past);
    const core::Window w(i, 0);
    double num = 0, den = 0;
    core::ConfigStream stream(w, g_->q(), 62);
    core::WindowConfig s;
    while (stream.next(s)) {
      const double p = g_->kernel(w, s, past, {});
      den += p;
      if (s.value(i) == sym) num += p;
    }
    if (!(den > 0) || !std::isfinite(den))
      fail(Errc::kZeroDenominator, "window kernel mass vanished");
    return num / den;
  }

 private:
  std::shared_ptr<const FiniteSpecification> g_;
};

std::shared_ptr<const FiniteLSS> borrow(const FiniteLSS& f) {
  return {std::shared_ptr<const FiniteLSS>(), &f};
}
std::shared_ptr<const FiniteSpecification> borrow(const FiniteSpecification& g) {
  return {std::shared_ptr<const FiniteSpecification>(), &g};
}

}  // namespace

double FiniteLSS::cylinder(const core::WindowConfig& segment,
                           const core::WindowConfig& past) const {
  if (segment.values.empty()) fail(Errc::kInvalidArgument, "empty segment");
  double p = 1.0;
  core::WindowConfig grown = past;
  for (core::Site i = segment.window.l; i <= segment.window.m; ++i) {
    p *= singleton(i, segment.value(i), grown);
    grown = core::concat(grown,
                         core::WindowConfig(core::Window(i, i), {segment.value(i)}));
  }
  return p;
}

TableLSS::TableLSS(core::Site left, int q, std::vector<std::vector<double>> tables)
    : left_(left), q_(q), tables_(std::move(tables)) {
  core::check_site(left);
  if (q < 2) fail(Errc::kInvalidArgument, "alphabet needs at least two symbols");
  const int n = 1 - left;
  if (static_cast<int>(tables_.size()) != n)
    fail(Errc::kInvalidArgument, "one conditional table per site required");
  for (int k = 0; k < n; ++k) {
    const std::uint64_t expect = core::config_count(k, q, 62) * static_cast<std::uint64_t>(q);
    if (tables_[static_cast<size_t>(k)].size() != expect)
      fail(Errc::kInvalidArgument, "conditional table size mismatch at site " +
                                       std::to_string(left + k));
    for (double p : tables_[static_cast<size_t>(k)])
      if (!(p > 0) || !(p <= 1))
        fail(Errc::kInvalidArgument, "singleton probabilities must lie in (0, 1]");
  }
}

TableLSS TableLSS::random(core::Site left, int q, rng::CounterRng& gen, double floor,
                          int cap) {
  if (!(floor > 0) || !(floor * q < 1))
    fail(Errc::kInvalidArgument, "floor must satisfy 0 < floor * q < 1");
  const int n = 1 - left;
  core::config_count(n, q, cap);
  std::vector<std::vector<double>> tables(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::uint64_t pasts = core::config_count(k, q, 62);
    auto& t = tables[static_cast<size_t>(k)];
    t.resize(pasts * static_cast<std::uint64_t>(q));
    for (std::uint64_t pr = 0; pr < pasts; ++pr) {
      double sum = 0;
      std::vector<double> g(static_cast<size_t>(q));
      for (int s = 0; s < q; ++s) {
        const double u = (static_cast<double>(gen.next_u64() >> 11) + 1.0) * 0x1.0p-53;
        g[static_cast<size_t>(s)] = -std::log(u);
        sum += g[static_cast<size_t>(s)];
      }
      for (int s = 0; s < q; ++s) {
        const double base = sum > 0 ? g[static_cast<size_t>(s)] / sum : 1.0 / q;
        t[pr * q + static_cast<std::uint64_t>(s)] = floor + (1.0 - q * floor) * base;
      }
    }
  }
  return TableLSS(left, q, std::move(tables));
}

TableLSS TableLSS::materialize(const FiniteLSS& src, int cap) {
  const core::Site left = src.left_limit();
  const int q = src.q();
  const int n = 1 - left;
  core::config_count(n, q, cap);
  std::vector<std::vector<double>> tables(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const core::Site i = left + k;
    const std::uint64_t pasts = core::config_count(k, q, 62);
    auto& t = tables[static_cast<size_t>(k)];
    t.resize(pasts * static_cast<std::uint64_t>(q));
    for (std::uint64_t pr = 0; pr < pasts; ++pr) {
      core::WindowConfig past;
      if (k > 0) past = core::decode_rank(pr, core::Window(left, i - 1), q);
      for (int s = 0; s < q; ++s)
        t[pr * q + static_cast<std::uint64_t>(s)] =
            src.singleton(i, static_cast<std::uint8_t>(s), past);
    }
  }
  return TableLSS(left, q, std::move(tables));
}

double TableLSS::singleton(core::Site i, std::uint8_t sym,
                           const core::WindowConfig& past) const {
  check_past(left_, i, past);
  if (sym >= q_) fail(Errc::kInvalidArgument, "symbol outside the alphabet");
  const int k = i - left_;
  const std::uint64_t pr =
      k == 0 ? 0 : core::encode_rank(past.values.data(), k, q_);
  return tables_[static_cast<size_t>(k)][pr * static_cast<std::uint64_t>(q_) + sym];
}

PotentialLSS::PotentialLSS(couplings::IsingPotential pot, core::Site left,
                           kernels::ExteriorSpec ext, int cap)
    : pot_(std::move(pot)), left_(left), ext_(std::move(ext)), cap_(cap) {
  core::check_site(left);
  core::config_count(1 - left, 2, cap);
}

double PotentialLSS::singleton(core::Site i, std::uint8_t sym,
                               const core::WindowConfig& past) const {
  check_past(left_, i, past);
  return kernels::lss_singleton(pot_, i, sym, past, ext_, cap_);
}

struct PotentialSpec::Memo {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const kernels::KernelTable>> tables;
};

PotentialSpec::PotentialSpec(couplings::IsingPotential pot, core::Site left,
                             kernels::ExteriorSpec ext, int cap)
    : pot_(std::move(pot)), left_(left), ext_(std::move(ext)), cap_(cap),
      memo_(std::make_unique<Memo>()) {
  core::check_site(left);
  core::config_count(1 - left, 2, cap);
}

PotentialSpec::~PotentialSpec() = default;

double PotentialSpec::kernel(core::Window lambda, const core::WindowConfig& sigma,
                             const core::WindowConfig& left_ctx,
                             const core::WindowConfig& right_ctx) const {
  check_contexts(left_, lambda, left_ctx, right_ctx);
  std::string key = std::to_string(lambda.l) + "," + std::to_string(lambda.m) + "|" +
                    left_ctx.to_string() + "|" + right_ctx.to_string();
  std::shared_ptr<const kernels::KernelTable> table;
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->tables.find(key);
    if (it != memo_->tables.end()) table = it->second;
  }
  if (!table) {
    table = std::make_shared<const kernels::KernelTable>(
        kernels::gibbs_kernel(pot_, lambda, ext_, left_ctx, right_ctx, cap_));
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->tables.emplace(key, table);
  }
  return table->prob(sigma);
}

std::shared_ptr<const FiniteSpecification> map_b(std::shared_ptr<const FiniteLSS> f) {
  if (!f) fail(Errc::kInvalidArgument, "null singleton family");
  return std::make_shared<LssSpec>(std::move(f));
}

std::shared_ptr<const FiniteLSS> map_c(std::shared_ptr<const FiniteSpecification> gamma) {
  if (!gamma) fail(Errc::kInvalidArgument, "null kernel family");
  return std::make_shared<SpecLSS>(std::move(gamma));
}

double proper_probability(const FiniteSpecification& gamma, core::Window lambda,
                          const core::WindowConfig& sigma, const core::WindowConfig& left_ctx,
                          const core::WindowConfig& right_ctx) {
  check_contexts(gamma.left_limit(), lambda, left_ctx, right_ctx);
  // coordinates fixed outside the window must agree with the context
  for (core::Site s = sigma.window.l; s <= sigma.window.m; ++s) {
    if (lambda.contains(s)) continue;
    const std::uint8_t expect = s < lambda.l ? left_ctx.value(s) : right_ctx.value(s);
    if (sigma.value(s) != expect) return 0.0;
  }
  // marginalize the window coordinates the cylinder leaves free
  double p = 0;
  core::ConfigStream stream(lambda, gamma.q(), 62);
  core::WindowConfig s;
  while (stream.next(s)) {
    bool match = true;
    for (core::Site t = lambda.l; t <= lambda.m && match; ++t)
      if (sigma.window.contains(t) && sigma.value(t) != s.value(t)) match = false;
    if (match) p += gamma.kernel(lambda, s, left_ctx, right_ctx);
  }
  return p;
}

double check_specification_consistency(const FiniteSpecification& gamma, core::Window lambda,
                                       core::Window delta, const core::WindowConfig& left_ctx,
                                       const core::WindowConfig& right_ctx, int cap) {
  if (!(delta.l <= lambda.l && lambda.m <= delta.m) ||
      (delta.l == lambda.l && delta.m == lambda.m))
    fail(Errc::kInvalidArgument, "the first window must be strictly inside the second");
  check_contexts(gamma.left_limit(), delta, left_ctx, right_ctx);
  const int q = gamma.q();
  core::config_count(delta.size(), q, cap);
  const int kl = lambda.l - delta.l;
  const int kr = delta.m - lambda.m;
  const std::uint64_t nmid_l = core::config_count(kl, q, 62);
  const std::uint64_t nmid_r = core::config_count(kr, q, 62);
  const std::uint64_t nlam = core::config_count(lambda.size(), q, 62);
  std::vector<double> composed(nlam, 0.0), direct(nlam, 0.0);
  for (std::uint64_t rl = 0; rl < nmid_l; ++rl) {
    core::WindowConfig mid_l;
    if (kl > 0) mid_l = core::decode_rank(rl, core::Window(delta.l, lambda.l - 1), q);
    for (std::uint64_t rr = 0; rr < nmid_r; ++rr) {
      core::WindowConfig mid_r;
      if (kr > 0) mid_r = core::decode_rank(rr, core::Window(lambda.m + 1, delta.m), q);
      // marginal mass the large-window kernel gives this mid configuration
      double marg = 0;
      std::vector<double> joint(nlam, 0.0);
      for (std::uint64_t rs = 0; rs < nlam; ++rs) {
        const core::WindowConfig s = core::decode_rank(rs, lambda, q);
        const core::WindowConfig full =
            core::concat(core::concat(mid_l, s), mid_r);
        joint[rs] = gamma.kernel(delta, full, left_ctx, right_ctx);
        marg += joint[rs];
      }
      const core::WindowConfig lam_left = core::concat(left_ctx, mid_l);
      const core::WindowConfig lam_right = core::concat(mid_r, right_ctx);
      for (std::uint64_t rs = 0; rs < nlam; ++rs) {
        const core::WindowConfig s = core::decode_rank(rs, lambda, q);
        composed[rs] += gamma.kernel(lambda, s, lam_left, lam_right) * marg;
        direct[rs] += joint[rs];
      }
    }
  }
  double worst = 0;
  for (std::uint64_t rs = 0; rs < nlam; ++rs)
    worst = std::max(worst, std::fabs(composed[rs] - direct[rs]));
  return worst;
}

double roundtrip_defect_cb(const FiniteLSS& f, int cap) {
  const core::Site left = f.left_limit();
  const int q = f.q();
  core::config_count(1 - left, q, cap);
  auto back = map_c(map_b(borrow(f)));
  double worst = 0;
  for (core::Site i = left; i <= 0; ++i) {
    const std::uint64_t pasts = core::config_count(i - left, q, 62);
    for (std::uint64_t pr = 0; pr < pasts; ++pr) {
      core::WindowConfig past;
      if (i > left) past = core::decode_rank(pr, core::Window(left, i - 1), q);
      for (int s = 0; s < q; ++s) {
        const auto sym = static_cast<std::uint8_t>(s);
        worst = std::max(worst,
                         std::fabs(back->singleton(i, sym, past) - f.singleton(i, sym, past)));
      }
    }
  }
  return worst;
}

double roundtrip_defect_bc(const FiniteSpecification& gamma, int cap) {
  const core::Site left = gamma.left_limit();
  const int q = gamma.q();
  core::config_count(1 - left, q, cap);
  // materialize the extracted singleton family once, then rebuild kernels
  auto mat = std::make_shared<TableLSS>(
      TableLSS::materialize(*map_c(borrow(gamma)), cap));
  auto back = map_b(mat);
  double worst = 0;
  for (core::Site l = left; l <= 0; ++l) {
    for (core::Site m = l; m <= 0; ++m) {
      const core::Window lambda(l, m);
      const std::uint64_t nleft = core::config_count(l - left, q, 62);
      const std::uint64_t nright = core::config_count(-m, q, 62);
      const std::uint64_t nlam = core::config_count(lambda.size(), q, 62);
      for (std::uint64_t rl = 0; rl < nleft; ++rl) {
        core::WindowConfig lc;
        if (l > left) lc = core::decode_rank(rl, core::Window(left, l - 1), q);
        for (std::uint64_t rr = 0; rr < nright; ++rr) {
          core::WindowConfig rc;
          if (m < 0) rc = core::decode_rank(rr, core::Window(m + 1, 0), q);
          for (std::uint64_t rs = 0; rs < nlam; ++rs) {
            const core::WindowConfig s = core::decode_rank(rs, lambda, q);
            worst = std::max(worst, std::fabs(back->kernel(lambda, s, lc, rc) -
                                              gamma.kernel(lambda, s, lc, rc)));
          }
        }
      }
    }
  }
  return worst;
}

ComparisonBound comparison_bound_check(const couplings::IsingPotential& pot,
                                       core::Window lambda, const std::vector<double>& h,
                                       const KernelContext& a, const KernelContext& b,
                                       int cap) {
  const kernels::KernelTable ta =
      kernels::gibbs_kernel(pot, lambda, a.ext, a.left, a.right, cap);
  const kernels::KernelTable tb =
      kernels::gibbs_kernel(pot, lambda, b.ext, b.left, b.right, cap);
  if (h.size() != ta.size())
    fail(Errc::kInvalidArgument, "test function table must cover the window");
  double ea = 0, eb = 0, hinf = 0, osc = 0;
  for (std::uint64_t r = 0; r < ta.size(); ++r) {
    ea += h[r] * ta.prob(r);
    eb += h[r] * tb.prob(r);
    hinf = std::max(hinf, std::fabs(h[r]));
    osc = std::max(osc, std::fabs(ta.log_weight(r) - tb.log_weight(r)));
  }
  ComparisonBound out;
  out.lhs = std::fabs(ea - eb);
  out.rhs = hinf * osc;
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace correspondence
}  // namespace halfline
