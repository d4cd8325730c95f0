#include "halfline/couplings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <mutex>

namespace halfline {
namespace couplings {

namespace {

constexpr std::int64_t kEmPoint = 32768;     // direct summation up to here, analytic beyond
constexpr std::int64_t kDirectLimit = 65536; // short ranges are always summed directly
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// log(T * e^x + 1) without overflowing the intermediate product.
double log_shifted_exp(double log_t, double x) {
  double s = log_t + x;
  if (s > 30.0) return s + std::log1p(std::exp(-s));
  return std::log(std::exp(s) + 1.0);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Terms f(r) = r^{-e} * (log(r+1))^{-t}; handles both the plain radial profile
// (t = 0) and its distance-weighted variant (exponent shifted by one).
struct RadialTerm {
  double e = 0;
  double t = 0;

  double operator()(double r) const {
    double v = std::pow(r, -e);
    if (t != 0) v *= std::pow(std::log(r + 1.0), -t);
    return v;
  }

  double deriv(double r) const {
    const double l = std::log(r + 1.0);
    double d = -e * std::pow(r, -e - 1.0);
    if (t != 0) {
      d *= std::pow(l, -t);
      d -= t * std::pow(r, -e) * std::pow(l, -t - 1.0) / (r + 1.0);
    }
    return d;
  }

  bool tail_summable() const { return e > 1.0 || (e == 1.0 && t > 1.0); }

  double integral_from(double T) const {
    if (t == 0) return std::pow(T, 1.0 - e) / (e - 1.0);
    if (e > 1.0) {
      // substitute r = T e^x; the integrand decays like e^{(1-e)x}
      const double log_t = std::log(T);
      const double span = 60.0 / (e - 1.0);
      auto g = [&](double x) {
        return std::exp((1.0 - e) * x) * std::pow(log_shifted_exp(log_t, x), -t);
      };
      return std::pow(T, 1.0 - e) * integrate(g, 0.0, span, 1e-16 * g(0.0) * span + 1e-300);
    }
    // e == 1, t > 1: substitute u = log r; the integrand is (log(e^u+1))^{-t}
    const double u0 = std::log(T);
    const double u1 = u0 + 40.0;
    auto g = [&](double u) { return std::pow(log_shifted_exp(0.0, u), -t); };
    return integrate(g, u0, u1, 1e-16 * g(u0) * 40.0 + 1e-300) +
           std::pow(u1, 1.0 - t) / (t - 1.0);
  }

  // sum_{r = T, T+1, ...} f(r) by Euler-Maclaurin; T need not be small.
  double tail_from(double T) const {
    if (!tail_summable()) return kInf;
    return integral_from(T) + 0.5 * (*this)(T)-deriv(T) / 12.0;
  }
};

// Smallest q >= 1 with 2^q >= r+1 (dyadic level of distance r).
int dyadic_level(double r) {
  if (r < 1.0) fail(Errc::kInvalidArgument, "radial distance must be >= 1");
  if (r < 4.5e15) {
    const std::uint64_t n = static_cast<std::uint64_t>(std::llround(r));
    return static_cast<int>(std::bit_width(n));
  }
  return static_cast<int>(std::ceil(std::log2(r + 1.0) - 1e-12));
}

double pow2d(int q) { return std::ldexp(1.0, q); }

}  // namespace

int block_level(core::Site i, core::Site j) {
  core::check_site(i);
  core::check_site(j);
  if (i == j) fail(Errc::kDiagonalQuery, "block level undefined on the diagonal");
  const std::uint64_t ui = static_cast<std::uint64_t>(1 - static_cast<std::int64_t>(i));
  const std::uint64_t uj = static_cast<std::uint64_t>(1 - static_cast<std::int64_t>(j));
  return static_cast<int>(std::bit_width((ui - 1) ^ (uj - 1)));
}

CouplingModel CouplingModel::power_law(double p) {
  if (!(p > 0)) fail(Errc::kInvalidArgument, "power law exponent must be positive");
  CouplingModel m;
  m.kind_ = Kind::kPowerLaw;
  m.p_ = p;
  return m;
}

CouplingModel CouplingModel::log_power_law(double p, double t) {
  if (!(p > 1)) fail(Errc::kInvalidArgument, "log power law requires p > 1");
  if (!(t >= 0)) fail(Errc::kInvalidArgument, "log power law requires t >= 0");
  CouplingModel m;
  m.kind_ = Kind::kLogPowerLaw;
  m.p_ = p;
  m.t_ = t;
  return m;
}

CouplingModel CouplingModel::hierarchical(double alpha) {
  if (!(alpha > 0)) fail(Errc::kInvalidArgument, "hierarchical alpha must be positive");
  CouplingModel m;
  m.kind_ = Kind::kHierarchical;
  m.alpha_ = alpha;
  return m;
}

CouplingModel CouplingModel::hierarchical_levels(std::vector<double> levels) {
  if (levels.empty()) fail(Errc::kInvalidArgument, "level sequence must be nonempty");
  if (levels.size() > 60) fail(Errc::kInvalidArgument, "level sequence too long");
  for (double b : levels)
    if (!(b >= 0)) fail(Errc::kInvalidArgument, "level couplings must be nonnegative");
  CouplingModel m;
  m.kind_ = Kind::kHierarchicalLevels;
  m.levels_ = std::move(levels);
  // suffix sums levelJ(q) = sum_{q' >= q} b_{q'} 2^{-2q'+1}
  m.level_suffix_.assign(m.levels_.size() + 1, 0.0);
  for (int q = static_cast<int>(m.levels_.size()); q >= 1; --q)
    m.level_suffix_[static_cast<size_t>(q - 1)] =
        m.level_suffix_[static_cast<size_t>(q)] +
        m.levels_[static_cast<size_t>(q - 1)] * std::ldexp(1.0, -2 * q + 1);
  return m;
}

CouplingModel CouplingModel::table(const std::vector<std::tuple<int, int, double>>& entries) {
  CouplingModel m;
  m.kind_ = Kind::kTable;
  std::int64_t rmax = 0;
  for (const auto& [i, j, v] : entries) {
    core::check_site(i);
    core::check_site(j);
    if (i == j) fail(Errc::kDiagonalQuery, "table entry on the diagonal");
    auto key = std::minmax(i, j);
    if (m.entries_.count({key.first, key.second}))
      fail(Errc::kInvalidArgument, "duplicate table entry for pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")");
    m.entries_[{key.first, key.second}] = v;
    if (v < 0) m.table_ferro_ = false;
    rmax = std::max<std::int64_t>(rmax, key.second - key.first);
  }
  m.table_radial_.assign(static_cast<size_t>(rmax + 1), 0.0);
  for (const auto& [key, v] : m.entries_) {
    auto& slot = m.table_radial_[static_cast<size_t>(key.second - key.first)];
    slot = std::max(slot, std::fabs(v));
  }
  return m;
}

std::vector<std::tuple<int, int, double>> CouplingModel::table_entries() const {
  std::vector<std::tuple<int, int, double>> out;
  out.reserve(entries_.size());
  for (const auto& [key, v] : entries_) out.emplace_back(key.first, key.second, v);
  return out;
}

double CouplingModel::level_coupling(int level) const {
  if (level < 1) fail(Errc::kInvalidArgument, "level must be >= 1");
  if (kind_ == Kind::kHierarchical) {
    const double a = 2.0 / (1.0 - std::pow(2.0, -alpha_));
    return a * std::pow(2.0, -alpha_ * level);
  }
  if (kind_ == Kind::kHierarchicalLevels) {
    if (level > static_cast<int>(levels_.size())) return 0.0;
    return level_suffix_[static_cast<size_t>(level - 1)];
  }
  fail(Errc::kInvalidArgument, "level couplings only exist for hierarchical models");
}

double CouplingModel::coupling(core::Site i, core::Site j) const {
  core::check_site(i);
  core::check_site(j);
  if (i == j) fail(Errc::kDiagonalQuery, "coupling undefined on the diagonal");
  const double r = std::fabs(static_cast<double>(i) - static_cast<double>(j));
  switch (kind_) {
    case Kind::kPowerLaw:
      return std::pow(r, -p_);
    case Kind::kLogPowerLaw:
      return std::pow(r, -p_) * std::pow(std::log(r + 1.0), -t_);
    case Kind::kHierarchical:
    case Kind::kHierarchicalLevels:
      return level_coupling(block_level(i, j));
    case Kind::kTable: {
      auto key = std::minmax(i, j);
      auto it = entries_.find({key.first, key.second});
      return it == entries_.end() ? 0.0 : it->second;
    }
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

double CouplingModel::table_radial(std::int64_t r) const {
  if (r < 0 || r >= static_cast<std::int64_t>(table_radial_.size())) return 0.0;
  return table_radial_[static_cast<size_t>(r)];
}

double CouplingModel::radial(double r) const {
  if (r < 1.0) fail(Errc::kInvalidArgument, "radial profile defined for r >= 1");
  switch (kind_) {
    case Kind::kPowerLaw:
      return std::pow(r, -p_);
    case Kind::kLogPowerLaw:
      return std::pow(r, -p_) * std::pow(std::log(r + 1.0), -t_);
    case Kind::kHierarchical:
    case Kind::kHierarchicalLevels: {
      const int q = dyadic_level(r);
      return (kind_ == Kind::kHierarchicalLevels && q > static_cast<int>(levels_.size()))
                 ? 0.0
                 : level_coupling(q);
    }
    case Kind::kTable:
      return table_radial(static_cast<std::int64_t>(std::llround(r)));
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

bool CouplingModel::summable() const {
  switch (kind_) {
    case Kind::kPowerLaw:
      return p_ > 1.0;
    case Kind::kLogPowerLaw:
      return true;  // construction enforces p > 1
    case Kind::kHierarchical:
      return alpha_ > 1.0;
    case Kind::kHierarchicalLevels:
    case Kind::kTable:
      return true;
  }
  return false;
}

bool CouplingModel::ferromagnetic() const {
  return kind_ == Kind::kTable ? table_ferro_ : true;
}

bool CouplingModel::radially_nonincreasing() const {
  if (kind_ != Kind::kTable) return true;
  for (size_t r = 2; r < table_radial_.size(); ++r)
    if (table_radial_[r] > table_radial_[r - 1]) return false;
  return true;
}

std::optional<DecayMeta> CouplingModel::decay() const {
  switch (kind_) {
    case Kind::kPowerLaw:
      return DecayMeta{p_, 0.0};
    case Kind::kLogPowerLaw:
      return DecayMeta{p_, t_};
    case Kind::kHierarchical:
      return DecayMeta{alpha_, 0.0};
    case Kind::kHierarchicalLevels:
    case Kind::kTable:
      return std::nullopt;  // finite support; no asymptotic regime
  }
  return std::nullopt;
}

double CouplingModel::support_radius() const {
  switch (kind_) {
    case Kind::kPowerLaw:
    case Kind::kLogPowerLaw:
    case Kind::kHierarchical:
      return kInf;
    case Kind::kHierarchicalLevels:
      return pow2d(static_cast<int>(levels_.size())) - 1.0;
    case Kind::kTable:
      return table_radial_.empty() ? 0.0
                                   : static_cast<double>(table_radial_.size()) - 1.0;
  }
  return 0.0;
}

namespace {

// Memoized direct prefix of a radial term plus its analytic tail at kEmPoint.
struct TermSums {
  RadialTerm term;
  std::vector<double> prefix;  // prefix[k] = sum_{r=1}^{k} f(r), k < kEmPoint
  double tail_at_em = 0;       // sum_{r >= kEmPoint} f(r)

  explicit TermSums(RadialTerm t) : term(t) {
    prefix.assign(static_cast<size_t>(kEmPoint), 0.0);
    for (std::int64_t r = 1; r < kEmPoint; ++r)
      prefix[static_cast<size_t>(r)] =
          prefix[static_cast<size_t>(r - 1)] + term(static_cast<double>(r));
    tail_at_em = term.tail_summable() ? term.tail_from(static_cast<double>(kEmPoint)) : kInf;
  }

  // sum_{r >= x} f(r)
  double from(double x) const {
    const double cx = std::ceil(x - 1e-9);
    if (cx <= 1.0) return prefix[static_cast<size_t>(kEmPoint - 1)] + tail_at_em;
    if (cx < static_cast<double>(kEmPoint)) {
      const auto ix = static_cast<std::int64_t>(cx);
      return prefix[static_cast<size_t>(kEmPoint - 1)] - prefix[static_cast<size_t>(ix - 1)] +
             tail_at_em;
    }
    return term.tail_from(cx);
  }
};

struct SmoothMemo {
  std::once_flag once;
  std::unique_ptr<TermSums> plain;
  std::unique_ptr<TermSums> weighted;
};

// One memo slot per (exponent, log-power); the couplings are immutable so a
// process-wide cache keyed by parameters keeps copies of a model sharing work.
SmoothMemo& smooth_memo(double e, double t) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::unique_ptr<SmoothMemo>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{e, t}];
  if (!slot) slot = std::make_unique<SmoothMemo>();
  return *slot;
}

const TermSums& smooth_sums(double e, double t, bool weighted) {
  SmoothMemo& memo = smooth_memo(e, t);
  std::call_once(memo.once, [&] {
    memo.plain = std::make_unique<TermSums>(RadialTerm{e, t});
    memo.weighted = std::make_unique<TermSums>(RadialTerm{e - 1.0, t});
  });
  return weighted ? *memo.weighted : *memo.plain;
}

}  // namespace

double CouplingModel::radial_sum(double a, double b) const {
  a = std::max(a, 1.0);
  if (b < a) return 0.0;
  switch (kind_) {
    case Kind::kTable: {
      double s = 0.0;
      const auto hi = static_cast<std::int64_t>(
          std::min(b, static_cast<double>(table_radial_.size()) - 1.0));
      for (std::int64_t r = static_cast<std::int64_t>(a); r <= hi; ++r) s += table_radial(r);
      return s;
    }
    case Kind::kHierarchical:
    case Kind::kHierarchicalLevels: {
      double s = 0.0;
      const int qa = dyadic_level(a);
      const int qmax = (kind_ == Kind::kHierarchicalLevels)
                           ? static_cast<int>(levels_.size())
                           : (b == kInf ? qa : dyadic_level(b));
      for (int q = qa; q <= qmax; ++q) {
        const double lo = std::max(a, pow2d(q - 1));
        const double hi = std::min(b, pow2d(q) - 1.0);
        if (hi >= lo) s += (hi - lo + 1.0) * level_coupling(q);
      }
      if (kind_ == Kind::kHierarchical && b == kInf) {
        if (alpha_ <= 1.0) return kInf;
        // full blocks beyond level qa: count 2^{q-1}, value A 2^{-alpha q}
        const double aa = 2.0 / (1.0 - std::pow(2.0, -alpha_));
        const double x = std::pow(2.0, 1.0 - alpha_);
        s += 0.5 * aa * std::pow(x, qa + 1) / (1.0 - x);
      }
      return s;
    }
    case Kind::kPowerLaw:
    case Kind::kLogPowerLaw: {
      const RadialTerm term{p_, t_};
      if (b != kInf && b - a <= static_cast<double>(kDirectLimit) && b < 4.5e15) {
        double s = 0.0;
        for (std::int64_t r = static_cast<std::int64_t>(a);
             r <= static_cast<std::int64_t>(b); ++r)
          s += term(static_cast<double>(r));
        return s;
      }
      if (!term.tail_summable()) {
        if (b == kInf) return kInf;
        fail(Errc::kInvalidArgument, "long range sum requested for a non-summable profile");
      }
      const TermSums& sums = smooth_sums(p_, t_, false);
      return sums.from(a) - (b == kInf ? 0.0 : sums.from(b + 1.0));
    }
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

double CouplingModel::radial_weighted_sum(double a, double b) const {
  a = std::max(a, 1.0);
  if (b < a) return 0.0;
  switch (kind_) {
    case Kind::kTable: {
      double s = 0.0;
      const auto hi = static_cast<std::int64_t>(
          std::min(b, static_cast<double>(table_radial_.size()) - 1.0));
      for (std::int64_t r = static_cast<std::int64_t>(a); r <= hi; ++r)
        s += static_cast<double>(r) * table_radial(r);
      return s;
    }
    case Kind::kHierarchical:
    case Kind::kHierarchicalLevels: {
      double s = 0.0;
      const int qa = dyadic_level(a);
      const int qmax = (kind_ == Kind::kHierarchicalLevels)
                           ? static_cast<int>(levels_.size())
                           : (b == kInf ? qa : dyadic_level(b));
      for (int q = qa; q <= qmax; ++q) {
        const double lo = std::max(a, pow2d(q - 1));
        const double hi = std::min(b, pow2d(q) - 1.0);
        if (hi >= lo) s += 0.5 * (lo + hi) * (hi - lo + 1.0) * level_coupling(q);
      }
      if (kind_ == Kind::kHierarchical && b == kInf) {
        if (alpha_ <= 2.0) return kInf;
        // sum_{r in level q} r = 3*4^{q-1}/2 - 2^{q-2}
        const double aa = 2.0 / (1.0 - std::pow(2.0, -alpha_));
        const double y1 = std::pow(2.0, 2.0 - alpha_);
        const double y2 = std::pow(2.0, 1.0 - alpha_);
        s += aa * (0.375 * std::pow(y1, qa + 1) / (1.0 - y1) -
                   0.25 * std::pow(y2, qa + 1) / (1.0 - y2));
      }
      return s;
    }
    case Kind::kPowerLaw:
    case Kind::kLogPowerLaw: {
      const RadialTerm term{p_ - 1.0, t_};
      if (b != kInf && b - a <= static_cast<double>(kDirectLimit) && b < 4.5e15) {
        double s = 0.0;
        for (std::int64_t r = static_cast<std::int64_t>(a);
             r <= static_cast<std::int64_t>(b); ++r)
          s += term(static_cast<double>(r));
        return s;
      }
      if (!term.tail_summable()) {
        if (b == kInf) return kInf;
        fail(Errc::kInvalidArgument, "long range sum requested for a non-summable profile");
      }
      const TermSums& sums = smooth_sums(p_, t_, true);
      return sums.from(a) - (b == kInf ? 0.0 : sums.from(b + 1.0));
    }
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

double CouplingModel::tail_bound(double depth) const {
  if (depth < 1) fail(Errc::kInvalidArgument, "tail bound needs depth >= 1");
  if (!summable()) return kInf;
  const double support = support_radius();
  if (depth >= support) return 0.0;
  switch (kind_) {
    case Kind::kPowerLaw:
      return std::pow(depth + 1, -p_) + std::pow(depth + 1, 1.0 - p_) / (p_ - 1.0);
    case Kind::kLogPowerLaw:
      return std::pow(std::log(depth + 2), -t_) *
             (std::pow(depth + 1, -p_) + std::pow(depth + 1, 1.0 - p_) / (p_ - 1.0));
    case Kind::kHierarchical: {
      // radial(r) <= A (r+1)^{-alpha} with A = 2/(1-2^{-alpha})
      const double aa = 2.0 / (1.0 - std::pow(2.0, -alpha_));
      return aa * (std::pow(depth + 2, -alpha_) +
                   std::pow(depth + 2, 1.0 - alpha_) / (alpha_ - 1.0));
    }
    case Kind::kHierarchicalLevels:
    case Kind::kTable:
      return radial_sum(depth + 1, support);
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

double CouplingModel::tail_field(core::Site i, core::Site cut, double depth) const {
  core::check_site(i);
  core::check_site(cut);
  if (i < cut) fail(Errc::kInvalidArgument, "tail field queried left of the cut");
  if (depth < 1) fail(Errc::kInvalidArgument, "tail field needs depth >= 1");
  switch (kind_) {
    case Kind::kPowerLaw:
    case Kind::kLogPowerLaw: {
      const double first = static_cast<double>(i) - cut + 1.0;
      return radial_sum(first, depth == kInf ? kInf : first + depth - 1.0);
    }
    case Kind::kTable: {
      double s = 0.0;
      for (const auto& [key, v] : entries_) {
        const auto [lo, hi] = key;
        core::Site partner;
        if (hi == i)
          partner = lo;
        else if (lo == i)
          partner = hi;
        else
          continue;
        if (partner >= cut) continue;
        if (depth != kInf && partner < cut - depth) continue;
        s += v;
      }
      return s;
    }
    case Kind::kHierarchical:
    case Kind::kHierarchicalLevels: {
      if (depth != kInf && depth > 4.6e18)
        fail(Errc::kInvalidArgument,
             "hierarchical tail fields support finite depths only up to 2^61 (use inf)");
      const std::int64_t u = 1 - static_cast<std::int64_t>(i);
      const std::int64_t thi = static_cast<std::int64_t>(cut) - 1;
      const bool unbounded = depth == kInf;
      const std::int64_t tlo =
          unbounded ? 0 : static_cast<std::int64_t>(cut) - static_cast<std::int64_t>(depth);
      const int qmax =
          (kind_ == Kind::kHierarchicalLevels) ? static_cast<int>(levels_.size()) : 62;
      double field = 0.0;
      std::int64_t prev = 0;
      for (int q = 1; q <= qmax; ++q) {
        const std::int64_t m = ((u - 1) >> q) + 1;
        const std::int64_t block_lo = 1 - (m << q);
        const std::int64_t block_hi = -((m - 1) << q);
        const std::int64_t lo = unbounded ? block_lo : std::max(block_lo, tlo);
        const std::int64_t hi = std::min(block_hi, thi);
        const std::int64_t cnt = std::max<std::int64_t>(0, hi - lo + 1);
        field += static_cast<double>(cnt - prev) * level_coupling(q);
        prev = cnt;
      }
      if (kind_ == Kind::kHierarchical && unbounded) {
        if (alpha_ <= 1.0) return kInf;
        // beyond q = 62 each level adds a full left sibling of 2^{q-1} sites
        const double aa = 2.0 / (1.0 - std::pow(2.0, -alpha_));
        const double x = std::pow(2.0, 1.0 - alpha_);
        field += 0.5 * aa * std::pow(x, 63) / (1.0 - x);
      }
      return field;
    }
  }
  fail(Errc::kInvalidArgument, "corrupt coupling model");
}

std::string CouplingModel::type_token() const {
  switch (kind_) {
    case Kind::kPowerLaw:
      return "power_law";
    case Kind::kLogPowerLaw:
      return "log_power_law";
    case Kind::kHierarchical:
      return "hierarchical";
    case Kind::kHierarchicalLevels:
      return "hierarchical_levels";
    case Kind::kTable:
      return "table";
  }
  return "?";
}

std::string CouplingModel::param_string() const {
  switch (kind_) {
    case Kind::kPowerLaw:
      return num_str(p_);
    case Kind::kLogPowerLaw:
      return "p=" + num_str(p_) + ";t=" + num_str(t_);
    case Kind::kHierarchical:
      return num_str(alpha_);
    case Kind::kHierarchicalLevels:
      return "levels=" + std::to_string(levels_.size());
    case Kind::kTable:
      return "entries=" + std::to_string(entries_.size());
  }
  return "?";
}

std::string CouplingModel::describe() const { return type_token() + " " + param_string(); }

IsingPotential::IsingPotential(CouplingModel m, double beta_in)
    : model(std::move(m)), beta(beta_in) {
  if (!(beta >= 0)) fail(Errc::kInvalidArgument, "inverse temperature must be >= 0");
}

}  // namespace couplings
}  // namespace halfline
