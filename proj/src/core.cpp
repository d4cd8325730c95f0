#include "halfline/core.hpp"

#include <algorithm>

namespace halfline {

void fail(Errc code, const std::string& what) { throw Error(code, what); }

namespace core {

void check_site(Site s) {
  if (s > 0) fail(Errc::kInvalidArgument, "site index must be <= 0, got " + std::to_string(s));
}

Window::Window(Site l_, Site m_) : l(l_), m(m_) {
  check_site(l_);
  check_site(m_);
  if (l_ > m_)
    fail(Errc::kInvalidArgument,
         "window requires l <= m, got [" + std::to_string(l_) + "," + std::to_string(m_) + "]");
}

Alphabet::Alphabet(int q_) : q(q_) {
  if (q_ < 2) fail(Errc::kInvalidArgument, "alphabet needs at least two symbols");
}

WindowConfig::WindowConfig(Window w, std::vector<std::uint8_t> vals)
    : window(w), values(std::move(vals)) {
  if (static_cast<int>(values.size()) != w.size())
    fail(Errc::kInvalidArgument, "config length does not match window size");
}

WindowConfig WindowConfig::uniform(Window w, std::uint8_t sym) {
  return WindowConfig(w, std::vector<std::uint8_t>(static_cast<size_t>(w.size()), sym));
}

std::string WindowConfig::to_string(int q) const {
  std::string s;
  s.reserve(values.size());
  for (std::uint8_t v : values) s += (q == 2) ? (v ? '+' : '-') : static_cast<char>('0' + v);
  return s;
}

std::uint64_t config_count(int nsites, int q, int cap) {
  if (nsites < 0) fail(Errc::kInvalidArgument, "negative site count");
  if (nsites > cap)
    fail(Errc::kCapExceeded, "window of " + std::to_string(nsites) +
                                 " sites exceeds enumeration cap " + std::to_string(cap));
  std::uint64_t n = 1;
  for (int i = 0; i < nsites; ++i) {
    if (n > UINT64_MAX / static_cast<std::uint64_t>(q))
      fail(Errc::kCapExceeded, "configuration count not representable");
    n *= static_cast<std::uint64_t>(q);
  }
  return n;
}

void decode_rank(std::uint64_t rank, int nsites, int q, std::uint8_t* out) {
  for (int i = nsites - 1; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(rank % static_cast<std::uint64_t>(q));
    rank /= static_cast<std::uint64_t>(q);
  }
}

WindowConfig decode_rank(std::uint64_t rank, Window w, int q) {
  std::vector<std::uint8_t> vals(static_cast<size_t>(w.size()));
  decode_rank(rank, w.size(), q, vals.data());
  return WindowConfig(w, std::move(vals));
}

std::uint64_t encode_rank(const std::uint8_t* vals, int nsites, int q) {
  std::uint64_t r = 0;
  for (int i = 0; i < nsites; ++i) r = r * static_cast<std::uint64_t>(q) + vals[i];
  return r;
}

ConfigStream::ConfigStream(Window w, int q, int cap)
    : window_(w), q_(q), total_(config_count(w.size(), q, cap)) {}

bool ConfigStream::next(WindowConfig& out) {
  if (next_ >= total_) return false;
  out = decode_rank(next_++, window_, q_);
  return true;
}

BoundaryCondition BoundaryCondition::all_plus() { return {Kind::kAllPlus, {}}; }
BoundaryCondition BoundaryCondition::all_minus() { return {Kind::kAllMinus, {}}; }
BoundaryCondition BoundaryCondition::free_bc() { return {Kind::kFree, {}}; }

BoundaryCondition BoundaryCondition::periodic(std::vector<std::uint8_t> pattern) {
  if (pattern.empty()) fail(Errc::kInvalidArgument, "periodic tail pattern must be nonempty");
  return {Kind::kPeriodicTail, std::move(pattern)};
}

std::uint8_t BoundaryCondition::tail_symbol(Site attach_l, Site site) const {
  if (site >= attach_l)
    fail(Errc::kInvalidArgument, "tail queried at a site not strictly left of the window");
  switch (kind) {
    case Kind::kAllPlus:
      return 1;
    case Kind::kAllMinus:
      return 0;
    case Kind::kPeriodicTail: {
      // The pattern repeats leftward from the edge: attach_l - 1 carries the
      // last pattern entry, attach_l - 2 the one before, and so on cyclically.
      const std::int64_t d = static_cast<std::int64_t>(attach_l) - 1 - site;
      const std::int64_t n = static_cast<std::int64_t>(pattern.size());
      return pattern[static_cast<size_t>(n - 1 - (d % n))];
    }
    case Kind::kFree:
      fail(Errc::kFreeBoundaryQueried, "free boundary has no tail values");
  }
  fail(Errc::kInvalidArgument, "corrupt boundary condition");
}

std::string BoundaryCondition::describe() const {
  switch (kind) {
    case Kind::kAllPlus:
      return "all_plus";
    case Kind::kAllMinus:
      return "all_minus";
    case Kind::kFree:
      return "free";
    case Kind::kPeriodicTail: {
      std::string s = "periodic:";
      for (std::uint8_t v : pattern) s += (v ? '+' : '-');
      return s;
    }
  }
  return "?";
}

WindowConfig concat(const WindowConfig& left, const WindowConfig& right) {
  if (left.values.empty()) return right;
  if (right.values.empty()) return left;
  if (left.window.m + 1 != right.window.l)
    fail(Errc::kOverlapOrGap, "concat requires adjacent disjoint windows");
  Window w(left.window.l, right.window.m);
  std::vector<std::uint8_t> vals;
  vals.reserve(static_cast<size_t>(w.size()));
  vals.insert(vals.end(), left.values.begin(), left.values.end());
  vals.insert(vals.end(), right.values.begin(), right.values.end());
  return WindowConfig(w, std::move(vals));
}

}  // namespace core
}  // namespace halfline
