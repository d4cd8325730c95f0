#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfline {

// Library-wide error conditions.  The CLI maps kNumericInvariant to exit code 3
// and everything else to exit code 2.
enum class Errc {
  kInvalidArgument,
  kCapExceeded,
  kFreeBoundaryQueried,
  kOverlapOrGap,
  kDiagonalQuery,
  kMissingExterior,
  kNoDecayMeta,
  kZeroDenominator,
  kConfigError,
  kNumericInvariant,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

namespace core {

// Sites live on the half-line Z^- = {..., -2, -1, 0}.
using Site = int;

void check_site(Site s);

// Closed interval [l, m] of sites, l <= m <= 0.
struct Window {
  Site l = 0;
  Site m = 0;

  Window() = default;
  Window(Site l_, Site m_);
  int size() const { return m - l + 1; }
  bool contains(Site s) const { return l <= s && s <= m; }

  bool operator==(const Window& o) const = default;
};

// Symbols are encoded 0..q-1.  The binary Ising alphabet is {-1,+1} with
// the encoding 0 -> -1, 1 -> +1 (so lexicographic enumeration yields (-1)
// before (+1)).
struct Alphabet {
  int q = 2;

  explicit Alphabet(int q_ = 2);
  bool binary() const { return q == 2; }
};

inline int spin_of(int sym) { return 2 * sym - 1; }
inline int sym_of_spin(int spin) { return (spin + 1) / 2; }

// Dense symbol array over a window, indexed by (site - l).
struct WindowConfig {
  Window window;
  std::vector<std::uint8_t> values;

  WindowConfig() = default;
  WindowConfig(Window w, std::vector<std::uint8_t> vals);
  static WindowConfig uniform(Window w, std::uint8_t sym);

  std::uint8_t value(Site s) const { return values[static_cast<size_t>(s - window.l)]; }
  void set(Site s, std::uint8_t sym) { values[static_cast<size_t>(s - window.l)] = sym; }
  int spin(Site s) const { return spin_of(value(s)); }

  // Left-to-right serialization; '+'/'-' for binary alphabets, digits otherwise.
  std::string to_string(int q = 2) const;

  bool operator==(const WindowConfig& o) const = default;
};

inline constexpr int kDefaultCap = 24;

// Number of configurations |A|^n; errors out when the count is not
// representable or n exceeds the enumeration cap.
std::uint64_t config_count(int nsites, int q, int cap = kDefaultCap);

// Lexicographic decoding: the leftmost site is the most significant digit.
void decode_rank(std::uint64_t rank, int nsites, int q, std::uint8_t* out);
WindowConfig decode_rank(std::uint64_t rank, Window w, int q);
std::uint64_t encode_rank(const std::uint8_t* vals, int nsites, int q);

// Streaming enumeration of all configurations on a window in rank order.
class ConfigStream {
 public:
  ConfigStream(Window w, int q, int cap = kDefaultCap);
  bool next(WindowConfig& out);
  std::uint64_t total() const { return total_; }

 private:
  Window window_;
  int q_;
  std::uint64_t total_;
  std::uint64_t next_ = 0;
};

// Tail configuration for all sites strictly left of an attachment edge.
struct BoundaryCondition {
  enum class Kind { kAllPlus, kAllMinus, kPeriodicTail, kFree };

  Kind kind = Kind::kAllPlus;
  std::vector<std::uint8_t> pattern;  // kPeriodicTail only; repeated leftward

  static BoundaryCondition all_plus();
  static BoundaryCondition all_minus();
  static BoundaryCondition free_bc();
  static BoundaryCondition periodic(std::vector<std::uint8_t> pattern);

  bool is_free() const { return kind == Kind::kFree; }
  // Symbol at `site` for a tail attached at window edge `attach_l`
  // (site < attach_l required); errors on free boundaries.
  std::uint8_t tail_symbol(Site attach_l, Site site) const;
  std::string describe() const;
};

// Configuration on the union of two adjacent windows (left.m + 1 == right.l).
WindowConfig concat(const WindowConfig& left, const WindowConfig& right);

}  // namespace core
}  // namespace halfline
