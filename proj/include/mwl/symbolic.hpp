#pragma once

// Binary symbolic dynamics: finite words, cylinders, subshifts of finite type
// given by forbidden words, and their Perron-Frobenius data.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwl {

/// Finite word over {0,1}. The first symbol is the most significant of the
/// `length` low bits of `bits`, so `bits` is also the dyadic index k of the
/// interval [k 2^-n, (k+1) 2^-n) that the cylinder projects onto.
struct Word {
  static constexpr int kMaxLength = 62;

  std::uint64_t bits = 0;
  int length = 0;

  Word() = default;
  Word(std::uint64_t b, int n);

  static Word parse(std::string_view s);
  std::string str() const;

  /// Symbol at 1-based position i.
  int at(int i) const { return static_cast<int>((bits >> (length - i)) & 1U); }

  /// Dyadic value sum_i w_i 2^-i.
  double lambda() const;

  Word prefix(int n) const;
  /// sigma^i(w): drop the first i symbols.
  Word shifted(int i) const;
  Word concat(Word other) const;
  Word child(int symbol) const { return concat(Word(static_cast<std::uint64_t>(symbol), 1)); }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.length != b.length) return a.length <=> b.length;
    return a.bits <=> b.bits;
  }
};

/// rho(s, t) = 2^-n with n the longest common prefix length; 0 for equal words.
double metric_rho(Word s, Word t);

/// Words u of the same length with |lambda(u) - lambda(w)| <= 2^-|w|.
std::vector<Word> neighbors(Word w);

/// x|_k: the word w of length k with lambda(w) <= x < lambda(w) + 2^-k, and 1|_k = 1...1.
Word truncate_point(double x, int k);

/// True when x is a dyadic rational with denominator at most 2^kMaxLength.
bool is_dyadic(double x);

struct ZeroSet {
  std::vector<double> zeros;  // strictly increasing, inside [0,1]
  double tolerance = 1e-12;
};

/// Sign-change bisection of f on a uniform grid of `gridPoints` intervals over [0,1].
ZeroSet isolate_zeros(const std::function<double(double)>& f, int gridPoints = 1 << 16,
                      double tolerance = 1e-12);

std::vector<Word> forbidden_words(const ZeroSet& z, int k);

/// Binary subshift of finite type of depth k: the states are the words of
/// length k-1 and state a -> b is allowed when a_1...a_{k-1} b_{k-1} is not
/// forbidden. A subset of the states may be marked inactive, which is how a
/// transitive component is represented.
class Sft {
 public:
  Sft(int depth, std::vector<Word> forbidden, std::vector<char> active = {});

  int depth() const { return depth_; }
  int state_bits() const { return depth_ - 1; }
  std::size_t state_count() const { return std::size_t{1} << state_bits(); }
  std::uint64_t state_mask() const { return state_count() - 1; }

  const std::vector<Word>& forbidden() const { return forbidden_; }
  bool active(std::uint64_t state) const { return active_[state] != 0; }
  const std::vector<char>& active_states() const { return active_; }

  /// Edge state -> ((state << 1) | symbol) restricted to active states.
  bool edge(std::uint64_t state, int symbol) const;
  /// Dense transition-matrix entry B(from, to).
  int transition(std::uint64_t from, std::uint64_t to) const;

  /// No forbidden words and every state active.
  bool is_full_shift() const;
  /// True when no infinite admissible path exists.
  bool empty() const { return live_count_ == 0; }
  /// States from which an infinite admissible path starts.
  bool live(std::uint64_t state) const { return live_[state] != 0; }

  /// Leading eigenvalue of the transition matrix (max over components).
  double lead_eigenvalue() const;
  /// Perron vectors; only populated for a transitive Sft.
  const std::vector<double>& lead_right() const { return right_; }
  const std::vector<double>& lead_left() const { return left_; }
  bool transitive() const { return transitive_; }

  /// Copy of this Sft with only `active` states kept.
  Sft restricted(std::vector<char> active) const;

  /// Smallest active state, used for deterministic ordering.
  std::uint64_t first_state() const;
  std::size_t active_count() const;

 private:
  void compute_live();
  void compute_eigendata();

  int depth_;
  std::vector<Word> forbidden_;
  std::vector<char> allowed_;  // 2 entries per state, by appended symbol
  std::vector<char> active_;
  std::vector<char> live_;
  std::size_t live_count_ = 0;
  bool transitive_ = false;
  double lead_ = 0.0;
  std::vector<double> right_, left_;
};

Sft build_sft(std::span<const Word> forbidden, int k);

/// Strongly connected components carrying an infinite orbit, sorted by
/// descending spectral radius, then by size, then by smallest state.
std::vector<Sft> transitive_components(const Sft& x);

double spectral_radius(const Sft& x);
/// Upper box dimension log2(spectral radius).
double box_dimension(const Sft& x);

struct HausdorffGap {
  double bound = 0.0;   // upper bound on dist_H(X, Sigma)
  int level = 0;        // last level at which every word has an admissible neighbor
  bool exact = false;   // true for the full shift (distance 0)
  bool dense = false;   // bound <= 2^-depth
};

HausdorffGap hausdorff_gap(const Sft& x, int cap = 0);

/// Words of length n whose cylinder meets X, in increasing order.
std::vector<Word> enumerate_admissible(const Sft& x, int n);
/// True when [w] meets X.
bool admissible(const Sft& x, Word w);

/// Full-shift Sft of depth k.
Sft full_shift(int k = 2);

/// The depth-k subshift avoiding the zero set, before component selection.
Sft zero_avoiding_sft(const ZeroSet& z, int k);
/// The transitive component of largest box dimension of zero_avoiding_sft.
Sft zero_avoiding_component(const ZeroSet& z, int k);

}  // namespace mwl
