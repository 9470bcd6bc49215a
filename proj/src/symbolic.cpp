#include "mwl/symbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "mwl/error.hpp"
#include "mwl/perron.hpp"

namespace mwl {

Word::Word(std::uint64_t b, int n) : bits(b), length(n) {
  if (n < 0 || n > kMaxLength) throw Error("word length out of range: " + std::to_string(n));
  if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
}

Word Word::parse(std::string_view s) {
  if (s.size() > static_cast<std::size_t>(kMaxLength)) throw Error("word too long");
  std::uint64_t b = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("word must consist of 0/1 symbols: " + std::string(s));
    b = (b << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Word(b, static_cast<int>(s.size()));
}

std::string Word::str() const {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = 1; i <= length; ++i) s[static_cast<std::size_t>(i - 1)] = at(i) ? '1' : '0';
  return s;
}

double Word::lambda() const { return std::ldexp(static_cast<double>(bits), -length); }

Word Word::prefix(int n) const {
  if (n < 0 || n > length) throw Error("prefix length out of range");
  return Word(bits >> (length - n), n);
}

Word Word::shifted(int i) const {
  if (i < 0 || i > length) throw Error("shift out of range");
  return Word(bits, length - i);
}

Word Word::concat(Word other) const {
  if (length + other.length > kMaxLength) throw Error("concatenation too long");
  return Word((bits << other.length) | other.bits, length + other.length);
}

double metric_rho(Word s, Word t) {
  if (s == t) return 0.0;
  const int m = std::min(s.length, t.length);
  int n = 0;
  while (n < m && s.at(n + 1) == t.at(n + 1)) ++n;
  return std::ldexp(1.0, -n);
}

std::vector<Word> neighbors(Word w) {
  if (w.length == 0) throw Error("neighbors: undefined for empty word");
  const std::uint64_t top = (std::uint64_t{1} << w.length) - 1;
  std::vector<Word> out;
  if (w.bits > 0) out.emplace_back(w.bits - 1, w.length);
  out.push_back(w);
  if (w.bits < top) out.emplace_back(w.bits + 1, w.length);
  return out;
}

Word truncate_point(double x, int k) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error("truncate_point: x outside [0,1]");
  if (x >= 1.0) return Word((std::uint64_t{1} << k) - 1, k);
  return Word(static_cast<std::uint64_t>(std::floor(std::ldexp(x, k))), k);
}

bool is_dyadic(double x) {
  constexpr int kResolution = 52;
  const double scaled = std::ldexp(x, kResolution);
  return std::isfinite(scaled) && scaled == std::floor(scaled);
}

ZeroSet isolate_zeros(const std::function<double(double)>& f, int gridPoints, double tolerance) {
  if (gridPoints < 2) throw Error("isolate_zeros: grid too small");
  ZeroSet z;
  z.tolerance = tolerance;
  const double h = 1.0 / gridPoints;
  double prev = f(0.0);
  if (std::abs(prev) <= tolerance) z.zeros.push_back(0.0);
  for (int i = 1; i <= gridPoints; ++i) {
    const double x = i * h;
    const double cur = f(x);
    if (std::abs(cur) <= tolerance) {
      // flat stretches near a root produce several hits; keep the first
      if (z.zeros.empty() || x - z.zeros.back() > 2.0 * h) z.zeros.push_back(x);
    } else if (std::abs(prev) > tolerance && (prev < 0.0) != (cur < 0.0)) {
      double a = x - h;
      double b = x;
      double fa = prev;
      while (b - a > 1e-15) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      z.zeros.push_back(0.5 * (a + b));
    }
    prev = cur;
  }
  return z;
}

std::vector<Word> forbidden_words(const ZeroSet& z, int k) {
  if (k < 2) throw Error("forbidden_words: depth k must be at least 2");
  std::vector<Word> out;
  for (double x : z.zeros) {
    const Word v = truncate_point(x, k);
    out.push_back(v);
    if (is_dyadic(x) && v.bits > 0) out.emplace_back(v.bits - 1, k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxDepth = 22;

// Tarjan's algorithm, iterative, over live states of x. Returns components
// that carry a cycle (size > 1 or a self-loop).
std::vector<std::vector<std::uint64_t>> cyclic_components(const Sft& x) {
  const std::size_t n = x.state_count();
  const std::uint64_t mask = x.state_mask();
  constexpr std::int64_t kUnvisited = -1;
  std::vector<std::int64_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint64_t> stack;
  std::vector<std::vector<std::uint64_t>> comps;
  std::int64_t counter = 0;

  struct Frame {
    std::uint64_t v;
    int next_symbol;
  };
  std::vector<Frame> call;

  auto successor = [&](std::uint64_t v, int b) -> std::int64_t {
    if (!x.edge(v, b)) return -1;
    const std::uint64_t w = ((v << 1) | static_cast<std::uint64_t>(b)) & mask;
    return x.live(w) ? static_cast<std::int64_t>(w) : -1;
  };

  for (std::uint64_t root = 0; root < n; ++root) {
    if (!x.live(root) || index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const std::uint64_t v = fr.v;
      if (fr.next_symbol < 2) {
        const std::int64_t w = successor(v, fr.next_symbol++);
        if (w < 0) continue;
        const auto uw = static_cast<std::uint64_t>(w);
        if (index[uw] == kUnvisited) {
          index[uw] = low[uw] = counter++;
          stack.push_back(uw);
          on_stack[uw] = 1;
          call.push_back({uw, 0});
        } else if (on_stack[uw]) {
          low[v] = std::min(low[v], index[uw]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::uint64_t> comp;
        std::uint64_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        const bool self_loop = successor(v, 0) == static_cast<std::int64_t>(v) ||
                               successor(v, 1) == static_cast<std::int64_t>(v);
        if (comp.size() > 1 || self_loop) {
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return comps;
}

PerronData component_perron(const Sft& x, const std::vector<std::uint64_t>& comp) {
  const std::uint64_t mask = x.state_mask();
  std::vector<std::int64_t> compact(x.state_count(), -1);
  for (std::size_t i = 0; i < comp.size(); ++i) compact[comp[i]] = static_cast<std::int64_t>(i);
  std::vector<std::array<OutEdge, 2>> g(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (int b = 0; b < 2; ++b) {
      if (!x.edge(comp[i], b)) continue;
      const std::uint64_t w = ((comp[i] << 1) | static_cast<std::uint64_t>(b)) & mask;
      if (compact[w] >= 0) g[i][b] = OutEdge{compact[w], 0.0};
    }
  }
  return perron(g);
}

}  // namespace

Sft::Sft(int depth, std::vector<Word> forbidden, std::vector<char> active)
    : depth_(depth), forbidden_(std::move(forbidden)), active_(std::move(active)) {
  if (depth_ < 2 || depth_ > kMaxDepth) throw Error("Sft: depth must be in [2, 22]");
  for (const Word& w : forbidden_)
    if (w.length != depth_) throw Error("build_sft: forbidden words must all have length k");
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());

  const std::size_t n = state_count();
  if (active_.empty()) active_.assign(n, 1);
  if (active_.size() != n) throw Error("Sft: active mask has wrong size");
  allowed_.assign(2 * n, 1);
  for (const Word& w : forbidden_) allowed_[w.bits] = 0;  // index 2*state + symbol == word bits
  compute_live();
  compute_eigendata();
}

bool Sft::edge(std::uint64_t state, int symbol) const {
  const std::uint64_t word = (state << 1) | static_cast<std::uint64_t>(symbol);
  return allowed_[word] && active_[state] && active_[word & state_mask()];
}

int Sft::transition(std::uint64_t from, std::uint64_t to) const {
  if (((from << 1) & state_mask()) != (to & ~std::uint64_t{1})) return 0;
  return edge(from, static_cast<int>(to & 1U)) ? 1 : 0;
}

bool Sft::is_full_shift() const {
  return forbidden_.empty() && std::all_of(active_.begin(), active_.end(), [](char c) { return c != 0; });
}

void Sft::compute_live() {
  const std::size_t n = state_count();
  live_ = active_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t s = 0; s < n; ++s) {
      if (!live_[s]) continue;
      bool has_next = false;
      for (int b = 0; b < 2 && !has_next; ++b)
        has_next = edge(s, b) && live_[((s << 1) | static_cast<std::uint64_t>(b)) & state_mask()];
      if (!has_next) {
        live_[s] = 0;
        changed = true;
      }
    }
  }
  live_count_ = static_cast<std::size_t>(std::count(live_.begin(), live_.end(), 1));
}

void Sft::compute_eigendata() {
  if (empty()) return;
  const auto comps = cyclic_components(*this);
  std::size_t in_cycles = 0;
  for (const auto& c : comps) {
    const PerronData pd = component_perron(*this, c);
    lead_ = std::max(lead_, std::exp(pd.log_lambda));
    in_cycles += c.size();
  }
  transitive_ = comps.size() == 1 && in_cycles == live_count_;
  if (transitive_) {
    const PerronData pd = component_perron(*this, comps.front());
    right_.assign(state_count(), 0.0);
    left_.assign(state_count(), 0.0);
    for (std::size_t i = 0; i < comps.front().size(); ++i) {
      right_[comps.front()[i]] = pd.right[i];
      left_[comps.front()[i]] = pd.left[i];
    }
  }
}

double Sft::lead_eigenvalue() const {
  if (empty()) throw Error("empty subshift");
  return lead_;
}

Sft Sft::restricted(std::vector<char> active) const { return Sft(depth_, forbidden_, std::move(active)); }

std::uint64_t Sft::first_state() const {
  for (std::uint64_t s = 0; s < state_count(); ++s)
    if (live_[s]) return s;
  return state_count();
}

std::size_t Sft::active_count() const { return live_count_; }

Sft build_sft(std::span<const Word> forbidden, int k) {
  return Sft(k, std::vector<Word>(forbidden.begin(), forbidden.end()));
}

std::vector<Sft> transitive_components(const Sft& x) {
  std::vector<Sft> out;
  if (x.empty()) return out;
  for (const auto& comp : cyclic_components(x)) {
    std::vector<char> mask(x.state_count(), 0);
    for (auto s : comp) mask[s] = 1;
    out.push_back(x.restricted(std::move(mask)));
  }
  std::stable_sort(out.begin(), out.end(), [](const Sft& a, const Sft& b) {
    const double la = a.lead_eigenvalue();
    const double lb = b.lead_eigenvalue();
    if (std::abs(la - lb) > 1e-12 * std::max(la, lb)) return la > lb;
    if (a.active_count() != b.active_count()) return a.active_count() > b.active_count();
    return a.first_state() < b.first_state();
  });
  return out;
}

double spectral_radius(const Sft& x) { return x.lead_eigenvalue(); }

double box_dimension(const Sft& x) { return std::log2(x.lead_eigenvalue()); }

bool admissible(const Sft& x, Word w) {
  const int d = x.state_bits();
  if (w.length < d) {
    const int extra = d - w.length;
    const std::uint64_t base = w.bits << extra;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << extra); ++t)
      if (x.live(base | t)) return true;
    return false;
  }
  std::uint64_t state = w.bits >> (w.length - d);
  if (!x.live(state)) return false;
  for (int i = d + 1; i <= w.length; ++i) {
    const int b = w.at(i);
    if (!x.edge(state, b)) return false;
    state = ((state << 1) | static_cast<std::uint64_t>(b)) & x.state_mask();
    if (!x.live(state)) return false;
  }
  return true;
}

std::vector<Word> enumerate_admissible(const Sft& x, int n) {
  if (n < 0 || n > Word::kMaxLength) throw Error("enumerate_admissible: level out of range");
  std::vector<Word> out;
  if (x.empty()) return out;
  const int d = x.state_bits();
  if (n < d) {
    std::vector<std::uint64_t> pre;
    for (std::uint64_t s = 0; s < x.state_count(); ++s)
      if (x.live(s)) pre.push_back(s >> (d - n));
    pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
    for (auto p : pre) out.emplace_back(p, n);
    return out;
  }
  struct Item {
    std::uint64_t bits;
    std::uint64_t state;
    int len;
  };
  std::vector<Item> stack;
  for (std::uint64_t s = x.state_count(); s-- > 0;)
    if (x.live(s)) stack.push_back({s, s, d});
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    if (it.len == n) {
      out.emplace_back(it.bits, n);
      continue;
    }
    for (int b = 1; b >= 0; --b) {
      if (!x.edge(it.state, b)) continue;
      const std::uint64_t next = ((it.state << 1) | static_cast<std::uint64_t>(b)) & x.state_mask();
      if (!x.live(next)) continue;
      stack.push_back({(it.bits << 1) | static_cast<std::uint64_t>(b), next, it.len + 1});
    }
  }
  return out;
}

HausdorffGap hausdorff_gap(const Sft& x, int cap) {
  if (x.empty()) throw Error("hausdorff_gap: empty subshift");
  if (cap <= 0) cap = 2 * x.depth();
  HausdorffGap gap;
  if (x.is_full_shift()) {
    gap.exact = true;
    gap.dense = true;
    gap.level = cap;
    return gap;
  }
  int level = cap;
  for (int m = 1; m <= cap; ++m) {
    std::vector<char> ok(std::size_t{1} << m, 0);
    for (const Word& w : enumerate_admissible(x, m)) ok[w.bits] = 1;
    bool all = true;
    for (std::uint64_t b = 0; b < ok.size() && all; ++b) {
      bool found = false;
      for (const Word& u : neighbors(Word(b, m))) found = found || ok[u.bits];
      all = found;
    }
    if (!all) {
      level = m - 1;
      break;
    }
  }
  gap.level = level;
  gap.bound = std::ldexp(1.0, -level);
  gap.dense = gap.bound <= std::ldexp(1.0, -x.depth());
  return gap;
}

Sft full_shift(int k) { return Sft(k, {}); }

Sft zero_avoiding_sft(const ZeroSet& z, int k) {
  const auto f = forbidden_words(z, k);
  return build_sft(f, k);
}

Sft zero_avoiding_component(const ZeroSet& z, int k) {
  auto comps = transitive_components(zero_avoiding_sft(z, k));
  if (comps.empty()) throw Error("empty subshift");
  return std::move(comps.front());
}

}  // namespace mwl
