#pragma once

// Exact languages on Z.
//
// TransferGraph: the trimmed de Bruijn graph of a one-dimensional SFT. A
// vertex is an admissible word of length w-1 (w the longest forbidden hull);
// the vertex "at position i" spells x[i-w+2 .. i]. Trimming keeps exactly the
// vertices that lie on bi-infinite paths, so a finite set of constraints is
// globally admissible iff some path realises it.
//
// FactorLanguage: factors of the fixed point of a primitive substitution.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pattern.hpp"

namespace symdyn {

// Constraints on Z: position -> letter, compared modulo `mod` (mod = number
// of letters for full comparison, |A|^n for the first n levels).
struct LineConstraints {
  std::map<long, Letter> at;
  long mod = 0;

  static LineConstraints from(const Pattern& p, long mod) {
    LineConstraints c;
    c.mod = mod;
    for (auto& [g, a] : p.cells()) c.at[g.c.at(0)] = static_cast<Letter>(a % mod);
    return c;
  }
  bool empty() const { return at.empty(); }
  long lo() const { return at.begin()->first; }
  long hi() const { return at.rbegin()->first; }
};

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n, bool fill = false) : n_(n), w_((n + 63) / 64, fill ? ~0ULL : 0ULL) {
    if (fill) trim();
  }
  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  bool all() const { return count() == n_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        int b = std::countr_zero(x);
        f(i * 64 + static_cast<std::size_t>(b));
        x &= x - 1;
      }
    }
  }
  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

 private:
  void trim() {
    if (n_ % 64) w_.back() &= (1ULL << (n_ % 64)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

class TransferGraph {
 public:
  explicit TransferGraph(const SubshiftSpec& spec) : letters_(spec.letters()) {
    if (spec.is_substitution()) throw PreconditionError("transfer graph needs an SFT");
    Group Z = Group::lattice(1);
    for (auto& f : spec.forbidden) {
      for (auto& [g, a] : f.cells())
        if (g.c.size() != 1) throw PreconditionError("transfer graph needs patterns on Z");
      long lo = f.cells().begin()->first.c[0];
      Rule r;
      for (auto& [g, a] : f.cells()) r.cells.emplace_back(g.c[0] - lo, a);
      r.len = static_cast<int>(r.cells.back().first + 1);
      window_ = std::max(window_, r.len);
      rules_.push_back(std::move(r));
    }
    build();
  }

  int letters() const { return letters_; }
  int window() const { return window_; }
  int label_length() const { return window_ - 1; }
  std::size_t vertices() const { return labels_.size(); }
  const std::vector<Letter>& label(std::size_t v) const { return labels_[v]; }
  const std::vector<std::size_t>& successors(std::size_t v) const { return succ_[v]; }
  bool empty() const { return labels_.empty(); }

  // Locally admissible: no forbidden pattern sits entirely inside w.
  bool locally_admissible(const std::vector<Letter>& w) const {
    for (int end = 0; end < static_cast<int>(w.size()); ++end)
      if (violates_ending_at(w, end)) return false;
    return true;
  }

  Bits all() const { return Bits(vertices(), true); }

  Bits step(const Bits& s) const {
    Bits out(vertices());
    s.for_each([&](std::size_t v) {
      for (auto u : succ_[v]) out.set(u);
    });
    return out;
  }

  Bits step_back(const Bits& s) const {
    Bits out(vertices());
    s.for_each([&](std::size_t v) {
      for (auto u : pred_[v]) out.set(u);
    });
    return out;
  }

  Bits step(Bits s, long k) const {
    for (long i = 0; i < k; ++i) s = step(s);
    return s;
  }

  // Keep vertices at position i whose whole label agrees with c.
  Bits filter_label(Bits s, long i, const LineConstraints& c) const {
    const long k = label_length();
    auto it = c.at.lower_bound(i - k + 1);
    std::vector<std::pair<long, Letter>> local;
    for (; it != c.at.end() && it->first <= i; ++it) local.push_back(*it);
    if (local.empty()) return s;
    s.for_each([&](std::size_t v) {
      for (auto& [p, a] : local)
        if (labels_[v][static_cast<std::size_t>(p - (i - k + 1))] % c.mod != a) {
          s.reset(v);
          return;
        }
    });
    return s;
  }

  Bits filter_last(Bits s, long i, const LineConstraints& c) const {
    auto it = c.at.find(i);
    if (it == c.at.end()) return s;
    s.for_each([&](std::size_t v) {
      if (labels_[v].back() % c.mod != it->second) s.reset(v);
    });
    return s;
  }

  Bits filter_first(Bits s, long i, const LineConstraints& c) const {
    auto it = c.at.find(i - label_length() + 1);
    if (it == c.at.end()) return s;
    s.for_each([&](std::size_t v) {
      if (labels_[v].front() % c.mod != it->second) s.reset(v);
    });
    return s;
  }

  // Vertices at position `to` reachable by a path consistent with c from
  // position `from` (inclusive) onwards.
  Bits forward(const LineConstraints& c, long from, long to) const {
    Bits s = filter_label(all(), from, c);
    for (long i = from + 1; i <= to && s.any(); ++i) s = filter_last(step(s), i, c);
    return s;
  }

  // Vertices at position `to` from which a path consistent with c runs to
  // position `from` (from >= to).
  Bits backward(const LineConstraints& c, long from, long to) const {
    Bits s = filter_label(all(), from, c);
    for (long i = from - 1; i >= to && s.any(); --i) s = filter_first(step_back(s), i, c);
    return s;
  }

  bool admissible(const LineConstraints& c) const {
    if (empty()) return false;
    if (c.empty()) return true;
    return forward(c, c.lo(), c.hi()).any();
  }

  // Enumerate admissible assignments on the ascending positions, letters
  // compared modulo mod, in lexicographic order. The callback also gets the
  // set of vertices at the last position.
  void enumerate(const std::vector<long>& positions, long mod,
                 const std::function<void(const std::vector<Letter>&, const Bits&)>& out) const {
    if (empty()) return;
    std::vector<Letter> cur(positions.size());
    if (positions.empty()) {
      out(cur, all());
      return;
    }
    std::function<void(std::size_t, const Bits&)> rec = [&](std::size_t j, const Bits& s) {
      for (Letter a = 0; a < mod; ++a) {
        Bits t = s;
        t.for_each([&](std::size_t v) {
          if (labels_[v].back() % mod != a) t.reset(v);
        });
        if (!t.any()) continue;
        cur[j] = a;
        if (j + 1 == positions.size())
          out(cur, t);
        else
          rec(j + 1, step(t, positions[j + 1] - positions[j]));
      }
    };
    rec(0, all());
  }

  std::vector<std::vector<Letter>> words(int length, long mod) const {
    std::vector<long> pos(static_cast<std::size_t>(length));
    std::iota(pos.begin(), pos.end(), 0L);
    std::vector<std::vector<Letter>> out;
    enumerate(pos, mod, [&](const std::vector<Letter>& w, const Bits&) { out.push_back(w); });
    return out;
  }

  // Least t with every vertex reaching every vertex in exactly t steps, or -1
  // if the graph is not primitive within the cap.
  long primitive_exponent(long cap = 100000) const {
    if (empty()) return -1;
    long worst = 0;
    const std::size_t n = vertices();
    for (std::size_t v = 0; v < n; ++v) {
      Bits s(n);
      s.set(v);
      long t = 0;
      std::set<Bits> seen;
      while (!s.all()) {
        if (++t > cap) return -1;
        s = step(s);
        if (t > static_cast<long>(n) && !seen.insert(s).second) return -1;
      }
      worst = std::max(worst, t);
    }
    return worst;
  }

 private:
  struct Rule {
    std::vector<std::pair<long, Letter>> cells;  // offsets from the leftmost cell
    int len = 1;
  };

  bool violates_ending_at(const std::vector<Letter>& w, int end) const {
    for (auto& r : rules_) {
      int start = end - r.len + 1;
      if (start < 0) continue;
      bool hit = true;
      for (auto& [off, a] : r.cells)
        if (w[static_cast<std::size_t>(start + off)] != a) {
          hit = false;
          break;
        }
      if (hit) return true;
    }
    return false;
  }

  void build() {
    const int k = label_length();
    std::vector<std::vector<Letter>> raw;
    std::vector<Letter> cur;
    const std::size_t cap = max_ball_size();
    std::function<void()> dfs = [&]() {
      if (static_cast<int>(cur.size()) == k) {
        raw.push_back(cur);
        if (raw.size() > cap) throw BallOverflow("transfer graph exceeds size cap");
        return;
      }
      for (Letter a = 0; a < letters_; ++a) {
        cur.push_back(a);
        if (!violates_ending_at(cur, static_cast<int>(cur.size()) - 1)) dfs();
        cur.pop_back();
      }
    };
    dfs();
    std::map<std::vector<Letter>, std::size_t> index;
    for (std::size_t i = 0; i < raw.size(); ++i) index.emplace(raw[i], i);
    std::vector<std::vector<std::size_t>> succ(raw.size()), pred(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      std::vector<Letter> w = raw[i];
      w.push_back(0);
      for (Letter a = 0; a < letters_; ++a) {
        w.back() = a;
        if (violates_ending_at(w, k)) continue;
        std::vector<Letter> next(w.begin() + 1, w.end());
        auto it = index.find(next);
        if (it == index.end()) continue;
        succ[i].push_back(it->second);
        pred[it->second].push_back(i);
      }
    }
    // Trim to the vertices on bi-infinite paths.
    std::vector<int> indeg(raw.size()), outdeg(raw.size());
    std::vector<char> alive(raw.size(), 1);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      indeg[i] = static_cast<int>(pred[i].size());
      outdeg[i] = static_cast<int>(succ[i].size());
      if (!indeg[i] || !outdeg[i]) {
        alive[i] = 0;
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      std::size_t v = queue.back();
      queue.pop_back();
      for (auto u : succ[v])
        if (alive[u] && --indeg[u] == 0) {
          alive[u] = 0;
          queue.push_back(u);
        }
      for (auto u : pred[v])
        if (alive[u] && --outdeg[u] == 0) {
          alive[u] = 0;
          queue.push_back(u);
        }
    }
    std::vector<std::size_t> remap(raw.size(), SIZE_MAX);
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (alive[i]) {
        remap[i] = labels_.size();
        labels_.push_back(raw[i]);
      }
    succ_.assign(labels_.size(), {});
    pred_.assign(labels_.size(), {});
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!alive[i]) continue;
      for (auto u : succ[i])
        if (alive[u]) {
          succ_[remap[i]].push_back(remap[u]);
          pred_[remap[u]].push_back(remap[i]);
        }
    }
  }

  int letters_;
  int window_ = 2;
  std::vector<Rule> rules_;
  std::vector<std::vector<Letter>> labels_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
};

class FactorLanguage {
 public:
  explicit FactorLanguage(const SubshiftSpec& spec)
      : sigma_(spec.substitution), letters_(spec.letters()) {
    if (!spec.is_substitution()) throw PreconditionError("factor language needs a substitution");
    for (Letter a = 0; a < letters_ && seed_ < 0; ++a)
      if (!sigma_[static_cast<std::size_t>(a)].empty() && sigma_[static_cast<std::size_t>(a)][0] == a)
        seed_ = a;
    if (seed_ < 0) throw PreconditionError("substitution has no fixed-point seed");
  }

  // A prefix of the one-sided fixed point of length at least n.
  std::vector<Letter> prefix(std::size_t n) const {
    std::lock_guard<std::mutex> lock(*mu_);
    if (prefix_.empty()) prefix_ = {seed_};
    while (prefix_.size() < n) prefix_ = apply(prefix_);
    return prefix_;
  }

  std::vector<Letter> apply(const std::vector<Letter>& w) const {
    std::vector<Letter> out;
    for (Letter a : w) {
      auto& img = sigma_[static_cast<std::size_t>(a)];
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  // Distinct factors of the given length, lexicographic.
  std::vector<std::vector<Letter>> words(int length, long mod) const {
    std::set<std::vector<Letter>> out;
    const auto p = prefix(sample_length(length));
    for (std::size_t i = 0; i + static_cast<std::size_t>(length) <= p.size(); ++i) {
      std::vector<Letter> w(p.begin() + static_cast<long>(i), p.begin() + static_cast<long>(i) + length);
      for (auto& a : w) a = static_cast<Letter>(a % mod);
      out.insert(std::move(w));
    }
    return {out.begin(), out.end()};
  }

  bool admissible(const LineConstraints& c) const {
    if (c.empty()) return true;
    const long lo = c.lo();
    const int len = static_cast<int>(c.hi() - lo + 1);
    const auto p = prefix(sample_length(len));
    for (std::size_t i = 0; i + static_cast<std::size_t>(len) <= p.size(); ++i) {
      bool ok = true;
      for (auto& [pos, a] : c.at)
        if (p[i + static_cast<std::size_t>(pos - lo)] % c.mod != a) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

  // Two-sided point: a seed pair b.a with sigma^p(a) starting with a and
  // sigma^p(b) ending with b, so the iterates converge on both sides.
  std::pair<std::vector<Letter>, std::vector<Letter>> two_sided(std::size_t n) const {
    for (int p = 1; p <= 6; ++p)
      for (Letter b = 0; b < letters_; ++b)
        for (Letter a = 0; a < letters_; ++a) {
          auto ia = power({a}, p), ib = power({b}, p);
          if (ia.empty() || ib.empty() || ia.front() != a || ib.back() != b) continue;
          LineConstraints c;
          c.mod = letters_;
          c.at = {{0, b}, {1, a}};
          if (!admissible(c)) continue;
          std::vector<Letter> right{a}, left{b};
          while (right.size() < n || left.size() < n) {
            right = power(right, p);
            left = power(left, p);
          }
          std::reverse(left.begin(), left.end());
          return {left, right};  // left[i] is x(-1-i), right[i] is x(i)
        }
    throw PreconditionError("no two-sided fixed point found");
  }

  static std::size_t sample_length(int length) { return 16 * static_cast<std::size_t>(length) + 64; }

 private:
  std::vector<Letter> power(std::vector<Letter> w, int p) const {
    for (int i = 0; i < p; ++i) w = apply(w);
    return w;
  }

  std::vector<std::vector<Letter>> sigma_;
  int letters_;
  Letter seed_ = -1;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  mutable std::vector<Letter> prefix_;
};

}  // namespace symdyn
