#pragma once

// Subshift semantics and pattern enumeration.
//
// exact: global admissibility, only on Z (transfer graph or factor language).
// local(m): the pattern extends to a pattern on ball(m) * domain that contains
// no translate of a forbidden pattern.

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "configuration.hpp"
#include "language.hpp"

namespace symdyn {

enum class Mode { exact, local };

struct Semantics {
  Mode mode = Mode::exact;
  int margin = 0;

  static Semantics exact() { return {}; }
  static Semantics local(int m) { return {Mode::local, m}; }

  static Semantics parse(const std::string& s) {
    if (s == "exact") return exact();
    if (s.rfind("local:", 0) == 0) {
      try {
        return local(std::stoi(s.substr(6)));
      } catch (const std::logic_error&) {
      }
    }
    throw ParseError("semantics must be exact or local:<m>: " + s);
  }
  std::string str() const { return mode == Mode::exact ? "exact" : "local:" + std::to_string(margin); }
};

// Backtracking over a finite set of cells with forbidden placements. Cells
// are decided in the given order and letters in increasing order, so the
// first solution found is the lexicographically least one.
class LocalProblem {
 public:
  LocalProblem(const Group& G, const SubshiftSpec& spec, std::vector<Element> cells)
      : cells_(std::move(cells)), letters_(spec.letters()) {
    for (std::size_t i = 0; i < cells_.size(); ++i) index_.emplace(cells_[i], static_cast<int>(i));
    domain_.assign(cells_.size(), {});
    for (auto& d : domain_)
      for (Letter a = 0; a < letters_; ++a) d.push_back(a);
    closing_.assign(cells_.size(), {});
    std::set<std::vector<std::pair<int, Letter>>> seen;
    for (auto& f : spec.forbidden) {
      const Element& f0 = f.cells().begin()->first;
      Element f0inv = G.inv(f0);
      for (auto& t : cells_) {
        Element g = G.mul(f0inv, t);
        std::vector<std::pair<int, Letter>> pl;
        bool inside = true;
        for (auto& [x, a] : f.cells()) {
          auto it = index_.find(G.mul(x, g));
          if (it == index_.end()) {
            inside = false;
            break;
          }
          pl.emplace_back(it->second, a);
        }
        if (!inside) continue;
        std::sort(pl.begin(), pl.end());
        if (!seen.insert(pl).second) continue;
        int last = pl.back().first;
        closing_[static_cast<std::size_t>(last)].push_back(placements_.size());
        placements_.push_back(std::move(pl));
      }
    }
  }

  std::size_t size() const { return cells_.size(); }
  const std::vector<Element>& cells() const { return cells_; }

  // Restrict a cell to letters congruent to v modulo mod.
  void fix(const Element& g, Letter v, long mod) {
    auto it = index_.find(g);
    if (it == index_.end()) throw PreconditionError("fixing a cell outside the problem");
    auto& d = domain_[static_cast<std::size_t>(it->second)];
    std::vector<Letter> keep;
    for (Letter a : d)
      if (a % mod == v) keep.push_back(a);
    d = std::move(keep);
  }

  // Order each domain by (a mod m, a), so the least solution has the least
  // projection to the first levels.
  void order_by_projection(long mod) {
    for (auto& d : domain_)
      std::stable_sort(d.begin(), d.end(), [mod](Letter a, Letter b) { return a % mod < b % mod; });
  }

  std::optional<std::vector<Letter>> solve() const {
    std::vector<Letter> cur(cells_.size(), -1);
    if (search(0, cur)) return cur;
    return std::nullopt;
  }

  // Distinct projections (mod) of the first `head` cells over all solutions.
  std::vector<std::vector<Letter>> head_projections(std::size_t head, long mod) const {
    std::vector<std::vector<Letter>> out;
    std::vector<Letter> cur(cells_.size(), -1);
    std::vector<Letter> cls(head, -1);
    enumerate_head(0, head, mod, cls, cur, out);
    return out;
  }

 private:
  bool consistent(std::size_t i, const std::vector<Letter>& cur) const {
    for (auto pi : closing_[i]) {
      bool hit = true;
      for (auto& [v, a] : placements_[pi])
        if (cur[static_cast<std::size_t>(v)] != a) {
          hit = false;
          break;
        }
      if (hit) return false;
    }
    return true;
  }

  bool search(std::size_t i, std::vector<Letter>& cur) const {
    if (i == cells_.size()) return true;
    for (Letter a : domain_[i]) {
      cur[i] = a;
      if (consistent(i, cur) && search(i + 1, cur)) return true;
    }
    cur[i] = -1;
    return false;
  }

  // Projected classes are chosen for the head cells first; each complete
  // choice is kept if some full solution realises it.
  void enumerate_head(std::size_t i, std::size_t head, long mod, std::vector<Letter>& cls,
                      std::vector<Letter>& cur, std::vector<std::vector<Letter>>& out) const {
    if (i == head) {
      if (search_with_classes(0, head, mod, cls, cur)) out.push_back(cls);
      return;
    }
    std::set<Letter> classes;
    for (Letter a : domain_[i]) classes.insert(static_cast<Letter>(a % mod));
    for (Letter c : classes) {
      cls[i] = c;
      if (mod == letters_) {
        cur[i] = c;
        if (!consistent(i, cur)) continue;
      }
      enumerate_head(i + 1, head, mod, cls, cur, out);
    }
    cur[i] = -1;
  }

  bool search_with_classes(std::size_t i, std::size_t head, long mod, const std::vector<Letter>& cls,
                           std::vector<Letter>& cur) const {
    if (i == cells_.size()) return true;
    for (Letter a : domain_[i]) {
      if (i < head && a % mod != cls[i]) continue;
      cur[i] = a;
      if (consistent(i, cur) && search_with_classes(i + 1, head, mod, cls, cur)) return true;
    }
    cur[i] = -1;
    return false;
  }

  std::vector<Element> cells_;
  std::map<Element, int> index_;
  int letters_;
  std::vector<std::vector<Letter>> domain_;
  std::vector<std::vector<std::pair<int, Letter>>> placements_;
  std::vector<std::vector<std::size_t>> closing_;
};

class Subshift {
 public:
  explicit Subshift(SubshiftSpec spec) : spec_(std::move(spec)), G_(spec_.group_context()) {
    spec_.validate();
    if (G_.is_integers()) {
      if (spec_.is_substitution())
        language_ = std::make_shared<FactorLanguage>(spec_);
      else
        graph_ = std::make_shared<TransferGraph>(spec_);
    }
  }

  const SubshiftSpec& spec() const { return spec_; }
  const Group& group() const { return G_; }
  int letters() const { return spec_.letters(); }
  int alphabet() const { return spec_.alphabet; }
  int stack() const { return spec_.stack; }
  bool exact_available() const { return G_.is_integers(); }

  // Number of letter classes seen through the first n levels (n = 0: all).
  long level_mod(int levels) const {
    if (levels <= 0 || levels >= spec_.stack) return spec_.letters();
    return ipow(spec_.alphabet, levels);
  }

  const TransferGraph& graph() const {
    if (!graph_) throw PreconditionError("no transfer graph: exact mode needs an SFT on Z");
    return *graph_;
  }
  bool has_graph() const { return static_cast<bool>(graph_); }
  const FactorLanguage* language() const { return language_.get(); }

  void require(const Semantics& sem) const {
    if (sem.mode == Mode::exact && !exact_available())
      throw PreconditionError("exact semantics is only available on Z");
    if (sem.mode == Mode::local && sem.margin < 0) throw PreconditionError("negative margin");
  }

  bool admissible(const Pattern& p, const Semantics& sem, int levels = 0) const {
    require(sem);
    const long mod = level_mod(levels);
    if (uses_exact(sem)) {
      auto c = LineConstraints::from(p, mod);
      return language_ ? language_->admissible(c) : graph_->admissible(c);
    }
    if (p.empty()) return local_problem(G_.ball(sem.margin).elements(), {}).solve().has_value();
    FiniteSubset T = product(G_, G_.ball(sem.margin), p.domain(G_));
    return local_problem(ordered_cells(p.domain(G_), T), p, mod).solve().has_value();
  }

  std::vector<Pattern> pattern_set(const FiniteSubset& F, const Semantics& sem, int levels = 0) const {
    require(sem);
    const long mod = level_mod(levels);
    std::vector<Pattern> out;
    if (F.empty()) {
      if (admissible(Pattern{}, sem, levels)) out.emplace_back();
      return out;
    }
    if (uses_exact(sem)) {
      std::vector<long> pos;
      for (auto& g : F) pos.push_back(g.c[0]);
      std::sort(pos.begin(), pos.end());
      auto emit = [&](const std::vector<Letter>& vals) {
        Pattern p;
        for (std::size_t i = 0; i < pos.size(); ++i) p.set(G_.z(pos[i]), vals[i]);
        out.push_back(std::move(p));
      };
      if (language_) {
        const long lo = pos.front();
        const int len = static_cast<int>(pos.back() - lo + 1);
        std::set<std::vector<Letter>> seen;
        for (auto& w : language_->words(len, mod)) {
          std::vector<Letter> v;
          for (long q : pos) v.push_back(w[static_cast<std::size_t>(q - lo)]);
          if (seen.insert(v).second) emit(v);
        }
      } else {
        graph_->enumerate(pos, mod, [&](const std::vector<Letter>& v, const Bits&) { emit(v); });
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    FiniteSubset T = product(G_, G_.ball(sem.margin), F);
    auto cells = ordered_cells(F, T);
    auto prob = local_problem(cells, {}, mod);
    prob.order_by_projection(mod);
    for (auto& v : prob.head_projections(F.size(), mod)) {
      Pattern p;
      for (std::size_t i = 0; i < F.size(); ++i) p.set(cells[i], v[i]);
      out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Least admissible pattern on F (levels-projected) extending `fixed`,
  // deciding cells in the canonical order of F and letters in increasing order.
  std::optional<Pattern> least_extension(const Pattern& fixed, const FiniteSubset& F,
                                         const Semantics& sem, int levels = 0) const {
    require(sem);
    const long mod = level_mod(levels);
    Pattern cur;
    for (auto& [g, a] : fixed.cells()) cur.set(g, static_cast<Letter>(a % mod));
    if (uses_exact(sem)) {
      if (!admissible(cur, sem, levels)) return std::nullopt;
      for (auto& g : F) {
        if (cur.contains(g)) continue;
        bool placed = false;
        for (Letter a = 0; a < mod && !placed; ++a) {
          cur.set(g, a);
          placed = admissible(cur, sem, levels);
        }
        if (!placed) return std::nullopt;
      }
      return cur.restricted(F);
    }
    FiniteSubset dom = set_union(G_, F, cur.domain(G_));
    FiniteSubset T = product(G_, G_.ball(sem.margin), dom);
    auto cells = ordered_cells(F, T);
    auto prob = local_problem(cells, cur, mod);
    prob.order_by_projection(mod);
    auto sol = prob.solve();
    if (!sol) return std::nullopt;
    Pattern out;
    for (std::size_t i = 0; i < F.size(); ++i) out.set(cells[i], static_cast<Letter>((*sol)[i] % mod));
    return out;
  }

 private:
  bool uses_exact(const Semantics& sem) const {
    // A substitution language has no forbidden list; it is always exact.
    return sem.mode == Mode::exact || language_ != nullptr;
  }

  // Cells of `head` first (canonical order), then the rest of T.
  std::vector<Element> ordered_cells(const FiniteSubset& head, const FiniteSubset& T) const {
    std::vector<Element> cells(head.begin(), head.end());
    for (auto& t : T)
      if (!head.contains(t)) cells.push_back(t);
    return cells;
  }

  LocalProblem local_problem(std::vector<Element> cells, const Pattern& fixed, long mod = 0) const {
    std::set<Element> have(cells.begin(), cells.end());
    for (auto& [g, a] : fixed.cells())
      if (!have.count(g)) cells.push_back(g);
    LocalProblem prob(G_, spec_, std::move(cells));
    if (mod == 0) mod = spec_.letters();
    for (auto& [g, a] : fixed.cells()) prob.fix(g, static_cast<Letter>(a % mod), mod);
    return prob;
  }

  SubshiftSpec spec_;
  Group G_;
  std::shared_ptr<TransferGraph> graph_;
  std::shared_ptr<FactorLanguage> language_;
};

// ---- pattern occurrence ----------------------------------------------------

// Translates g with F g inside dom(u), in the canonical order of dom(u).
inline std::vector<Element> placements_inside(const Group& G, const FiniteSubset& F,
                                              const FiniteSubset& dom) {
  std::vector<Element> out;
  if (F.empty()) return {G.identity()};
  Element f0inv = G.inv(F[0]);
  std::set<Element> seen;
  for (auto& v : dom) {
    Element g = G.mul(f0inv, v);
    if (!seen.insert(g).second) continue;
    bool inside = true;
    for (auto& f : F)
      if (!dom.contains(G.mul(f, g))) {
        inside = false;
        break;
      }
    if (inside) out.push_back(g);
  }
  return out;
}

// F-patterns (projected mod) that appear in u.
inline std::set<Pattern> patterns_in(const Group& G, const Pattern& u, const FiniteSubset& F,
                                     long mod) {
  std::set<Pattern> out;
  for (auto& g : placements_inside(G, F, u.domain(G))) {
    Pattern t;
    for (auto& f : F) t.set(f, static_cast<Letter>(u.value(G.mul(f, g)) % mod));
    out.insert(std::move(t));
  }
  return out;
}

struct MinimalityResult {
  bool minimal = true;
  std::optional<Pattern> counterexample;  // a V-pattern
  std::optional<Pattern> missing;         // an F-pattern absent from it
  std::size_t f_patterns = 0, v_patterns = 0;
};

// Every (n,F)-pattern appears in every admissible (n,V)-pattern.
inline MinimalityResult is_nF_minimal(const Subshift& X, int n, const FiniteSubset& F,
                                      const FiniteSubset& V, const Semantics& sem) {
  const Group& G = X.group();
  const long mod = X.level_mod(n);
  MinimalityResult res;
  auto SF = X.pattern_set(F, sem, n);
  auto SV = X.pattern_set(V, sem, n);
  res.f_patterns = SF.size();
  res.v_patterns = SV.size();
  for (auto& u : SV) {
    auto seen = patterns_in(G, u, F, mod);
    for (auto& t : SF)
      if (!seen.count(t)) {
        res.minimal = false;
        res.counterexample = u;
        res.missing = t;
        return res;
      }
  }
  return res;
}

// ---- essential freeness ------------------------------------------------------

struct FreenessWitness {
  Pattern probe;
  bool found = false;
  Element h;
  Pattern z;      // admissible pattern on the window, containing the probe
  int window = 0; // radius searched
};

struct FreenessResult {
  bool passed = true;
  std::vector<FreenessWitness> witnesses;
};

// For each probe cylinder, search h in ball order and letters a != b with
// probe + {h: a, hg: b} admissible; the witness pattern is its least
// completion on the hull of the involved positions.
inline FreenessResult essential_freeness_check(const Subshift& X, const Element& g,
                                               const std::vector<Pattern>& probes,
                                               const Semantics& sem, int max_radius = 6) {
  const Group& G = X.group();
  if (g == G.identity()) throw PreconditionError("essential freeness needs g != e");
  FreenessResult res;
  const int L = X.letters();
  for (auto& alpha : probes) {
    FreenessWitness w;
    w.probe = alpha;
    w.window = max_radius;
    for (auto& h : G.ball(max_radius)) {
      Element hg = G.mul(h, g);
      for (Letter a = 0; a < L && !w.found; ++a)
        for (Letter b = 0; b < L && !w.found; ++b) {
          if (a == b) continue;
          Pattern q;
          q.set(h, a);
          q.set(hg, b);
          if (!alpha.compatible(q)) continue;
          Pattern p = alpha.merged(q);
          if (!X.admissible(p, sem)) continue;
          FiniteSubset dom = p.domain(G);
          if (G.is_integers()) {
            long lo = p.cells().begin()->first.c[0], hi = p.cells().rbegin()->first.c[0];
            dom = integer_range(G, lo, hi);
          }
          auto z = X.least_extension(p, dom, sem);
          if (!z) continue;
          w.found = true;
          w.h = h;
          w.z = *z;
        }
      if (w.found) break;
    }
    if (!w.found) res.passed = false;
    res.witnesses.push_back(std::move(w));
  }
  return res;
}

// ---- explicit points -------------------------------------------------------

// z(f c) = alpha(f) for c in a greedy maximal F-separated set C, a0 elsewhere.
// On Z^d, C is built on the torus with period 2 * extent per axis and
// repeated; on other groups z is explicit on ball(radius).
struct MinimalPoint {
  Configuration z;
  FiniteSubset C;            // one period (lattice) or the explicit centres
  std::vector<int> periods;  // empty off lattices
};

inline MinimalPoint minimal_point_in_cylinder(const Group& G, const Pattern& alpha, Letter a0,
                                              int radius = 8) {
  MinimalPoint mp;
  if (alpha.empty()) {
    mp.z = Configuration::constant(G, a0);
    return mp;
  }
  FiniteSubset F = alpha.domain(G);
  if (G.kind() == GroupKind::lattice) {
    const int d = G.rank();
    std::vector<int> periods(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      int lo = F[0].c[static_cast<std::size_t>(i)], hi = lo;
      for (auto& f : F) {
        lo = std::min(lo, f.c[static_cast<std::size_t>(i)]);
        hi = std::max(hi, f.c[static_cast<std::size_t>(i)]);
      }
      periods[static_cast<std::size_t>(i)] = 2 * (hi - lo + 1);
    }
    auto wrap = [periods](Element g) {
      for (std::size_t i = 0; i < periods.size(); ++i)
        g.c[i] = ((g.c[i] % periods[i]) + periods[i]) % periods[i];
      return g;
    };
    // Torus cells in canonical order of their small representatives.
    std::vector<Element> torus;
    std::function<void(std::size_t, Element&)> fill = [&](std::size_t i, Element& e) {
      if (i == periods.size()) {
        torus.push_back(e);
        return;
      }
      for (int v = -(periods[i] / 2); v < periods[i] - periods[i] / 2; ++v) {
        e.c[i] = v;
        fill(i + 1, e);
      }
    };
    Element e(std::vector<int>(static_cast<std::size_t>(d), 0));
    fill(0, e);
    std::sort(torus.begin(), torus.end(), [&](auto& a, auto& b) { return G.less(a, b); });
    std::set<Element> occupied, centres;
    for (auto& c : torus) {
      bool ok = true;
      for (auto& f : F)
        if (occupied.count(wrap(G.mul(f, c)))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      centres.insert(wrap(c));
      for (auto& f : F) occupied.insert(wrap(G.mul(f, c)));
    }
    mp.C = FiniteSubset(G, {centres.begin(), centres.end()});
    mp.periods = periods;
    mp.z = Configuration(
        G,
        [G, alpha, F, centres, wrap, a0](const Element& g) {
          for (auto& f : F)
            if (centres.count(wrap(G.mul(G.inv(f), g)))) return alpha.value(f);
          return a0;
        },
        "minimal-point");
    return mp;
  }
  FiniteSubset region = G.ball(radius);
  mp.C = maximal_separated(G, F, region);
  Pattern p;
  for (auto& c : mp.C)
    for (auto& f : F) p.set(G.mul(f, c), alpha.value(f));
  mp.z = Configuration::explicit_with_default(G, std::move(p), a0);
  return mp;
}

// Stage construction of a point of 2^G with dense orbit that is moved by the
// first K non-identity elements. Stage i uses F_i = ball(i - 1), places every
// pattern of 2^{F_i} on a fresh translate, and picks h with z(h) = 0 and
// z(h g_i) = 1, all blocks disjoint from what was used before.
struct DenseStage {
  FiniteSubset F;
  std::vector<Pattern> patterns;
  std::vector<Element> translates;  // patterns[j] sits on F * translates[j]
  Element g;                        // g_i, the i-th non-identity element
  Element h;
};

struct FreeDensePoint {
  Configuration z;
  Pattern support;
  std::vector<DenseStage> stages;
};

// Elements of G in canonical order, generated ball by ball.
class ElementStream {
 public:
  explicit ElementStream(Group G) : G_(std::move(G)) {}
  const Element& operator[](std::size_t i) {
    while (i >= items_.size()) {
      auto b = G_.ball(radius_++);
      for (auto& g : b)
        if (!seen_.count(g)) {
          seen_.insert(g);
          items_.push_back(g);
        }
      if (G_.is_finite() && radius_ > G_.order() + 1 && i >= items_.size())
        throw PreconditionError("finite group exhausted");
    }
    return items_[i];
  }

 private:
  Group G_;
  int radius_ = 0;
  std::vector<Element> items_;
  std::set<Element> seen_;
};

inline FreeDensePoint free_dense_point(const Group& G, int K) {
  if (G.is_finite()) throw PreconditionError("free dense points need an infinite group");
  FreeDensePoint out;
  std::set<Element> used;
  ElementStream stream(G);
  std::vector<Element> nonidentity;
  for (std::size_t i = 0; nonidentity.size() < static_cast<std::size_t>(K); ++i)
    if (!(stream[i] == G.identity())) nonidentity.push_back(stream[i]);
  std::size_t cursor = 0;  // translates are searched from here on
  for (int i = 1; i <= K; ++i) {
    DenseStage st;
    st.F = G.ball(i - 1);
    const std::size_t m = st.F.size();
    if (m >= 20 || (std::size_t{1} << m) * m > max_ball_size())
      throw BallOverflow("free dense point stage too large");
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
      std::vector<Letter> v(m);
      for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<Letter>((bits >> (m - 1 - j)) & 1);
      st.patterns.push_back(make_pattern(st.F, v));
    }
    auto fresh = [&](const std::vector<Element>& cells) {
      std::set<Element> local;
      for (auto& c : cells)
        if (used.count(c) || !local.insert(c).second) return false;
      return true;
    };
    for (auto& s : st.patterns) {
      for (;; ++cursor) {
        const Element& g = stream[cursor];
        std::vector<Element> cells;
        for (auto& f : st.F) cells.push_back(G.mul(f, g));
        if (!fresh(cells)) continue;
        for (auto& c : cells) used.insert(c);
        st.translates.push_back(g);
        Pattern placed = s.placed_at(G, g);
        out.support = out.support.merged(placed);
        ++cursor;
        break;
      }
    }
    st.g = nonidentity[static_cast<std::size_t>(i - 1)];
    for (std::size_t j = cursor;; ++j) {
      const Element& h = stream[j];
      Element hg = G.mul(h, st.g);
      if (used.count(h) || used.count(hg) || h == hg) continue;
      used.insert(h);
      used.insert(hg);
      st.h = h;
      out.support.set(h, 0);
      out.support.set(hg, 1);
      break;
    }
    out.stages.push_back(std::move(st));
  }
  out.z = Configuration::explicit_with_default(G, out.support, 0);
  return out;
}

struct DenseVerification {
  bool ok = true;
  std::size_t patterns_checked = 0;
  std::optional<Pattern> missing;
  std::optional<Element> unmoved;
};

// Independent scan: every pattern over each F_i occurs somewhere inside the
// support ball, and each g_i moves some position.
inline DenseVerification verify_free_dense_point(const Group& G, const Configuration& z, int K,
                                                 int scan_radius) {
  DenseVerification res;
  FiniteSubset region = G.ball(scan_radius);
  ElementStream stream(G);
  std::vector<Element> nonidentity;
  for (std::size_t i = 0; nonidentity.size() < static_cast<std::size_t>(K); ++i)
    if (!(stream[i] == G.identity())) nonidentity.push_back(stream[i]);
  for (int i = 1; i <= K; ++i) {
    FiniteSubset F = G.ball(i - 1);
    std::set<std::vector<Letter>> seen;
    for (auto& g : placements_inside(G, F, region)) {
      std::vector<Letter> v;
      for (auto& f : F) v.push_back(z(G.mul(f, g)));
      seen.insert(v);
    }
    const std::size_t m = F.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
      std::vector<Letter> v(m);
      for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<Letter>((bits >> (m - 1 - j)) & 1);
      ++res.patterns_checked;
      if (!seen.count(v)) {
        res.ok = false;
        res.missing = make_pattern(F, v);
        return res;
      }
    }
    const Element& g = nonidentity[static_cast<std::size_t>(i - 1)];
    bool moved = false;
    for (auto& h : region)
      if (z(h) != z(G.mul(h, g))) {
        moved = true;
        break;
      }
    if (!moved) {
      res.ok = false;
      res.unmoved = g;
      return res;
    }
  }
  return res;
}

}  // namespace symdyn
