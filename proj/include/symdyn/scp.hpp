#pragma once

// Separated covering: finite D-separated S with S^-1 U = X at window scale,
// its lift along factor maps, the joint realisation of a Bernoulli pattern
// with a cylinder, and window-scale disjointness from irreducible shifts.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "block_map.hpp"
#include "irreducibility.hpp"

namespace symdyn {

// {g in region : (g.z)|_{dom U} = U}.
inline FiniteSubset visit_times(const Configuration& z, const Pattern& U, const FiniteSubset& region) {
  const Group& G = z.group();
  std::vector<Element> out;
  for (auto& g : region) {
    bool match = true;
    for (auto& [f, a] : U.cells())
      if (z(G.mul(f, g)) != a) {
        match = false;
        break;
      }
    if (match) out.push_back(g);
  }
  return FiniteSubset(G, out);
}

struct ScpWitness {
  FiniteSubset D;
  Pattern U;
  FiniteSubset S;
  FiniteSubset window;  // coverage was checked over admissible patterns here
  int scale = 0;
};

struct ScpCheck {
  bool ok = true;
  bool separated = true;
  std::optional<std::pair<Element, Element>> offending;
  std::optional<Pattern> uncovered;
  std::size_t windows = 0;
};

// Window for scale R: ball(R) together with every translate dom(U) s.
inline FiniteSubset scp_window(const Group& G, const Pattern& U, const FiniteSubset& S, int R) {
  return set_union(G, G.ball(R), product(G, U.domain(G), S));
}

inline bool moves_into(const Group& G, const Pattern& p, const Pattern& U, const Element& s) {
  for (auto& [f, a] : U.cells()) {
    Element fs = G.mul(f, s);
    if (!p.contains(fs) || p.value(fs) != a) return false;
  }
  return true;
}

// Re-verification from raw inputs: separation, then every admissible pattern
// on the window is moved into U by some s in S.
inline ScpCheck verify_scp_witness(const Subshift& X, const ScpWitness& w, const Semantics& sem,
                                   std::optional<int> scale = std::nullopt) {
  const Group& G = X.group();
  ScpCheck res;
  res.offending = separation_violation(G, w.D, w.S);
  res.separated = !res.offending;
  FiniteSubset window = scale ? scp_window(G, w.U, w.S, *scale) : w.window;
  if (!product(G, w.U.domain(G), w.S).subset_of(window)) {
    res.ok = false;
    return res;
  }
  for (auto& p : X.pattern_set(window, sem)) {
    ++res.windows;
    bool hit = false;
    for (auto& s : w.S)
      if (moves_into(G, p, w.U, s)) {
        hit = true;
        break;
      }
    if (!hit) {
      res.uncovered = p;
      break;
    }
  }
  res.ok = res.separated && !res.uncovered;
  return res;
}

struct ScpSearch {
  bool found = false;
  ScpWitness witness;
  std::optional<Pattern> uncovered;  // a window pattern no candidate moves into U
};

// Least |S|, then the lexicographically least S in canonical order, among
// D-separated subsets of ball(scale) covering every admissible window pattern.
inline ScpSearch scp_search(const Subshift& X, const FiniteSubset& D, const Pattern& U, int scale,
                            const Semantics& sem, int max_size = 8) {
  const Group& G = X.group();
  ScpSearch out;
  FiniteSubset ball = G.ball(scale);
  std::vector<Element> cand(ball.begin(), ball.end());
  FiniteSubset window = scp_window(G, U, FiniteSubset(G, cand), scale);
  auto pats = X.pattern_set(window, sem);
  const std::size_t P = pats.size(), C = cand.size();
  std::vector<Bits> covers(C, Bits(P));
  for (std::size_t j = 0; j < C; ++j)
    for (std::size_t i = 0; i < P; ++i)
      if (moves_into(G, pats[i], U, cand[j])) covers[j].set(i);
  Bits any(P);
  for (auto& c : covers) any |= c;
  if (!any.all()) {
    for (std::size_t i = 0; i < P; ++i)
      if (!any.test(i)) {
        out.uncovered = pats[i];
        break;
      }
    return out;
  }
  // compatible[j][k]: D cand[j] and D cand[k] are disjoint
  FiniteSubset DD = product(G, inverse(G, D), D);
  auto apart = [&](std::size_t j, std::size_t k) {
    return !DD.contains(G.mul(cand[k], G.inv(cand[j])));
  };
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, const Bits&, int)> dfs = [&](std::size_t from, const Bits& got, int left) {
    if (got.all()) return true;
    if (left == 0) return false;
    // the first uncovered pattern needs a later compatible candidate
    std::size_t first = 0;
    while (got.test(first)) ++first;
    for (std::size_t j = from; j < C; ++j) {
      bool ok = true;
      for (auto k : chosen)
        if (!apart(k, j)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      bool useful = false;
      for (std::size_t k = j; k < C && !useful; ++k)
        if (covers[k].test(first)) useful = true;
      if (!useful) return false;
      chosen.push_back(j);
      Bits next = got;
      next |= covers[j];
      if (dfs(j + 1, next, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= max_size; ++k) {
    chosen.clear();
    if (!dfs(0, Bits(P), k)) continue;
    std::vector<Element> S;
    for (auto j : chosen) S.push_back(cand[j]);
    out.found = true;
    out.witness = {D, U, FiniteSubset(G, S), scp_window(G, U, FiniteSubset(G, S), scale), scale};
    return out;
  }
  return out;
}

// The minimality precondition, then the search.
inline ScpSearch scp_witness(const Subshift& X, const FiniteSubset& D, const Pattern& U, int scale,
                             const Semantics& sem, int max_size = 8) {
  const Group& G = X.group();
  if (!X.admissible(U, sem)) throw PreconditionError("scp_witness: U is not admissible");
  auto m = is_nF_minimal(X, 0, U.domain(G), scp_window(G, U, G.ball(scale), scale), sem);
  if (!m.minimal) throw PreconditionError("scp_witness: the subshift is not minimal at this scale");
  return scp_search(X, D, U, scale, sem, max_size);
}

class FiberCoverExhausted : public Error {
 public:
  using Error::Error;
};

struct LiftedScp {
  ScpWitness witness;  // for X, with U the refined cylinder V
  FiniteSubset F;      // the g_i
  ScpWitness base;     // DF-separated witness for Y
  std::size_t fiber = 0;
  ScpCheck check;
};

// pi: X -> Y by a block map with memory M. The fibre over the base point is
// approximated by the X-patterns on M W_y mapping to y0 on W_y = ball(scale).
inline LiftedScp lift_scp_witness(const SubshiftSpec& xspec, const BlockMap& pi, const SubshiftSpec& yspec,
                                  const FiniteSubset& D, const Pattern& V, int scale, const Semantics& sem) {
  Subshift X(xspec), Y(yspec);
  const Group& G = X.group();
  LiftedScp out;
  // shrink V: extend it over M dom(V) so its image U on dom(V) is defined
  FiniteSubset E = V.domain(G);
  auto Vx = X.least_extension(V, set_union(G, E, product(G, pi.memory, E)), sem);
  if (!Vx) throw PreconditionError("lift_scp_witness: V is not admissible");
  FiniteSubset Ex = Vx->domain(G);
  // base point x0 in V, its image y0 on W_y
  FiniteSubset Wy = G.ball(scale);
  FiniteSubset Wx = set_union(G, product(G, pi.memory, Wy), Ex);
  auto x0 = X.least_extension(*Vx, Wx, sem);
  if (!x0) throw PreconditionError("lift_scp_witness: V does not extend over the window");
  Pattern y0 = pi.apply(G, *x0).restricted(Wy);
  // fibre patterns and the least g with g.x in V
  std::set<Element> gs;
  for (auto& x : X.pattern_set(Wx, sem)) {
    if (pi.apply(G, x).restricted(Wy) != y0) continue;
    ++out.fiber;
    std::optional<Element> g;
    for (auto& c : G.ball(scale))
      if (moves_into(G, x, *Vx, c)) {
        g = c;
        break;
      }
    if (!g) throw FiberCoverExhausted("lift_scp_witness: a fibre pattern never visits V inside the window");
    gs.insert(*g);
  }
  out.F = FiniteSubset(G, std::vector<Element>(gs.begin(), gs.end()));
  if (auto bad = separation_violation(G, D, out.F))
    throw FiberCoverExhausted("lift_scp_witness: F is not D-separated (" + G.to_string(bad->first) + ", " +
                              G.to_string(bad->second) + ")");
  auto base = scp_witness(Y, product(G, D, out.F), y0, scale, sem);
  if (!base.found) throw FiberCoverExhausted("lift_scp_witness: no DF-separated witness for the base");
  out.base = base.witness;
  FiniteSubset FS = product(G, out.F, out.base.S);
  out.witness = {D, *Vx, FS, scp_window(G, *Vx, FS, scale), scale};
  out.check = verify_scp_witness(X, out.witness, sem);
  return out;
}

struct JointRealization {
  bool ok = false;
  Element g, h, s;
  ScpWitness witness;
  Pattern beta;  // on D S
};

class ScaleExhausted : public Error {
 public:
  using Error::Error;
};

// g = s h with (g.z0)|_D = alpha and g.x0 in U.
inline JointRealization joint_realize(const Subshift& X, const Configuration& x0, const Configuration& z0,
                                      int search_radius, const Pattern& alpha, const Pattern& U, int scale,
                                      const Semantics& sem) {
  const Group& G = X.group();
  JointRealization out;
  FiniteSubset D = alpha.domain(G);
  auto w = scp_witness(X, D, U, scale, sem);
  if (!w.found) throw ScaleExhausted("joint_realize: no separated covering set at this scale");
  out.witness = w.witness;
  if (auto bad = separation_violation(G, D, w.witness.S))
    throw PreconditionError("joint_realize: the translates D s overlap");
  for (auto& s : w.witness.S)
    for (auto& [d, a] : alpha.cells()) out.beta.set(G.mul(d, s), a);
  std::optional<Element> h;
  for (auto& c : G.ball(search_radius))
    if (visit_times(z0, out.beta, FiniteSubset(G, {c})).size() == 1) {
      h = c;
      break;
    }
  if (!h) throw ScaleExhausted("joint_realize: beta does not occur in z0 within the search radius");
  out.h = *h;
  for (auto& s : w.witness.S) {
    Element g = G.mul(s, *h);
    if (visit_times(x0, U, FiniteSubset(G, {g})).size() != 1) continue;
    out.s = s;
    out.g = g;
    out.ok = visit_times(z0, alpha, FiniteSubset(G, {g})).size() == 1;
    return out;
  }
  throw ScaleExhausted("joint_realize: no s in S moves h.x0 into U");
}

struct JointPattern {
  Pattern p, q;
  bool realized = false;
  FiniteSubset S;
  std::size_t x_windows = 0;
};

struct DisjointnessReport {
  bool witness_ok = false;
  FiniteSubset D;  // irreducibility witness of Y
  std::size_t total = 0, realized = 0;
  std::vector<JointPattern> joints;
  std::vector<std::string> failures;
  bool ok() const { return witness_ok && total > 0 && realized == total; }
};

// For each p in S_F(X), q in S_F(Y): S is DF-separated with S^-1 N_p = X, y
// carries q on every F s, and every admissible X-window x has some s with
// x matching p and y matching q on F s.
inline DisjointnessReport disjointness_window_check(const Subshift& X, const Subshift& Y, const FiniteSubset& F,
                                                    int scale, const Semantics& sem, int witness_radius = 3,
                                                    int witness_scale = 8) {
  const Group& G = X.group();
  DisjointnessReport rep;
  auto wit = irreducibility_witness_search(Y, 0, witness_radius, witness_scale, sem);
  if (!wit.found) {
    rep.failures.push_back("Y has no irreducibility witness up to radius " + std::to_string(witness_radius));
    return rep;
  }
  rep.witness_ok = true;
  rep.D = wit.D;
  FiniteSubset DF = product(G, wit.D, F);
  for (auto& p : X.pattern_set(F, sem)) {
    auto w = scp_witness(X, DF, p, scale, sem);
    for (auto& q : Y.pattern_set(F, sem)) {
      JointPattern jp{p, q, false, {}, 0};
      ++rep.total;
      if (!w.found) {
        rep.failures.push_back("no DF-separated covering set for an X-pattern");
        rep.joints.push_back(jp);
        continue;
      }
      jp.S = w.witness.S;
      Pattern stamps;
      for (auto& s : jp.S)
        for (auto& [f, a] : q.cells()) stamps.set(G.mul(f, s), a);
      FiniteSubset hull = w.witness.window;
      auto y = Y.least_extension(stamps, hull, sem);
      if (!y) {
        rep.failures.push_back("stamps of a Y-pattern do not glue");
        rep.joints.push_back(jp);
        continue;
      }
      bool all = true;
      for (auto& x : X.pattern_set(hull, sem)) {
        ++jp.x_windows;
        bool hit = false;
        for (auto& s : jp.S)
          if (moves_into(G, x, p, s) && moves_into(G, *y, q, s)) {
            hit = true;
            break;
          }
        if (!hit) all = false;
      }
      jp.realized = all;
      if (all) ++rep.realized;
      else rep.failures.push_back("an X-window misses a joint pattern");
      rep.joints.push_back(jp);
    }
  }
  return rep;
}

}  // namespace symdyn
