#pragma once

// Gamma-equivariant densification for a finite group Gamma acting on the
// alphabet by left multiplication. z is in Z when some y in Y and maximal
// V^5-separated B give
//   (1) (b.z)|_V = gamma.u|_V for each b in B and some gamma,
//   (2) z = y off V^3 B,
//   (3) (b.z)|_{V^5} is an admissible V^5-pattern of Y.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phi.hpp"

namespace symdyn {

struct GammaSystem {
  Group gamma;
  std::vector<Element> elems;             // letter i is elems[i]
  std::vector<std::vector<Letter>> act;   // act[c][a] = elems[c] * elems[a]
  std::shared_ptr<const Subshift> Y;
  double eps = 1.0;
  FiniteSubset F, V, V3, V5;
  Pattern u;
  int witness_radius = -1;
  MaxSeparatedShift B;  // maximal V^5-separated sets
  std::vector<Pattern> S;  // S_F(Y)

  Pattern act_on(Letter c, const Pattern& p) const {
    Pattern q;
    for (auto& [g, a] : p.cells()) q.set(g, act[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)]);
    return q;
  }
};

inline std::vector<std::vector<Letter>> action_table(const Group& Gamma, const std::vector<Element>& elems) {
  std::map<Element, Letter> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Letter>(i);
  std::vector<std::vector<Letter>> act(elems.size(), std::vector<Letter>(elems.size()));
  for (std::size_t c = 0; c < elems.size(); ++c)
    for (std::size_t a = 0; a < elems.size(); ++a) act[c][a] = index.at(Gamma.mul(elems[c], elems[a]));
  return act;
}

// Y is Gamma-invariant iff no translate gamma.p of a forbidden p is admissible.
inline std::optional<Pattern> invariance_violation(const Subshift& Y, const std::vector<std::vector<Letter>>& act) {
  for (auto& p : Y.spec().forbidden)
    for (std::size_t c = 0; c < act.size(); ++c) {
      Pattern q;
      for (auto& [g, a] : p.cells()) q.set(g, act[c][static_cast<std::size_t>(a)]);
      if (Y.admissible(q, Semantics::exact())) return q;
    }
  return std::nullopt;
}

inline GammaSystem gamma_densify(const Group& Gamma, const SubshiftSpec& yspec, const FiniteSubset& F, double eps,
                                 int radius_cap = 4, int witness_scale = 10) {
  if (!Gamma.is_finite()) throw PreconditionError("gamma_densify: Gamma must be finite");
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("gamma_densify: eps must lie in (0, 1]");
  GammaSystem sys;
  sys.gamma = Gamma;
  sys.eps = eps;
  auto all = Gamma.ball(Gamma.order());
  sys.elems.assign(all.begin(), all.end());
  if (yspec.letters() != static_cast<int>(sys.elems.size()) || yspec.stack != 1)
    throw PreconditionError("gamma_densify: Y must have one level over the alphabet Gamma");
  if (yspec.is_substitution()) throw PreconditionError("gamma_densify: Y needs a forbidden-pattern presentation");
  sys.act = action_table(Gamma, sys.elems);
  auto Y = std::make_shared<Subshift>(yspec);
  sys.Y = Y;
  if (auto bad = invariance_violation(*Y, sys.act))
    throw PreconditionError("gamma_densify: Y is not Gamma-invariant");
  const Group& G = Y->group();
  sys.F = F;
  sys.S = Y->pattern_set(F, Semantics::exact());
  auto w = irreducibility_witness_search(*Y, 1, radius_cap, witness_scale, Semantics::exact());
  if (!w.found) throw SearchExhausted("gamma_densify: no irreducibility witness within the radius cap");
  sys.witness_radius = w.radius;
  std::set<Pattern> need(sys.S.begin(), sys.S.end());
  for (int r = std::max(w.radius, radius(G, F)); r <= radius_cap; ++r) {
    FiniteSubset V = G.ball(r);
    if (!F.subset_of(V)) continue;
    for (auto& u : Y->pattern_set(V, Semantics::exact())) {
      if (patterns_in(G, u, F, Y->letters()) != need) continue;
      sys.V = V;
      sys.u = u;
      sys.V3 = power(G, V, 3);
      sys.V5 = power(G, V, 5);
      sys.B = max_separated_subshift(G, sys.V5);
      return sys;
    }
  }
  throw SearchExhausted("gamma_densify: no block u shows every F-pattern within the radius cap");
}

// One point of Z near a window: y, B and the stamp letters, with z computed
// on [lo, hi]. Annuli V^3 b \ V b are filled by Conf against gamma.u.
struct GammaRealization {
  Pattern y;
  FiniteSubset B;
  std::map<Element, Letter> stamp;
  Pattern z;
  long lo = 0, hi = -1;
};

// Fills keyed by (annulus pattern, stamp letter).
using GammaFillCache = std::map<std::pair<Pattern, Letter>, Pattern>;

inline Pattern gamma_fill(const GammaSystem& sys, const Pattern& y, const Element& b, Letter c,
                          GammaFillCache* cache = nullptr) {
  const Group& G = sys.Y->group();
  Pattern annulus;
  for (auto& f : sys.V5)
    if (!sys.V3.contains(f)) annulus.set(f, y.value(G.mul(f, b)));
  if (cache) {
    auto it = cache->find({annulus, c});
    if (it != cache->end()) return it->second;
  }
  Pattern p = conf(*sys.Y, 1, sys.V5, annulus, sys.act_on(c, sys.u), Semantics::exact());
  if (cache) cache->emplace(std::make_pair(std::move(annulus), c), p);
  return p;
}

inline Pattern gamma_realize(const GammaSystem& sys, const Pattern& y, const FiniteSubset& B,
                             const std::map<Element, Letter>& stamp, long lo, long hi,
                             GammaFillCache* cache = nullptr) {
  const Group& G = sys.Y->group();
  Pattern z;
  std::map<Element, Pattern> fills;
  for (long v = lo; v <= hi; ++v) {
    Element g = G.z(v);
    std::optional<Element> hit;
    for (auto& k : sys.V3) {
      Element h = G.mul(G.inv(k), g);
      if (!B.contains(h)) continue;
      if (hit) throw CaseOverlap("gamma: B is not V^5-separated");
      hit = h;
    }
    if (!hit) {
      z.set(g, y.value(g));
      continue;
    }
    auto it = fills.find(*hit);
    if (it == fills.end()) it = fills.emplace(*hit, gamma_fill(sys, y, *hit, stamp.at(*hit), cache)).first;
    z.set(g, it->second.value(G.mul(g, G.inv(*hit))));
  }
  return z;
}

// Conditions (1)-(3) at every b whose blocks fit inside dom(z), and (2) at
// every cell of dom(z) whose V^3-neighbourhood of B is known.
inline std::optional<std::string> gamma_conditions(const GammaSystem& sys, const Pattern& z, const Pattern& y,
                                                   const FiniteSubset& B) {
  const Group& G = sys.Y->group();
  auto inside = [&](const FiniteSubset& K, const Element& b) {
    for (auto& k : K)
      if (!z.contains(G.mul(k, b))) return false;
    return true;
  };
  std::set<Element> near;
  for (auto& b : B) {
    for (auto& k : sys.V3) near.insert(G.mul(k, b));
    if (inside(sys.V, b)) {
      Pattern block = z.read_at(G, b).restricted(sys.V);
      bool some = false;
      for (std::size_t c = 0; c < sys.elems.size() && !some; ++c)
        some = block == sys.act_on(static_cast<Letter>(c), sys.u);
      if (!some) return "condition (1) fails at " + G.to_string(b);
    }
    if (inside(sys.V5, b) && !sys.Y->admissible(z.read_at(G, b).restricted(sys.V5), Semantics::exact()))
      return "condition (3) fails at " + G.to_string(b);
  }
  for (auto& [g, a] : z.cells())
    if (!near.count(g) && (!y.contains(g) || y.value(g) != a)) return "condition (2) fails at " + G.to_string(g);
  return std::nullopt;
}

struct GammaCertificate {
  bool action_ok = true;      // Gamma acts by a group action of bijections
  bool y_invariant = true;
  bool conditions_ok = true;  // every realization satisfies (1)-(3)
  bool invariance_ok = true;  // gamma.z satisfies (1)-(3) with gamma.y
  bool subset_ok = true;      // F-patterns of z lie in S_F(Y)
  bool stamped_equal = true;  // the F-patterns of u are exactly S_F(Y)
  bool minimal_ok = true;     // every window of syndetic length shows S_F(Y)
  bool irreducible_ok = true; // glued pairs at V^20 satisfy (1)-(3)
  int scale = 0;
  int syndetic_length = 0;
  int glue_radius = 0;
  std::size_t realizations = 0;
  std::size_t glue_pairs = 0;
  std::vector<std::string> failures;
  bool ok() const {
    return action_ok && y_invariant && conditions_ok && invariance_ok && subset_ok && stamped_equal && minimal_ok &&
           irreducible_ok;
  }
};

namespace detail {

// Greedy maximal V^5-separated extension of `seed` over [lo, hi].
inline FiniteSubset extend_separated(const Group& G, const FiniteSubset& V5, const FiniteSubset& seed, long lo,
                                     long hi) {
  FiniteSubset D = product(G, inverse(G, V5), V5);
  std::vector<Element> out(seed.begin(), seed.end());
  std::set<Element> blocked;
  for (auto& s : seed)
    for (auto& d : D) blocked.insert(G.mul(d, s));
  for (auto& g : integer_range(G, lo, hi)) {
    if (blocked.count(g)) continue;
    out.push_back(g);
    for (auto& d : D) blocked.insert(G.mul(d, g));
  }
  return FiniteSubset(G, out);
}

}  // namespace detail

// Z only. Every B-word around [0, scale) with every stamp assignment (up to
// 64 per word) and `samples` random y; then glued pairs at V^20.
inline GammaCertificate verify_gamma(const GammaSystem& sys, int scale, int samples = 2, std::uint64_t seed = 1) {
  const Subshift& Y = *sys.Y;
  const Group& G = Y.group();
  if (!G.is_integers()) throw PreconditionError("verify_gamma: implemented on Z");
  GammaCertificate cert;
  cert.scale = scale;
  const std::size_t q = sys.elems.size();
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (cert.failures.size() < 16) cert.failures.push_back(why);
  };

  // group action: e acts trivially, (cd).a = c.(d.a), each row a bijection
  for (std::size_t c = 0; c < q; ++c) {
    std::set<Letter> row(sys.act[c].begin(), sys.act[c].end());
    if (row.size() != q) fail(cert.action_ok, "action row is not a bijection");
    for (std::size_t d = 0; d < q; ++d) {
      Element cd = sys.gamma.mul(sys.elems[c], sys.elems[d]);
      std::size_t cdi = static_cast<std::size_t>(std::find(sys.elems.begin(), sys.elems.end(), cd) - sys.elems.begin());
      for (std::size_t a = 0; a < q; ++a)
        if (sys.act[cdi][a] != sys.act[c][static_cast<std::size_t>(sys.act[d][a])])
          fail(cert.action_ok, "action is not compatible with multiplication");
    }
  }
  if (invariance_violation(Y, sys.act)) fail(cert.y_invariant, "Y is not Gamma-invariant");

  std::set<Pattern> S(sys.S.begin(), sys.S.end());
  if (patterns_in(G, sys.u, sys.F, Y.letters()) != S) fail(cert.stamped_equal, "u misses an F-pattern");

  const long r = radius(G, sys.V);
  const long gap = 2L * radius(G, product(G, inverse(G, sys.B.D), sys.B.D)) + 1;
  cert.syndetic_length = static_cast<int>(gap + 2 * r);
  if (cert.syndetic_length > scale) fail(cert.minimal_ok, "scale below the syndetic length");
  long flo = 0, fhi = 0;
  for (auto& f : sys.F) flo = std::min<long>(flo, f.c[0]), fhi = std::max<long>(fhi, f.c[0]);
  const auto placements = placements_inside(G, sys.F, integer_range(G, 0, scale - 1));

  Subshift Bsh(sys.B.spec);
  GammaFillCache fills;
  std::mt19937_64 rng(seed);
  const long blo = -3 * r, bhi = scale - 1 + 3 * r;
  std::vector<Pattern> ys;
  for (int i = 0; i < samples; ++i) ys.push_back(random_admissible(Y, blo - 5 * r, bhi + 5 * r, rng));

  auto scan = [&](const Pattern& z) {
    std::vector<std::pair<long, std::size_t>> hits;
    for (auto& k : placements) {
      Pattern t;
      for (auto& f : sys.F) t.set(f, z.value(G.mul(f, k)));
      auto it = S.find(t);
      if (it == S.end()) {
        fail(cert.subset_ok, "new F-pattern at " + G.to_string(k));
        continue;
      }
      hits.emplace_back(k.c[0], static_cast<std::size_t>(std::distance(S.begin(), it)));
    }
    const long W = cert.syndetic_length;
    for (long a = 0; a + W <= scale; ++a) {
      std::vector<bool> seen(S.size(), false);
      std::size_t count = 0;
      for (auto& [k, i] : hits)
        if (k + flo >= a && k + fhi <= a + W - 1 && !seen[i]) seen[i] = true, ++count;
      if (count != S.size()) fail(cert.minimal_ok, "window at " + std::to_string(a) + " misses a pattern");
    }
  };

  for (auto& bw : Bsh.graph().words(static_cast<int>(bhi - blo + 1), 2)) {
    std::vector<Element> bs;
    for (std::size_t i = 0; i < bw.size(); ++i)
      if (bw[i]) bs.push_back(G.z(blo + static_cast<long>(i)));
    FiniteSubset B(G, bs);
    std::size_t assignments = 1;
    for (std::size_t i = 0; i < bs.size() && assignments <= 64; ++i) assignments *= q;
    assignments = std::min<std::size_t>(assignments, 64);
    for (std::size_t m = 0; m < assignments; ++m) {
      std::map<Element, Letter> stamp;
      std::size_t code = m;
      for (auto& b : bs) stamp[b] = static_cast<Letter>(code % q), code /= q;
      for (auto& y : ys) {
        ++cert.realizations;
        Pattern z = gamma_realize(sys, y, B, stamp, 0, scale - 1, &fills);
        if (auto why = gamma_conditions(sys, z, y, B)) fail(cert.conditions_ok, *why);
        for (std::size_t c = 0; c < q; ++c) {
          Letter cl = static_cast<Letter>(c);
          if (auto why = gamma_conditions(sys, sys.act_on(cl, z), sys.act_on(cl, y), B))
            fail(cert.invariance_ok, "gamma-translate: " + *why);
        }
        scan(z);
      }
    }
  }

  // Precise irreducibility at V^20: D0 = [0, 4] and D1 beyond a gap of 40r.
  // Each z_i lives on a window covering V^16 D_i.
  cert.glue_radius = static_cast<int>(20 * r);
  const long L = 5, t = 40 * r + 1;
  const long d0lo = 0, d0hi = L - 1, d1lo = d0hi + t, d1hi = d1lo + L - 1;
  const long wlo = d0lo - 16 * r, whi = d1hi + 16 * r;
  auto make = [&](std::uint64_t s) {
    std::mt19937_64 g(s);
    GammaRealization R;
    R.lo = wlo;
    R.hi = whi;
    R.y = random_admissible(Y, wlo - 8 * r, whi + 8 * r, g);
    auto bw = random_admissible(Bsh, wlo - 3 * r, whi + 3 * r, g);
    std::vector<Element> bs;
    for (auto& [e, a] : bw.cells())
      if (a) bs.push_back(e);
    R.B = FiniteSubset(G, bs);
    for (auto& b : R.B) R.stamp[b] = static_cast<Letter>(g() % q);
    R.z = gamma_realize(sys, R.y, R.B, R.stamp, wlo, whi);
    return R;
  };
  FiniteSubset D0 = integer_range(G, d0lo, d0hi), D1 = integer_range(G, d1lo, d1hi);
  FiniteSubset V11 = power(G, sys.V, 11);
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto R0 = make(seed * 1000 + 2 * s), R1 = make(seed * 1000 + 2 * s + 1);
    ++cert.glue_pairs;
    // C_i = B_i near D_i; D_i' = D_i with the V^5-blocks of C_i
    std::vector<Element> cs;
    std::map<Element, Letter> stamp;
    std::set<Element> dprime0, dprime1;
    auto collect = [&](const GammaRealization& R, const FiniteSubset& D, std::set<Element>& dp) {
      FiniteSubset near = product(G, V11, D);
      for (auto& d : D) dp.insert(d);
      for (auto& b : R.B)
        if (near.contains(b)) {
          cs.push_back(b);
          stamp[b] = R.stamp.at(b);
          for (auto& v : sys.V5) dp.insert(G.mul(v, b));
        }
    };
    collect(R0, D0, dprime0);
    collect(R1, D1, dprime1);
    FiniteSubset C(G, cs);
    FiniteSubset B = detail::extend_separated(G, sys.V5, C, wlo - 3 * r, whi + 3 * r);
    // y: y_i on D_i', u stamped at the new points, least admissible fill
    Pattern fixed;
    for (auto& g : dprime0) fixed.set(g, R0.y.value(g));
    for (auto& g : dprime1) fixed.set(g, R1.y.value(g));
    for (auto& b : B) {
      if (C.contains(b)) continue;
      stamp[b] = 0;
      for (auto& v : sys.V) fixed.set(G.mul(v, b), sys.u.value(v));
    }
    auto y = Y.least_extension(fixed, integer_range(G, wlo - 8 * r, whi + 8 * r), Semantics::exact());
    if (!y) {
      fail(cert.irreducible_ok, "no y glues the pair");
      continue;
    }
    Pattern z;
    for (long v = wlo; v <= whi; ++v) {
      Element g = G.z(v);
      if (dprime0.count(g)) z.set(g, R0.z.value(g));
      else if (dprime1.count(g)) z.set(g, R1.z.value(g));
      else z.set(g, y->value(g));
    }
    if (auto why = gamma_conditions(sys, z, *y, B)) fail(cert.irreducible_ok, "glued pair: " + *why);
    if (z.restricted(D0) != R0.z.restricted(D0) || z.restricted(D1) != R1.z.restricted(D1))
      fail(cert.irreducible_ok, "glued pair does not restrict to the inputs");
  }
  return cert;
}

}  // namespace symdyn
