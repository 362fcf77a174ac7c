#pragma once

// The densification map phi: Z' x Y -> A^{[n] x G}. Around each 1 of a
// maximal V^5-separated y the block u is stamped on V, the annulus
// V^3 \ V is filled by Conf, and everything else copies z'.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "configuration.hpp"
#include "irreducibility.hpp"

namespace symdyn {

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class CaseOverlap : public Error {
 public:
  using Error::Error;
};

struct PhiSystem {
  std::shared_ptr<const Subshift> base;
  int n = 1;
  long mod = 2;
  Semantics sem;
  FiniteSubset F, V, V3, V5;
  Pattern u;  // on V, letters below mod
  int witness_radius = -1;
  int witness_scale = 0;
  MaxSeparatedShift Y;  // maximal V^5-separated sets
  std::vector<Pattern> S;  // S_{(n,F)}(Z')
};

// Least V = ball(r) containing F and an irreducibility witness, whose
// canonically least admissible pattern u shows every (n,F)-pattern.
inline PhiSystem build_phi(const SubshiftSpec& spec, int n, const FiniteSubset& F, const Semantics& sem,
                           int radius_cap = 4, int witness_scale = 10) {
  PhiSystem sys;
  auto X = std::make_shared<Subshift>(spec);
  const Group& G = X->group();
  sys.base = X;
  sys.n = n;
  sys.mod = X->level_mod(n);
  sys.sem = sem;
  sys.F = F;
  sys.S = X->pattern_set(F, sem, n);
  if (sys.S.size() < 2) throw PreconditionError("build_phi: S_(n,F) has fewer than two patterns");
  auto w = irreducibility_witness_search(*X, n, radius_cap, witness_scale, sem);
  if (!w.found) throw SearchExhausted("build_phi: no irreducibility witness within the radius cap");
  sys.witness_radius = w.radius;
  sys.witness_scale = witness_scale;
  std::set<Pattern> need(sys.S.begin(), sys.S.end());
  for (int r = std::max(w.radius, radius(G, F)); r <= radius_cap; ++r) {
    FiniteSubset V = G.ball(r);
    if (!F.subset_of(V)) continue;
    for (auto& u : X->pattern_set(V, sem, n)) {
      if (patterns_in(G, u, F, sys.mod) != need) continue;
      sys.V = V;
      sys.u = u;
      sys.V3 = power(G, V, 3);
      sys.V5 = power(G, V, 5);
      sys.Y = max_separated_subshift(G, sys.V5);
      return sys;
    }
  }
  throw SearchExhausted("build_phi: no block u shows every (n,F)-pattern within the radius cap");
}

// Conf fills, keyed by the annulus pattern (they do not depend on h).
class ConfCache {
 public:
  Pattern get(const PhiSystem& sys, const Pattern& annulus) {
    {
      std::lock_guard<std::mutex> lock(m_);
      auto it = memo_.find(annulus);
      if (it != memo_.end()) return it->second;
    }
    Pattern p = conf(*sys.base, sys.n, sys.V5, annulus, sys.u, sys.sem);
    std::lock_guard<std::mutex> lock(m_);
    return memo_.emplace(annulus, std::move(p)).first->second;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(m_);
    return memo_.size();
  }

 private:
  mutable std::mutex m_;
  std::map<Pattern, Pattern> memo_;
};

// The stacked code of z at g over levels below n.
inline Letter phi_code(const PhiSystem& sys, const Configuration& zp, const Configuration& y,
                       const Element& g, ConfCache& cache) {
  const Group& G = sys.base->group();
  std::optional<Element> hit;
  for (auto& k : sys.V3) {
    Element h = G.mul(G.inv(k), g);
    if (y(h) != 1) continue;
    if (hit) throw CaseOverlap("phi: y is not V^5-separated near " + G.to_string(g));
    hit = h;
  }
  if (!hit) return static_cast<Letter>(zp(g) % sys.mod);
  Element k = G.mul(g, G.inv(*hit));
  if (sys.V.contains(k)) return sys.u.value(k);
  Pattern annulus;
  for (auto& f : sys.V5)
    if (!sys.V3.contains(f)) annulus.set(f, static_cast<Letter>(zp(G.mul(f, *hit)) % sys.mod));
  return cache.get(sys, annulus).value(k);
}

inline Letter phi_eval(const PhiSystem& sys, const Configuration& zp, const Configuration& y, int m,
                       const Element& g) {
  if (m >= sys.n) return 0;
  ConfCache cache;
  return level_of(phi_code(sys, zp, y, g, cache), m, sys.base->alphabet());
}

inline Configuration phi_image(const PhiSystem& sys, const Configuration& zp, const Configuration& y,
                               std::shared_ptr<ConfCache> cache = nullptr) {
  if (!cache) cache = std::make_shared<ConfCache>();
  return {sys.base->group(), [sys, zp, y, cache](const Element& g) { return phi_code(sys, zp, y, g, *cache); },
          "phi"};
}

// A random admissible word on [lo, hi] (Z only).
inline Pattern random_admissible(const Subshift& X, long lo, long hi, std::mt19937_64& rng) {
  const Group& Z = X.group();
  std::vector<Letter> w;
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  if (X.language()) {
    auto pre = X.language()->prefix(len + 64);
    std::size_t off = static_cast<std::size_t>(rng() % 64);
    w.assign(pre.begin() + static_cast<long>(off), pre.begin() + static_cast<long>(off + len));
  } else {
    const TransferGraph& T = X.graph();
    if (T.empty()) throw PreconditionError("random_admissible: empty subshift");
    std::size_t v = static_cast<std::size_t>(rng() % T.vertices());
    w = T.label(v);
    while (w.size() < len) {
      auto& next = T.successors(v);
      v = next[static_cast<std::size_t>(rng() % next.size())];
      w.push_back(T.label(v).back());
    }
    w.resize(len);
  }
  return word_pattern(Z, w, lo);
}

struct PhiVerification {
  bool preserved = true;  // no (n,F)-pattern outside S_(n,F)(Z')
  bool minimal = true;    // every window of syndetic length shows all of S
  bool ok = true;
  int scale = 0;
  int syndetic_length = 0;
  std::size_t annulus_patterns = 0;
  std::size_t y_windows = 0;
  std::size_t z_samples = 0;
  std::size_t windows_checked = 0;
  std::optional<Pattern> new_pattern;
  std::optional<long> bare_window;  // start of a window missing a pattern
};

// On Z with V = ball(r): every annulus pattern is glued and its F-patterns
// checked; then every Y-word around [0, scale) is combined with sampled z'
// words and the image is scanned.
inline PhiVerification verify_phi(const PhiSystem& sys, int scale, int samples = 4, std::uint64_t seed = 1) {
  const Subshift& X = *sys.base;
  const Group& G = X.group();
  if (!G.is_integers()) throw PreconditionError("verify_phi: implemented on Z");
  PhiVerification out;
  out.scale = scale;
  const long r = radius(G, sys.V);
  std::set<Pattern> S(sys.S.begin(), sys.S.end());
  auto read = [&](const Pattern& p, const Element& g) {
    Pattern t;
    for (auto& f : sys.F) t.set(f, p.value(G.mul(f, g)));
    return t;
  };
  auto cache = std::make_shared<ConfCache>();

  FiniteSubset annulus = set_minus(G, sys.V5, sys.V3);
  for (auto& beta : X.pattern_set(annulus, sys.sem, sys.n)) {
    ++out.annulus_patterns;
    Pattern p = cache->get(sys, beta);
    for (auto& k : placements_inside(G, sys.F, sys.V5)) {
      Pattern t = read(p, k);
      if (S.count(t)) continue;
      out.preserved = false;
      if (!out.new_pattern) out.new_pattern = t;
    }
  }

  // Y has no all-zero window of length 20r+1, so each window of length
  // 22r+1 holds a full stamped block.
  const long gap = static_cast<long>(radius(G, product(G, inverse(G, sys.Y.D), sys.Y.D))) * 2 + 1;
  out.syndetic_length = static_cast<int>(gap + 2 * r);
  if (out.syndetic_length > scale) out.minimal = false;

  Subshift Ysh(sys.Y.spec);
  const long ylo = -3 * r, yhi = scale - 1 + 3 * r;
  std::mt19937_64 rng(seed);
  std::vector<Pattern> zs;
  for (int i = 0; i < samples; ++i) zs.push_back(random_admissible(X, ylo - 5 * r, yhi + 5 * r, rng));
  out.z_samples = zs.size();
  const auto placements = placements_inside(G, sys.F, integer_range(G, 0, scale - 1));
  for (auto& yw : Ysh.graph().words(static_cast<int>(yhi - ylo + 1), 2)) {
    ++out.y_windows;
    Configuration y = Configuration::explicit_with_default(G, word_pattern(G, yw, ylo), 0);
    for (auto& zw : zs) {
      Configuration zp = Configuration::explicit_with_default(G, zw, 0);
      Configuration z = phi_image(sys, zp, y, cache);
      Pattern img = restrict(z, integer_range(G, 0, scale - 1));
      std::vector<std::pair<long, long>> hits;  // (placement, index into S)
      for (auto& k : placements) {
        Pattern t = read(img, k);
        auto it = S.find(t);
        if (it == S.end()) {
          out.preserved = false;
          if (!out.new_pattern) out.new_pattern = t;
          continue;
        }
        hits.emplace_back(k.c[0], std::distance(S.begin(), it));
      }
      if (out.syndetic_length > scale) continue;
      // placements k fit in [a, a+W-1] when k + lo(F) >= a and k + hi(F) <= a + W - 1
      long flo = 0, fhi = 0;
      for (auto& f : sys.F) flo = std::min<long>(flo, f.c[0]), fhi = std::max<long>(fhi, f.c[0]);
      const long W = out.syndetic_length;
      for (long a = 0; a + W <= scale; ++a) {
        ++out.windows_checked;
        std::vector<bool> seen(S.size(), false);
        std::size_t count = 0;
        for (auto& [k, i] : hits)
          if (k + flo >= a && k + fhi <= a + W - 1 && !seen[static_cast<std::size_t>(i)]) {
            seen[static_cast<std::size_t>(i)] = true;
            ++count;
          }
        if (count == S.size()) continue;
        out.minimal = false;
        if (!out.bare_window) out.bare_window = a;
      }
    }
  }
  out.ok = out.preserved && out.minimal;
  return out;
}

}  // namespace symdyn
