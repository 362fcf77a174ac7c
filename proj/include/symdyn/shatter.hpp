#pragma once

// Shattering a small set B: a maximal D^3-separated x, each of its points
// moved by w(g) in D to a spot whose V^5-block avoids B, then phi(z', y).
// Off the moved blocks phi copies z', so z|_B = z'|_B = chi_C.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "phi.hpp"
#include "smallness.hpp"

namespace symdyn {

class SmallnessInsufficient : public Error {
 public:
  using Error::Error;
};

struct ShatterResult {
  PhiSystem sys;
  SmallnessReport smallness;
  long lo = 0, hi = 0;  // region
  int d_radius = -1;    // D = ball(d_radius)
  FiniteSubset B;       // B inside the region
  FiniteSubset C;
  FiniteSubset x_ones, y_ones;
  Pattern z;  // phi(z', y) on the region
  bool verified = false;
  std::optional<Element> mismatch;
};

// Realises chi_C by a point of Z' (the full shift unless given).
using ShatterOracle = std::function<Configuration(const FiniteSubset& C)>;

inline ShatterOracle full_shift_oracle(const Group& G) {
  return [G](const FiniteSubset& C) {
    Pattern p;
    for (auto& c : C) p.set(c, 1);
    return Configuration::explicit_with_default(G, p, 0);
  };
}

// Z only. F defaults to {0}; radius_cap bounds the search for D.
inline ShatterResult shatter_small(const Membership& B, const FiniteSubset& C, long lo, long hi,
                                   const SubshiftSpec& zspec, const FiniteSubset& F,
                                   ShatterOracle oracle = nullptr, int radius_cap = 200) {
  Group G = Group::parse(zspec.group);
  if (!G.is_integers()) throw PreconditionError("shatter_small: implemented on Z");
  ShatterResult res;
  res.lo = lo;
  res.hi = hi;
  res.sys = build_phi(zspec, 1, F, Semantics::exact());
  const auto& sys = res.sys;
  const long rv = radius(G, sys.V), r5 = radius(G, sys.V5);
  FiniteSubset region = integer_range(G, lo, hi);
  res.smallness = is_small(G, B, static_cast<int>(r5), region);
  if (res.smallness.verdict != SmallVerdict::small_up_to_scale)
    throw SmallnessInsufficient("shatter_small: B is not small up to radius " + std::to_string(r5) +
                                " on the region (" + to_string(res.smallness.verdict) + ")");
  std::vector<Element> b, c;
  for (auto& g : region)
    if (B(g)) b.push_back(g);
  res.B = FiniteSubset(G, b);
  for (auto& g : C) {
    if (!res.B.contains(g)) throw PreconditionError("shatter_small: C must lie in B inside the region");
    c.push_back(g);
  }
  res.C = FiniteSubset(G, c);
  if (!oracle) {
    if (zspec.is_substitution() || !zspec.forbidden.empty())
      throw PreconditionError("shatter_small: a shattering oracle is required unless Z' is the full shift");
    oracle = full_shift_oracle(G);
  }

  // least h in ball order with V^5 h inside D g and avoiding B
  auto clear = [&](long h) {
    for (long v = h - r5; v <= h + r5; ++v)
      if (B(G.z(v))) return false;
    return true;
  };
  auto move = [&](long g, long r) -> std::optional<long> {
    for (auto& k : G.ball(static_cast<int>(r - r5)))
      if (clear(g + k.c[0])) return g + k.c[0];
    return std::nullopt;
  };
  // z on the region reads y on [lo - 3rv, hi + 3rv]; those ones come from g
  // within r of that range
  int r = static_cast<int>(r5);
  for (;; ++r) {
    if (r > radius_cap) throw SmallnessInsufficient("shatter_small: no D = ball(r) within the radius cap");
    bool all = true;
    for (long g = lo - 3 * rv - r; g <= hi + 3 * rv + r && all; ++g)
      if (!move(g, r)) all = false;
    if (all) break;
  }
  res.d_radius = r;
  const long glo = lo - 3 * rv - r, ghi = hi + 3 * rv + r;
  FiniteSubset D3 = G.ball(3 * r);
  res.x_ones = maximal_separated(G, D3, integer_range(G, glo, ghi));
  std::vector<Element> ys;
  for (auto& g : res.x_ones) ys.push_back(G.z(*move(g.c[0], r)));
  res.y_ones = FiniteSubset(G, ys);
  Pattern yp;
  for (auto& h : res.y_ones) yp.set(h, 1);
  Configuration y = Configuration::explicit_with_default(G, yp, 0);
  Configuration zp = oracle(res.C);
  res.z = restrict(phi_image(sys, zp, y), region);
  res.verified = true;
  for (auto& g : res.B)
    if (res.z.value(g) != (res.C.contains(g) ? 1 : 0)) {
      res.verified = false;
      res.mismatch = g;
      break;
    }
  return res;
}

// A random subset of B, each element kept with probability 1/2.
inline FiniteSubset random_half(const FiniteSubset& B, const Group& G, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> out;
  for (auto& b : B)
    if (rng() & 1) out.push_back(b);
  return FiniteSubset(G, out);
}

}  // namespace symdyn
