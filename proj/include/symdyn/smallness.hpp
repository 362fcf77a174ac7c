#pragma once

// Finite-scale smallness: for each F = ball(r), the avoidance set
// {g : F g and B disjoint} must be syndetic on the region.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace symdyn {

using Membership = std::function<bool(const Element&)>;

enum class SmallVerdict { small_up_to_scale, not_small, inconclusive };

inline std::string to_string(SmallVerdict v) {
  switch (v) {
    case SmallVerdict::small_up_to_scale: return "small-up-to-scale";
    case SmallVerdict::not_small: return "not-small";
    case SmallVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SmallnessLevel {
  int radius = 0;
  std::size_t avoidance = 0;
  bool syndetic = false;
  int gap = -1;  // covering radius of the avoidance set
  std::optional<Element> uncovered;
};

struct SmallnessReport {
  FiniteSubset subject;  // B restricted to the region
  std::vector<SmallnessLevel> levels;
  SmallVerdict verdict = SmallVerdict::inconclusive;
  int cap = 0;  // largest syndeticity radius searched
  std::optional<int> failing_radius;
};

inline SmallnessReport is_small(const Group& G, const Membership& B, int max_radius,
                                const FiniteSubset& region) {
  SmallnessReport rep;
  std::vector<Element> sub;
  for (auto& g : region)
    if (B(g)) sub.push_back(g);
  rep.subject = FiniteSubset(G, std::move(sub));
  rep.cap = static_cast<int>(region.size() / 8);
  if (rep.cap < max_radius + 1) {
    rep.verdict = SmallVerdict::inconclusive;
    return rep;
  }
  rep.verdict = SmallVerdict::small_up_to_scale;
  for (int r = 0; r <= max_radius; ++r) {
    FiniteSubset F = G.ball(r);
    std::vector<Element> avoid;
    for (auto& g : region) {
      bool hit = false;
      for (auto& f : F)
        if (B(G.mul(f, g))) {
          hit = true;
          break;
        }
      if (!hit) avoid.push_back(g);
    }
    SmallnessLevel lvl;
    lvl.radius = r;
    lvl.avoidance = avoid.size();
    auto syn = syndeticity_witness(G, FiniteSubset(G, std::move(avoid)), region, rep.cap);
    lvl.syndetic = syn.found;
    lvl.gap = syn.radius;
    lvl.uncovered = syn.uncovered;
    rep.levels.push_back(lvl);
    if (!syn.found) {
      rep.verdict = SmallVerdict::not_small;
      rep.failing_radius = r;
      break;
    }
  }
  return rep;
}

// Named subsets of Z used by the CLI and tests.
inline Membership named_set(const std::string& name) {
  auto z = [](const Element& g) { return static_cast<long>(g.c.at(0)); };
  if (name == "squares")
    return [z](const Element& g) {
      long v = z(g);
      if (v < 0) return false;
      long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
      return r * r == v;
    };
  if (name == "cubes")
    return [z](const Element& g) {
      long v = z(g);
      long r = static_cast<long>(std::llround(std::cbrt(static_cast<double>(v))));
      return r * r * r == v;
    };
  if (name == "powers2")
    return [z](const Element& g) {
      long v = z(g);
      return v > 0 && (v & (v - 1)) == 0;
    };
  if (name == "evens") return [z](const Element& g) { return z(g) % 2 == 0; };
  if (name == "odds") return [z](const Element& g) { return z(g) % 2 != 0; };
  if (name == "empty") return [](const Element&) { return false; };
  if (name.rfind("range:", 0) == 0) {
    auto colon = name.find(':', 6);
    if (colon == std::string::npos) throw ParseError("range set needs lo:hi");
    long lo = std::stol(name.substr(6, colon - 6)), hi = std::stol(name.substr(colon + 1));
    return [z, lo, hi](const Element& g) { return z(g) >= lo && z(g) <= hi; };
  }
  throw ParseError("unknown named set: " + name);
}

}  // namespace symdyn
