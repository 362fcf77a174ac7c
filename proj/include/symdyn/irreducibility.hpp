#pragma once

// Strong irreducibility at finite scale, witness search, the Conf gluing
// function and the subshift of maximal D-separated sets.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift.hpp"

namespace symdyn {

class NoExtension : public Error {
 public:
  using Error::Error;
};

struct GluingFailure {
  Pattern first, second;
};

struct IrreducibilityResult {
  bool irreducible = true;
  int scale = 0;
  std::size_t pairs_checked = 0;
  bool unconditional = false;  // transfer-graph mixing bound covers every gap
  long exponent = -1;          // primitive exponent of the transfer graph, if any
  std::optional<GluingFailure> counterexample;
};

namespace detail {

// Set of differences D^-1 D on Z, as integers.
inline std::set<long> difference_set(const FiniteSubset& D) {
  std::set<long> out;
  for (auto& a : D)
    for (auto& b : D) out.insert(static_cast<long>(b.c[0]) - a.c[0]);
  return out;
}

// Intervals [0, L1-1] and [L1-1+t, L1-2+t+L2] are D-apart iff no
// difference in [t, t+L1+L2-2] lies in D^-1 D.
inline bool intervals_apart(const std::set<long>& diff, long L1, long t, long L2) {
  auto it = diff.lower_bound(t);
  return it == diff.end() || *it > t + L1 + L2 - 2;
}

struct StateFamily {
  std::vector<Bits> states;
  std::vector<std::vector<Letter>> words;  // least word reaching each state
};

// Forward determinisation: distinct end-vertex sets of admissible words of
// each length up to max_len, letters compared modulo mod.
inline std::vector<StateFamily> forward_states(const TransferGraph& T, int max_len, long mod) {
  std::vector<StateFamily> out(static_cast<std::size_t>(max_len + 1));
  auto push = [](StateFamily& fam, std::map<Bits, std::size_t>& idx, Bits s, std::vector<Letter> w) {
    if (!s.any() || idx.count(s)) return;
    idx.emplace(s, fam.states.size());
    fam.states.push_back(std::move(s));
    fam.words.push_back(std::move(w));
  };
  for (int L = 1; L <= max_len; ++L) {
    std::map<Bits, std::size_t> idx;
    auto& fam = out[static_cast<std::size_t>(L)];
    if (L == 1) {
      for (Letter a = 0; a < mod; ++a) {
        Bits s = T.all();
        s.for_each([&](std::size_t v) {
          if (T.label(v).back() % mod != a) s.reset(v);
        });
        push(fam, idx, s, {a});
      }
      continue;
    }
    auto& prev = out[static_cast<std::size_t>(L - 1)];
    std::vector<std::pair<std::vector<Letter>, Bits>> cand;
    for (std::size_t i = 0; i < prev.states.size(); ++i) {
      Bits nxt = T.step(prev.states[i]);
      for (Letter a = 0; a < mod; ++a) {
        Bits s = nxt;
        s.for_each([&](std::size_t v) {
          if (T.label(v).back() % mod != a) s.reset(v);
        });
        auto w = prev.words[i];
        w.push_back(a);
        cand.emplace_back(std::move(w), std::move(s));
      }
    }
    std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [w, s] : cand) push(fam, idx, std::move(s), std::move(w));
  }
  return out;
}

// Backward determinisation: for a word v on [c, c+L-1], the set of vertices
// at position c+k-1 (k the label length) that start a path spelling v.
inline std::vector<StateFamily> backward_states(const TransferGraph& T, int max_len, long mod) {
  std::vector<StateFamily> out(static_cast<std::size_t>(max_len + 1));
  auto first_is = [&](Bits s, Letter a) {
    s.for_each([&](std::size_t v) {
      if (T.label(v).front() % mod != a) s.reset(v);
    });
    return s;
  };
  for (int L = 1; L <= max_len; ++L) {
    std::map<Bits, std::size_t> idx;
    auto& fam = out[static_cast<std::size_t>(L)];
    std::vector<std::pair<std::vector<Letter>, Bits>> cand;
    if (L == 1) {
      for (Letter a = 0; a < mod; ++a) cand.emplace_back(std::vector<Letter>{a}, first_is(T.all(), a));
    } else {
      auto& prev = out[static_cast<std::size_t>(L - 1)];
      for (std::size_t i = 0; i < prev.states.size(); ++i) {
        Bits back = T.step_back(prev.states[i]);
        for (Letter a = 0; a < mod; ++a) {
          std::vector<Letter> w{a};
          w.insert(w.end(), prev.words[i].begin(), prev.words[i].end());
          cand.emplace_back(std::move(w), first_is(back, a));
        }
      }
    }
    std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [w, s] : cand) {
      if (!s.any() || idx.count(s)) continue;
      idx.emplace(s, fam.states.size());
      fam.states.push_back(std::move(s));
      fam.words.push_back(std::move(w));
    }
  }
  return out;
}

inline Pattern word_at(const Group& Z, const std::vector<Letter>& w, long start) {
  return word_pattern(Z, w, start);
}

inline IrreducibilityResult check_irreducible_graph(const Subshift& X, int n, const FiniteSubset& D,
                                                    int R) {
  const Group& Z = X.group();
  const TransferGraph& T = X.graph();
  const long mod = X.level_mod(n);
  const long k = T.label_length();
  const int span = 2 * R + 1;
  IrreducibilityResult res;
  res.scale = R;
  auto diff = difference_set(D);
  auto fwd = forward_states(T, span, mod);
  auto bwd = backward_states(T, span, mod);
  for (int total = 2; total <= span; ++total)
    for (int L1 = 1; L1 < total; ++L1)
      for (int t = 1; L1 + t - 1 < total; ++t) {
        const int L2 = total - (L1 + t - 1);
        if (!intervals_apart(diff, L1, t, L2)) continue;
        auto& E = fwd[static_cast<std::size_t>(L1)];
        auto& S = bwd[static_cast<std::size_t>(L2)];
        for (std::size_t i = 0; i < E.states.size(); ++i) {
          Bits moved = T.step(E.states[i], t + k - 1);
          for (std::size_t j = 0; j < S.states.size(); ++j) {
            ++res.pairs_checked;
            if (moved.intersects(S.states[j])) continue;
            long a = (total <= R + 1) ? 0 : -R;
            res.irreducible = false;
            res.counterexample = GluingFailure{word_at(Z, E.words[i], a),
                                               word_at(Z, S.words[j], a + L1 - 1 + t)};
            return res;
          }
        }
      }
  res.exponent = T.primitive_exponent();
  long tmin = 1;
  while (diff.count(tmin)) ++tmin;
  res.unconditional = res.exponent >= 0 && tmin + k - 1 >= res.exponent;
  return res;
}

}  // namespace detail

// Pairs of admissible patterns on D-apart domains inside ball(R) glue.
// Z with an SFT in exact mode: all pairs of intervals. Otherwise: pairs of
// translates of ball(0) and ball(1).
inline IrreducibilityResult check_irreducible(const Subshift& X, int n, const FiniteSubset& D, int R,
                                              const Semantics& sem) {
  X.require(sem);
  const Group& G = X.group();
  if (sem.mode == Mode::exact && X.has_graph()) return detail::check_irreducible_graph(X, n, D, R);
  IrreducibilityResult res;
  res.scale = R;
  if (G.is_integers()) {
    // explicit word pairs (substitution languages, local semantics)
    auto diff = detail::difference_set(D);
    const int span = 2 * R + 1;
    for (int total = 2; total <= span; ++total)
      for (int L1 = 1; L1 < total; ++L1)
        for (int t = 1; L1 + t - 1 < total; ++t) {
          const int L2 = total - (L1 + t - 1);
          if (L2 < 1 || !detail::intervals_apart(diff, L1, t, L2)) continue;
          long a = (total <= R + 1) ? 0 : -R;
          auto U = X.pattern_set(integer_range(G, a, a + L1 - 1), sem, n);
          auto V = X.pattern_set(integer_range(G, a + L1 - 1 + t, a + total - 1), sem, n);
          for (auto& u : U)
            for (auto& v : V) {
              ++res.pairs_checked;
              if (X.admissible(u.merged(v), sem, n)) continue;
              res.irreducible = false;
              res.counterexample = GluingFailure{u, v};
              return res;
            }
        }
    return res;
  }
  for (int r1 = 0; r1 <= 1; ++r1)
    for (int r2 = 0; r2 <= 1; ++r2) {
      FiniteSubset E1 = G.ball(r1);
      auto P1 = X.pattern_set(E1, sem, n);
      for (auto& g : G.ball(std::max(0, R - r2))) {
        FiniteSubset E2 = translate(G, G.ball(r2), g);
        if (!are_apart(G, D, E1, E2)) continue;
        auto P2 = X.pattern_set(E2, sem, n);
        for (auto& u : P1)
          for (auto& v : P2) {
            ++res.pairs_checked;
            if (X.admissible(u.merged(v), sem, n)) continue;
            res.irreducible = false;
            res.counterexample = GluingFailure{u, v};
            return res;
          }
      }
    }
  return res;
}

struct IrreducibilityWitness {
  bool found = false;
  FiniteSubset D;
  int radius = -1;
  int level = 1;
  int scale = 0;
  bool verified = false;
  IrreducibilityResult last;  // the passing check, or the last failure
};

// Least ball(r), r <= max_radius, passing check_irreducible at the scale with
// at least one D-apart pair inspected.
inline IrreducibilityWitness irreducibility_witness_search(const Subshift& X, int n, int max_radius,
                                                           int scale, const Semantics& sem) {
  IrreducibilityWitness w;
  w.level = n;
  w.scale = scale;
  for (int r = 0; r <= max_radius; ++r) {
    FiniteSubset D = X.group().ball(r);
    auto res = check_irreducible(X, n, D, scale, sem);
    w.last = res;
    if (res.irreducible && res.pairs_checked > 0) {
      w.found = true;
      w.D = D;
      w.radius = r;
      w.verified = true;
      return w;
    }
  }
  return w;
}

// Least admissible (n,F)-pattern restricting to alpha1 and alpha2.
inline Pattern conf(const Subshift& X, int n, const FiniteSubset& F, const Pattern& alpha1,
                    const Pattern& alpha2, const Semantics& sem) {
  const Group& G = X.group();
  if (!alpha1.domain(G).subset_of(F) || !alpha2.domain(G).subset_of(F))
    throw PreconditionError("conf: pattern domains must lie in F");
  if (!alpha1.compatible(alpha2)) throw NoExtension("conf: patterns disagree on a common cell");
  auto out = X.least_extension(alpha1.merged(alpha2), F, sem, n);
  if (!out) throw NoExtension("conf: no admissible extension on F");
  return *out;
}

struct MaxSeparatedShift {
  SubshiftSpec spec;
  FiniteSubset D;        // symmetrised
  FiniteSubset witness;  // D^3
};

// Indicators of maximal D-separated sets: no two 1s at distinct positions of
// some D^-1 D translate, and no all-zero D^-1 D window (maximal sets are
// D^-1 D-syndetic).
inline MaxSeparatedShift max_separated_subshift(const Group& G, const FiniteSubset& D0) {
  MaxSeparatedShift out;
  FiniteSubset D = symmetrize(G, set_union(G, D0, FiniteSubset(G, {G.identity()})));
  if (D0.empty()) D = FiniteSubset(G, {G.identity()});
  out.D = D;
  out.witness = power(G, D, 3);
  FiniteSubset DD = product(G, inverse(G, D), D);
  out.spec.group = G.descriptor();
  out.spec.alphabet = 2;
  out.spec.stack = 1;
  out.spec.name = "max_separated";
  for (auto& k : DD) {
    if (k == G.identity() || G.less(G.inv(k), k)) continue;
    Pattern p;
    p.set(G.identity(), 1);
    p.set(k, 1);
    out.spec.forbidden.push_back(std::move(p));
  }
  Pattern zeros;
  for (auto& k : DD) zeros.set(k, 0);
  out.spec.forbidden.push_back(std::move(zeros));
  return out;
}

}  // namespace symdyn
