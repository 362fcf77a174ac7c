#pragma once

// Claim registry: each claim turns JSON inputs into a certificate and
// re-checks a certificate from its inputs and claimed parameters only.

#include <functional>
#include <map>
#include <string>

#include "certificate.hpp"
#include "gamma.hpp"
#include "padding.hpp"
#include "scp.hpp"
#include "shatter.hpp"

namespace symdyn {

struct ClaimCheck {
  bool ok = false;
  std::string message;
};

struct Claim {
  std::string module;
  std::function<json(const json& inputs)> run;
  // empty: recompute from the inputs and compare verdict and evidence
  std::function<ClaimCheck(const json& cert)> verify;
};

namespace claims_detail {

inline json or_null(const std::optional<Pattern>& p, const Group& G) { return p ? to_json(G, *p) : json(nullptr); }

inline Group group_in(const json& in) { return Group::parse(field<std::string>(in, "group")); }

inline SubshiftSpec spec_in(const json& in, const std::string& key = "spec") { return spec_from_json(node(in, key)); }

inline FiniteSubset set_in(const Group& G, const json& in, const std::string& key) {
  return subset_from_json(G, node(in, key));
}

inline Pattern pattern_in(const Group& G, const json& in, const std::string& key) {
  return pattern_from_json(G, node(in, key));
}

inline Semantics sem_in(const json& in) { return Semantics::parse(in.value("semantics", std::string("exact"))); }

inline json words(const Group& G, const std::vector<Pattern>& ps) {
  json out = json::array();
  for (auto& p : ps) out.push_back(p.values_in_order(G));
  return out;
}

inline ClaimCheck pass(std::string m = "verified") { return {true, std::move(m)}; }
inline ClaimCheck fail(std::string m) { return {false, std::move(m)}; }

inline ClaimCheck agree(bool claimed, bool recomputed, const std::string& what) {
  if (claimed == recomputed) return pass(what + (claimed ? " holds" : " fails, as claimed"));
  return fail("claimed verdict " + std::string(claimed ? "true" : "false") + " but " + what +
              (recomputed ? " holds" : " fails"));
}

// Block maps known by name: identity, or xor of the cells at 0 and 1.
inline BlockMap named_map(const Group& G, const std::string& name, int letters) {
  if (name == "identity") return BlockMap::identity(G, letters);
  if (name == "xor") {
    if (!G.is_integers()) throw PreconditionError("the xor map is defined on Z");
    return {FiniteSubset(G, {G.z(0), G.z(1)}),
            [G](const Pattern& p) { return p.value(G.z(0)) ^ p.value(G.z(1)); }, 2};
  }
  throw ParseError("unknown block map: " + name);
}

// ---- group_core ----------------------------------------------------------------

inline json run_ball(const json& in) {
  Group G = group_in(in);
  int r = field<int>(in, "radius");
  FiniteSubset B = G.ball(r);
  return envelope("ball", "group_core", in, r, true, {{"size", B.size()}, {"elements", to_json(G, B)}});
}

inline json run_separated(const json& in) {
  Group G = group_in(in);
  auto v = separation_violation(G, set_in(G, in, "D"), set_in(G, in, "S"));
  json off = v ? json::array({G.to_json(v->first), G.to_json(v->second)}) : json(nullptr);
  return envelope("separated", "group_core", in, 0, !v, {{"offending", off}});
}

// Pairwise intersection of the translates, without the owner map.
inline ClaimCheck verify_separated(const json& c) {
  const json& in = c.at("inputs");
  Group G = group_in(in);
  FiniteSubset D = set_in(G, in, "D"), S = set_in(G, in, "S");
  std::vector<Element> s(S.begin(), S.end());
  bool sep = true;
  for (std::size_t i = 0; i < s.size() && sep; ++i)
    for (std::size_t j = i + 1; j < s.size() && sep; ++j) {
      FiniteSubset a = translate(G, D, s[i]), b = translate(G, D, s[j]);
      for (auto& x : a)
        if (b.contains(x)) sep = false;
    }
  return agree(field<bool>(c, "verdict"), sep, "separation");
}

inline json run_maximal_separated(const json& in) {
  Group G = group_in(in);
  int R = field<int>(in, "region_radius");
  FiniteSubset S = maximal_separated(G, set_in(G, in, "D"), G.ball(R));
  return envelope("maximal-separated", "group_core", in, R, true, {{"S", to_json(G, S)}, {"size", S.size()}});
}

// The claimed S lies in the region, is separated, and no region point can
// be added.
inline ClaimCheck verify_maximal_separated(const json& c) {
  const json& in = c.at("inputs");
  Group G = group_in(in);
  FiniteSubset D = set_in(G, in, "D"), region = G.ball(field<int>(in, "region_radius"));
  FiniteSubset S = subset_from_json(G, node(c.at("evidence"), "S"));
  if (!S.subset_of(region)) return fail("S leaves the region");
  if (auto v = separation_violation(G, D, S))
    return fail("translates meet at " + G.to_string(v->first) + " and " + G.to_string(v->second));
  std::set<Element> covered;
  for (auto& s : S)
    for (auto& d : D) covered.insert(G.mul(d, s));
  for (auto& g : region) {
    bool blocked = false;
    for (auto& d : D)
      if (covered.count(G.mul(d, g))) {
        blocked = true;
        break;
      }
    if (!blocked) return fail("not maximal: " + G.to_string(g) + " can be added");
  }
  return pass("separated and maximal in the region");
}

inline json run_small(const json& in) {
  Group G = Group::lattice(1);
  int r = field<int>(in, "radius");
  auto rep = is_small(G, named_set(field<std::string>(in, "B")), r,
                      integer_range(G, field<long>(in, "lo"), field<long>(in, "hi")));
  json levels = json::array();
  for (auto& l : rep.levels)
    levels.push_back({{"radius", l.radius}, {"avoidance", l.avoidance}, {"syndetic", l.syndetic}, {"gap", l.gap}});
  json ev{{"verdict", to_string(rep.verdict)},
          {"cap", rep.cap},
          {"subject_size", rep.subject.size()},
          {"levels", levels},
          {"failing_radius", rep.failing_radius ? json(*rep.failing_radius) : json(nullptr)}};
  return envelope("small", "group_core", in, r, rep.verdict == SmallVerdict::small_up_to_scale, ev);
}

// ---- subshift_core -------------------------------------------------------------

inline json run_patterns(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  FiniteSubset F = set_in(G, in, "F");
  auto ps = X.pattern_set(F, sem_in(in), in.value("levels", 0));
  return envelope("patterns", "subshift_core", in, radius(G, F), !ps.empty(),
                  {{"count", ps.size()}, {"patterns", words(G, ps)}});
}

inline json run_minimal(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  FiniteSubset V = set_in(G, in, "V");
  auto m = is_nF_minimal(X, in.value("n", 0), set_in(G, in, "F"), V, sem_in(in));
  json ev{{"f_patterns", m.f_patterns},
          {"v_patterns", m.v_patterns},
          {"counterexample", or_null(m.counterexample, G)},
          {"missing", or_null(m.missing, G)}};
  return envelope("minimal-check", "subshift_core", in, radius(G, V), m.minimal, ev);
}

// A negative verdict is confirmed from its counterexample alone.
inline ClaimCheck verify_minimal(const json& c) {
  if (field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int n = in.value("n", 0);
  Semantics sem = sem_in(in);
  const json& ev = c.at("evidence");
  Pattern v = pattern_in(G, ev, "counterexample"), miss = pattern_in(G, ev, "missing");
  if (v.domain(G) != set_in(G, in, "V")) return fail("counterexample is not a V-pattern");
  if (!X.admissible(v, sem, n)) return fail("counterexample is not admissible");
  auto SF = X.pattern_set(set_in(G, in, "F"), sem, n);
  if (std::find(SF.begin(), SF.end(), miss) == SF.end()) return fail("missing pattern is not an F-pattern");
  if (patterns_in(G, v, set_in(G, in, "F"), X.level_mod(n)).count(miss))
    return fail("the missing pattern occurs in the counterexample");
  return pass("counterexample confirmed");
}

// ---- irreducibility -------------------------------------------------------------

inline json run_irreducible(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int R = field<int>(in, "scale");
  auto r = check_irreducible(X, in.value("n", 1), set_in(G, in, "D"), R, sem_in(in));
  json ce = r.counterexample
                ? json{{"first", to_json(G, r.counterexample->first)}, {"second", to_json(G, r.counterexample->second)}}
                : json(nullptr);
  json ev{{"pairs_checked", r.pairs_checked},
          {"unconditional", r.unconditional},
          {"exponent", r.exponent},
          {"counterexample", ce}};
  return envelope("irreducible", "irreducibility", in, R, r.irreducible, ev);
}

inline ClaimCheck verify_irreducible(const json& c) {
  if (field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int n = in.value("n", 1);
  Semantics sem = sem_in(in);
  const json& ce = node(c.at("evidence"), "counterexample");
  Pattern a = pattern_in(G, ce, "first"), b = pattern_in(G, ce, "second");
  if (!X.admissible(a, sem, n) || !X.admissible(b, sem, n)) return fail("a counterexample pattern is not admissible");
  if (!are_apart(G, set_in(G, in, "D"), a.domain(G), b.domain(G))) return fail("counterexample domains are not apart");
  if (X.admissible(a.merged(b), sem, n)) return fail("the counterexample glues");
  return pass("counterexample confirmed: apart, admissible, not gluable");
}

inline json run_conf(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  FiniteSubset F = set_in(G, in, "F");
  try {
    Pattern p = conf(X, in.value("n", 1), F, pattern_in(G, in, "alpha1"), pattern_in(G, in, "alpha2"), sem_in(in));
    return envelope("conf", "irreducibility", in, radius(G, F), true, {{"pattern", to_json(G, p)}});
  } catch (const NoExtension& e) {
    return envelope("conf", "irreducibility", in, radius(G, F), false, {{"pattern", nullptr}, {"error", e.what()}});
  }
}

// The claimed pattern covers F, is admissible and carries both inputs.
inline ClaimCheck verify_conf(const json& c) {
  if (!field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int n = in.value("n", 1);
  const long mod = X.level_mod(n);
  Pattern p = pattern_in(G, c.at("evidence"), "pattern");
  if (p.domain(G) != set_in(G, in, "F")) return fail("pattern domain is not F");
  if (!X.admissible(p, sem_in(in), n)) return fail("pattern is not admissible");
  for (auto key : {"alpha1", "alpha2"}) {
    Pattern alpha = pattern_in(G, in, key);
    for (auto& [g, a] : alpha.cells())
      if (p.value(g) % mod != a) return fail(std::string("pattern does not restrict to ") + key);
  }
  return pass("admissible extension of both patterns");
}

inline json run_max_sep_shift(const json& in) {
  Group G = group_in(in);
  if (!G.is_integers()) throw PreconditionError("max-sep-shift: the certificate checks gaps on Z");
  int R = field<int>(in, "scale");
  int len = in.value("window", 14);
  auto M = max_separated_subshift(G, set_in(G, in, "D"));
  Subshift Y(M.spec);
  std::set<long> gaps;
  for (auto& w : Y.pattern_set(integer_range(G, 0, len - 1), Semantics::exact())) {
    std::optional<long> last;
    for (auto& [g, a] : w.cells()) {
      if (a != 1) continue;
      if (last) gaps.insert(g.c[0] - *last);
      last = g.c[0];
    }
  }
  auto r = check_irreducible(Y, 1, M.witness, R, Semantics::exact());
  json ev{{"spec", to_json(M.spec)},
          {"D", to_json(G, M.D)},
          {"witness", to_json(G, M.witness)},
          {"gaps", std::vector<long>(gaps.begin(), gaps.end())},
          {"pairs_checked", r.pairs_checked},
          {"counterexample", r.counterexample ? json(true) : json(nullptr)}};
  return envelope("max-sep-shift", "irreducibility", in, R, r.irreducible, ev);
}

// ---- constructions ----------------------------------------------------------------

inline json run_densify(const json& in) {
  auto spec = spec_in(in);
  Group G = spec.group_context();
  int scale = field<int>(in, "scale");
  auto sys = build_phi(spec, in.value("n", 1), set_in(G, in, "F"), sem_in(in));
  auto v = verify_phi(sys, scale, in.value("samples", 4), in.value("seed", 1));
  json ev{{"V_radius", radius(G, sys.V)},
          {"u", to_json(G, sys.u)},
          {"witness_radius", sys.witness_radius},
          {"S_size", sys.S.size()},
          {"preserved", v.preserved},
          {"minimal", v.minimal},
          {"syndetic_length", v.syndetic_length},
          {"annulus_patterns", v.annulus_patterns},
          {"y_windows", v.y_windows},
          {"z_samples", v.z_samples},
          {"windows_checked", v.windows_checked},
          {"new_pattern", or_null(v.new_pattern, G)},
          {"bare_window", v.bare_window ? json(*v.bare_window) : json(nullptr)}};
  return envelope("densify", "constructions", in, scale, v.ok, ev);
}

inline json run_pad_free(const json& in) {
  auto spec = spec_in(in);
  Group G = spec.group_context();
  int n = in.value("n", spec.stack);
  int max_len = in.value("max_len", 6);
  auto padded = pad_free(spec, n);
  Subshift X(spec), P(padded);
  Semantics sem = sem_in(in);
  bool preserved = true;
  for (int L = 1; L <= max_len && G.is_integers(); ++L) {
    auto F = integer_range(G, 0, L - 1);
    if (P.pattern_set(F, sem, spec.stack) != X.pattern_set(F, sem)) preserved = false;
  }
  auto probes = P.pattern_set(G.is_integers() ? integer_range(G, 0, 1) : G.ball(0), sem);
  json free = json::array();
  bool all = true;
  for (auto& g : G.ball(in.value("free_radius", 2))) {
    if (g == G.identity()) continue;
    bool ok = essential_freeness_check(P, g, probes, sem).passed;
    all = all && ok;
    free.push_back({{"g", G.to_json(g)}, {"passed", ok}});
  }
  json ev{{"padded", to_json(padded)}, {"preserved", preserved}, {"freeness", free}};
  return envelope("pad-free", "constructions", in, max_len, preserved && all, ev);
}

inline json run_shatter(const json& in) {
  Group G = Group::lattice(1);
  long lo = field<long>(in, "lo"), hi = field<long>(in, "hi");
  std::string bname = field<std::string>(in, "B");
  Membership B = named_set(bname);
  std::vector<Element> bs;
  for (auto& g : integer_range(G, lo, hi))
    if (B(g)) bs.push_back(g);
  FiniteSubset C = random_half(FiniteSubset(G, bs), G, field<std::uint64_t>(in, "C_seed"));
  auto zspec = in.contains("spec") ? spec_in(in) : builtin_spec("full_shift");
  FiniteSubset F = in.contains("F") ? set_in(G, in, "F") : FiniteSubset(G, {G.z(0)});
  int scale = static_cast<int>(hi - lo);
  try {
    auto r = shatter_small(B, C, lo, hi, zspec, F);
    json ev{{"d_radius", r.d_radius},
            {"B_size", r.B.size()},
            {"C", to_json(G, r.C)},
            {"x_ones", r.x_ones.size()},
            {"y_ones", r.y_ones.size()},
            {"z", r.z.values_in_order(G)},
            {"mismatch", r.mismatch ? G.to_json(*r.mismatch) : json(nullptr)}};
    return envelope("shatter", "constructions", in, scale, r.verified, ev);
  } catch (const SmallnessInsufficient& e) {
    return envelope("shatter", "constructions", in, scale, false, {{"error", e.what()}});
  }
}

inline json run_gamma(const json& in) {
  Group Gamma = Group::parse(field<std::string>(in, "gamma"));
  auto spec = spec_in(in);
  Group G = spec.group_context();
  int scale = field<int>(in, "scale");
  auto sys = gamma_densify(Gamma, spec, set_in(G, in, "F"), in.value("eps", 1.0));
  auto c = verify_gamma(sys, scale, in.value("samples", 2), in.value("seed", 1));
  json ev{{"V_radius", radius(G, sys.V)},
          {"u", to_json(G, sys.u)},
          {"action_ok", c.action_ok},
          {"y_invariant", c.y_invariant},
          {"conditions_ok", c.conditions_ok},
          {"invariance_ok", c.invariance_ok},
          {"subset_ok", c.subset_ok},
          {"stamped_equal", c.stamped_equal},
          {"minimal_ok", c.minimal_ok},
          {"irreducible_ok", c.irreducible_ok},
          {"syndetic_length", c.syndetic_length},
          {"glue_radius", c.glue_radius},
          {"realizations", c.realizations},
          {"glue_pairs", c.glue_pairs},
          {"failures", c.failures}};
  return envelope("gamma-densify", "constructions", in, scale, c.ok(), ev);
}

// ---- scp_disjointness ----------------------------------------------------------

inline json run_scp(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int scale = field<int>(in, "scale");
  FiniteSubset D = set_in(G, in, "D");
  Pattern U = pattern_in(G, in, "U");
  Semantics sem = sem_in(in);
  auto r = scp_witness(X, D, U, scale, sem);
  if (!r.found)
    return envelope("scp", "scp_disjointness", in, scale, false,
                    {{"S", nullptr}, {"uncovered", or_null(r.uncovered, G)}});
  auto chk = verify_scp_witness(X, r.witness, sem);
  return envelope("scp", "scp_disjointness", in, scale, chk.ok,
                  {{"S", to_json(G, r.witness.S)}, {"window_size", r.witness.window.size()}, {"windows", chk.windows}});
}

inline ClaimCheck scp_outcome(const Group& G, const ScpCheck& chk) {
  if (chk.offending)
    return fail("not separated: D" + G.to_string(chk.offending->first) + " meets D" +
                G.to_string(chk.offending->second));
  if (chk.uncovered) return fail("uncovered window: " + to_json(G, *chk.uncovered).dump());
  if (!chk.ok) return fail("window does not contain the translates of U");
  return pass("separated and covering over " + std::to_string(chk.windows) + " windows");
}

inline ClaimCheck verify_scp(const json& c) {
  if (!field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int scale = field<int>(in, "scale");
  Pattern U = pattern_in(G, in, "U");
  FiniteSubset S = subset_from_json(G, node(c.at("evidence"), "S"));
  ScpWitness w{set_in(G, in, "D"), U, S, scp_window(G, U, S, scale), scale};
  return scp_outcome(G, verify_scp_witness(X, w, sem_in(in)));
}

inline json run_lift(const json& in) {
  auto xspec = spec_in(in, "X"), yspec = spec_in(in, "Y");
  Group G = xspec.group_context();
  int scale = field<int>(in, "scale");
  auto map = named_map(G, field<std::string>(in, "map"), yspec.letters());
  auto L = lift_scp_witness(xspec, map, yspec, set_in(G, in, "D"), pattern_in(G, in, "V"), scale, sem_in(in));
  json ev{{"F", to_json(G, L.F)},
          {"S", to_json(G, L.witness.S)},
          {"V_refined", to_json(G, L.witness.U)},
          {"base_S", to_json(G, L.base.S)},
          {"fiber", L.fiber}};
  return envelope("lift-scp", "scp_disjointness", in, scale, L.check.ok, ev);
}

inline ClaimCheck verify_lift(const json& c) {
  if (!field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  Subshift X(spec_in(in, "X"));
  const Group& G = X.group();
  int scale = field<int>(in, "scale");
  Semantics sem = sem_in(in);
  const json& ev = c.at("evidence");
  Pattern V = pattern_in(G, in, "V"), W = pattern_in(G, ev, "V_refined");
  if (W.restricted(V.domain(G)) != V) return fail("refined cylinder does not extend V");
  if (!X.admissible(W, sem)) return fail("refined cylinder is not admissible");
  FiniteSubset S = subset_from_json(G, node(ev, "S"));
  ScpWitness w{set_in(G, in, "D"), W, S, scp_window(G, W, S, scale), scale};
  return scp_outcome(G, verify_scp_witness(X, w, sem));
}

inline int joint_search_radius(const Group& G, const FreeDensePoint& fd, const Pattern& alpha, int scale) {
  return radius(G, fd.support.domain(G)) + scale + radius(G, alpha.domain(G)) + 1;
}

inline json run_joint(const json& in) {
  Subshift X(spec_in(in));
  const Group& G = X.group();
  int scale = field<int>(in, "scale");
  auto fd = free_dense_point(G, field<int>(in, "K"));
  auto x0 = Configuration::periodic_word(field<std::vector<Letter>>(in, "x0"));
  Pattern alpha = pattern_in(G, in, "alpha"), U = pattern_in(G, in, "U");
  try {
    auto j = joint_realize(X, x0, fd.z, joint_search_radius(G, fd, alpha, scale), alpha, U, scale, sem_in(in));
    json ev{{"g", G.to_json(j.g)}, {"h", G.to_json(j.h)}, {"s", G.to_json(j.s)}, {"S", to_json(G, j.witness.S)}};
    return envelope("joint-realize", "scp_disjointness", in, scale, j.ok, ev);
  } catch (const ScaleExhausted& e) {
    return envelope("joint-realize", "scp_disjointness", in, scale, false, {{"error", e.what()}});
  }
}

// Pointwise: g.x0 lies in U and g.z0 carries alpha on D.
inline ClaimCheck verify_joint(const json& c) {
  if (!field<bool>(c, "verdict")) return fail("recompute");
  const json& in = c.at("inputs");
  auto spec = spec_in(in);
  Group G = spec.group_context();
  auto fd = free_dense_point(G, field<int>(in, "K"));
  auto x0 = Configuration::periodic_word(field<std::vector<Letter>>(in, "x0"));
  Element g = G.from_json(node(c.at("evidence"), "g"));
  Pattern U = pattern_in(G, in, "U"), alpha = pattern_in(G, in, "alpha");
  for (auto& [f, a] : U.cells())
    if (x0(G.mul(f, g)) != a) return fail("g.x0 is not in U at " + G.to_string(f));
  for (auto& [d, a] : alpha.cells())
    if (fd.z(G.mul(d, g)) != a) return fail("g.z0 differs from alpha at " + G.to_string(d));
  return pass("g = " + G.to_string(g) + " realizes both conditions");
}

inline json run_disjoint(const json& in) {
  Subshift X(spec_in(in, "X")), Y(spec_in(in, "Y"));
  const Group& G = X.group();
  int scale = field<int>(in, "scale");
  auto rep = disjointness_window_check(X, Y, set_in(G, in, "F"), scale, sem_in(in));
  std::vector<std::string> first(rep.failures.begin(),
                                 rep.failures.begin() + static_cast<long>(std::min<std::size_t>(rep.failures.size(), 10)));
  json ev{{"witness_ok", rep.witness_ok},
          {"D", rep.witness_ok ? to_json(G, rep.D) : json(nullptr)},
          {"total", rep.total},
          {"realized", rep.realized},
          {"failures", first}};
  return envelope("disjoint", "scp_disjointness", in, scale, rep.ok(), ev);
}

}  // namespace claims_detail

inline const std::map<std::string, Claim>& claim_registry() {
  using namespace claims_detail;
  static const std::map<std::string, Claim> reg = {
      {"ball", {"group_core", run_ball, {}}},
      {"separated", {"group_core", run_separated, verify_separated}},
      {"maximal-separated", {"group_core", run_maximal_separated, verify_maximal_separated}},
      {"small", {"group_core", run_small, {}}},
      {"patterns", {"subshift_core", run_patterns, {}}},
      {"minimal-check", {"subshift_core", run_minimal, verify_minimal}},
      {"irreducible", {"irreducibility", run_irreducible, verify_irreducible}},
      {"conf", {"irreducibility", run_conf, verify_conf}},
      {"max-sep-shift", {"irreducibility", run_max_sep_shift, {}}},
      {"densify", {"constructions", run_densify, {}}},
      {"pad-free", {"constructions", run_pad_free, {}}},
      {"shatter", {"constructions", run_shatter, {}}},
      {"gamma-densify", {"constructions", run_gamma, {}}},
      {"scp", {"scp_disjointness", run_scp, verify_scp}},
      {"lift-scp", {"scp_disjointness", run_lift, verify_lift}},
      {"joint-realize", {"scp_disjointness", run_joint, verify_joint}},
      {"disjoint", {"scp_disjointness", run_disjoint, {}}},
  };
  return reg;
}

inline json run_claim(const std::string& name, const json& inputs) {
  auto& reg = claim_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw SchemaError("unknown claim: " + name);
  return it->second.run(inputs);
}

// Re-checks a certificate. A dedicated verifier answers when it can; a
// "recompute" answer, or no verifier, falls back to a fresh run compared on
// verdict and evidence.
inline ClaimCheck verify_certificate(const json& cert) {
  check_envelope(cert);
  const std::string name = field<std::string>(cert, "claim");
  auto& reg = claim_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw SchemaError("unknown claim: " + name);
  if (field<std::string>(cert, "module") != it->second.module) throw SchemaError("claim filed under the wrong module");
  if (it->second.verify) {
    auto r = it->second.verify(cert);
    if (r.ok || r.message != "recompute") return r;
  }
  json fresh = it->second.run(cert.at("inputs"));
  if (fresh.at("verdict") != cert.at("verdict"))
    return claims_detail::fail("recomputed verdict is " + fresh.at("verdict").dump());
  if (fresh.at("scale") != cert.at("scale")) return claims_detail::fail("recomputed scale differs");
  if (fresh.at("evidence") != cert.at("evidence")) {
    for (auto& [k, v] : fresh.at("evidence").items())
      if (!cert.at("evidence").contains(k) || cert.at("evidence").at(k) != v)
        return claims_detail::fail("recomputed evidence differs at '" + k + "'");
    return claims_detail::fail("evidence carries fields the recomputation does not");
  }
  return claims_detail::pass("recomputed verdict and evidence agree");
}

}  // namespace symdyn
