#include <gtest/gtest.h>

#include <random>

#include "symdyn/block_map.hpp"
#include "symdyn/gamma.hpp"
#include "symdyn/padding.hpp"
#include "symdyn/phi.hpp"
#include "symdyn/shatter.hpp"

using namespace symdyn;

namespace {

FiniteSubset ints(const Group& G, std::initializer_list<long> v) {
  std::vector<Element> e;
  for (long x : v) e.push_back(G.z(x));
  return FiniteSubset(G, e);
}

std::string word(const Pattern& p) {
  std::string s;
  for (auto& [g, a] : p.cells()) s += static_cast<char>('0' + a);
  return s;
}

}  // namespace

TEST(Product, PatternSetIsProduct) {
  auto spec = product_spec(builtin_spec("golden_mean"), builtin_spec("full_shift"));
  Subshift P(spec);
  Group Z = P.group();
  auto F = ints(Z, {0, 1});
  EXPECT_EQ(P.pattern_set(F, Semantics::exact()).size(), 12u);
  // projections recover the factors, pair by pair
  Subshift A(builtin_spec("golden_mean")), B(builtin_spec("full_shift"));
  for (int L = 1; L <= 6; ++L) {
    auto FL = integer_range(Z, 0, L - 1);
    std::set<std::pair<Pattern, Pattern>> got, want;
    for (auto& p : P.pattern_set(FL, Semantics::exact())) {
      Pattern a, b;
      for (auto& [g, c] : p.cells()) a.set(g, c % 2), b.set(g, c / 2);
      got.insert({a, b});
    }
    for (auto& a : A.pattern_set(FL, Semantics::exact()))
      for (auto& b : B.pattern_set(FL, Semantics::exact())) want.insert({a, b});
    EXPECT_EQ(got, want) << L;
  }
}

TEST(BlockMapImage, IdentityAndSwap) {
  Group Z = Group::lattice(1);
  auto gm = builtin_spec("golden_mean");
  Subshift X(gm);
  auto img = block_map_image(gm, BlockMap::identity(Z, 2));
  for (int L = 1; L <= 6; ++L) {
    auto F = integer_range(Z, 0, L - 1);
    EXPECT_EQ(img.pattern_set(F, Semantics::exact()), X.pattern_set(F, Semantics::exact()));
  }
  BlockMap swap{FiniteSubset(Z, {Z.identity()}), [e = Z.identity()](const Pattern& p) { return 1 - p.value(e); },
                2};
  auto full = block_map_image(builtin_spec("full_shift"), swap);
  EXPECT_EQ(full.pattern_set(integer_range(Z, 0, 3), Semantics::exact()).size(), 16u);
  // x(g) xor x(g+1) on the golden mean never shows 11 after 00
  BlockMap diff{ints(Z, {0, 1}),
                [&Z](const Pattern& p) { return p.value(Z.z(0)) ^ p.value(Z.z(1)); }, 2};
  auto d = block_map_image(gm, diff);
  std::set<std::string> words;
  for (auto& p : d.pattern_set(integer_range(Z, 0, 2), Semantics::exact())) words.insert(word(p));
  std::set<std::string> brute;
  for (auto& p : X.pattern_set(integer_range(Z, 0, 3), Semantics::exact())) {
    std::string w = word(p), o;
    for (int i = 0; i < 3; ++i) o += static_cast<char>('0' + ((w[i] - '0') ^ (w[i + 1] - '0')));
    brute.insert(o);
  }
  EXPECT_EQ(words, brute);
}

TEST(BuildPhi, FullShiftSingleCell) {
  Group Z = Group::lattice(1);
  auto sys = build_phi(builtin_spec("full_shift"), 1, ints(Z, {0}), Semantics::exact());
  EXPECT_EQ(sys.V, Z.ball(1));
  EXPECT_EQ(word(sys.u), "001");
  EXPECT_EQ(sys.V5, Z.ball(5));
}

TEST(BuildPhi, GoldenMeanPair) {
  Group Z = Group::lattice(1);
  auto F = ints(Z, {0, 1});
  auto sys = build_phi(builtin_spec("golden_mean"), 1, F, Semantics::exact());
  EXPECT_EQ(sys.S.size(), 3u);
  EXPECT_EQ(sys.witness_radius, 1);
  EXPECT_EQ(sys.V, Z.ball(2));
  EXPECT_EQ(word(sys.u), "00010");
  // exhaustive: u shows every admissible F-pattern and no V-pattern before it does
  std::set<Pattern> S(sys.S.begin(), sys.S.end());
  EXPECT_EQ(patterns_in(Z, sys.u, F, 2), S);
  Subshift X(builtin_spec("golden_mean"));
  for (auto& p : X.pattern_set(Z.ball(2), Semantics::exact())) {
    if (p == sys.u) break;
    EXPECT_NE(patterns_in(Z, p, F, 2), S) << word(p);
  }
  for (int r = 0; r < 2; ++r)
    for (auto& p : X.pattern_set(Z.ball(r), Semantics::exact())) EXPECT_NE(patterns_in(Z, p, F, 2), S);
}

TEST(BuildPhi, ConstantRejected) {
  SubshiftSpec c;
  c.name = "zeros";
  c.forbidden.push_back(parse_pattern(Group::lattice(1), "1@0"));
  EXPECT_THROW(build_phi(c, 1, ints(Group::lattice(1), {0}), Semantics::exact()), PreconditionError);
}

TEST(PhiEval, FourCases) {
  Group Z = Group::lattice(1);
  auto sys = build_phi(builtin_spec("golden_mean"), 1, ints(Z, {0, 1}), Semantics::exact());
  std::mt19937_64 rng(3);
  Subshift X(builtin_spec("golden_mean"));
  Configuration zp = Configuration::explicit_with_default(Z, random_admissible(X, -100, 100, rng), 0);
  // ones of y at 0 and 30: V^5 = ball(10) translates are disjoint
  Configuration y = Configuration::explicit_with_default(Z, parse_pattern(Z, "1@0,1@30"), 0);
  for (auto& k : sys.V) EXPECT_EQ(phi_eval(sys, zp, y, 0, k), sys.u.value(k));
  for (long g = 7; g <= 23; ++g) EXPECT_EQ(phi_eval(sys, zp, y, 0, Z.z(g)), zp.at(g)) << g;
  EXPECT_EQ(phi_eval(sys, zp, y, 1, Z.z(0)), 0);
  auto z = phi_image(sys, zp, y);
  EXPECT_TRUE(X.admissible(restrict(z, integer_range(Z, -12, 42)), Semantics::exact()));
  Configuration bad = Configuration::explicit_with_default(Z, parse_pattern(Z, "1@0,1@4"), 0);
  EXPECT_THROW(phi_eval(sys, zp, bad, 0, Z.z(2)), CaseOverlap);
}

TEST(VerifyPhi, FullShiftAndGoldenMean) {
  Group Z = Group::lattice(1);
  for (const char* name : {"full_shift", "golden_mean"}) {
    auto sys = build_phi(builtin_spec(name), 1, ints(Z, {0, 1}), Semantics::exact());
    auto v = verify_phi(sys, 60);
    EXPECT_TRUE(v.preserved) << name;
    EXPECT_TRUE(v.minimal) << name;
    EXPECT_GT(v.y_windows, 0u);
    EXPECT_GT(v.windows_checked, 0u);
    EXPECT_EQ(v.syndetic_length, 45);
  }
  auto small = build_phi(builtin_spec("full_shift"), 1, ints(Z, {0}), Semantics::exact());
  auto v = verify_phi(small, 40);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.syndetic_length, 23);
}

TEST(PadFree, PreservesLowLevelsAndFrees) {
  Group Z = Group::lattice(1);
  auto gm = builtin_spec("golden_mean");
  Subshift X(gm), P(pad_free(gm, 1));
  EXPECT_EQ(P.letters(), 4);
  for (int L = 1; L <= 6; ++L) {
    auto F = integer_range(Z, 0, L - 1);
    EXPECT_EQ(P.pattern_set(F, Semantics::exact(), 1), X.pattern_set(F, Semantics::exact())) << L;
    // the free level doubles the count per cell
    EXPECT_EQ(P.pattern_set(F, Semantics::exact()).size(),
              X.pattern_set(F, Semantics::exact()).size() * (std::size_t{1} << L))
        << L;
  }
  auto probes = P.pattern_set(integer_range(Z, 0, 1), Semantics::exact());
  for (auto& g : Z.ball(2)) {
    if (g == Z.identity()) continue;
    EXPECT_TRUE(essential_freeness_check(P, g, probes, Semantics::exact()).passed) << g.c[0];
  }
  auto wp = irreducibility_witness_search(P, 2, 3, 8, Semantics::exact());
  auto wx = irreducibility_witness_search(X, 1, 3, 8, Semantics::exact());
  ASSERT_TRUE(wp.found && wx.found);
  EXPECT_EQ(wp.radius, wx.radius);

  Subshift p2(builtin_spec("period2"));
  auto res = essential_freeness_check(p2, Z.z(2), {parse_pattern(Z, "0@0")}, Semantics::exact());
  EXPECT_FALSE(res.passed);
  EXPECT_TRUE(essential_freeness_check(Subshift(pad_free(builtin_spec("period2"), 1)), Z.z(2),
                                       {parse_pattern(Z, "0@0")}, Semantics::exact())
                  .passed);
}

TEST(Shatter, SquaresRandomHalves) {
  Group Z = Group::lattice(1);
  auto B = named_set("squares");
  auto zs = builtin_spec("full_shift");
  FiniteSubset Bset;
  {
    std::vector<Element> b;
    for (long v = 0; v <= 400; ++v)
      if (B(Z.z(v))) b.push_back(Z.z(v));
    Bset = FiniteSubset(Z, b);
  }
  ASSERT_EQ(Bset.size(), 21u);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto C = random_half(Bset, Z, seed);
    auto res = shatter_small(B, C, 0, 400, zs, ints(Z, {0}));
    EXPECT_TRUE(res.verified) << seed;
    for (auto& b : Bset) EXPECT_EQ(res.z.value(b), C.contains(b) ? 1 : 0);
    // moved ones are V^5-separated and their V^5-blocks avoid B
    EXPECT_TRUE(is_separated(Z, res.sys.V5, res.y_ones));
    for (auto& h : res.y_ones)
      for (auto& v : res.sys.V5) EXPECT_FALSE(B(Z.mul(v, h)));
  }
}

TEST(Shatter, AllAndNothing) {
  Group Z = Group::lattice(1);
  auto B = named_set("squares");
  std::vector<Element> b;
  for (long v = 0; v <= 400; ++v)
    if (B(Z.z(v))) b.push_back(Z.z(v));
  FiniteSubset Bset(Z, b);
  auto all = shatter_small(B, Bset, 0, 400, builtin_spec("full_shift"), ints(Z, {0}));
  for (auto& g : Bset) EXPECT_EQ(all.z.value(g), 1);
  auto none = shatter_small(B, FiniteSubset{}, 0, 400, builtin_spec("full_shift"), ints(Z, {0}));
  for (auto& g : Bset) EXPECT_EQ(none.z.value(g), 0);
  // away from the stamped blocks the image copies chi_C, and u shows up
  std::set<std::string> seen;
  for (long v = 0; v + 2 <= 400; ++v) {
    std::string w;
    for (long i = v; i < v + 3; ++i) w += static_cast<char>('0' + none.z.value(Z.z(i)));
    seen.insert(w);
  }
  EXPECT_TRUE(seen.count("001"));
}

TEST(Shatter, EvensAreNotSmall) {
  Group Z = Group::lattice(1);
  auto rep = is_small(Z, named_set("evens"), 3, integer_range(Z, 0, 400));
  EXPECT_EQ(rep.verdict, SmallVerdict::not_small);
  ASSERT_TRUE(rep.failing_radius.has_value());
  EXPECT_EQ(*rep.failing_radius, 1);
  EXPECT_THROW(shatter_small(named_set("evens"), FiniteSubset{}, 0, 400, builtin_spec("full_shift"), ints(Z, {0})),
               SmallnessInsufficient);
}

TEST(GammaDensify, Z2OnFullShift) {
  Group Z = Group::lattice(1);
  auto sys = gamma_densify(Group::parse("finite:Z2"), builtin_spec("full_shift"), ints(Z, {0}), 1.0);
  EXPECT_EQ(sys.V, Z.ball(1));
  auto cert = verify_gamma(sys, 40);
  for (auto& f : cert.failures) ADD_FAILURE() << f;
  EXPECT_TRUE(cert.ok());
  EXPECT_GT(cert.realizations, 100u);
  EXPECT_EQ(cert.glue_pairs, 8u);
  EXPECT_EQ(cert.syndetic_length, 23);
}

TEST(GammaDensify, ActionIsGroupActionAndOrbitsClose) {
  Group Z = Group::lattice(1);
  SubshiftSpec y3;
  y3.name = "full3";
  y3.alphabet = 3;
  auto sys = gamma_densify(Group::parse("finite:Z3"), y3, ints(Z, {0}), 0.5);
  Subshift Y(y3);
  // pattern sets are unions of Gamma-orbits
  for (int L = 1; L <= 4; ++L) {
    auto P = Y.pattern_set(integer_range(Z, 0, L - 1), Semantics::exact());
    std::set<Pattern> set(P.begin(), P.end());
    for (auto& p : P)
      for (Letter c = 0; c < 3; ++c) EXPECT_TRUE(set.count(sys.act_on(c, p)));
  }
  auto cert = verify_gamma(sys, 30, 1);
  EXPECT_TRUE(cert.action_ok);
  EXPECT_TRUE(cert.conditions_ok);
  EXPECT_TRUE(cert.invariance_ok);
  EXPECT_TRUE(cert.minimal_ok);
}

TEST(GammaDensify, Guards) {
  Group Z = Group::lattice(1);
  EXPECT_THROW(gamma_densify(Group::parse("finite:Z2"), builtin_spec("golden_mean"), ints(Z, {0}), 1.0),
               PreconditionError);
  EXPECT_THROW(gamma_densify(Group::parse("finite:Z2"), builtin_spec("period2"), ints(Z, {0}), 1.0),
               SearchExhausted);
  EXPECT_THROW(gamma_densify(Group::parse("finite:Z2"), builtin_spec("full_shift"), ints(Z, {0}), 0.0),
               PreconditionError);
}
