#include <gtest/gtest.h>

#include "symdyn/irreducibility.hpp"

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

// Brute force: every pair of words on D-apart intervals in [-R, R] glues.
bool brute_irreducible(const Subshift& X, const FiniteSubset& D, int R) {
  const Group& Z = X.group();
  auto words = [&](long a, long b) { return X.pattern_set(integer_range(Z, a, b), Semantics::exact()); };
  for (long a = -R; a <= R; ++a)
    for (long b = a; b <= R; ++b)
      for (long c = b + 1; c <= R; ++c)
        for (long d = c; d <= R; ++d) {
          if (!are_apart(Z, D, integer_range(Z, a, b), integer_range(Z, c, d))) continue;
          for (auto& u : words(a, b))
            for (auto& v : words(c, d))
              if (!X.admissible(u.merged(v), Semantics::exact())) return false;
        }
  return true;
}

SubshiftSpec forbid(std::initializer_list<std::vector<Letter>> words, int alphabet = 2) {
  SubshiftSpec s;
  s.name = "t";
  s.alphabet = alphabet;
  Group Z = Group::lattice(1);
  for (auto& w : words) s.forbidden.push_back(word_pattern(Z, w, 0));
  return s;
}

}  // namespace

TEST(CheckIrreducible, GoldenMean) {
  Subshift X(builtin_spec("golden_mean"));
  Group Z = X.group();
  auto ok = check_irreducible(X, 1, ints(Z, {0, 1}), 6, Semantics::exact());
  EXPECT_TRUE(ok.irreducible);
  EXPECT_GT(ok.pairs_checked, 0u);
  EXPECT_TRUE(ok.unconditional);

  auto bad = check_irreducible(X, 1, ints(Z, {0}), 2, Semantics::exact());
  ASSERT_FALSE(bad.irreducible);
  ASSERT_TRUE(bad.counterexample.has_value());
  EXPECT_EQ(bad.counterexample->first, parse_pattern(Z, "1@0"));
  EXPECT_EQ(bad.counterexample->second, parse_pattern(Z, "1@1"));
}

TEST(CheckIrreducible, AgreesWithBruteForce) {
  std::vector<SubshiftSpec> specs = {builtin_spec("golden_mean"), builtin_spec("period2"),
                                     builtin_spec("full_shift"),
                                     forbid({{1, 0, 1}}), forbid({{1, 1}, {0, 0, 0}}),
                                     forbid({{0, 1}}), forbid({{1, 0, 0, 1}, {2, 2}}, 3)};
  Group Z = Group::lattice(1);
  std::vector<FiniteSubset> Ds = {ints(Z, {0}), ints(Z, {0, 1}), Z.ball(1), ints(Z, {-2, 0, 2})};
  for (auto& spec : specs) {
    Subshift X(spec);
    for (auto& D : Ds)
      for (int R = 1; R <= 4; ++R)
        EXPECT_EQ(check_irreducible(X, 1, D, R, Semantics::exact()).irreducible, brute_irreducible(X, D, R))
            << spec.name << " " << spec.forbidden.size() << " R=" << R;
  }
}

TEST(CheckIrreducible, CounterexampleReallyFails) {
  Subshift X(forbid({{1, 1}, {0, 0, 0}}));
  Group Z = X.group();
  auto res = check_irreducible(X, 1, Z.ball(1), 5, Semantics::exact());
  ASSERT_FALSE(res.irreducible);
  auto& ce = *res.counterexample;
  EXPECT_TRUE(X.admissible(ce.first, Semantics::exact()));
  EXPECT_TRUE(X.admissible(ce.second, Semantics::exact()));
  EXPECT_FALSE(X.admissible(ce.first.merged(ce.second), Semantics::exact()));
  EXPECT_TRUE(are_apart(Z, Z.ball(1), ce.first.domain(Z), ce.second.domain(Z)));
  EXPECT_TRUE(ce.first.domain(Z).subset_of(Z.ball(5)));
  EXPECT_TRUE(ce.second.domain(Z).subset_of(Z.ball(5)));
}

TEST(CheckIrreducible, MonotoneInD) {
  Subshift X(forbid({{1, 0, 1}}));
  Group Z = X.group();
  bool seen = false;
  for (int r = 0; r <= 3; ++r) {
    bool ok = check_irreducible(X, 1, Z.ball(r), 8, Semantics::exact()).irreducible;
    if (seen) {
      EXPECT_TRUE(ok) << r;
    }
    seen = seen || ok;
  }
  EXPECT_TRUE(seen);
}

TEST(CheckIrreducible, SubstitutionAndLocal) {
  Subshift fib(builtin_spec("fibonacci_substitution"));
  Group Z = fib.group();
  // Sturmian: 00 in the language but a gap cannot always be filled.
  auto res = check_irreducible(fib, 1, Z.ball(1), 5, Semantics::exact());
  EXPECT_FALSE(res.irreducible);

  SubshiftSpec hs;
  hs.name = "hard_squares";
  hs.group = "Z^2";
  Group Z2 = Group::lattice(2);
  hs.forbidden.push_back(parse_pattern(Z2, "1@(0,0);1@(1,0)"));
  hs.forbidden.push_back(parse_pattern(Z2, "1@(0,0);1@(0,1)"));
  Subshift H(hs);
  EXPECT_TRUE(check_irreducible(H, 1, Z2.ball(1), 2, Semantics::local(1)).irreducible);
  EXPECT_FALSE(check_irreducible(H, 1, Z2.ball(0), 2, Semantics::local(1)).irreducible);
}

TEST(WitnessSearch, Examples) {
  auto search = [](const char* name) {
    Subshift X(builtin_spec(name));
    return irreducibility_witness_search(X, 1, 3, 8, Semantics::exact());
  };
  auto g = search("golden_mean");
  ASSERT_TRUE(g.found);
  EXPECT_EQ(g.radius, 1);
  auto f = search("full_shift");
  ASSERT_TRUE(f.found);
  EXPECT_EQ(f.radius, 0);
  auto p = search("period2");
  EXPECT_FALSE(p.found);
  EXPECT_TRUE(p.last.counterexample.has_value());
}

TEST(Conf, GoldenMeanGlue) {
  Subshift X(builtin_spec("golden_mean"));
  Group Z = X.group();
  auto F = integer_range(Z, 0, 4);
  auto p = conf(X, 1, F, parse_pattern(Z, "1@0"), parse_pattern(Z, "1@4"), Semantics::exact());
  EXPECT_EQ(word(p), "10001");
  EXPECT_EQ(p.restricted(ints(Z, {0})), parse_pattern(Z, "1@0"));
  EXPECT_THROW(conf(X, 1, F, parse_pattern(Z, "1@0"), parse_pattern(Z, "1@1"), Semantics::exact()),
               NoExtension);
  EXPECT_THROW(conf(X, 1, F, parse_pattern(Z, "1@0"), parse_pattern(Z, "1@9"), Semantics::exact()),
               PreconditionError);
}

TEST(Conf, RestrictsAndIsAdmissible) {
  Subshift X(forbid({{1, 0, 1}, {2, 2}}, 3));
  Group Z = X.group();
  auto D = Z.ball(2);
  auto F = integer_range(Z, -6, 6);
  auto E1 = integer_range(Z, -6, -4), E2 = integer_range(Z, 2, 6);
  ASSERT_TRUE(are_apart(Z, D, E1, E2));
  for (auto& u : X.pattern_set(E1, Semantics::exact()))
    for (auto& v : X.pattern_set(E2, Semantics::exact())) {
      auto p = conf(X, 1, F, u, v, Semantics::exact());
      EXPECT_EQ(p.domain(Z), F);
      EXPECT_EQ(p.restricted(E1), u);
      EXPECT_EQ(p.restricted(E2), v);
      EXPECT_TRUE(X.admissible(p, Semantics::exact()));
    }
}

TEST(MaxSeparated, IntervalGaps) {
  Group Z = Group::lattice(1);
  auto M = max_separated_subshift(Z, ints(Z, {-1, 0, 1}));
  EXPECT_EQ(M.witness, Z.ball(3));
  Subshift Y(M.spec);
  // consecutive 1s sit 3, 4 or 5 apart
  for (auto& w : Y.graph().words(14, 2)) {
    std::vector<int> ones;
    for (int i = 0; i < 14; ++i)
      if (w[static_cast<std::size_t>(i)]) ones.push_back(i);
    for (std::size_t i = 1; i < ones.size(); ++i) {
      EXPECT_GE(ones[i] - ones[i - 1], 3);
      EXPECT_LE(ones[i] - ones[i - 1], 5);
    }
  }
  for (int gap = 3; gap <= 5; ++gap) {
    std::vector<Letter> w(static_cast<std::size_t>(gap + 1), 0);
    w.front() = w.back() = 1;
    EXPECT_TRUE(Y.admissible(word_pattern(Z, w, 0), Semantics::exact())) << gap;
  }
  auto res = check_irreducible(Y, 1, M.witness, 12, Semantics::exact());
  EXPECT_TRUE(res.irreducible);
  EXPECT_FALSE(check_irreducible(Y, 1, Z.ball(1), 12, Semantics::exact()).irreducible);
}

TEST(MaxSeparated, MembersAreMaximalSeparatedSets) {
  Group Z = Group::lattice(1);
  auto D = ints(Z, {-1, 0, 1});
  Subshift Y(max_separated_subshift(Z, D).spec);
  // interior of each admissible word: the 1s are separated and every interior
  // point is within distance 2 of a 1
  for (auto& w : Y.graph().words(12, 2)) {
    std::vector<Element> ones;
    for (int i = 0; i < 12; ++i)
      if (w[static_cast<std::size_t>(i)]) ones.push_back(Z.z(i));
    FiniteSubset S(Z, ones);
    EXPECT_TRUE(is_separated(Z, D, S));
    EXPECT_TRUE(integer_range(Z, 2, 9).subset_of(product(Z, Z.ball(2), S)));
  }
}
