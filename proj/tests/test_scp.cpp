#include <gtest/gtest.h>

#include "symdyn/scp.hpp"

using namespace symdyn;

namespace {

FiniteSubset ints(const Group& G, std::initializer_list<long> v) {
  std::vector<Element> e;
  for (long x : v) e.push_back(G.z(x));
  return FiniteSubset(G, e);
}

SubshiftSpec forbid(std::initializer_list<std::vector<Letter>> words, int alphabet = 2) {
  SubshiftSpec s;
  s.name = "t";
  s.alphabet = alphabet;
  Group Z = Group::lattice(1);
  for (auto& w : words) s.forbidden.push_back(word_pattern(Z, w, 0));
  return s;
}

// 0011 repeated
SubshiftSpec period4() { return forbid({{0, 0, 0}, {1, 1, 1}, {0, 1, 0}, {1, 0, 1}}); }

BlockMap xor_map(const Group& Z) {
  return {ints(Z, {0, 1}), [Z](const Pattern& p) { return p.value(Z.z(0)) ^ p.value(Z.z(1)); }, 2};
}

const Semantics exact = Semantics::exact();

}  // namespace

TEST(Scp, VisitTimes) {
  Group Z = Group::lattice(1);
  auto x = Configuration::periodic_word({0, 1});
  auto v = visit_times(x, parse_pattern(Z, "0@0"), integer_range(Z, -3, 3));
  EXPECT_EQ(v, ints(Z, {-2, 0, 2}));
}

TEST(Scp, Period2LeastWitness) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  auto r = scp_witness(X, Z.ball(1), parse_pattern(Z, "0@0"), 5, exact);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.witness.S, ints(Z, {0, -3}));
  auto c = verify_scp_witness(X, r.witness, exact);
  EXPECT_TRUE(c.ok);
  EXPECT_GT(c.windows, 0u);
}

TEST(Scp, DeletingAnElementBreaksCoverage) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  auto r = scp_witness(X, Z.ball(1), parse_pattern(Z, "0@0"), 5, exact);
  ASSERT_TRUE(r.found);
  for (auto& s : r.witness.S) {
    ScpWitness w = r.witness;
    std::vector<Element> rest;
    for (auto& t : w.S)
      if (!(t == s)) rest.push_back(t);
    w.S = FiniteSubset(Z, rest);
    auto c = verify_scp_witness(X, w, exact);
    EXPECT_FALSE(c.ok);
    EXPECT_TRUE(c.uncovered.has_value());
  }
}

TEST(Scp, OverlapIsReported) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  ScpWitness w{Z.ball(1), parse_pattern(Z, "0@0"), ints(Z, {0, 1}), Z.ball(5), 5};
  auto c = verify_scp_witness(X, w, exact);
  EXPECT_FALSE(c.separated);
  ASSERT_TRUE(c.offending.has_value());
}

TEST(Scp, FibonacciFindsWitness) {
  Subshift X(builtin_spec("fibonacci_substitution"));
  Group Z = X.group();
  auto r = scp_witness(X, Z.ball(1), parse_pattern(Z, "0@0"), 20, exact);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(verify_scp_witness(X, r.witness, exact).ok);
  EXPECT_FALSE(separation_violation(Z, Z.ball(1), r.witness.S).has_value());
}

TEST(Scp, FullShiftIsRejected) {
  Subshift X(builtin_spec("full_shift"));
  Group Z = X.group();
  EXPECT_THROW(scp_witness(X, Z.ball(1), parse_pattern(Z, "0@0"), 6, exact), PreconditionError);
}

TEST(Scp, CoverageIsMonotoneInScale) {
  Subshift X(builtin_spec("fibonacci_substitution"));
  Group Z = X.group();
  auto r = scp_witness(X, ints(Z, {0}), parse_pattern(Z, "1@0"), 12, exact);
  ASSERT_TRUE(r.found);
  for (int R = 12; R <= 24; R += 4) EXPECT_TRUE(verify_scp_witness(X, r.witness, exact, R).ok) << R;
}

TEST(Scp, LiftIdentity) {
  Group Z = Group::lattice(1);
  auto p2 = builtin_spec("period2");
  auto L = lift_scp_witness(p2, BlockMap::identity(Z, 2), p2, ints(Z, {0}), parse_pattern(Z, "0@0"), 6, exact);
  EXPECT_EQ(L.fiber, 1u);
  EXPECT_EQ(L.F, ints(Z, {0}));
  EXPECT_TRUE(L.check.ok);
}

TEST(Scp, LiftThroughXorFactor) {
  Group Z = Group::lattice(1);
  auto L = lift_scp_witness(period4(), xor_map(Z), builtin_spec("period2"), ints(Z, {0}),
                            parse_pattern(Z, "0@0,0@1"), 8, exact);
  EXPECT_EQ(L.fiber, 2u);
  EXPECT_EQ(L.F.size(), 2u);
  EXPECT_TRUE(L.check.ok);
  EXPECT_TRUE(L.check.separated);
}

TEST(Scp, JointRealizeAllAlphaAndCylinders) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  auto fd = free_dense_point(Z, 5);
  const int search = radius(Z, fd.support.domain(Z)) + 8;
  int ok = 0;
  for (Letter u : {0, 1}) {
    auto x0 = Configuration::periodic_word({0, 1});
    Pattern U = parse_pattern(Z, std::to_string(u) + "@0");
    for (Letter a = 0; a < 2; ++a)
      for (Letter b = 0; b < 2; ++b) {
        Pattern alpha;
        alpha.set(Z.z(0), a);
        alpha.set(Z.z(1), b);
        auto j = joint_realize(X, x0, fd.z, search, alpha, U, 4, exact);
        EXPECT_TRUE(j.ok);
        EXPECT_EQ(x0(j.g), u);
        EXPECT_EQ(fd.z(j.g), a);
        EXPECT_EQ(fd.z(Z.mul(Z.z(1), j.g)), b);
        ok += j.ok;
      }
  }
  EXPECT_EQ(ok, 8);
}

TEST(Scp, DisjointFromIrreducible) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  for (auto name : {"full_shift", "golden_mean"}) {
    Subshift Y(builtin_spec(name));
    for (long len = 1; len <= 3; ++len) {
      auto rep = disjointness_window_check(X, Y, integer_range(Z, 0, len - 1), 12, exact);
      EXPECT_TRUE(rep.ok()) << name << " " << len << " " << (rep.failures.empty() ? "" : rep.failures[0]);
      EXPECT_GT(rep.total, 0u);
    }
  }
}

TEST(Scp, DisjointRejectsNonIrreducible) {
  Subshift X(builtin_spec("period2"));
  Group Z = X.group();
  auto rep = disjointness_window_check(X, X, ints(Z, {0}), 10, exact);
  EXPECT_FALSE(rep.witness_ok);
  EXPECT_FALSE(rep.ok());
}
