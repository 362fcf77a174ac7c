// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Optional argument: path of the symdyn binary, for the manifest replay.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <unistd.h>

#include "symdyn/symdyn.hpp"

using namespace symdyn;

namespace {

using clock_type = std::chrono::steady_clock;

const Group Z = Group::lattice(1);

json zset(std::initializer_list<long> v) {
  std::vector<Element> e;
  for (long x : v) e.push_back(Z.z(x));
  return to_json(Z, FiniteSubset(Z, e));
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

template <class Body>
void criterion(int id, const std::string& name, double budget_s, Body body) {
  auto t0 = clock_type::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) o.require(false, "over the " + std::to_string(budget_s) + " s budget");
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

// Gaps between consecutive ones, over every word of length <= len obeying
// the local rules of maximal D-separated sets with D = {-1, 0, 1}: ones at
// distance >= 3 and no run of five zeros.
std::set<long> brute_gaps(int len) {
  std::set<long> gaps;
  for (int L = 1; L <= len; ++L)
    for (unsigned w = 0; w < (1u << L); ++w) {
      bool ok = true;
      std::vector<int> ones;
      for (int i = 0; i < L; ++i)
        if (w >> i & 1) ones.push_back(i);
      for (std::size_t i = 1; i < ones.size(); ++i)
        if (ones[i] - ones[i - 1] < 3) ok = false;
      for (int i = 0; i + 5 <= L && ok; ++i)
        if (((w >> i) & 31u) == 0) ok = false;
      if (!ok) continue;
      for (std::size_t i = 1; i < ones.size(); ++i) gaps.insert(ones[i] - ones[i - 1]);
    }
  return gaps;
}

json max_sep_inputs() { return {{"group", "Z"}, {"D", zset({-1, 0, 1})}, {"scale", 12}, {"window", 14}}; }

json densify_inputs(const std::string& name) {
  return {{"spec", to_json(builtin_spec(name))}, {"n", 1}, {"F", zset({0, 1})}, {"scale", 60}};
}

json shatter_inputs(std::uint64_t seed) {
  return {{"B", "squares"}, {"C_seed", seed}, {"lo", 0}, {"hi", 400}, {"spec", to_json(builtin_spec("full_shift"))}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "maximal separated sets are separated and D^-1 D-syndetic", 10, [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    const std::vector<std::string> groups = {"Z", "Z^2", "F2"};
    for (int t = 0; t < 50; ++t) {
      Group G = Group::parse(groups[rng() % 3]);
      int r = static_cast<int>(rng() % 3);
      int R = G.kind() == GroupKind::free ? 3 + r : 4 + 2 * r + static_cast<int>(rng() % 3);
      FiniteSubset D = G.ball(r), region = G.ball(R);
      FiniteSubset S = maximal_separated(G, D, region);
      std::vector<Element> s(S.begin(), S.end());
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          FiniteSubset a = translate(G, D, s[i]), b = translate(G, D, s[j]);
          for (auto& x : a) o.require(!b.contains(x), G.descriptor() + ": overlapping translates");
        }
      FiniteSubset DD = product(G, inverse(G, D), D);
      for (auto& g : G.ball(R - 2 * r)) {
        bool hit = false;
        for (auto& x : s)
          if (DD.contains(G.mul(g, G.inv(x)))) {
            hit = true;
            break;
          }
        o.require(hit, G.descriptor() + ": " + G.to_string(g) + " not within D^-1 D of S");
      }
    }
  });

  criterion(2, "maximal {-1,0,1}-separated subshift: gaps 3..5, irreducible at D^3", 30, [](Outcome& o) {
    json c = run_claim("max-sep-shift", max_sep_inputs());
    auto gaps = c["evidence"]["gaps"].get<std::vector<long>>();
    o.require(gaps == std::vector<long>({3, 4, 5}), "gap census " + c["evidence"]["gaps"].dump());
    auto brute = brute_gaps(14);
    o.require(std::vector<long>(brute.begin(), brute.end()) == gaps, "brute-force gaps differ");
    o.require(c["evidence"]["witness"] == to_json(Z, Z.ball(3)), "witness is not ball(3)");
    o.require(c["verdict"].get<bool>(), "check_irreducible failed at scale 12");
    o.require(c["evidence"]["counterexample"].is_null(), "counterexample reported");
    o.require(c["evidence"]["pairs_checked"].get<std::size_t>() > 0, "no pairs checked");
  });

  criterion(3, "densification preserves S_(1,{0,1}) and is syndetically minimal at scale 60", 120, [](Outcome& o) {
    for (auto name : {"full_shift", "golden_mean"}) {
      json c = run_claim("densify", densify_inputs(name));
      auto& ev = c["evidence"];
      o.require(ev["preserved"].get<bool>(), std::string(name) + ": new pattern " + ev["new_pattern"].dump());
      o.require(ev["syndetic_length"].get<int>() <= 60,
                std::string(name) + ": syndetic length " + ev["syndetic_length"].dump() + " exceeds the scale");
      o.require(ev["minimal"].get<bool>(), std::string(name) + ": bare window at " + ev["bare_window"].dump());
      o.require(ev["windows_checked"].get<std::size_t>() > 0, std::string(name) + ": no windows scanned");
      o.require(c["verdict"].get<bool>(), std::string(name) + ": verdict false");
    }
  });

  criterion(4, "joint realization on period2 with a free dense z0, 8/8", 60, [](Outcome& o) {
    int ok = 0;
    for (Letter u : {0, 1})
      for (Letter a : {0, 1})
        for (Letter b : {0, 1}) {
          Pattern alpha;
          alpha.set(Z.z(0), a);
          alpha.set(Z.z(1), b);
          Pattern U;
          U.set(Z.z(0), u);
          json c = run_claim("joint-realize", {{"spec", to_json(builtin_spec("period2"))},
                                               {"x0", {0, 1}},
                                               {"K", 4},
                                               {"alpha", to_json(Z, alpha)},
                                               {"U", to_json(Z, U)},
                                               {"scale", 4}});
          if (!c["verdict"].get<bool>()) continue;
          // pointwise, against a fresh z0 and x0
          auto z0 = free_dense_point(Z, 4).z;
          auto x0 = Configuration::periodic_word({0, 1});
          Element g = Z.from_json(c["evidence"]["g"]);
          if (x0(g) == u && z0(g) == a && z0(Z.mul(Z.z(1), g)) == b) ++ok;
        }
    o.require(ok == 8, std::to_string(ok) + "/8 realized");
  });

  criterion(5, "window disjointness of period2 from irreducible Y, F up to length 3", 120, [](Outcome& o) {
    Subshift X(builtin_spec("period2"));
    for (auto name : {"full_shift", "golden_mean"}) {
      Subshift Y(builtin_spec(name));
      for (long L = 1; L <= 3; ++L) {
        FiniteSubset F = integer_range(Z, 0, L - 1);
        auto rep = disjointness_window_check(X, Y, F, 12, Semantics::exact());
        std::size_t want = X.pattern_set(F, Semantics::exact()).size() * Y.pattern_set(F, Semantics::exact()).size();
        o.require(rep.total == want && rep.realized == want,
                  std::string(name) + " L=" + std::to_string(L) + ": " + std::to_string(rep.realized) + "/" +
                      std::to_string(want));
      }
    }
    auto neg = disjointness_window_check(X, X, FiniteSubset(Z, {Z.z(0)}), 12, Semantics::exact());
    o.require(!neg.witness_ok && !neg.ok(), "period2 against itself passed the witness guard");
  });

  criterion(6, "shattering the squares on [0,400], 20/20, evens rejected", 60, [](Outcome& o) {
    Membership sq = named_set("squares");
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      json c = run_claim("shatter", shatter_inputs(seed));
      if (!c["verdict"].get<bool>()) continue;
      FiniteSubset C = subset_from_json(Z, c["evidence"]["C"]);
      auto z = c["evidence"]["z"].get<std::vector<Letter>>();
      bool exact = z.size() == 401;
      for (long v = 0; v <= 400 && exact; ++v)
        if (sq(Z.z(v)) && z[static_cast<std::size_t>(v)] != (C.contains(Z.z(v)) ? 1 : 0)) exact = false;
      ok += exact;
    }
    o.require(ok == 20, std::to_string(ok) + "/20 exact");
    auto ev = is_small(Z, named_set("evens"), 1, integer_range(Z, 0, 400));
    o.require(ev.verdict == SmallVerdict::not_small && ev.failing_radius == 1, "evens not rejected at radius 1");
  });

  criterion(7, "Z/2-equivariant densification of the full shift at scale 40", 120, [](Outcome& o) {
    auto sys = gamma_densify(Group::parse("finite:Z2"), builtin_spec("full_shift"), FiniteSubset(Z, {Z.z(0)}), 1.0);
    auto c = verify_gamma(sys, 40);
    o.require(c.action_ok && c.y_invariant, "action or invariance of Y");
    o.require(c.invariance_ok, "window pattern sets not closed under Gamma");
    o.require(c.minimal_ok && c.stamped_equal, "(eps,F)-minimality");
    o.require(c.ok(), c.failures.empty() ? "certificate not ok" : c.failures.front());
    // the stamped patterns form a Gamma-orbit-closed set
    std::set<Pattern> seen(sys.S.begin(), sys.S.end());
    for (auto& p : sys.S)
      for (Letter g = 0; g < 2; ++g) o.require(seen.count(sys.act_on(g, p)) > 0, "S_F(Y) not orbit closed");
  });

  criterion(8, "free padding of the golden mean, period2 control", 60, [](Outcome& o) {
    json c = run_claim("pad-free", {{"spec", to_json(builtin_spec("golden_mean"))}, {"n", 1}, {"max_len", 6}});
    o.require(c["evidence"]["preserved"].get<bool>(), "S_(n,F) changed");
    for (auto& f : c["evidence"]["freeness"]) o.require(f["passed"].get<bool>(), "freeness fails at " + f["g"].dump());
    o.require(c["evidence"]["freeness"].size() == 4, "ball(2) minus e has 4 elements");
    Subshift p2(builtin_spec("period2"));
    auto res = essential_freeness_check(p2, Z.z(2), {parse_pattern(Z, "0@0")}, Semantics::exact());
    o.require(!res.passed && !res.witnesses.front().found, "period2 passed at g = 2");
    for (auto& w : p2.pattern_set(integer_range(Z, 0, 6), Semantics::exact()))
      for (long i = 0; i + 2 <= 6; ++i) o.require(w.value(Z.z(i)) == w.value(Z.z(i + 2)), "period2 word not 2-periodic");
  });

  criterion(9, "re-running criteria 2, 3, 6 from manifests is byte-identical", 300, [&](Outcome& o) {
    std::vector<std::pair<std::string, json>> runs = {{"max-sep-shift", max_sep_inputs()},
                                                      {"densify", densify_inputs("golden_mean")},
                                                      {"shatter", shatter_inputs(7)}};
    for (auto& [name, in] : runs) {
      std::string a = canonical_dump(run_claim(name, in)), b = canonical_dump(run_claim(name, in));
      o.require(a == b, name + ": in-process reruns differ");
    }
    if (cli.empty()) {
      o.require(false, "no symdyn binary given for the manifest replay");
      return;
    }
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("symdyn_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"c2", "max-sep-shift --D -1,0,1 --scale 12 --window 14"},
        {"c3", "densify --spec golden_mean --n 1 --F 0,1 --scale 60"},
        {"c6", "shatter --B squares --C-seed 7 --region 0:400"}};
    auto sh = [&](const std::string& cmd) { return std::system(("cd '" + dir.string() + "' && " + cmd).c_str()); };
    for (auto& [tag, args] : commands) {
      std::string first = tag + ".json", again = tag + "_replayed.json";
      int rc = sh("'" + cli + "' " + args + " --emit " + first + " --manifest " + tag + "_manifest.json 2>/dev/null");
      o.require(rc == 0, tag + ": run failed");
      rc = sh("'" + cli + "' replay " + tag + "_manifest.json > /dev/null");
      o.require(rc == 0, tag + ": replay hash differs");
      // and a second emission to a new file compares byte for byte
      rc = sh("'" + cli + "' " + args + " --emit " + again + " 2>/dev/null && cmp -s " + first + " " + again);
      o.require(rc == 0, tag + ": re-emitted certificate differs");
    }
    fs::remove_all(dir);
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
