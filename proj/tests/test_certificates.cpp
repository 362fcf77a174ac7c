#include <gtest/gtest.h>

#include "symdyn/claims.hpp"

using namespace symdyn;

namespace {

const Group Z = Group::lattice(1);

json zset(std::initializer_list<long> v) {
  std::vector<Element> e;
  for (long x : v) e.push_back(Z.z(x));
  return to_json(Z, FiniteSubset(Z, e));
}

json zpat(const std::string& s) { return to_json(Z, parse_pattern(Z, s)); }
json spec(const std::string& name) { return to_json(builtin_spec(name)); }

json scp_cert() {
  return run_claim("scp", {{"spec", spec("period2")}, {"D", zset({-1, 0, 1})}, {"U", zpat("0@0")}, {"scale", 5}});
}

}  // namespace

TEST(Certificate, EnvelopeShape) {
  json c = scp_cert();
  for (auto key : {"claim", "module", "inputs", "scale", "verdict", "evidence", "version"})
    EXPECT_TRUE(c.contains(key)) << key;
  EXPECT_EQ(c["version"], 1);
  EXPECT_EQ(c["module"], "scp_disjointness");
  EXPECT_EQ(c["scale"], 5);
  EXPECT_TRUE(c["verdict"].get<bool>());
  EXPECT_EQ(c["evidence"]["S"], zset({0, -3}));
}

TEST(Certificate, ScpRoundTripAndTampering) {
  json c = scp_cert();
  EXPECT_TRUE(verify_certificate(c).ok);

  json del = c;
  del["evidence"]["S"] = zset({0});
  auto r = verify_certificate(del);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("uncovered window"), std::string::npos) << r.message;

  json wide = c;
  wide["inputs"]["D"] = to_json(Z, Z.ball(2));
  r = verify_certificate(wide);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("not separated"), std::string::npos) << r.message;
}

TEST(Certificate, SchemaErrorsAreDistinct) {
  json c = scp_cert();
  json a = c;
  a.erase("evidence");
  EXPECT_THROW(verify_certificate(a), SchemaError);
  json b = c;
  b["version"] = 2;
  EXPECT_THROW(verify_certificate(b), SchemaError);
  json d = c;
  d["claim"] = "no-such-claim";
  EXPECT_THROW(verify_certificate(d), SchemaError);
  json e = c;
  e["module"] = "group_core";
  EXPECT_THROW(verify_certificate(e), SchemaError);
  json f = c;
  f["inputs"].erase("scale");
  EXPECT_THROW(verify_certificate(f), SchemaError);
}

TEST(Certificate, EveryClaimVerifies) {
  std::vector<std::pair<std::string, json>> cases = {
      {"ball", {{"group", "Z^2"}, {"radius", 2}}},
      {"separated", {{"group", "Z"}, {"D", zset({0, 1})}, {"S", zset({0, 2, 4})}}},
      {"separated", {{"group", "Z"}, {"D", zset({0, 1})}, {"S", zset({0, 1})}}},
      {"maximal-separated", {{"group", "F2"}, {"D", to_json(Group::parse("F2"), Group::parse("F2").ball(1))},
                             {"region_radius", 3}}},
      {"small", {{"B", "squares"}, {"radius", 1}, {"lo", 0}, {"hi", 200}}},
      {"patterns", {{"spec", spec("golden_mean")}, {"F", zset({0, 1, 2})}}},
      {"minimal-check", {{"spec", spec("period2")}, {"n", 0}, {"F", zset({0, 1})}, {"V", to_json(Z, Z.ball(2))}}},
      {"minimal-check", {{"spec", spec("full_shift")}, {"n", 0}, {"F", zset({0})}, {"V", to_json(Z, Z.ball(3))}}},
      {"irreducible", {{"spec", spec("golden_mean")}, {"D", zset({0, 1})}, {"scale", 6}}},
      {"irreducible", {{"spec", spec("golden_mean")}, {"D", zset({0})}, {"scale", 2}}},
      {"conf", {{"spec", spec("golden_mean")}, {"F", to_json(Z, integer_range(Z, 0, 4))},
                {"alpha1", zpat("1@0")}, {"alpha2", zpat("1@4")}}},
      {"conf", {{"spec", spec("golden_mean")}, {"F", zset({0, 1})}, {"alpha1", zpat("1@0")},
                {"alpha2", zpat("1@1")}}},
      {"max-sep-shift", {{"group", "Z"}, {"D", zset({-1, 0, 1})}, {"scale", 8}, {"window", 10}}},
      {"pad-free", {{"spec", spec("golden_mean")}, {"n", 1}, {"max_len", 4}}},
      {"scp", {{"spec", spec("fibonacci_substitution")}, {"D", zset({-1, 0, 1})}, {"U", zpat("0@0")},
               {"scale", 12}}},
      {"lift-scp", {{"X", spec("period2")}, {"Y", spec("period2")}, {"map", "identity"}, {"D", zset({0})},
                    {"V", zpat("0@0")}, {"scale", 6}}},
      {"joint-realize", {{"spec", spec("period2")}, {"x0", {0, 1}}, {"K", 4}, {"alpha", zpat("1@0,0@1")},
                         {"U", zpat("1@0")}, {"scale", 4}}},
      {"disjoint", {{"X", spec("period2")}, {"Y", spec("golden_mean")}, {"F", zset({0})}, {"scale", 8}}},
      {"disjoint", {{"X", spec("period2")}, {"Y", spec("period2")}, {"F", zset({0})}, {"scale", 8}}},
  };
  for (auto& [name, in] : cases) {
    json c = run_claim(name, in);
    EXPECT_EQ(c["claim"], name);
    auto r = verify_certificate(c);
    EXPECT_TRUE(r.ok) << name << ": " << r.message;
  }
}

TEST(Certificate, NegativeVerdictsAreConfirmedFromEvidence) {
  json c = run_claim("irreducible", {{"spec", spec("golden_mean")}, {"D", zset({0})}, {"scale", 2}});
  ASSERT_FALSE(c["verdict"].get<bool>());
  EXPECT_EQ(verify_certificate(c).message, "counterexample confirmed: apart, admissible, not gluable");
  // a counterexample that does glue is rejected
  c["evidence"]["counterexample"]["second"] = zpat("0@1");
  EXPECT_FALSE(verify_certificate(c).ok);

  json m = run_claim("minimal-check",
                     {{"spec", spec("full_shift")}, {"n", 0}, {"F", zset({0})}, {"V", to_json(Z, Z.ball(3))}});
  ASSERT_FALSE(m["verdict"].get<bool>());
  EXPECT_TRUE(verify_certificate(m).ok);
  m["evidence"]["missing"] = m["evidence"]["counterexample"];
  EXPECT_FALSE(verify_certificate(m).ok);
}

TEST(Certificate, FlippedVerdictFails) {
  json c = run_claim("ball", {{"group", "Z"}, {"radius", 3}});
  c["verdict"] = false;
  EXPECT_FALSE(verify_certificate(c).ok);
  json d = run_claim("ball", {{"group", "Z"}, {"radius", 3}});
  d["evidence"]["size"] = 8;
  EXPECT_FALSE(verify_certificate(d).ok);
}

TEST(Certificate, ConfTamperedPattern) {
  json c = run_claim("conf", {{"spec", spec("golden_mean")}, {"F", to_json(Z, integer_range(Z, 0, 4))},
                              {"alpha1", zpat("1@0")}, {"alpha2", zpat("1@4")}});
  EXPECT_EQ(c["evidence"]["pattern"]["values"], json::array({1, 0, 0, 0, 1}));
  EXPECT_TRUE(verify_certificate(c).ok);
  json bad = c;
  bad["evidence"]["pattern"] = to_json(Z, word_pattern(Z, {1, 1, 0, 0, 1}, 0));
  EXPECT_FALSE(verify_certificate(bad).ok);
}

TEST(Certificate, DumpsAreDeterministic) {
  json in{{"spec", spec("golden_mean")}, {"n", 1}, {"F", zset({0, 1})}, {"scale", 40}};
  auto a = canonical_dump(run_claim("densify", in));
  auto b = canonical_dump(run_claim("densify", in));
  EXPECT_EQ(fnv1a(a), fnv1a(b));
  EXPECT_EQ(a, b);
}

TEST(Manifest, RoundTrip) {
  RunManifest m;
  m.argv = {"scp", "--spec", "period2"};
  m.spec_hashes = {{"period2", spec_hash(builtin_spec("period2"))}};
  m.scales = {5};
  m.seed = 3;
  m.certificates = {"w.json"};
  m.certificate_hashes = {hex64(fnv1a(canonical_dump(scp_cert())))};
  auto back = RunManifest::from_json(m.to_json());
  EXPECT_EQ(back.to_json(), m.to_json());
  json broken = m.to_json();
  broken["certificate_hashes"] = json::array();
  EXPECT_THROW(RunManifest::from_json(broken), SchemaError);
}

TEST(Hash, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}
