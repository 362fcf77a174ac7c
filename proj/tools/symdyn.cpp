// symdyn: run constructions and verifiers on the corpus, emit certificates,
// re-check them, and replay run manifests.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or schema error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "symdyn/symdyn.hpp"

using namespace symdyn;

namespace {

struct Session {
  bool replay = false;          // capture the certificate instead of writing it
  std::string captured;
  std::vector<std::string> argv;  // as given, for manifests
};

struct Common {
  std::string emit, manifest, semantics = "exact";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--emit", c.emit, "write the certificate here");
  sub->add_option("--manifest", c.manifest, "write a run manifest here");
  sub->add_option("--semantics", c.semantics, "exact or local:<m>");
}

json spec_json(const std::string& name) { return to_json(load_spec(name)); }

std::pair<long, long> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("range must be lo:hi: " + s);
  try {
    return {std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw ParseError("bad range: " + s);
  }
}

std::vector<Letter> parse_word(const std::string& s) {
  std::vector<Letter> w;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      w.push_back(std::stoi(cell));
    } catch (const std::logic_error&) {
      throw ParseError("bad letter in word: " + s);
    }
  }
  if (w.empty()) throw ParseError("empty word");
  return w;
}

json set_json(const Group& G, const std::string& text) { return to_json(G, parse_subset(G, text)); }
json pattern_json(const Group& G, const std::string& text) { return to_json(G, parse_pattern(G, text)); }

// Writes the certificate (and manifest); returns the exit code.
int finish(Session& s, const Common& c, const json& cert, std::map<std::string, std::string> specs,
           std::uint64_t seed) {
  const std::string text = canonical_dump(cert);
  const bool verdict = cert.at("verdict").get<bool>();
  if (s.replay) {
    s.captured = text;
    return verdict ? 0 : 1;
  }
  if (c.emit.empty())
    std::cout << text;
  else
    write_text_file(c.emit, text);
  std::cerr << cert.at("claim").get<std::string>() << ": " << (verdict ? "true" : "false") << "\n";
  if (!c.manifest.empty()) {
    RunManifest m;
    m.argv = s.argv;
    m.spec_hashes = std::move(specs);
    m.scales = {cert.at("scale").get<int>()};
    m.seed = seed;
    m.certificates = {c.emit.empty() ? "-" : c.emit};
    m.certificate_hashes = {hex64(fnv1a(text))};
    write_text_file(c.manifest, canonical_dump(m.to_json()));
  }
  return verdict ? 0 : 1;
}

int run_verify(const std::string& path) {
  json cert = read_json_file(path);
  auto r = verify_certificate(cert);
  std::cout << (r.ok ? "PASS " : "FAIL ") << cert.value("claim", std::string("?")) << ": " << r.message << "\n";
  return r.ok ? 0 : 1;
}

int dispatch(Session& s, std::vector<std::string> args);

// Re-runs the recorded command line and compares certificate hashes.
int run_replay(const std::string& path) {
  RunManifest m = RunManifest::from_json(read_json_file(path));
  for (auto& [name, hash] : m.spec_hashes)
    if (spec_hash(load_spec(name)) != hash) {
      std::cout << "FAIL spec " << name << " changed since the manifest was written\n";
      return 1;
    }
  Session s;
  s.replay = true;
  dispatch(s, m.argv);
  if (m.certificate_hashes.empty()) throw SchemaError("manifest records no certificate");
  const std::string got = hex64(fnv1a(s.captured));
  const bool same = got == m.certificate_hashes.front();
  std::cout << (same ? "PASS" : "FAIL") << " replay " << got << (same ? " matches" : " differs from ")
            << (same ? "" : m.certificate_hashes.front()) << "\n";
  return same ? 0 : 1;
}

int dispatch(Session& s, std::vector<std::string> args) {
  CLI::App app{"symdyn: separated sets, irreducible subshifts and separated covering at desk scale", "symdyn"};
  app.require_subcommand(1);
  Common c;
  int rc = 0;
  auto done = [&](const json& cert, std::map<std::string, std::string> specs = {}, std::uint64_t seed = 0) {
    rc = finish(s, c, cert, std::move(specs), seed);
  };
  auto hashes = [](std::initializer_list<std::string> names) {
    std::map<std::string, std::string> out;
    for (auto& n : names) out[n] = spec_hash(load_spec(n));
    return out;
  };

  std::string group = "Z", spec, D, S, F, V, U, B = "squares", region = "0:400", a1, a2, X, Y, map = "identity",
              alpha, x0 = "0,1", gamma = "finite:Z2", path;
  int radius_v = 1, scale = 12, n = 1, levels = 0, K = 4, window = 14, samples = 4, max_len = 6;
  std::uint64_t seed = 1, cseed = 7;
  double eps = 1.0;

  auto* ball = app.add_subcommand("ball", "enumerate a ball in canonical order");
  ball->add_option("--group", group);
  ball->add_option("--radius", radius_v)->required();
  add_common(ball, c);
  ball->callback([&] { done(run_claim("ball", {{"group", group}, {"radius", radius_v}})); });

  auto* sep = app.add_subcommand("separated", "test whether S is D-separated");
  sep->add_option("--group", group);
  sep->add_option("--D", D)->required();
  sep->add_option("--S", S)->required();
  add_common(sep, c);
  sep->callback([&] {
    Group G = Group::parse(group);
    done(run_claim("separated", {{"group", group}, {"D", set_json(G, D)}, {"S", set_json(G, S)}}));
  });

  auto* msep = app.add_subcommand("maximal-separated", "greedy maximal D-separated set in a ball");
  msep->add_option("--group", group);
  msep->add_option("--D", D)->required();
  msep->add_option("--radius", radius_v, "region radius")->required();
  add_common(msep, c);
  msep->callback([&] {
    Group G = Group::parse(group);
    done(run_claim("maximal-separated", {{"group", group}, {"D", set_json(G, D)}, {"region_radius", radius_v}}));
  });

  auto* small = app.add_subcommand("small", "smallness report for a named subset of Z");
  small->add_option("--B", B);
  small->add_option("--radius", radius_v);
  small->add_option("--region", region);
  add_common(small, c);
  small->callback([&] {
    auto [lo, hi] = parse_range(region);
    done(run_claim("small", {{"B", B}, {"radius", radius_v}, {"lo", lo}, {"hi", hi}}));
  });

  auto* pats = app.add_subcommand("patterns", "admissible patterns on F");
  pats->add_option("--spec", spec)->required();
  pats->add_option("--F", F)->required();
  pats->add_option("--levels", levels);
  add_common(pats, c);
  pats->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("patterns", {{"spec", to_json(sp)}, {"F", set_json(G, F)}, {"levels", levels},
                                {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* minc = app.add_subcommand("minimal-check", "every V-pattern shows every (n,F)-pattern");
  minc->add_option("--spec", spec)->required();
  minc->add_option("--n", n);
  minc->add_option("--F", F)->required();
  minc->add_option("--V", V)->required();
  add_common(minc, c);
  minc->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("minimal-check", {{"spec", to_json(sp)}, {"n", n}, {"F", set_json(G, F)}, {"V", set_json(G, V)},
                                     {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* irr = app.add_subcommand("irreducible", "D-irreducibility up to a scale");
  irr->add_option("--spec", spec)->required();
  irr->add_option("--n", n);
  irr->add_option("--D", D)->required();
  irr->add_option("--scale", scale);
  add_common(irr, c);
  irr->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("irreducible", {{"spec", to_json(sp)}, {"n", n}, {"D", set_json(G, D)}, {"scale", scale},
                                   {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* cf = app.add_subcommand("conf", "least admissible pattern on F carrying two patterns");
  cf->add_option("--spec", spec)->required();
  cf->add_option("--n", n);
  cf->add_option("--F", F)->required();
  cf->add_option("--alpha1", a1)->required();
  cf->add_option("--alpha2", a2)->required();
  add_common(cf, c);
  cf->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("conf", {{"spec", to_json(sp)}, {"n", n}, {"F", set_json(G, F)}, {"alpha1", pattern_json(G, a1)},
                            {"alpha2", pattern_json(G, a2)}, {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* mss = app.add_subcommand("max-sep-shift", "subshift of maximal D-separated sets");
  mss->add_option("--group", group);
  mss->add_option("--D", D)->required();
  mss->add_option("--scale", scale);
  mss->add_option("--window", window, "word length for the gap census");
  add_common(mss, c);
  mss->callback([&] {
    Group G = Group::parse(group);
    done(run_claim("max-sep-shift", {{"group", group}, {"D", set_json(G, D)}, {"scale", scale}, {"window", window}}));
  });

  auto* dens = app.add_subcommand("densify", "minimality densification phi and its verification");
  dens->add_option("--spec", spec)->required();
  dens->add_option("--n", n);
  dens->add_option("--F", F)->required();
  dens->add_option("--scale", scale);
  dens->add_option("--samples", samples);
  dens->add_option("--seed", seed);
  add_common(dens, c);
  dens->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("densify", {{"spec", to_json(sp)}, {"n", n}, {"F", set_json(G, F)}, {"scale", scale},
                               {"samples", samples}, {"seed", seed}, {"semantics", c.semantics}}),
         hashes({spec}), seed);
  });

  auto* pad = app.add_subcommand("pad-free", "add a free level and check essential freeness");
  pad->add_option("--spec", spec)->required();
  pad->add_option("--n", n);
  pad->add_option("--max-len", max_len);
  add_common(pad, c);
  pad->callback([&] {
    done(run_claim("pad-free", {{"spec", spec_json(spec)}, {"n", n}, {"max_len", max_len}, {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* sh = app.add_subcommand("shatter", "realize a random subset C of a small set B");
  sh->add_option("--B", B);
  sh->add_option("--C-seed", cseed);
  sh->add_option("--region", region);
  sh->add_option("--spec", spec, "Z' (default full_shift)");
  add_common(sh, c);
  sh->callback([&] {
    auto [lo, hi] = parse_range(region);
    std::string zname = spec.empty() ? "full_shift" : spec;
    done(run_claim("shatter", {{"B", B}, {"C_seed", cseed}, {"lo", lo}, {"hi", hi}, {"spec", spec_json(zname)}}),
         hashes({zname}), cseed);
  });

  auto* gd = app.add_subcommand("gamma-densify", "Gamma-equivariant densification");
  gd->add_option("--gamma", gamma);
  gd->add_option("--spec", spec)->required();
  gd->add_option("--F", F)->required();
  gd->add_option("--eps", eps);
  gd->add_option("--scale", scale);
  gd->add_option("--samples", samples);
  gd->add_option("--seed", seed);
  add_common(gd, c);
  gd->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("gamma-densify", {{"gamma", gamma}, {"spec", to_json(sp)}, {"F", set_json(G, F)}, {"eps", eps},
                                     {"scale", scale}, {"samples", samples}, {"seed", seed}}),
         hashes({spec}), seed);
  });

  auto* scp = app.add_subcommand("scp", "least D-separated S with every window moved into U");
  scp->add_option("--spec", spec)->required();
  scp->add_option("--D", D)->required();
  scp->add_option("--U", U)->required();
  scp->add_option("--scale", scale);
  add_common(scp, c);
  scp->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("scp", {{"spec", to_json(sp)}, {"D", set_json(G, D)}, {"U", pattern_json(G, U)}, {"scale", scale},
                           {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* lift = app.add_subcommand("lift-scp", "lift a separated covering set along a factor map");
  lift->add_option("--X", X)->required();
  lift->add_option("--Y", Y)->required();
  lift->add_option("--map", map, "identity or xor");
  lift->add_option("--D", D)->required();
  lift->add_option("--V", V)->required();
  lift->add_option("--scale", scale);
  add_common(lift, c);
  lift->callback([&] {
    auto xs = load_spec(X);
    Group G = xs.group_context();
    done(run_claim("lift-scp", {{"X", to_json(xs)}, {"Y", spec_json(Y)}, {"map", map}, {"D", set_json(G, D)},
                                {"V", pattern_json(G, V)}, {"scale", scale}, {"semantics", c.semantics}}),
         hashes({X, Y}));
  });

  auto* jr = app.add_subcommand("joint-realize", "g with g.z0 = alpha on D and g.x0 in U");
  jr->add_option("--spec", spec)->required();
  jr->add_option("--x0", x0, "periodic word of x0, comma separated");
  jr->add_option("--K", K, "stages of the free dense point z0");
  jr->add_option("--alpha", alpha)->required();
  jr->add_option("--U", U)->required();
  jr->add_option("--scale", scale);
  add_common(jr, c);
  jr->callback([&] {
    auto sp = load_spec(spec);
    Group G = sp.group_context();
    done(run_claim("joint-realize", {{"spec", to_json(sp)}, {"x0", parse_word(x0)}, {"K", K},
                                     {"alpha", pattern_json(G, alpha)}, {"U", pattern_json(G, U)}, {"scale", scale},
                                     {"semantics", c.semantics}}),
         hashes({spec}));
  });

  auto* dj = app.add_subcommand("disjoint", "window check of joint F-patterns against an irreducible Y");
  dj->add_option("--X", X)->required();
  dj->add_option("--Y", Y)->required();
  dj->add_option("--F", F)->required();
  dj->add_option("--scale", scale);
  add_common(dj, c);
  dj->callback([&] {
    auto xs = load_spec(X);
    Group G = xs.group_context();
    done(run_claim("disjoint", {{"X", to_json(xs)}, {"Y", spec_json(Y)}, {"F", set_json(G, F)}, {"scale", scale},
                                {"semantics", c.semantics}}),
         hashes({X, Y}));
  });

  auto* ver = app.add_subcommand("verify", "re-check a certificate from its inputs");
  ver->add_option("certificate", path)->required();
  ver->callback([&] { rc = run_verify(path); });

  auto* rep = app.add_subcommand("replay", "re-run a manifest and compare certificate hashes");
  rep->add_option("manifest", path)->required();
  rep->callback([&] { rc = run_replay(path); });

  auto* corpus = app.add_subcommand("corpus", "builtin systems");
  corpus->require_subcommand(1);
  corpus->add_subcommand("list", "names of the builtin systems")->callback([&] {
    for (auto& name : corpus_names()) std::cout << name << "\n";
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  Session s;
  s.argv.assign(argv + 1, argv + argc);
  try {
    return dispatch(s, s.argv);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
