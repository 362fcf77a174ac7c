#pragma once

// Finite patterns and subshift descriptions.
//
// Letters are small integers. A stacked alphabet A^[n] is encoded by letter
// codes in [0, |A|^n): level m of code c is (c / |A|^m) % |A|.

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace symdyn {

inline long ipow(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline Letter level_of(Letter code, int level, int alphabet) {
  return static_cast<Letter>((code / ipow(alphabet, level)) % alphabet);
}

// Keep only levels [0, n).
inline Letter project_levels(Letter code, int n, int alphabet) {
  return static_cast<Letter>(code % ipow(alphabet, n));
}

class Pattern {
 public:
  Pattern() = default;

  void set(const Element& g, Letter a) { cells_[g] = a; }

  std::optional<Letter> at(const Element& g) const {
    auto it = cells_.find(g);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
  }

  Letter value(const Element& g) const {
    auto it = cells_.find(g);
    if (it == cells_.end()) throw PreconditionError("pattern has no value at position");
    return it->second;
  }

  bool contains(const Element& g) const { return cells_.count(g) > 0; }
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  const std::map<Element, Letter>& cells() const { return cells_; }

  FiniteSubset domain(const Group& G) const {
    std::vector<Element> d;
    for (auto& [g, a] : cells_) d.push_back(g);
    return FiniteSubset(G, std::move(d));
  }

  // The pattern seen at position g: if (g.z)|_F = p then z(f g) = p(f), so
  // placing p at g yields the pattern f g -> p(f).
  Pattern placed_at(const Group& G, const Element& g) const {
    Pattern r;
    for (auto& [f, a] : cells_) r.cells_.emplace(G.mul(f, g), a);
    return r;
  }

  // Inverse of placed_at: the pattern f -> p(f g), for f g in the domain.
  Pattern read_at(const Group& G, const Element& g) const {
    return placed_at(G, G.inv(g));
  }

  Pattern restricted(const FiniteSubset& F) const {
    Pattern r;
    for (auto& [g, a] : cells_)
      if (F.contains(g)) r.cells_.emplace(g, a);
    return r;
  }

  Pattern projected(int n, int alphabet) const {
    Pattern r;
    for (auto& [g, a] : cells_) r.cells_.emplace(g, project_levels(a, n, alphabet));
    return r;
  }

  bool compatible(const Pattern& o) const {
    for (auto& [g, a] : o.cells_) {
      auto it = cells_.find(g);
      if (it != cells_.end() && it->second != a) return false;
    }
    return true;
  }

  // Union of two compatible patterns.
  Pattern merged(const Pattern& o) const {
    if (!compatible(o)) throw PreconditionError("merging incompatible patterns");
    Pattern r = *this;
    for (auto& [g, a] : o.cells_) r.cells_.emplace(g, a);
    return r;
  }

  // Values listed in canonical (ball) order of the domain.
  std::vector<Letter> values_in_order(const Group& G) const {
    std::vector<Letter> v;
    for (auto& g : domain(G)) v.push_back(cells_.at(g));
    return v;
  }

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::map<Element, Letter> cells_;
};

inline Pattern make_pattern(const FiniteSubset& F, const std::vector<Letter>& values) {
  if (F.size() != values.size()) throw PreconditionError("pattern domain and values differ in size");
  Pattern p;
  for (std::size_t i = 0; i < F.size(); ++i) p.set(F[i], values[i]);
  return p;
}

// Z helper: word w placed on positions start, start+1, ...
inline Pattern word_pattern(const Group& G, const std::vector<Letter>& w, long start = 0) {
  Pattern p;
  for (std::size_t i = 0; i < w.size(); ++i) p.set(G.z(start + static_cast<long>(i)), w[i]);
  return p;
}

inline json to_json(const Group& G, const Pattern& p) {
  FiniteSubset d = p.domain(G);
  return json{{"domain", to_json(G, d)}, {"values", p.values_in_order(G)}};
}

inline Pattern pattern_from_json(const Group& G, const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("values"))
    throw ParseError("pattern must be an object with domain and values");
  const auto& d = j.at("domain");
  const auto& v = j.at("values");
  if (!d.is_array() || !v.is_array() || d.size() != v.size())
    throw ParseError("pattern domain/values mismatch");
  Pattern p;
  for (std::size_t i = 0; i < d.size(); ++i) {
    Element g = G.from_json(d[i]);
    if (p.contains(g)) throw ParseError("pattern domain has duplicates");
    p.set(g, v[i].get<Letter>());
  }
  return p;
}

// "0@0", "1@0,0@1", "(1,0)@(0,0)" for Z^2 uses ';' between cells.
inline Pattern parse_pattern(const Group& G, const std::string& text) {
  Pattern p;
  if (text.empty()) return p;
  char sep = (G.kind() == GroupKind::lattice && G.rank() > 1) || G.kind() == GroupKind::free
                 ? ';'
                 : ',';
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    auto at = cell.find('@');
    if (at == std::string::npos) throw ParseError("pattern cell must be letter@element: " + cell);
    Letter a;
    try {
      a = std::stoi(cell.substr(0, at));
    } catch (...) {
      throw ParseError("bad letter in pattern: " + cell);
    }
    p.set(G.parse_element(cell.substr(at + 1)), a);
  }
  return p;
}

// A subshift presentation: an SFT by forbidden patterns, or (on Z) the
// subshift generated by a primitive substitution.
struct SubshiftSpec {
  std::string name;
  std::string group = "Z";
  int alphabet = 2;
  int stack = 1;
  std::vector<Pattern> forbidden;
  std::vector<std::vector<Letter>> substitution;

  int letters() const { return static_cast<int>(ipow(alphabet, stack)); }
  bool is_substitution() const { return !substitution.empty(); }
  Group group_context() const { return Group::parse(group); }

  void validate() const {
    if (alphabet < 2 && substitution.empty() && !(alphabet == 1 && forbidden.empty()))
      throw ParseError("alphabet size must be at least 2");
    if (stack < 1) throw ParseError("stack depth must be positive");
    for (auto& f : forbidden) {
      if (f.empty()) throw ParseError("forbidden pattern with empty domain");
      for (auto& [g, a] : f.cells())
        if (a < 0 || a >= letters()) throw ParseError("forbidden letter out of range");
    }
    if (is_substitution()) {
      if (group != "Z") throw ParseError("substitution subshifts live on Z");
      for (auto& img : substitution)
        for (Letter a : img)
          if (a < 0 || a >= letters()) throw ParseError("substitution letter out of range");
    }
  }
};

inline json to_json(const SubshiftSpec& s) {
  Group G = s.group_context();
  json f = json::array();
  for (auto& p : s.forbidden) f.push_back(to_json(G, p));
  json j{{"group", s.group}, {"alphabet", s.alphabet}, {"stack", s.stack},
         {"forbidden", f},   {"name", s.name}};
  if (s.is_substitution()) j["substitution"] = s.substitution;
  return j;
}

inline SubshiftSpec spec_from_json(const json& j) {
  try {
    SubshiftSpec s;
    s.group = j.value("group", std::string("Z"));
    s.alphabet = j.value("alphabet", 2);
    s.stack = j.value("stack", 1);
    s.name = j.value("name", std::string("unnamed"));
    Group G = s.group_context();
    if (j.contains("forbidden"))
      for (auto& p : j.at("forbidden")) s.forbidden.push_back(pattern_from_json(G, p));
    if (j.contains("substitution"))
      s.substitution = j.at("substitution").get<std::vector<std::vector<Letter>>>();
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad subshift spec: ") + e.what());
  }
}

// ---- corpus --------------------------------------------------------------

inline std::vector<std::string> corpus_names() {
  return {"full_shift", "golden_mean", "fibonacci_substitution", "period2"};
}

inline SubshiftSpec builtin_spec(const std::string& name) {
  Group Z = Group::lattice(1);
  SubshiftSpec s;
  s.name = name;
  if (name == "full_shift") return s;
  if (name == "golden_mean") {
    s.forbidden.push_back(word_pattern(Z, {1, 1}));
    return s;
  }
  if (name == "period2") {
    s.forbidden.push_back(word_pattern(Z, {0, 0}));
    s.forbidden.push_back(word_pattern(Z, {1, 1}));
    return s;
  }
  if (name == "fibonacci_substitution") {
    s.substitution = {{0, 1}, {0}};
    return s;
  }
  throw ParseError("unknown corpus system: " + name);
}

// Builtin name, or a path to a JSON spec file.
inline SubshiftSpec load_spec(const std::string& name_or_path) {
  for (auto& n : corpus_names())
    if (n == name_or_path) return builtin_spec(n);
  std::ifstream in(name_or_path);
  if (!in) throw ParseError("not a corpus name or readable spec file: " + name_or_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec file is not JSON: ") + e.what());
  }
  return spec_from_json(j);
}

}  // namespace symdyn
