#pragma once

// Concrete finitely generated groups: Z^d, free groups F_k and finite groups
// given by a multiplication table. Every element has a unique canonical form
// and elements are ordered by word length, then lexicographically.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace symdyn {

using json = nlohmann::json;
using Letter = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BallOverflow : public Error {
 public:
  using Error::Error;
};

// Canonical form: integer vector (lattice), letter codes 2i / 2i+1 for
// generator i and its inverse (free group), or a single table index.
struct Element {
  std::vector<int> c;

  Element() = default;
  explicit Element(std::vector<int> v) : c(std::move(v)) {}

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

enum class GroupKind { lattice, free, finite };

inline std::size_t max_ball_size() {
  if (const char* env = std::getenv("SYMDYN_MAX_BALL")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return 2'000'000;
}

class FiniteSubset;

class Group {
 public:
  Group() : Group(lattice(1)) {}

  static Group lattice(int d) {
    if (d < 1) throw ParseError("lattice rank must be positive");
    Group g(GroupKind::lattice, d);
    return g;
  }

  static Group free(int k) {
    if (k < 1) throw ParseError("free group rank must be positive");
    return Group(GroupKind::free, k);
  }

  // table[i][j] = index of i*j; generators must form a symmetric set.
  static Group finite(std::string name, std::vector<std::vector<int>> table,
                      std::vector<int> generators) {
    Group g(GroupKind::finite, static_cast<int>(table.size()));
    auto t = std::make_shared<FiniteTable>();
    t->name = std::move(name);
    t->mul = std::move(table);
    const int n = static_cast<int>(t->mul.size());
    t->identity = -1;
    for (int i = 0; i < n && t->identity < 0; ++i) {
      bool ok = true;
      for (int j = 0; j < n; ++j)
        if (t->mul[i][j] != j || t->mul[j][i] != j) ok = false;
      if (ok) t->identity = i;
    }
    if (t->identity < 0) throw ParseError("finite table has no identity");
    t->inv.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (t->mul[i][j] == t->identity) t->inv[i] = j;
    for (int i = 0; i < n; ++i)
      if (t->inv[i] < 0) throw ParseError("finite table is not a group");
    std::set<int> gens(generators.begin(), generators.end());
    for (int s : generators) gens.insert(t->inv[s]);
    gens.erase(t->identity);
    t->generators.assign(gens.begin(), gens.end());
    // word length: BFS in the Cayley graph
    t->dist.assign(n, -1);
    t->dist[t->identity] = 0;
    std::deque<int> q{t->identity};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int s : t->generators) {
        int y = t->mul[x][s];
        if (t->dist[y] < 0) {
          t->dist[y] = t->dist[x] + 1;
          q.push_back(y);
        }
      }
    }
    for (int d : t->dist)
      if (d < 0) throw ParseError("generators do not generate the finite group");
    g.table_ = std::move(t);
    return g;
  }

  static Group cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return finite("Z" + std::to_string(n), t, n > 1 ? std::vector<int>{1} : std::vector<int>{});
  }

  static Group symmetric3() {
    // permutations of {0,1,2} in lexicographic order of their images
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index = [&](const std::array<int, 3>& q) {
      return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
        t[i][j] = index(c);
      }
    return finite("S3", t, {index({1, 0, 2}), index({1, 2, 0})});
  }

  static Group klein4() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[i][j] = i ^ j;
    return finite("K4", t, {1, 2});
  }

  // "Z", "Z^2", "F2", "finite:Z2", "finite:S3", "finite:K4"
  static Group parse(std::string_view text) {
    std::string s(text);
    if (s == "Z") return lattice(1);
    if (s.rfind("Z^", 0) == 0) return lattice(parse_int(s.substr(2), s));
    if (s.size() > 1 && s[0] == 'F') return free(parse_int(s.substr(1), s));
    if (s.rfind("finite:", 0) == 0) {
      std::string name = s.substr(7);
      if (name == "S3") return symmetric3();
      if (name == "K4") return klein4();
      if (name.size() > 1 && name[0] == 'Z') return cyclic(parse_int(name.substr(1), s));
      throw ParseError("unknown finite group table: " + name);
    }
    throw ParseError("unknown group descriptor: " + s);
  }

  std::string descriptor() const {
    switch (kind_) {
      case GroupKind::lattice:
        return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
      case GroupKind::free:
        return "F" + std::to_string(rank_);
      case GroupKind::finite:
        return "finite:" + table_->name;
    }
    return {};
  }

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  bool is_integers() const { return kind_ == GroupKind::lattice && rank_ == 1; }
  bool is_finite() const { return kind_ == GroupKind::finite; }
  int order() const { return is_finite() ? static_cast<int>(table_->mul.size()) : -1; }

  Element identity() const {
    switch (kind_) {
      case GroupKind::lattice:
        return Element(std::vector<int>(rank_, 0));
      case GroupKind::free:
        return Element();
      case GroupKind::finite:
        return Element({table_->identity});
    }
    return {};
  }

  Element mul(const Element& g, const Element& h) const {
    switch (kind_) {
      case GroupKind::lattice: {
        Element r = g;
        for (int i = 0; i < rank_; ++i) r.c[i] += h.c[i];
        return r;
      }
      case GroupKind::free: {
        Element r = g;
        for (int l : h.c) {
          if (!r.c.empty() && r.c.back() == (l ^ 1))
            r.c.pop_back();
          else
            r.c.push_back(l);
        }
        return r;
      }
      case GroupKind::finite:
        return Element({table_->mul[g.c[0]][h.c[0]]});
    }
    return {};
  }

  Element inv(const Element& g) const {
    switch (kind_) {
      case GroupKind::lattice: {
        Element r = g;
        for (int& x : r.c) x = -x;
        return r;
      }
      case GroupKind::free: {
        Element r;
        r.c.reserve(g.c.size());
        for (auto it = g.c.rbegin(); it != g.c.rend(); ++it) r.c.push_back(*it ^ 1);
        return r;
      }
      case GroupKind::finite:
        return Element({table_->inv[g.c[0]]});
    }
    return {};
  }

  int length(const Element& g) const {
    switch (kind_) {
      case GroupKind::lattice: {
        int s = 0;
        for (int x : g.c) s += std::abs(x);
        return s;
      }
      case GroupKind::free:
        return static_cast<int>(g.c.size());
      case GroupKind::finite:
        return table_->dist[g.c[0]];
    }
    return 0;
  }

  bool less(const Element& a, const Element& b) const {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a.c < b.c;
  }

  std::vector<Element> generators() const {
    std::vector<Element> out;
    switch (kind_) {
      case GroupKind::lattice:
        for (int i = 0; i < rank_; ++i)
          for (int s : {1, -1}) {
            Element e(std::vector<int>(rank_, 0));
            e.c[i] = s;
            out.push_back(e);
          }
        break;
      case GroupKind::free:
        for (int l = 0; l < 2 * rank_; ++l) out.push_back(Element({l}));
        break;
      case GroupKind::finite:
        for (int s : table_->generators) out.push_back(Element({s}));
        break;
    }
    std::sort(out.begin(), out.end(), [this](auto& a, auto& b) { return less(a, b); });
    return out;
  }

  inline FiniteSubset ball(int r) const;

  // Integer helpers for Z.
  Element z(long v) const {
    if (!is_integers()) throw PreconditionError("integer element requested outside Z");
    return Element({static_cast<int>(v)});
  }

  json to_json(const Element& g) const {
    switch (kind_) {
      case GroupKind::lattice:
        if (rank_ == 1) return g.c[0];
        return g.c;
      case GroupKind::free:
        return word_string(g, "");
      case GroupKind::finite:
        return g.c[0];
    }
    return nullptr;
  }

  Element from_json(const json& j) const {
    switch (kind_) {
      case GroupKind::lattice: {
        if (j.is_number_integer()) {
          if (rank_ != 1) throw ParseError("expected coordinate array for Z^d element");
          return Element({j.get<int>()});
        }
        if (!j.is_array() || static_cast<int>(j.size()) != rank_)
          throw ParseError("bad lattice element: " + j.dump());
        return Element(j.get<std::vector<int>>());
      }
      case GroupKind::free:
        if (!j.is_string()) throw ParseError("free group element must be a string");
        return parse_element(j.get<std::string>());
      case GroupKind::finite: {
        if (!j.is_number_integer()) throw ParseError("finite group element must be an index");
        int v = j.get<int>();
        if (v < 0 || v >= order()) throw ParseError("finite group index out of range");
        return Element({v});
      }
    }
    return {};
  }

  std::string to_string(const Element& g) const {
    switch (kind_) {
      case GroupKind::lattice: {
        if (rank_ == 1) return std::to_string(g.c[0]);
        std::string s = "(";
        for (int i = 0; i < rank_; ++i) s += (i ? "," : "") + std::to_string(g.c[i]);
        return s + ")";
      }
      case GroupKind::free:
        return word_string(g, "e");
      case GroupKind::finite:
        return std::to_string(g.c[0]);
    }
    return {};
  }

  // "5", "(1,2)" / "1,2", "aB", "e", finite index.
  Element parse_element(std::string_view text) const {
    std::string s(text);
    switch (kind_) {
      case GroupKind::lattice: {
        std::string t;
        for (char ch : s)
          if (ch != '(' && ch != ')' && ch != ' ') t += ch;
        std::vector<int> v;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ',')) v.push_back(parse_int(part, s));
        if (static_cast<int>(v.size()) != rank_) throw ParseError("bad lattice element: " + s);
        return Element(v);
      }
      case GroupKind::free: {
        Element r;
        if (s == "e" || s.empty()) return r;
        for (char ch : s) {
          int l;
          if (ch >= 'a' && ch < 'a' + rank_)
            l = 2 * (ch - 'a');
          else if (ch >= 'A' && ch < 'A' + rank_)
            l = 2 * (ch - 'A') + 1;
          else
            throw ParseError("bad free group word: " + s);
          r = mul(r, Element({l}));
        }
        return r;
      }
      case GroupKind::finite: {
        int v = parse_int(s, s);
        if (v < 0 || v >= order()) throw ParseError("finite group index out of range");
        return Element({v});
      }
    }
    return {};
  }

  friend bool operator==(const Group& a, const Group& b) {
    return a.descriptor() == b.descriptor();
  }

 private:
  struct FiniteTable {
    std::string name;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    std::vector<int> dist;
    std::vector<int> generators;
    int identity = 0;
  };

  Group(GroupKind k, int r) : kind_(k), rank_(r) {}

  static int parse_int(const std::string& s, const std::string& ctx) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(s, &pos);
      if (pos != s.size()) throw ParseError("");
      return v;
    } catch (...) {
      throw ParseError("bad integer in '" + ctx + "'");
    }
  }

  std::string word_string(const Element& g, const std::string& empty) const {
    if (g.c.empty()) return empty;
    std::string s;
    for (int l : g.c) s += static_cast<char>(((l & 1) ? 'A' : 'a') + l / 2);
    return s;
  }

  GroupKind kind_ = GroupKind::lattice;
  int rank_ = 1;
  std::shared_ptr<const FiniteTable> table_;
};

// Finite set of group elements kept in canonical order.
class FiniteSubset {
 public:
  FiniteSubset() = default;

  FiniteSubset(const Group& g, std::vector<Element> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end(), [&g](auto& a, auto& b) { return g.less(a, b); });
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    index_.insert(elems_.begin(), elems_.end());
  }

  bool contains(const Element& e) const { return index_.count(e) > 0; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const Element& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Element>& elements() const { return elems_; }

  bool subset_of(const FiniteSubset& other) const {
    return std::all_of(elems_.begin(), elems_.end(), [&](auto& e) { return other.contains(e); });
  }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.index_ == b.index_;
  }

 private:
  std::vector<Element> elems_;
  std::set<Element> index_;
};

inline FiniteSubset Group::ball(int r) const {
  if (r < 0) throw PreconditionError("ball radius must be non-negative");
  const std::size_t cap = max_ball_size();
  std::vector<Element> out;
  switch (kind_) {
    case GroupKind::lattice: {
      std::vector<int> cur(rank_, 0);
      auto rec = [&](auto&& self, int axis, int budget) -> void {
        if (axis == rank_) {
          out.emplace_back(cur);
          if (out.size() > cap) throw BallOverflow("ball exceeds SYMDYN_MAX_BALL");
          return;
        }
        for (int v = -budget; v <= budget; ++v) {
          cur[axis] = v;
          self(self, axis + 1, budget - std::abs(v));
        }
        cur[axis] = 0;
      };
      rec(rec, 0, r);
      break;
    }
    case GroupKind::free: {
      out.push_back(identity());
      std::size_t layer_begin = 0;
      for (int len = 1; len <= r; ++len) {
        std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
          for (int l = 0; l < 2 * rank_; ++l) {
            const auto& w = out[i].c;
            if (!w.empty() && w.back() == (l ^ 1)) continue;
            Element e = out[i];
            e.c.push_back(l);
            out.push_back(std::move(e));
            if (out.size() > cap) throw BallOverflow("ball exceeds SYMDYN_MAX_BALL");
          }
        }
        layer_begin = layer_end;
      }
      break;
    }
    case GroupKind::finite:
      for (int i = 0; i < order(); ++i)
        if (table_->dist[i] <= r) out.push_back(Element({i}));
      break;
  }
  return FiniteSubset(*this, std::move(out));
}

// ---- set arithmetic ------------------------------------------------------

inline FiniteSubset product(const Group& G, const FiniteSubset& A, const FiniteSubset& B) {
  std::vector<Element> out;
  out.reserve(A.size() * B.size());
  for (auto& a : A)
    for (auto& b : B) out.push_back(G.mul(a, b));
  return FiniteSubset(G, std::move(out));
}

inline FiniteSubset inverse(const Group& G, const FiniteSubset& A) {
  std::vector<Element> out;
  for (auto& a : A) out.push_back(G.inv(a));
  return FiniteSubset(G, std::move(out));
}

inline FiniteSubset power(const Group& G, const FiniteSubset& A, int k) {
  if (k < 1) throw PreconditionError("set power must be positive");
  FiniteSubset r = A;
  for (int i = 1; i < k; ++i) r = product(G, r, A);
  return r;
}

// {a g : a in A}
inline FiniteSubset translate(const Group& G, const FiniteSubset& A, const Element& g) {
  std::vector<Element> out;
  for (auto& a : A) out.push_back(G.mul(a, g));
  return FiniteSubset(G, std::move(out));
}

inline FiniteSubset set_union(const Group& G, const FiniteSubset& A, const FiniteSubset& B) {
  std::vector<Element> out(A.begin(), A.end());
  out.insert(out.end(), B.begin(), B.end());
  return FiniteSubset(G, std::move(out));
}

inline FiniteSubset set_minus(const Group& G, const FiniteSubset& A, const FiniteSubset& B) {
  std::vector<Element> out;
  for (auto& a : A)
    if (!B.contains(a)) out.push_back(a);
  return FiniteSubset(G, std::move(out));
}

inline FiniteSubset symmetrize(const Group& G, const FiniteSubset& A) {
  return set_union(G, A, inverse(G, A));
}

inline FiniteSubset integer_range(const Group& G, long lo, long hi) {
  std::vector<Element> out;
  for (long v = lo; v <= hi; ++v) out.push_back(G.z(v));
  return FiniteSubset(G, std::move(out));
}

inline int radius(const Group& G, const FiniteSubset& A) {
  int r = 0;
  for (auto& a : A) r = std::max(r, G.length(a));
  return r;
}

inline json to_json(const Group& G, const FiniteSubset& A) {
  json j = json::array();
  for (auto& a : A) j.push_back(G.to_json(a));
  return j;
}

inline FiniteSubset subset_from_json(const Group& G, const json& j) {
  if (!j.is_array()) throw ParseError("finite subset must be a JSON array");
  std::vector<Element> out;
  for (auto& e : j) out.push_back(G.from_json(e));
  return FiniteSubset(G, std::move(out));
}

// "-1,0,1", "0:10" (Z ranges), "ball:2", or ';'-separated elements "(0,0);(1,0)".
inline FiniteSubset parse_subset(const Group& G, std::string_view text) {
  std::string s(text);
  if (s.empty()) return {};
  if (s.rfind("ball:", 0) == 0) return G.ball(std::stoi(s.substr(5)));
  std::vector<Element> out;
  if (G.kind() == GroupKind::lattice && G.rank() == 1) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto colon = part.find(':', 1);
      try {
        if (colon != std::string::npos) {
          long lo = std::stol(part.substr(0, colon)), hi = std::stol(part.substr(colon + 1));
          for (long v = lo; v <= hi; ++v) out.push_back(G.z(v));
        } else {
          out.push_back(G.z(std::stol(part)));
        }
      } catch (const std::logic_error&) {
        throw ParseError("bad integer set: " + s);
      }
    }
  } else {
    char sep = G.kind() == GroupKind::lattice ? ';' : ',';
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(G.parse_element(part));
  }
  return FiniteSubset(G, std::move(out));
}

// ---- apartness and separation --------------------------------------------

// D E1 and D E2 are disjoint.
inline bool are_apart(const Group& G, const FiniteSubset& D, const FiniteSubset& E1,
                      const FiniteSubset& E2) {
  if (D.empty()) return true;
  FiniteSubset DE1 = product(G, D, E1);
  for (auto& d : D)
    for (auto& e : E2)
      if (DE1.contains(G.mul(d, e))) return false;
  return true;
}

// First pair (g, h), g != h in S, with Dg and Dh intersecting.
inline std::optional<std::pair<Element, Element>> separation_violation(const Group& G,
                                                                       const FiniteSubset& D,
                                                                       const FiniteSubset& S) {
  std::map<Element, Element> owner;
  for (auto& s : S)
    for (auto& d : D) {
      Element x = G.mul(d, s);
      auto [it, fresh] = owner.emplace(x, s);
      if (!fresh && !(it->second == s)) return std::make_pair(it->second, s);
    }
  return std::nullopt;
}

inline bool is_separated(const Group& G, const FiniteSubset& D, const FiniteSubset& S) {
  return !separation_violation(G, D, S).has_value();
}

// Greedy in canonical order; maximal within region.
inline FiniteSubset maximal_separated(const Group& G, const FiniteSubset& D,
                                      const FiniteSubset& region) {
  std::set<Element> occupied;
  std::vector<Element> chosen;
  for (auto& g : region) {
    bool free = true;
    for (auto& d : D)
      if (occupied.count(G.mul(d, g))) {
        free = false;
        break;
      }
    if (!free) continue;
    chosen.push_back(g);
    for (auto& d : D) occupied.insert(G.mul(d, g));
  }
  return FiniteSubset(G, std::move(chosen));
}

struct SyndeticityResult {
  bool found = false;
  int radius = -1;                  // least r with ball(r) S covering region
  std::optional<Element> uncovered; // first region element beyond max_radius
};

// Smallest ball F = ball(r), r <= max_radius, with F S covering region. Uses a
// multi-source breadth-first search: g lies in ball(r) S iff |g s^-1| <= r
// for some s in S, and left multiplication by generators moves one step.
inline SyndeticityResult syndeticity_witness(const Group& G, const FiniteSubset& S,
                                             const FiniteSubset& region, int max_radius) {
  SyndeticityResult res;
  std::map<Element, int> dist;
  std::deque<Element> q;
  for (auto& s : S) {
    dist.emplace(s, 0);
    q.push_back(s);
  }
  const auto gens = G.generators();
  std::size_t pending = 0;
  for (auto& g : region)
    if (!dist.count(g)) ++pending;
  while (!q.empty() && pending > 0) {
    Element x = q.front();
    q.pop_front();
    int dx = dist[x];
    if (dx >= max_radius) continue;
    for (auto& s : gens) {
      Element y = G.mul(s, x);
      if (dist.emplace(y, dx + 1).second) {
        if (region.contains(y)) --pending;
        q.push_back(std::move(y));
      }
    }
  }
  int worst = 0;
  for (auto& g : region) {
    auto it = dist.find(g);
    if (it == dist.end()) {
      res.uncovered = g;
      return res;
    }
    worst = std::max(worst, it->second);
  }
  res.found = true;
  res.radius = worst;
  return res;
}

}  // namespace symdyn
