#pragma once

// Products of subshifts, sliding block maps and their image pattern sets.

#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "configuration.hpp"
#include "subshift.hpp"

namespace symdyn {

// Letters of A x B are coded a + |A| b.
inline SubshiftSpec product_spec(const SubshiftSpec& A, const SubshiftSpec& B) {
  if (A.is_substitution() || B.is_substitution())
    throw PreconditionError("product_spec: substitution languages have no forbidden list to lift");
  if (Group::parse(A.group).descriptor() != Group::parse(B.group).descriptor())
    throw PreconditionError("product_spec: group contexts differ");
  const int LA = A.letters(), LB = B.letters();
  SubshiftSpec out;
  out.name = A.name + "*" + B.name;
  out.group = A.group;
  out.alphabet = LA * LB;
  out.stack = 1;
  // each forbidden pattern of one factor, paired with every letter choice of
  // the other factor on the same cells
  auto lift = [&](const Pattern& p, bool first) {
    std::vector<std::pair<Element, Letter>> cells(p.cells().begin(), p.cells().end());
    const int other = first ? LB : LA;
    std::vector<Letter> digits(cells.size(), 0);
    for (;;) {
      Pattern q;
      for (std::size_t i = 0; i < cells.size(); ++i)
        q.set(cells[i].first, first ? cells[i].second + LA * digits[i] : digits[i] + LA * cells[i].second);
      out.forbidden.push_back(std::move(q));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == other) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  };
  for (auto& p : A.forbidden) lift(p, true);
  for (auto& p : B.forbidden) lift(p, false);
  return out;
}

// Output at g depends on the input read at M g.
struct BlockMap {
  FiniteSubset memory;
  std::function<Letter(const Pattern&)> rule;  // argument has domain `memory`
  int out_letters = 2;

  static BlockMap identity(const Group& G, int letters) {
    return {FiniteSubset(G, {G.identity()}), [e = G.identity()](const Pattern& p) { return p.value(e); },
            letters};
  }

  // The image of p on {g : M g inside dom(p)}.
  Pattern apply(const Group& G, const Pattern& p) const {
    Pattern out;
    FiniteSubset dom = p.domain(G);
    for (auto& g : dom) {
      bool inside = true;
      for (auto& m : memory)
        if (!p.contains(G.mul(m, g))) {
          inside = false;
          break;
        }
      if (!inside) continue;
      out.set(g, rule(p.read_at(G, g).restricted(memory)));
    }
    return out;
  }

  Configuration apply(const Configuration& z) const {
    const Group& G = z.group();
    auto self = *this;
    return {G,
            [self, z, G](const Element& g) {
              Pattern p;
              for (auto& m : self.memory) p.set(m, z(G.mul(m, g)));
              return self.rule(p);
            },
            "block_map"};
  }
};

// An image subshift held as (source, rule); pattern sets are push-forwards.
class ImageShift {
 public:
  ImageShift(std::shared_ptr<const Subshift> source, BlockMap map)
      : src_(std::move(source)), map_(std::move(map)) {}

  const Subshift& source() const { return *src_; }
  const BlockMap& map() const { return map_; }

  std::vector<Pattern> pattern_set(const FiniteSubset& F, const Semantics& sem) const {
    const Group& G = src_->group();
    std::set<Pattern> out;
    for (auto& p : src_->pattern_set(product(G, map_.memory, F), sem)) out.insert(map_.apply(G, p).restricted(F));
    return {out.begin(), out.end()};
  }

 private:
  std::shared_ptr<const Subshift> src_;
  BlockMap map_;
};

inline ImageShift block_map_image(const SubshiftSpec& spec, BlockMap map) {
  return ImageShift(std::make_shared<Subshift>(spec), std::move(map));
}

}  // namespace symdyn
