#pragma once

// Freeness padding: keep the data of Z' and add one free level on top.

#include "subshift.hpp"

namespace symdyn {

inline SubshiftSpec pad_free(const SubshiftSpec& base, int n) {
  base.validate();
  if (base.is_substitution()) throw PreconditionError("pad_free: needs a forbidden-pattern presentation");
  if (n < 1 || n > base.stack) throw PreconditionError("pad_free: level n must lie in [1, stack]");
  SubshiftSpec out = base;
  out.name = base.name + "+free";
  out.stack = base.stack + 1;
  out.forbidden.clear();
  const Letter L = base.letters();
  const int A = base.alphabet;
  // every forbidden pattern, with any letter on the new level
  for (auto& p : base.forbidden) {
    std::vector<std::pair<Element, Letter>> cells(p.cells().begin(), p.cells().end());
    std::vector<Letter> top(cells.size(), 0);
    for (;;) {
      Pattern q;
      for (std::size_t i = 0; i < cells.size(); ++i) q.set(cells[i].first, cells[i].second + L * top[i]);
      out.forbidden.push_back(std::move(q));
      std::size_t i = 0;
      while (i < top.size() && ++top[i] == A) top[i++] = 0;
      if (i == top.size()) break;
    }
  }
  return out;
}

}  // namespace symdyn
