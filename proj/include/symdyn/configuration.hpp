#pragma once

// Total configurations G -> A given by a finite rule, evaluated pointwise and
// memoized. The cache is filled idempotently under a mutex, so concurrent
// readers see the same value for every position.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "language.hpp"

namespace symdyn {

class Configuration {
 public:
  using Rule = std::function<Letter(const Element&)>;

  Configuration() = default;
  Configuration(Group G, Rule rule, std::string kind)
      : impl_(std::make_shared<Impl>(std::move(G), std::move(rule), std::move(kind))) {}

  const Group& group() const { return impl_->G; }
  const std::string& kind() const { return impl_->kind; }

  Letter operator()(const Element& g) const {
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->cache.find(g);
      if (it != impl_->cache.end()) return it->second;
    }
    Letter a = impl_->rule(g);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->cache.emplace(g, a).first->second;
  }

  Letter at(long v) const { return (*this)(impl_->G.z(v)); }

  static Configuration constant(const Group& G, Letter a) {
    return {G, [a](const Element&) { return a; }, "constant"};
  }

  // Z^d: the pattern on the box [0, p_1) x ... x [0, p_d) repeated.
  static Configuration periodic(const Group& G, const std::vector<int>& periods, const Pattern& cell) {
    if (G.kind() != GroupKind::lattice || static_cast<int>(periods.size()) != G.rank())
      throw PreconditionError("periodic configurations live on Z^d");
    for (int p : periods)
      if (p <= 0) throw PreconditionError("periods must be positive");
    return {G,
            [periods, cell](const Element& g) {
              Element r = g;
              for (std::size_t i = 0; i < periods.size(); ++i)
                r.c[i] = ((g.c[i] % periods[i]) + periods[i]) % periods[i];
              return cell.value(r);
            },
            "periodic"};
  }

  // Z: the word w repeated, with w[0] at position 0.
  static Configuration periodic_word(const std::vector<Letter>& w) {
    Group Z = Group::lattice(1);
    return periodic(Z, {static_cast<int>(w.size())}, word_pattern(Z, w));
  }

  static Configuration explicit_with_default(const Group& G, Pattern p, Letter fallback) {
    return {G,
            [p = std::move(p), fallback](const Element& g) {
              auto a = p.at(g);
              return a ? *a : fallback;
            },
            "explicit"};
  }

  // Two-sided fixed point of a substitution on Z.
  static Configuration substitution_point(const SubshiftSpec& spec) {
    auto lang = std::make_shared<FactorLanguage>(spec);
    struct Cache {
      std::mutex mu;
      std::vector<Letter> left, right;
    };
    auto cache = std::make_shared<Cache>();
    return {Group::lattice(1),
            [lang, cache](const Element& g) {
              long v = g.c[0];
              std::size_t need = static_cast<std::size_t>(v < 0 ? -v : v) + 1;
              std::lock_guard<std::mutex> lock(cache->mu);
              if (cache->right.size() < need) {
                auto [l, r] = lang->two_sided(std::max<std::size_t>(need, 64));
                cache->left = std::move(l);
                cache->right = std::move(r);
              }
              return v >= 0 ? cache->right[static_cast<std::size_t>(v)]
                            : cache->left[static_cast<std::size_t>(-v - 1)];
            },
            "substitution"};
  }

 private:
  struct Impl {
    Impl(Group g, Rule r, std::string k) : G(std::move(g)), rule(std::move(r)), kind(std::move(k)) {}
    Group G;
    Rule rule;
    std::string kind;
    std::mutex mu;
    std::map<Element, Letter> cache;
  };
  std::shared_ptr<Impl> impl_;
};

// (g . z)(h) = z(h g)
inline Configuration shift(const Configuration& z, const Element& g) {
  const Group& G = z.group();
  return {G, [z, g, G](const Element& h) { return z(G.mul(h, g)); }, "shift"};
}

inline Pattern restrict(const Configuration& z, const FiniteSubset& F) {
  Pattern p;
  for (auto& f : F) p.set(f, z(f));
  return p;
}

}  // namespace symdyn
