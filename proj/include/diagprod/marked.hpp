#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "diagprod/basegroups.hpp"
#include "diagprod/perm.hpp"

namespace diagprod {

struct BallBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical labeled-ball pattern of a marked group: the BFS automaton with
/// states numbered in first-visit order under a fixed alphabet order.
/// Transition rows are recorded for states strictly inside the ball, so the
/// pattern determines exactly which words of length <= radius coincide.
/// Two markings have isomorphic radius-n balls iff their patterns are equal.
struct BallTable {
  int radius = 0;
  int alphabet = 0;
  bool symmetrized = true;
  std::vector<int> word_length;              // per state, identity first
  std::vector<std::vector<int>> first_word;  // label indices of the BFS word
  std::vector<std::vector<int>> delta;       // per interior state: alphabet -> state
  std::vector<std::size_t> level_sizes;      // new states per radius step

  std::size_t size() const { return word_length.size(); }
  bool pattern_equal(const BallTable& o) const {
    return radius == o.radius && alphabet == o.alphabet &&
           symmetrized == o.symmetrized && word_length == o.word_length &&
           delta == o.delta;
  }
};

template <class G>
struct Ball {
  BallTable table;
  std::vector<typename G::Elem> elems;  // indexed by state id
};

/// BFS over the marked group to the given radius. Deterministic: generators
/// in marking order, then inverses in the same order when symmetrized.
template <class G>
Ball<G> ball(const G& g, int radius, bool symmetrized = true,
             std::size_t budget = 10'000'000) {
  Ball<G> b;
  auto& t = b.table;
  t.radius = radius;
  t.symmetrized = symmetrized;

  std::vector<typename G::Elem> alphabet = g.generators();
  if (symmetrized) {
    const std::size_t k = alphabet.size();
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(g.inv(alphabet[i]));
  }
  t.alphabet = static_cast<int>(alphabet.size());

  std::unordered_map<std::string, int> index;
  b.elems.push_back(g.identity());
  t.word_length.push_back(0);
  t.first_word.push_back({});
  index.emplace(g.key(b.elems[0]), 0);
  t.level_sizes.push_back(1);

  std::size_t lo = 0;
  for (int rad = 1; rad <= radius; ++rad) {
    const std::size_t hi = b.elems.size();
    for (std::size_t s = lo; s < hi; ++s) {
      std::vector<int> row(alphabet.size());
      for (std::size_t a = 0; a < alphabet.size(); ++a) {
        auto ne = g.mul(b.elems[s], alphabet[a]);
        auto k = g.key(ne);
        auto it = index.find(k);
        if (it == index.end()) {
          if (b.elems.size() >= budget)
            throw BallBudgetExceeded("ball: element budget exceeded at radius " +
                                     std::to_string(rad));
          const int id = static_cast<int>(b.elems.size());
          it = index.emplace(std::move(k), id).first;
          b.elems.push_back(std::move(ne));
          t.word_length.push_back(rad);
          auto w = t.first_word[s];
          w.push_back(static_cast<int>(a));
          t.first_word.push_back(std::move(w));
        }
        row[a] = it->second;
      }
      t.delta.push_back(std::move(row));
    }
    t.level_sizes.push_back(b.elems.size() - hi);
    lo = hi;
  }
  return b;
}

/// Marked-ball isomorphism at radius n: the word-equality patterns coincide.
template <class G1, class G2>
bool ball_isomorphic(const G1& g1, const G2& g2, int n, bool symmetrized = true,
                     std::size_t budget = 10'000'000) {
  if (g1.generators().size() != g2.generators().size())
    throw std::invalid_argument("ball_isomorphic: marking sizes differ");
  return ball(g1, n, symmetrized, budget)
      .table.pattern_equal(ball(g2, n, symmetrized, budget).table);
}

/// Largest n <= horizon with ball_isomorphic(g1, g2, n); 0 if none.
template <class G1, class G2>
int local_embedding_radius(const G1& g1, const G2& g2, int horizon,
                           bool symmetrized = true,
                           std::size_t budget = 10'000'000) {
  int best = 0;
  for (int n = 1; n <= horizon; ++n) {
    if (!ball_isomorphic(g1, g2, n, symmetrized, budget)) break;
    best = n;
  }
  return best;
}

/// Marked tuple of permutations of a common degree.
struct PermMarking {
  using Elem = Perm;
  int degree = 1;
  std::vector<Perm> gens;
  std::vector<std::string> names;

  PermMarking(std::vector<Perm> generators, std::vector<std::string> labels);

  Elem identity() const { return Perm(degree); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  const std::vector<Elem>& generators() const { return gens; }
  const std::vector<std::string>& labels() const { return names; }
  std::string key(const Elem& e) const { return e.key(); }
};

/// The lamplighter (Z/3Z) wr Z marked by {alpha, beta}.
struct LampMarking {
  using Elem = LampElement;
  Elem identity() const { return LampElement{}; }
  Elem mul(const Elem& a, const Elem& b) const { return lamp_mul(a, b); }
  Elem inv(const Elem& a) const { return lamp_inv(a); }
  std::vector<Elem> generators() const {
    return {LampElement::alpha(), LampElement::beta()};
  }
  std::vector<std::string> labels() const { return {"a", "b"}; }
  std::string key(const Elem& e) const { return e.key(); }
};

/// A(Z) = Z ⋉ Alt_fin(Z) marked by {shift, tau}.
struct AZMarking {
  using Elem = AZElement;
  Elem identity() const { return AZElement{}; }
  Elem mul(const Elem& a, const Elem& b) const { return az_mul(a, b); }
  Elem inv(const Elem& a) const { return az_inv(a); }
  std::vector<Elem> generators() const {
    return {AZElement::shift_gen(), AZElement::tau()};
  }
  std::vector<std::string> labels() const { return {"s", "t"}; }
  std::string key(const Elem& e) const { return e.key(); }
};

/// The classical level-m marking of Alt(d): full cycle plus the residue
/// 3-cycle theta(tau), i.e. the image of AZMarking under theta_az.
PermMarking classical_level_marking(int d);

/// CSV rows (radius, size, new_elements) for ball growth output.
std::string ball_growth_csv(const BallTable& t);

}  // namespace diagprod
