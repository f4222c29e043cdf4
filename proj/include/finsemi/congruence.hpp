#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finsemi/detail/union_find.hpp"
#include "finsemi/error.hpp"
#include "finsemi/limits.hpp"
#include "finsemi/morphism.hpp"
#include "finsemi/semigroup.hpp"

namespace finsemi {

// A congruence stored as a block labelling with blocks numbered by least
// member, so two congruences on the same carrier are equal iff their
// labellings are equal.
class Congruence {
 public:
  // Canonicalises `labels` and verifies left and right compatibility.
  static Congruence from_labels(FiniteSemigroup const&   S,
                                std::span<Element const> labels) {
    if (labels.size() != S.order()) {
      throw InvalidArgument("labelling has length "
                            + std::to_string(labels.size()) + ", expected "
                            + std::to_string(S.order()));
    }
    Congruence c(S, canonical(labels));
    c.check_compatible();
    return c;
  }

  // Blocks as lists of elements; they must partition the carrier.
  static Congruence from_blocks(FiniteSemigroup const&                   S,
                                std::vector<std::vector<Element>> const& blocks) {
    constexpr Element    unset = ~Element{0};
    std::vector<Element> labels(S.order(), unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) {
        throw InvalidArgument("empty block");
      }
      for (Element x : blocks[b]) {
        if (x >= S.order()) {
          throw InvalidArgument("element " + std::to_string(x)
                                + " out of range");
        }
        if (labels[x] != unset) {
          throw InvalidArgument("element " + std::to_string(x)
                                + " appears in two blocks");
        }
        labels[x] = static_cast<Element>(b);
      }
    }
    for (Element x = 0; x < S.order(); ++x) {
      if (labels[x] == unset) {
        throw InvalidArgument("element " + std::to_string(x)
                              + " is in no block");
      }
    }
    return from_labels(S, labels);
  }

  // Caller guarantees `labels` is canonical and compatible.
  static Congruence trusted(FiniteSemigroup S, std::vector<Element> labels) {
    return Congruence(std::move(S), std::move(labels));
  }

  static Congruence equality(FiniteSemigroup const& S) {
    std::vector<Element> labels(S.order());
    for (Element x = 0; x < S.order(); ++x) {
      labels[x] = x;
    }
    return Congruence(S, std::move(labels));
  }

  static Congruence universal(FiniteSemigroup const& S) {
    return Congruence(S, std::vector<Element>(S.order(), 0));
  }

  FiniteSemigroup const&      carrier() const noexcept { return carrier_; }
  std::vector<Element> const& block_of() const noexcept { return block_of_; }
  Element block_of(Element x) const noexcept { return block_of_[x]; }

  // Number of blocks, the order of the quotient.
  std::size_t index() const noexcept { return index_; }

  bool related(Element a, Element b) const noexcept {
    return block_of_[a] == block_of_[b];
  }

  bool is_equality() const noexcept { return index_ == carrier_.order(); }
  bool is_universal() const noexcept { return index_ == 1; }

  // Blocks in order of least member, each sorted.
  std::vector<std::vector<Element>> blocks() const {
    std::vector<std::vector<Element>> out(index_);
    for (Element x = 0; x < block_of_.size(); ++x) {
      out[block_of_[x]].push_back(x);
    }
    return out;
  }

  // Least member of each block.
  std::vector<Element> representatives() const {
    std::vector<Element> reps(index_);
    for (Element x = static_cast<Element>(block_of_.size()); x-- > 0;) {
      reps[block_of_[x]] = x;
    }
    return reps;
  }

  friend bool operator==(Congruence const& x, Congruence const& y) {
    return x.block_of_ == y.block_of_ && x.carrier_ == y.carrier_;
  }

  // Lexicographic on labellings: universal first, equality last.
  friend bool operator<(Congruence const& x, Congruence const& y) {
    return x.block_of_ < y.block_of_;
  }

  static std::vector<Element> canonical(std::span<Element const> labels) {
    std::vector<Element>                 out(labels.size());
    std::unordered_map<Element, Element> renumber;
    for (std::size_t x = 0; x < labels.size(); ++x) {
      auto [it, fresh] = renumber.try_emplace(
          labels[x], static_cast<Element>(renumber.size()));
      out[x] = it->second;
    }
    return out;
  }

 private:
  Congruence(FiniteSemigroup S, std::vector<Element> labels)
      : carrier_(std::move(S)), block_of_(std::move(labels)) {
    index_ = block_of_.empty()
                 ? 0
                 : *std::max_element(block_of_.begin(), block_of_.end()) + 1;
  }

  // Compatibility against block representatives suffices by transitivity.
  void check_compatible() const {
    auto reps = representatives();
    for (Element a = 0; a < carrier_.order(); ++a) {
      Element r = reps[block_of_[a]];
      if (r == a) {
        continue;
      }
      for (Element s = 0; s < carrier_.order(); ++s) {
        if (block_of_[carrier_.product(s, a)]
                != block_of_[carrier_.product(s, r)]
            || block_of_[carrier_.product(a, s)]
                   != block_of_[carrier_.product(r, s)]) {
          throw NotACongruence(r, a, s);
        }
      }
    }
  }

  FiniteSemigroup      carrier_;
  std::vector<Element> block_of_;
  std::size_t          index_ = 0;
};

// A deduplicated set of congruences on one carrier, kept sorted by labelling.
class CongruenceFamily {
 public:
  explicit CongruenceFamily(FiniteSemigroup carrier)
      : carrier_(std::move(carrier)) {}

  CongruenceFamily(FiniteSemigroup carrier, std::vector<Congruence> members)
      : carrier_(std::move(carrier)), members_(std::move(members)) {
    for (auto const& c : members_) {
      if (!(c.carrier() == carrier_)) {
        throw CarrierMismatch();
      }
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }

  FiniteSemigroup const&         carrier() const noexcept { return carrier_; }
  std::vector<Congruence> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool        empty() const noexcept { return members_.empty(); }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(Congruence const& c) const {
    return std::binary_search(members_.begin(), members_.end(), c);
  }

 private:
  FiniteSemigroup         carrier_;
  std::vector<Congruence> members_;
};

namespace detail {

  // Restores compatibility after the pairs in `pending` were united in `uf`.
  // Every pair whose translates get merged is queued in turn.
  inline void close_congruence(FiniteSemigroup const&                    S,
                               UnionFind&                                uf,
                               std::deque<std::pair<Element, Element>>& pending) {
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop_front();
      for (Element s = 0; s < S.order(); ++s) {
        Element p = S.product(s, x), q = S.product(s, y);
        if (uf.unite(p, q)) {
          pending.emplace_back(p, q);
        }
        p = S.product(x, s);
        q = S.product(y, s);
        if (uf.unite(p, q)) {
          pending.emplace_back(p, q);
        }
      }
    }
  }

  inline UnionFind union_find_of(Congruence const& c) {
    UnionFind uf(c.carrier().order());
    auto      reps = c.representatives();
    for (Element x = 0; x < c.carrier().order(); ++x) {
      uf.unite(reps[c.block_of(x)], x);
    }
    return uf;
  }

  inline void require_same_carrier(Congruence const& a, Congruence const& b) {
    if (!(a.carrier() == b.carrier())) {
      throw CarrierMismatch();
    }
  }

  // The join of a congruence with the principal congruence of (a, b).
  inline Congruence join_pair(Congruence const& c, Element a, Element b) {
    if (c.related(a, b)) {
      return c;
    }
    UnionFind                               uf = union_find_of(c);
    std::deque<std::pair<Element, Element>> pending;
    uf.unite(a, b);
    pending.emplace_back(a, b);
    close_congruence(c.carrier(), uf, pending);
    return Congruence::trusted(c.carrier(), uf.labels());
  }

}  // namespace detail

// Smallest congruence relating a and b.
inline Congruence principal_congruence(FiniteSemigroup const& S, Element a,
                                       Element b) {
  if (a >= S.order() || b >= S.order()) {
    throw InvalidArgument("element out of range");
  }
  return detail::join_pair(Congruence::equality(S), a, b);
}

// Pairs related by both.
inline Congruence meet(Congruence const& x, Congruence const& y) {
  detail::require_same_carrier(x, y);
  auto const           n = x.carrier().order();
  std::vector<Element> pair_label(n);
  // (x-block, y-block) encoded as one label, then canonicalised
  for (Element a = 0; a < n; ++a) {
    pair_label[a] = static_cast<Element>(x.block_of(a) * y.index()
                                         + y.block_of(a));
  }
  return Congruence::trusted(x.carrier(), Congruence::canonical(pair_label));
}

// Smallest congruence containing both.
inline Congruence join(Congruence const& x, Congruence const& y) {
  detail::require_same_carrier(x, y);
  auto const&                             S  = x.carrier();
  detail::UnionFind                       uf(S.order());
  std::deque<std::pair<Element, Element>> pending;
  for (auto const* c : {&x, &y}) {
    auto reps = c->representatives();
    for (Element a = 0; a < S.order(); ++a) {
      Element r = reps[c->block_of(a)];
      if (r != a) {
        uf.unite(r, a);
        pending.emplace_back(r, a);
      }
    }
  }
  detail::close_congruence(S, uf, pending);
  return Congruence::trusted(S, uf.labels());
}

// True iff x is contained in y as a relation (x is finer).
inline bool refines(Congruence const& x, Congruence const& y) {
  detail::require_same_carrier(x, y);
  auto reps = x.representatives();
  for (Element a = 0; a < x.carrier().order(); ++a) {
    if (!y.related(a, reps[x.block_of(a)])) {
      return false;
    }
  }
  return true;
}

// Every congruence is a join of principal ones, so closing {equality} under
// joins with principal congruences reaches the whole lattice.
inline CongruenceFamily all_congruences(FiniteSemigroup const& S,
                                        Limits const&          limits = {}) {
  if (S.order() > limits.max_order) {
    throw SizeBoundExceeded("semigroup", S.order(), limits.max_order);
  }
  auto const n = static_cast<Element>(S.order());

  // One generating pair per distinct principal congruence.
  std::vector<std::pair<Element, Element>> generators;
  {
    std::set<std::vector<Element>> seen;
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        if (seen.insert(principal_congruence(S, a, b).block_of()).second) {
          generators.emplace_back(a, b);
        }
      }
    }
  }

  std::set<std::vector<Element>> seen;
  std::vector<Congruence>        found;
  std::vector<std::size_t>       worklist;
  auto                           add = [&](Congruence c) {
    if (seen.insert(c.block_of()).second) {
      if (found.size() >= limits.max_congruences) {
        throw EnumerationCapExceeded("congruence lattice",
                                     limits.max_congruences);
      }
      found.push_back(std::move(c));
      worklist.push_back(found.size() - 1);
    }
  };
  add(Congruence::equality(S));
  while (!worklist.empty()) {
    std::size_t i = worklist.back();
    worklist.pop_back();
    Congruence const c = found[i];  // add() may reallocate `found`
    for (auto [a, b] : generators) {
      add(detail::join_pair(c, a, b));
    }
  }
  return CongruenceFamily(S, std::move(found));
}

inline CongruenceFamily congruences_of_index_at_most(FiniteSemigroup const& S,
                                                     std::size_t            n,
                                                     Limits const& limits = {}) {
  if (n == 0) {
    throw InvalidArgument("index bound must be at least 1");
  }
  std::vector<Congruence> keep;
  for (auto const& c : all_congruences(S, limits)) {
    if (c.index() <= n) {
      keep.push_back(c);
    }
  }
  return CongruenceFamily(S, std::move(keep));
}

// Meet of all congruences of index at most n. Its own index may exceed n.
inline Congruence rho_n(FiniteSemigroup const& S, std::size_t n,
                        Limits const& limits = {}) {
  auto       family = congruences_of_index_at_most(S, n, limits);
  Congruence result = Congruence::universal(S);
  for (auto const& c : family) {
    result = meet(result, c);
  }
  return result;
}

// a ~ b iff f(a) rho f(b).
inline Congruence pullback_congruence(Morphism const& f, Congruence const& rho) {
  if (!(f.codomain() == rho.carrier())) {
    throw CarrierMismatch();
  }
  std::vector<Element> labels(f.domain().order());
  for (Element a = 0; a < labels.size(); ++a) {
    labels[a] = rho.block_of(f(a));
  }
  return Congruence::trusted(f.domain(), Congruence::canonical(labels));
}

inline Congruence kernel_congruence(Morphism const& f) {
  return Congruence::trusted(f.domain(), Congruence::canonical(f.map()));
}

struct Quotient {
  FiniteSemigroup semigroup;
  Morphism        projection;
};

// S / rho with blocks ordered by least member, and the projection onto it.
inline Quotient quotient(FiniteSemigroup const& S, Congruence const& rho) {
  if (!(rho.carrier() == S)) {
    throw CarrierMismatch();
  }
  auto const           k    = rho.index();
  auto const           reps = rho.representatives();
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      table[i * k + j] = rho.block_of(S.product(reps[i], reps[j]));
    }
  }
  auto Q = FiniteSemigroup::trusted(k, std::move(table));
  return {Q, Morphism::trusted(S, Q, rho.block_of())};
}

}  // namespace finsemi
