#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finsemi/congruence.hpp"
#include "finsemi/endomorphism.hpp"
#include "finsemi/error.hpp"
#include "finsemi/limits.hpp"
#include "finsemi/morphism.hpp"
#include "finsemi/semigroup.hpp"

namespace finsemi {

// A finite chain S_0 <- S_1 <- ... <- S_k of surjective homomorphisms;
// connecting()[i] maps level i + 1 onto level i.
class InverseSystem {
 public:
  static InverseSystem make(std::vector<FiniteSemigroup> levels,
                            std::vector<Morphism>        connecting) {
    if (levels.empty()) {
      throw InvalidArgument("an inverse system needs at least one level");
    }
    if (connecting.size() + 1 != levels.size()) {
      throw InvalidArgument("expected " + std::to_string(levels.size() - 1)
                            + " connecting maps, got "
                            + std::to_string(connecting.size()));
    }
    for (std::size_t i = 0; i < connecting.size(); ++i) {
      auto const& pi = connecting[i];
      if (!(pi.domain() == levels[i + 1]) || !(pi.codomain() == levels[i])) {
        throw InvalidArgument("connecting map " + std::to_string(i)
                              + " does not go from level "
                              + std::to_string(i + 1) + " to level "
                              + std::to_string(i));
      }
      // re-check rather than trust whoever built the morphism
      check_morphism(pi.map(), levels[i + 1], levels[i]);
      if (!pi.is_surjective()) {
        throw NotSurjective(i);
      }
    }
    return InverseSystem(std::move(levels), std::move(connecting));
  }

  std::vector<FiniteSemigroup> const& levels() const noexcept {
    return levels_;
  }
  std::vector<Morphism> const& connecting() const noexcept {
    return connecting_;
  }
  FiniteSemigroup const& top() const noexcept { return levels_.back(); }
  std::size_t            size() const noexcept { return levels_.size(); }

 private:
  InverseSystem(std::vector<FiniteSemigroup> levels,
                std::vector<Morphism>        connecting)
      : levels_(std::move(levels)), connecting_(std::move(connecting)) {}

  std::vector<FiniteSemigroup> levels_;
  std::vector<Morphism>        connecting_;
};

// An element of the limit: one component per level.
struct Thread {
  std::vector<Element> components;

  friend bool operator==(Thread const&, Thread const&)  = default;
  friend auto operator<=>(Thread const&, Thread const&) = default;
};

namespace detail {
  inline void check_chain(FiniteSemigroup const&        S,
                          std::span<Congruence const> chain) {
    for (auto const& c : chain) {
      if (!(c.carrier() == S)) {
        throw CarrierMismatch();
      }
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        if (!refines(chain[j], chain[i])) {
          throw NotAChain(i, j);
        }
      }
    }
  }

  // The block-collapsing map S/finer -> S/coarser.
  inline Morphism collapse(Congruence const& finer, Congruence const& coarser,
                           FiniteSemigroup const& finer_quotient,
                           FiniteSemigroup const& coarser_quotient) {
    auto                 reps = finer.representatives();
    std::vector<Element> map(finer.index());
    for (std::size_t b = 0; b < map.size(); ++b) {
      map[b] = coarser.block_of(reps[b]);
    }
    return Morphism::trusted(finer_quotient, coarser_quotient, std::move(map));
  }
}  // namespace detail

// Levels S/rho for rho in the chain (coarsest first), then S itself on top
// when `include_top` is set.
inline InverseSystem build_tower_from_family(FiniteSemigroup const&      S,
                                             std::span<Congruence const> chain,
                                             bool include_top = true) {
  detail::check_chain(S, chain);
  if (chain.empty() && !include_top) {
    throw InvalidArgument("empty tower");
  }
  std::vector<FiniteSemigroup> levels;
  std::vector<Morphism>        maps;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    levels.push_back(quotient(S, chain[j]).semigroup);
    if (j > 0) {
      maps.push_back(
          detail::collapse(chain[j], chain[j - 1], levels[j], levels[j - 1]));
    }
  }
  if (include_top) {
    levels.push_back(S);
    if (!chain.empty()) {
      maps.push_back(Morphism::trusted(S, levels[levels.size() - 2],
                                       chain.back().block_of()));
    }
  }
  return InverseSystem::make(std::move(levels), std::move(maps));
}

// All compatible threads, extended level by level through the fibres of the
// connecting maps. Sorted.
inline std::vector<Thread> limit_threads(InverseSystem const& sys,
                                         Limits const&        limits = {}) {
  std::vector<Thread> threads;
  for (Element x = 0; x < sys.levels()[0].order(); ++x) {
    threads.push_back(Thread{{x}});
  }
  for (std::size_t i = 0; i < sys.connecting().size(); ++i) {
    auto const&                       pi = sys.connecting()[i];
    std::vector<std::vector<Element>> fibre(sys.levels()[i].order());
    for (Element y = 0; y < pi.domain().order(); ++y) {
      fibre[pi(y)].push_back(y);
    }
    std::vector<Thread> next;
    for (auto const& t : threads) {
      for (Element y : fibre[t.components.back()]) {
        if (next.size() >= limits.max_order) {
          throw SizeBoundExceeded("thread set", next.size() + 1,
                                  limits.max_order);
        }
        Thread u = t;
        u.components.push_back(y);
        next.push_back(std::move(u));
      }
    }
    threads = std::move(next);
  }
  std::sort(threads.begin(), threads.end());
  return threads;
}

struct ThreadMapReport {
  std::size_t thread_count = 0;
  bool        injective    = false;
  bool        surjective   = false;
  // least a < b with the same thread, if any
  std::optional<std::pair<Element, Element>> collision;
};

// The map s |-> (images of s) from S into the limit of its quotients by the
// chain (S itself is not a level).
inline ThreadMapReport quotient_thread_map(FiniteSemigroup const&      S,
                                           std::span<Congruence const> chain,
                                           Limits const& limits = {}) {
  auto                sys     = build_tower_from_family(S, chain, false);
  auto                threads = limit_threads(sys, limits);
  ThreadMapReport     r;
  std::vector<char>   hit(threads.size(), 0);
  std::map<Thread, Element> first;
  r.thread_count = threads.size();
  r.injective    = true;
  for (Element s = 0; s < S.order(); ++s) {
    Thread t;
    for (auto const& c : chain) {
      t.components.push_back(c.block_of(s));
    }
    auto it = std::lower_bound(threads.begin(), threads.end(), t);
    if (it == threads.end() || !(*it == t)) {
      throw InternalError("image of an element is not a thread");
    }
    hit[it - threads.begin()] = 1;
    auto [pos, fresh] = first.emplace(t, s);
    if (!fresh && r.injective) {
      r.injective = false;
      r.collision = std::pair{pos->second, s};
    }
  }
  r.surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h; });
  return r;
}

struct Theorem9Options {
  // Reject chains without the equality congruence. Turning this off lets the
  // check run and report the injectivity failure instead.
  bool require_equality = true;
};

struct Theorem9Report {
  EndoMonoid                ends;
  std::vector<Restriction>  restrictions;     // one per chain member
  std::vector<std::size_t>  quotient_sizes = {};  // |End S / rho-hat|
  InverseSystem             system;           // of the End S / rho-hat
  std::vector<Thread>       threads;

  // (a) f |-> (r_rho(f))_rho separates points
  bool injective = false;
  std::optional<std::pair<std::size_t, std::size_t>> injectivity_witness = {};
  // (b) every thread is hit
  bool                  surjective = false;
  std::optional<Thread> surjectivity_witness = {};
  // (c) the canonical map is a monoid morphism, hence with (a) and (b) an
  // isomorphism End S = lim End S / rho-hat
  bool homomorphism = false;
  bool isomorphism  = false;
};

// Verifies End S = lim End S / rho-hat over a chain of fully invariant
// congruences, coarsest first.
inline Theorem9Report verify_theorem9(FiniteSemigroup const&      S,
                                      std::span<Congruence const> chain,
                                      Theorem9Options const&      options = {},
                                      Limits const&               limits  = {}) {
  if (chain.empty()) {
    throw InvalidArgument("the family must have at least one member");
  }
  detail::check_chain(S, chain);
  if (options.require_equality
      && std::none_of(chain.begin(), chain.end(),
                      [](Congruence const& c) { return c.is_equality(); })) {
    throw NoEqualityMember();
  }

  auto ends = enumerate_end(S, limits);
  auto const& E = ends.as_semigroup();

  std::vector<Restriction>     restrictions;
  std::vector<Quotient>        quotients;
  std::vector<FiniteSemigroup> levels;
  std::vector<Morphism>        maps;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    restrictions.push_back(restriction_to_quotient(ends, chain[j], limits));
    auto const& kernel = restrictions.back().kernel.congruence;
    quotients.push_back(quotient(E, kernel));
    levels.push_back(quotients.back().semigroup);
    if (j > 0) {
      auto const& coarser = restrictions[j - 1].kernel.congruence;
      if (!refines(kernel, coarser)) {
        throw InternalError("connecting map between End S / rho-hat levels "
                            "is not well defined");
      }
      maps.push_back(detail::collapse(kernel, coarser, levels[j],
                                      levels[j - 1]));
    }
  }
  auto system  = InverseSystem::make(levels, std::move(maps));
  auto threads = limit_threads(system, limits);

  auto canonical = [&](std::size_t f) {
    Thread t;
    for (auto const& r : restrictions) {
      t.components.push_back(r.kernel.congruence.block_of(
          static_cast<Element>(f)));
    }
    return t;
  };

  Theorem9Report rep{.ends         = ends,
                     .restrictions = restrictions,
                     .system       = system,
                     .threads      = threads};
  for (auto const& L : levels) {
    rep.quotient_sizes.push_back(L.order());
  }

  std::vector<Thread>       image(ends.size());
  std::map<Thread, std::size_t> first;
  std::vector<char>         hit(threads.size(), 0);
  rep.injective = true;
  for (std::size_t f = 0; f < ends.size(); ++f) {
    image[f] = canonical(f);
    auto it  = std::lower_bound(threads.begin(), threads.end(), image[f]);
    if (it == threads.end() || !(*it == image[f])) {
      throw InternalError("canonical image is not a thread");
    }
    hit[it - threads.begin()] = 1;
    auto [pos, fresh] = first.emplace(image[f], f);
    // least (f, g): smallest f with a later partner, then its first partner
    if (!fresh && (rep.injective || pos->second < rep.injectivity_witness->first)) {
      rep.injective           = false;
      rep.injectivity_witness = std::pair{pos->second, f};
    }
  }
  rep.surjective = true;
  for (std::size_t t = 0; t < threads.size(); ++t) {
    if (!hit[t]) {
      rep.surjective           = false;
      rep.surjectivity_witness = threads[t];
      break;
    }
  }
  rep.homomorphism = true;
  for (std::size_t f = 0; f < ends.size() && rep.homomorphism; ++f) {
    for (std::size_t g = 0; g < ends.size(); ++g) {
      auto const& fg = image[ends.compose(f, g)];
      for (std::size_t j = 0; j < levels.size(); ++j) {
        if (fg.components[j]
            != levels[j].product(image[f].components[j],
                                 image[g].components[j])) {
          rep.homomorphism = false;
        }
      }
    }
  }
  rep.isomorphism = rep.injective && rep.surjective && rep.homomorphism;
  return rep;
}

struct LevelDiagnostics {
  std::size_t word_length = 0;
  std::size_t order       = 0;
  // congruences of index exactly 2, counted by exhaustive search over
  // two-block partitions when the level is small enough
  std::optional<std::uint64_t> index2_counted;
  // 2^(order - 1) - 1, in decimal when it fits in 64 bits
  std::string index2_formula;
  bool        agrees = true;
};

struct LeftZeroTower {
  InverseSystem                 system;
  std::vector<LevelDiagnostics> diagnostics;

  std::size_t levels() const noexcept { return system.size(); }
};

// Largest level whose two-block partitions are enumerated.
inline constexpr std::size_t kMaxCountedOrder = 16;

// Number of congruences of index exactly 2, by enumerating every two-block
// partition and testing compatibility.
inline std::uint64_t count_index_two(FiniteSemigroup const& S) {
  auto const n = S.order();
  if (n > kMaxCountedOrder) {
    throw SizeBoundExceeded("two-block partition search", n, kMaxCountedOrder);
  }
  if (n < 2) {
    return 0;
  }
  std::uint64_t        count = 0;
  std::vector<Element> labels(n);
  // element 0 stays in block 0; the mask picks the members of block 1
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    labels[0] = 0;
    for (std::size_t x = 1; x < n; ++x) {
      labels[x] = (mask >> (x - 1)) & 1;
    }
    // compare each element with its block's least member
    Element rep1 = 1;
    while (labels[rep1] == 0) {
      ++rep1;
    }
    bool ok = true;
    for (Element a = 1; a < n && ok; ++a) {
      Element r = labels[a] == 0 ? 0 : rep1;
      if (r == a) {
        continue;
      }
      for (Element s = 0; s < n; ++s) {
        if (labels[S.product(s, a)] != labels[S.product(s, r)]
            || labels[S.product(a, s)] != labels[S.product(r, s)]) {
          ok = false;
          break;
        }
      }
    }
    count += ok;
  }
  return count;
}

// Levels left_zero(2^i), i = 1..k, as binary words of length i with the first
// letter in the most significant bit. The connecting map erases the last
// letter.
inline LeftZeroTower left_zero_tower(std::size_t k, Limits const& limits = {}) {
  if (k == 0) {
    throw InvalidArgument("the tower needs at least one level");
  }
  if (k >= 63 || (std::uint64_t{1} << k) > limits.max_order) {
    throw SizeBoundExceeded("left-zero tower top level",
                            k >= 63 ? UINT64_MAX : std::uint64_t{1} << k,
                            limits.max_order);
  }
  std::vector<FiniteSemigroup>  levels;
  std::vector<Morphism>         maps;
  std::vector<LevelDiagnostics> diag;
  for (std::size_t i = 1; i <= k; ++i) {
    auto const m = std::size_t{1} << i;
    levels.push_back(left_zero(m, limits));
    if (i > 1) {
      std::vector<Element> erase_last(m);
      for (Element w = 0; w < m; ++w) {
        erase_last[w] = w >> 1;
      }
      maps.push_back(check_morphism(std::move(erase_last), levels[i - 1],
                                    levels[i - 2]));
    }
    LevelDiagnostics d;
    d.word_length = i;
    d.order       = m;
    if (m - 1 < 64) {
      d.index2_formula
          = std::to_string((std::uint64_t{1} << (m - 1)) - 1);
    } else {
      d.index2_formula = "2^" + std::to_string(m - 1) + " - 1";
    }
    if (m <= kMaxCountedOrder) {
      d.index2_counted = count_index_two(levels.back());
      d.agrees         = std::to_string(*d.index2_counted) == d.index2_formula;
    }
    diag.push_back(std::move(d));
  }
  return LeftZeroTower{InverseSystem::make(std::move(levels), std::move(maps)),
                       std::move(diag)};
}

// From words of length i + 1 to words of length i, erasing the FIRST letter.
inline Morphism shift_between_levels(LeftZeroTower const& tower,
                                     std::size_t          i) {
  if (i == 0 || i + 1 > tower.levels()) {
    throw LevelOutOfRange(i);
  }
  auto const& upper = tower.system.levels()[i];
  auto const& lower = tower.system.levels()[i - 1];
  auto const  keep  = (Element{1} << i) - 1;
  std::vector<Element> map(upper.order());
  for (Element w = 0; w < upper.order(); ++w) {
    map[w] = w & keep;
  }
  return check_morphism(std::move(map), upper, lower);
}

}  // namespace finsemi
