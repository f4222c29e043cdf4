#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finsemi/congruence.hpp"
#include "finsemi/error.hpp"
#include "finsemi/limits.hpp"
#include "finsemi/morphism.hpp"
#include "finsemi/semigroup.hpp"

namespace finsemi {

// "[i0 i1 ... i(n-1)]"
inline std::string render_map(std::span<Element const> map) {
  std::string out = "[";
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += std::to_string(map[i]);
  }
  return out + "]";
}

namespace detail {

  // Backtracking search for the homomorphisms S -> S determined by images of
  // a generating sequence. Generators are processed in order; each stage
  // assigns the next generator an image, derives the images of the elements
  // it newly generates from one stored factorisation each, and checks the
  // homomorphism law on every pair involving a new element.
  class EndoSearch {
   public:
    EndoSearch(FiniteSemigroup S, std::span<Element const> gens)
        : S_(std::move(S)), expr_(S_.order()) {
      auto const        n = S_.order();
      std::vector<char> known(n, 0);
      for (Element g : gens) {
        if (g >= n) {
          throw InvalidArgument("generator " + std::to_string(g)
                                + " out of range");
        }
        if (known[g]) {
          continue;  // image is forced by earlier generators
        }
        Stage st;
        st.generator = g;
        st.begin     = seq_.size();
        known[g]     = 1;
        seq_.push_back(g);
        for (std::size_t i = st.begin; i < seq_.size(); ++i) {
          Element u = seq_[i];
          for (std::size_t j = 0; j <= i; ++j) {
            Element v = seq_[j];
            for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
              Element p = S_.product(x, y);
              if (!known[p]) {
                known[p] = 1;
                expr_[p] = {x, y};
                seq_.push_back(p);
              }
            }
          }
        }
        st.end = seq_.size();
        stages_.push_back(st);
      }
      if (seq_.size() != n) {
        throw NotGenerating();
      }
    }

    // Calls visit(std::span<Element const>) once per endomorphism, in
    // generator-assignment order (not canonical order).
    template <typename Visit>
    void run(Visit&& visit) {
      phi_.assign(S_.order(), 0);
      recurse(0, visit);
    }

   private:
    struct Stage {
      Element     generator = 0;
      std::size_t begin     = 0;
      std::size_t end       = 0;
    };

    template <typename Visit>
    void recurse(std::size_t s, Visit& visit) {
      if (s == stages_.size()) {
        visit(std::span<Element const>(phi_));
        return;
      }
      Stage const& st = stages_[s];
      auto const   n  = static_cast<Element>(S_.order());
      for (Element c = 0; c < n; ++c) {
        phi_[st.generator] = c;
        for (std::size_t k = st.begin + 1; k < st.end; ++k) {
          Element e = seq_[k];
          phi_[e]   = S_.product(phi_[expr_[e].first], phi_[expr_[e].second]);
        }
        if (consistent(st)) {
          recurse(s + 1, visit);
        }
      }
    }

    bool consistent(Stage const& st) const {
      for (std::size_t i = st.begin; i < st.end; ++i) {
        Element a = seq_[i];
        for (std::size_t j = 0; j < st.end; ++j) {
          Element b = seq_[j];
          if (phi_[S_.product(a, b)] != S_.product(phi_[a], phi_[b])
              || phi_[S_.product(b, a)] != S_.product(phi_[b], phi_[a])) {
            return false;
          }
        }
      }
      return true;
    }

    FiniteSemigroup                          S_;
    std::vector<Element>                     seq_;
    std::vector<std::pair<Element, Element>> expr_;
    std::vector<Stage>                       stages_;
    std::vector<Element>                     phi_;
  };

  // Base-n code of a map; preserves lexicographic order.
  inline std::uint64_t encode(std::span<Element const> map, std::size_t n) {
    std::uint64_t code = 0;
    for (Element x : map) {
      code = code * n + x;
    }
    return code;
  }

  // Least pair (a, b), a < b, with a rho b but not f(a) rho f(b).
  inline std::optional<std::pair<Element, Element>>
  first_separated_pair(std::span<Element const> f, Congruence const& rho) {
    auto const reps  = rho.representatives();
    bool       found = false;
    for (Element a = 0; a < f.size() && !found; ++a) {
      found = !rho.related(f[a], f[reps[rho.block_of(a)]]);
    }
    if (!found) {
      return std::nullopt;
    }
    for (Element a = 0; a < f.size(); ++a) {
      for (Element b = a + 1; b < f.size(); ++b) {
        if (rho.related(a, b) && !rho.related(f[a], f[b])) {
          return std::pair{a, b};
        }
      }
    }
    return std::nullopt;
  }

}  // namespace detail

// Calls visit(std::span<Element const>) for every endomorphism of S without
// storing them. Visiting order is an implementation detail.
template <typename Visit>
void for_each_endomorphism(FiniteSemigroup const& S, Visit&& visit,
                           Limits const& limits = {}) {
  if (S.order() > limits.max_order) {
    throw SizeBoundExceeded("semigroup", S.order(), limits.max_order);
  }
  auto gens = minimal_generating_set(S);
  detail::EndoSearch(S, gens).run(visit);
}

// End S as a finite monoid. Elements are image sequences in lexicographic
// order; composition(i, j) is the index of elements[i] after elements[j].
// The composition table and the units are built on first use.
class EndoMonoid {
 public:
  // `maps` must be endomorphisms of S.
  static EndoMonoid trusted(FiniteSemigroup                   S,
                            std::vector<std::vector<Element>> maps,
                            Limits const&                     limits = {}) {
    std::sort(maps.begin(), maps.end());
    maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
    auto state      = std::make_shared<State>();
    state->carrier  = std::move(S);
    state->elements = std::move(maps);
    state->limits   = limits;
    auto const n    = state->carrier.order();
    if (detail::checked_power(n, n) != UINT64_MAX) {
      state->codes.reserve(state->elements.size());
      for (auto const& m : state->elements) {
        state->codes.push_back(detail::encode(m, n));
      }
    }
    std::vector<Element> id(n);
    for (Element x = 0; x < n; ++x) {
      id[x] = x;
    }
    EndoMonoid M(std::move(state));
    auto       idx = M.index_of(id);
    if (!idx) {
      throw InternalError("identity map missing from End S");
    }
    M.state_->identity = *idx;
    return M;
  }

  FiniteSemigroup const& carrier() const noexcept { return state_->carrier; }
  std::size_t size() const noexcept { return state_->elements.size(); }

  std::vector<std::vector<Element>> const& elements() const noexcept {
    return state_->elements;
  }

  std::vector<Element> const& element(std::size_t i) const {
    return state_->elements.at(i);
  }

  Morphism morphism(std::size_t i) const {
    return Morphism::trusted(carrier(), carrier(), element(i));
  }

  std::size_t identity_index() const noexcept { return state_->identity; }

  std::optional<std::size_t> index_of(std::span<Element const> map) const {
    auto const& els = state_->elements;
    if (!state_->codes.empty()) {
      auto code = detail::encode(map, carrier().order());
      auto it = std::lower_bound(state_->codes.begin(), state_->codes.end(),
                                 code);
      if (it != state_->codes.end() && *it == code) {
        return static_cast<std::size_t>(it - state_->codes.begin());
      }
      return std::nullopt;
    }
    auto it = std::lower_bound(
        els.begin(), els.end(), map, [](auto const& x, auto const& y) {
          return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                              y.end());
        });
    if (it != els.end() && std::equal(it->begin(), it->end(), map.begin(),
                                      map.end())) {
      return static_cast<std::size_t>(it - els.begin());
    }
    return std::nullopt;
  }

  // The composition table viewed as a finite semigroup, validated as one.
  FiniteSemigroup const& as_semigroup() const {
    std::call_once(state_->table_once, [this] { build_table(); });
    return *state_->table;
  }

  std::size_t compose(std::size_t i, std::size_t j) const {
    return as_semigroup().product(static_cast<Element>(i),
                                  static_cast<Element>(j));
  }

  // Elements with a two-sided inverse in the composition table.
  std::vector<std::size_t> const& unit_indices() const {
    std::call_once(state_->units_once, [this] {
      auto const& T  = as_semigroup();
      auto const  id = static_cast<Element>(identity_index());
      for (Element i = 0; i < size(); ++i) {
        for (Element j = 0; j < size(); ++j) {
          if (T.product(i, j) == id && T.product(j, i) == id) {
            state_->units.push_back(i);
            break;
          }
        }
      }
    });
    return state_->units;
  }

  std::vector<std::size_t> surjective_indices() const {
    return filter([](Morphism const& f) { return f.is_surjective(); });
  }

  std::vector<std::size_t> bijective_indices() const {
    return filter([](Morphism const& f) { return f.is_bijective(); });
  }

 private:
  struct State {
    FiniteSemigroup                   carrier = FiniteSemigroup::trusted(0, {});
    std::vector<std::vector<Element>> elements;
    std::vector<std::uint64_t>        codes;
    std::size_t                       identity = 0;
    Limits                            limits;

    std::once_flag                 table_once;
    std::optional<FiniteSemigroup> table;
    std::once_flag                 units_once;
    std::vector<std::size_t>       units;
  };

  explicit EndoMonoid(std::shared_ptr<State> state)
      : state_(std::move(state)) {}

  template <typename Pred>
  std::vector<std::size_t> filter(Pred&& pred) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (pred(morphism(i))) {
        out.push_back(i);
      }
    }
    return out;
  }

  void build_table() const {
    auto const e       = size();
    auto const entries = std::uint64_t{e} * e;
    if (entries > state_->limits.max_composition_entries) {
      throw SizeBoundExceeded("composition table", entries,
                              state_->limits.max_composition_entries);
    }
    auto const           n = carrier().order();
    std::vector<Element> table(e * e);
    std::vector<Element> composite(n);
    for (std::size_t i = 0; i < e; ++i) {
      auto const& f = state_->elements[i];
      for (std::size_t j = 0; j < e; ++j) {
        auto const& g = state_->elements[j];
        for (std::size_t x = 0; x < n; ++x) {
          composite[x] = f[g[x]];
        }
        auto k = index_of(composite);
        if (!k) {
          throw InternalError("End S is not closed under composition");
        }
        table[i * e + j] = static_cast<Element>(*k);
      }
    }
    state_->table = validate_table(e, std::move(table));
  }

  std::shared_ptr<State> state_;
};

// All endomorphisms of S via the generator-image search.
inline EndoMonoid enumerate_end(FiniteSemigroup const& S,
                                Limits const&          limits = {}) {
  std::vector<std::vector<Element>> maps;
  for_each_endomorphism(
      S,
      [&](std::span<Element const> phi) {
        if (maps.size() >= limits.max_endomorphisms) {
          throw EnumerationCapExceeded("End S", limits.max_endomorphisms);
        }
        maps.emplace_back(phi.begin(), phi.end());
      },
      limits);
  return EndoMonoid::trusted(S, std::move(maps), limits);
}

// Filters all n^n maps; the oracle for enumerate_end.
inline EndoMonoid brute_force_end(FiniteSemigroup const& S,
                                  Limits const&          limits = {}) {
  auto const n     = S.order();
  auto const total = detail::checked_power(n, n);
  if (total > limits.oracle_bound) {
    throw OracleBoundExceeded(total, limits.oracle_bound);
  }
  std::vector<std::vector<Element>> maps;
  std::vector<Element>              f(n, 0);
  while (true) {
    if (!detail::first_homomorphism_failure(f, S, S)) {
      if (maps.size() >= limits.max_endomorphisms) {
        throw EnumerationCapExceeded("End S", limits.max_endomorphisms);
      }
      maps.push_back(f);
    }
    std::size_t pos = n;
    while (pos > 0 && f[pos - 1] + 1 == n) {
      f[--pos] = 0;
    }
    if (pos == 0) {
      break;
    }
    ++f[pos - 1];
  }
  return EndoMonoid::trusted(S, std::move(maps), limits);
}

// Indices of the bijective endomorphisms, i.e. Aut S.
inline std::vector<std::size_t> aut_group(EndoMonoid const& ends) {
  return ends.bijective_indices();
}

struct InvarianceWitness {
  std::vector<Element> map;
  Element              a = 0;
  Element              b = 0;

  friend bool operator==(InvarianceWitness const&,
                         InvarianceWitness const&) = default;
  friend auto operator<=>(InvarianceWitness const&,
                          InvarianceWitness const&) = default;
};

// `holds` is false exactly when `witness` is set: a related pair (a, b),
// a < b, separated by `map`. The reported witness is the least (map, a, b).
struct InvarianceResult {
  bool                             holds = true;
  std::optional<InvarianceWitness> witness;

  explicit operator bool() const noexcept { return holds; }
};

namespace detail {
  inline void require_carrier(EndoMonoid const& ends, Congruence const& rho) {
    if (!(ends.carrier() == rho.carrier())) {
      throw CarrierMismatch();
    }
  }

  template <typename Maps>
  InvarianceResult first_violation(Maps const& maps, Congruence const& rho) {
    InvarianceResult r;
    for (auto const& f : maps) {
      if (auto bad = first_separated_pair(f, rho)) {
        InvarianceWitness w{std::vector<Element>(f.begin(), f.end()),
                            bad->first, bad->second};
        if (!r.witness || w < *r.witness) {
          r.holds   = false;
          r.witness = std::move(w);
        }
      }
    }
    return r;
  }
}  // namespace detail

// rho is contained in its pullback along every f in End S.
inline InvarianceResult is_fully_invariant(Congruence const& rho,
                                           EndoMonoid const& ends) {
  detail::require_carrier(ends, rho);
  // elements are sorted, so the first violation is the least one
  for (auto const& f : ends.elements()) {
    if (auto bad = detail::first_separated_pair(f, rho)) {
      return {false, InvarianceWitness{f, bad->first, bad->second}};
    }
  }
  return {};
}

// Same verdict and witness, streaming End S instead of materialising it.
inline InvarianceResult is_fully_invariant(Congruence const& rho,
                                           Limits const&     limits = {}) {
  InvarianceResult r;
  for_each_endomorphism(
      rho.carrier(),
      [&](std::span<Element const> f) {
        if (r.witness
            && !std::lexicographical_compare(f.begin(), f.end(),
                                             r.witness->map.begin(),
                                             r.witness->map.end())) {
          return;
        }
        if (auto bad = detail::first_separated_pair(f, rho)) {
          r.holds   = false;
          r.witness = InvarianceWitness{std::vector<Element>(f.begin(), f.end()),
                                        bad->first, bad->second};
        }
      },
      limits);
  return r;
}

inline InvarianceResult is_characteristic(Congruence const&         rho,
                                          std::span<Morphism const> auts) {
  std::vector<std::vector<Element>> maps;
  for (auto const& f : auts) {
    if (!(f.domain() == rho.carrier()) || !(f.codomain() == rho.carrier())) {
      throw CarrierMismatch();
    }
    if (!f.is_bijective()) {
      throw InvalidArgument("is_characteristic expects automorphisms, got "
                            + render_map(f.map()));
    }
    maps.push_back(f.map());
  }
  return detail::first_violation(maps, rho);
}

// Checks against the bijective elements of `ends`.
inline InvarianceResult is_characteristic(Congruence const& rho,
                                          EndoMonoid const& ends) {
  detail::require_carrier(ends, rho);
  std::vector<std::vector<Element>> maps;
  for (auto i : aut_group(ends)) {
    maps.push_back(ends.element(i));
  }
  return detail::first_violation(maps, rho);
}

// f'([x]) = [f(x)] on the given quotient by rho. f must respect rho.
inline Morphism induced_endo(Morphism const& f, Congruence const& rho,
                             Quotient const& q) {
  auto const& S = rho.carrier();
  if (!(f.domain() == S) || !(f.codomain() == S)
      || !(q.projection.domain() == S)) {
    throw CarrierMismatch();
  }
  if (auto bad = detail::first_separated_pair(f.map(), rho)) {
    throw NotInvariant(bad->first, bad->second);
  }
  auto const           reps = rho.representatives();
  std::vector<Element> map(rho.index());
  for (std::size_t b = 0; b < map.size(); ++b) {
    map[b] = rho.block_of(f(reps[b]));
  }
  return Morphism::trusted(q.semigroup, q.semigroup, std::move(map));
}

inline Morphism induced_endo(Morphism const& f, Congruence const& rho) {
  return induced_endo(f, rho, quotient(rho.carrier(), rho));
}

// rho-hat: a congruence on End S together with the carrier congruence it
// came from.
struct EndCongruence {
  EndoMonoid base;
  Congruence congruence;
  Congruence source;
};

// r_rho : End S -> End(S/rho) and its kernel.
struct Restriction {
  Quotient                 quotient;
  EndoMonoid               target;  // End(S/rho)
  std::vector<std::size_t> image;   // r_rho(f) as an index into target
  EndCongruence            kernel;

  std::vector<Element> const& map_of(std::size_t f) const {
    return target.element(image.at(f));
  }
};

// Requires rho fully invariant. Verifies that r_rho is a monoid morphism and
// that its kernel is a congruence on the composition table.
inline Restriction restriction_to_quotient(EndoMonoid const& ends,
                                           Congruence const& rho,
                                           Limits const&     limits = {}) {
  detail::require_carrier(ends, rho);
  if (auto r = is_fully_invariant(rho, ends); !r) {
    throw NotFullyInvariant(render_map(r.witness->map), r.witness->a,
                            r.witness->b);
  }
  auto q      = quotient(rho.carrier(), rho);
  auto target = enumerate_end(q.semigroup, limits);

  std::vector<std::size_t> image(ends.size());
  std::vector<Element>     labels(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    auto induced = induced_endo(ends.morphism(i), rho, q);
    auto k       = target.index_of(induced.map());
    if (!k) {
      throw InternalError("induced map " + render_map(induced.map())
                          + " is not an endomorphism of the quotient");
    }
    image[i]  = *k;
    labels[i] = static_cast<Element>(*k);
  }

  if (image[ends.identity_index()] != target.identity_index()) {
    throw InternalError("r_rho does not preserve the identity");
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    for (std::size_t j = 0; j < ends.size(); ++j) {
      if (image[ends.compose(i, j)] != target.compose(image[i], image[j])) {
        throw InternalError("r_rho is not a homomorphism at ("
                            + std::to_string(i) + ", " + std::to_string(j)
                            + ")");
      }
    }
  }
  auto kernel = Congruence::from_labels(ends.as_semigroup(), labels);
  return Restriction{std::move(q), std::move(target), std::move(image),
                     EndCongruence{ends, std::move(kernel), rho}};
}

struct HopfianReport {
  std::vector<std::size_t> surjective;
  std::vector<std::size_t> bijective;
  std::vector<std::size_t> units;
  std::vector<std::size_t> surjective_idempotents;
  bool surjective_are_bijective = false;  // the Hopfian property
  bool surjective_are_units     = false;
  bool surjective_closed        = false;  // a subsemigroup of End S
  bool only_identity_idempotent = false;

  bool ok() const noexcept {
    return surjective_are_bijective && surjective_are_units
           && surjective_closed && only_identity_idempotent;
  }
};

// On a finite carrier every flag must come out true; a false one is a bug.
inline HopfianReport hopfian_report(EndoMonoid const& ends) {
  HopfianReport r;
  r.surjective = ends.surjective_indices();
  r.bijective  = ends.bijective_indices();
  r.units      = ends.unit_indices();

  r.surjective_are_bijective = r.surjective == r.bijective;
  r.surjective_are_units     = r.surjective == r.units;

  std::vector<char> is_surj(ends.size(), 0);
  for (auto i : r.surjective) {
    is_surj[i] = 1;
  }
  r.surjective_closed = true;
  for (auto i : r.surjective) {
    for (auto j : r.surjective) {
      if (!is_surj[ends.compose(i, j)]) {
        r.surjective_closed = false;
      }
    }
    if (ends.compose(i, i) == i) {
      r.surjective_idempotents.push_back(i);
    }
  }
  r.only_identity_idempotent
      = r.surjective_idempotents
        == std::vector<std::size_t>{ends.identity_index()};
  return r;
}

struct CensusReport {
  std::uint64_t extendable = 0;  // maps X -> S extending to an endomorphism
  std::uint64_t total      = 0;  // |S|^|X|, saturating at UINT64_MAX
  bool          equal      = false;
};

// Counts assignments of images to X that extend to endomorphisms. Since X
// generates, each endomorphism is the unique extension of its restriction.
inline CensusReport extension_census(FiniteSemigroup const&   S,
                                     std::span<Element const> X,
                                     Limits const&            limits = {}) {
  if (S.order() > limits.max_order) {
    throw SizeBoundExceeded("semigroup", S.order(), limits.max_order);
  }
  std::vector<Element> gens(X.begin(), X.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  detail::EndoSearch search(S, gens);  // throws NotGenerating

  CensusReport r;
  search.run([&](std::span<Element const>) { ++r.extendable; });
  r.total = detail::checked_power(S.order(), gens.size());
  r.equal = r.extendable == r.total;
  return r;
}

}  // namespace finsemi
