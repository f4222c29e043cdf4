#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finsemi/error.hpp"
#include "finsemi/semigroup.hpp"

namespace finsemi {

// A homomorphism between finite semigroups, stored as its image sequence.
class Morphism {
 public:
  // Caller guarantees the homomorphism law.
  static Morphism trusted(FiniteSemigroup domain, FiniteSemigroup codomain,
                          std::vector<Element> map) {
    return Morphism(std::move(domain), std::move(codomain), std::move(map));
  }

  FiniteSemigroup const& domain() const noexcept { return domain_; }
  FiniteSemigroup const& codomain() const noexcept { return codomain_; }
  std::vector<Element> const& map() const noexcept { return map_; }

  Element operator()(Element a) const noexcept { return map_[a]; }

  bool is_surjective() const noexcept { return surjective_; }
  bool is_injective() const noexcept { return injective_; }
  bool is_bijective() const noexcept { return surjective_ && injective_; }

  // Sorted distinct images.
  std::vector<Element> image() const {
    std::vector<Element> im(map_);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  friend bool operator==(Morphism const& f, Morphism const& g) {
    return f.map_ == g.map_ && f.domain_ == g.domain_
           && f.codomain_ == g.codomain_;
  }

 private:
  Morphism(FiniteSemigroup domain, FiniteSemigroup codomain,
           std::vector<Element> map)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        map_(std::move(map)) {
    std::vector<char> hit(codomain_.order(), 0);
    std::size_t       distinct = 0;
    for (Element x : map_) {
      if (!hit[x]) {
        hit[x] = 1;
        ++distinct;
      }
    }
    surjective_ = distinct == codomain_.order();
    injective_  = distinct == map_.size();
  }

  FiniteSemigroup      domain_;
  FiniteSemigroup      codomain_;
  std::vector<Element> map_;
  bool                 surjective_ = false;
  bool                 injective_  = false;
};

namespace detail {
  inline void check_raw_map(std::span<Element const> map,
                            FiniteSemigroup const& A, FiniteSemigroup const& B) {
    if (map.size() != A.order()) {
      throw InvalidArgument("map has length " + std::to_string(map.size())
                            + ", expected " + std::to_string(A.order()));
    }
    for (Element x : map) {
      if (x >= B.order()) {
        throw InvalidArgument("map entry " + std::to_string(x)
                              + " out of range for the codomain");
      }
    }
  }

  // First pair (a, b) in lexicographic order with f(ab) != f(a)f(b).
  inline std::optional<std::pair<Element, Element>>
  first_homomorphism_failure(std::span<Element const> map,
                             FiniteSemigroup const& A,
                             FiniteSemigroup const& B) {
    for (Element a = 0; a < A.order(); ++a) {
      for (Element b = 0; b < A.order(); ++b) {
        if (map[A.product(a, b)] != B.product(map[a], map[b])) {
          return std::pair{a, b};
        }
      }
    }
    return std::nullopt;
  }
}  // namespace detail

inline Morphism check_morphism(std::vector<Element>   map,
                               FiniteSemigroup const& A,
                               FiniteSemigroup const& B) {
  detail::check_raw_map(map, A, B);
  if (auto bad = detail::first_homomorphism_failure(map, A, B)) {
    throw NotAHomomorphism(bad->first, bad->second);
  }
  return Morphism::trusted(A, B, std::move(map));
}

inline Morphism identity_morphism(FiniteSemigroup const& S) {
  std::vector<Element> map(S.order());
  for (Element a = 0; a < S.order(); ++a) {
    map[a] = a;
  }
  return Morphism::trusted(S, S, std::move(map));
}

// g after f.
inline Morphism compose(Morphism const& g, Morphism const& f) {
  if (!(f.codomain() == g.domain())) {
    throw CarrierMismatch();
  }
  std::vector<Element> map(f.map().size());
  for (std::size_t a = 0; a < map.size(); ++a) {
    map[a] = g(f(static_cast<Element>(a)));
  }
  return Morphism::trusted(f.domain(), g.codomain(), std::move(map));
}

}  // namespace finsemi
